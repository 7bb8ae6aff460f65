//! Exhaustive checks of the f-transformation rewriting system.

use std::collections::BTreeMap;

use dequiv::{
    beta_of, d_equivalent, f_component, f_equivalent, f_neighbors, f_path_steps, f_path_to_beta,
    lex_reduce_step, patterns_of_length, FStep, ReductionRule, BFS_LENGTH_CAP,
};

#[test]
fn every_path_reaches_the_class_minimum() {
    let mut rules: BTreeMap<String, usize> = BTreeMap::new();
    for k in 0..=6 {
        for p in patterns_of_length(k) {
            let minimum = beta_of(&p).unwrap();
            let steps = f_path_steps(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
            let mut current = p.clone();
            for step in &steps {
                assert_eq!(step.before, current);
                assert_eq!(
                    FStep::between(&step.before, &step.after).as_ref(),
                    Some(step)
                );
                current = step.after.clone();
            }
            assert_eq!(current, minimum, "{p}");
            let path = f_path_to_beta(&p).unwrap();
            assert_eq!(path.first(), Some(&p));
            assert_eq!(path.last(), Some(&minimum));
            if p != minimum {
                let r = lex_reduce_step(&p).unwrap();
                assert!(r.result < p);
                assert!(d_equivalent(&r.result, &p));
                *rules.entry(format!("{:?}", r.rule)).or_default() += 1;
            }
        }
    }
    // up to length 6 the earlier-successor swap never fires; the other four all do
    for rule in [
        ReductionRule::DecrementRepeated,
        ReductionRule::SwapWithPredecessor,
        ReductionRule::DecrementLargerRepeated,
        ReductionRule::RaiseThenSwap,
    ] {
        assert!(
            rules.contains_key(&format!("{rule:?}")),
            "{rule:?} never used: {rules:?}"
        );
    }
}

#[test]
fn neighbor_relation_is_symmetric_and_class_preserving() {
    for k in 1..=5 {
        for p in patterns_of_length(k) {
            for s in f_neighbors(&p).unwrap() {
                assert!(d_equivalent(&p, &s));
                assert!(FStep::between(&p, &s).is_some());
                assert!(f_neighbors(&s).unwrap().contains(&p), "{p} -> {s}");
            }
        }
    }
}

#[test]
fn bfs_components_are_exactly_the_classes() {
    for k in 0..=5 {
        let patterns = patterns_of_length(k);
        for p in &patterns {
            let component = f_component(p, BFS_LENGTH_CAP).unwrap();
            for s in &patterns {
                let by_bfs = component.contains(s);
                assert_eq!(by_bfs, f_equivalent(p, s).unwrap(), "{p} {s}");
                assert_eq!(by_bfs, d_equivalent(p, s), "{p} {s}");
            }
        }
    }
}
