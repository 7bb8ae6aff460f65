//! Canonical patterns checked against exhaustive search over `[q]^n`.

use dequiv::{alpha, beta, descent_set, minimal_arity, omega, omega_of, DescentWord, Word};

/// Every `q`-ary word of length `n`, lexicographic, by odometer.
fn cube(n: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![1u32; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < q {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

fn is_pattern_of_arity(w: &[u32], q: u32) -> bool {
    (1..=q).all(|s| w.contains(&s))
}

fn descent_bits(w: &[u32]) -> Vec<bool> {
    let mut bits: Vec<bool> = w.windows(2).map(|p| p[0] > p[1]).collect();
    bits.push(false);
    bits
}

fn descent_words(n: usize) -> Vec<DescentWord> {
    (0u32..1 << (n - 1))
        .map(|mask| {
            let mut bits: Vec<bool> = (0..n - 1).map(|i| mask >> i & 1 == 1).collect();
            bits.push(false);
            DescentWord::new(bits).unwrap()
        })
        .collect()
}

#[test]
fn beta_is_the_brute_force_minimum() {
    let mut checked = 0;
    for n in 1..=6 {
        for q in 1..=n as u32 {
            let words = cube(n, q);
            for b in descent_words(n) {
                let brute = words
                    .iter()
                    .find(|w| is_pattern_of_arity(w, q) && descent_bits(w) == b.bits());
                let computed = beta(q, &b);
                match brute {
                    Some(expected) => {
                        assert_eq!(computed.unwrap().entries(), &expected[..], "q={q} b={b}");
                        checked += 1;
                    }
                    None => assert!(computed.is_err(), "q={q} b={b} has no pattern"),
                }
                if q == minimal_arity(&b) {
                    assert_eq!(beta(q, &b).unwrap(), alpha(&b));
                }
                if q == n as u32 {
                    assert_eq!(beta(q, &b).unwrap(), omega(&b));
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn canonical_patterns_have_the_requested_descent_word() {
    for n in 1..=8 {
        for b in descent_words(n) {
            let a = alpha(&b);
            let o = omega(&b);
            assert_eq!(descent_bits(&a), b.bits());
            assert_eq!(descent_bits(&o), b.bits());
            assert!(o.is_permutation());
            assert_eq!(a.arity(), minimal_arity(&b));
            // omega is an involution, so covering by omega_i or by the i-th element agree
            for i in 0..n {
                assert_eq!(o[o[i] as usize - 1] as usize, i + 1);
            }
            for q in minimal_arity(&b)..=n as u32 {
                let bt = beta(q, &b).unwrap();
                assert_eq!(descent_bits(&bt), b.bits());
                assert!(is_pattern_of_arity(&bt, q) && bt.arity() == q);
                check_first_deviation_form(q, &b, &bt);
            }
        }
    }
}

/// From the first index `k` where beta leaves alpha (in omega order), entries are `q - (n - i)`.
fn check_first_deviation_form(q: u32, b: &DescentWord, bt: &Word) {
    let n = b.len();
    let a = alpha(b);
    let o = omega(b);
    let at = |w: &Word, i: usize| w[o[i - 1] as usize - 1];
    if let Some(k) = (1..=n).find(|&i| at(bt, i) != at(&a, i)) {
        for i in 1..=n {
            if i < k {
                assert_eq!(at(bt, i), at(&a, i));
            } else {
                assert_eq!(at(bt, i) as i64, q as i64 - (n - i) as i64, "b={b} q={q}");
            }
        }
    }
}

/// Entries larger than their later neighbours in omega order come first in position order.
#[test]
fn omega_order_is_compatible_with_entry_order() {
    for k in 1..=6 {
        for p in dequiv::patterns_of_length(k) {
            let o = omega_of(&p).unwrap();
            for i in 0..k {
                for j in 0..k {
                    if p[i] > p[j] && o[i] < o[j] {
                        assert!(i < j, "p={p} i={} j={}", i + 1, j + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn beta_tail_entries_are_consecutive_and_end_at_q() {
    for n in 1..=7 {
        for b in descent_words(n) {
            for q in minimal_arity(&b)..=n as u32 {
                let bt = beta(q, &b).unwrap();
                let o = omega(&b);
                for i in 1..=n {
                    let tail: Vec<u32> = (i..=n).map(|j| bt[o[j - 1] as usize - 1]).collect();
                    if tail.iter().all(|&v| bt.multiplicity(v) == 1) {
                        assert!(
                            tail.windows(2).all(|p| p[1] == p[0] + 1),
                            "b={b} q={q} i={i}"
                        );
                        assert_eq!(*tail.last().unwrap(), q);
                    }
                }
            }
        }
    }
    assert_eq!(
        descent_set(&beta(7, &"110100010".parse().unwrap()).unwrap()),
        vec![1, 2, 4, 8]
    );
}
