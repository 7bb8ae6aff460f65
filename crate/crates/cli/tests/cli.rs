use std::process::{Command, Output};

use serde_json::Value;

fn dequiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dequiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dequiv(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn tables_match_goldens() {
    assert_eq!(json(&["table1"]), golden("table1.json"));
    assert_eq!(json(&["table2"]), golden("table2.json"));
}

#[test]
fn table_csv() {
    let csv = stdout(&["--csv", "table2"]);
    assert!(csv.starts_with("w,(213)w,(312)w\n21354,3,0\n"));
    assert_eq!(csv.lines().count(), 12);
}

#[test]
fn canonical_forms() {
    assert_eq!(stdout(&["canon", "alpha", "110100010"]).trim(), "321211121");
    assert_eq!(stdout(&["canon", "omega", "110100010"]).trim(), "321546798");
    assert_eq!(
        stdout(&["canon", "beta", "110100010", "--q", "7"]).trim(),
        "321214576"
    );
    assert_eq!(stdout(&["canon", "beta", "432411231"]).trim(), "321211141");
    assert_eq!(
        dequiv(&["canon", "beta", "110100010"]).status.code(),
        Some(2)
    );
}

#[test]
fn words_and_counts() {
    assert_eq!(
        json(&["descents", "432411231"])["descent_word"],
        "110100010"
    );
    assert_eq!(stdout(&["count", "213", "21354"]).trim(), "3");
    assert_eq!(
        stdout(&[
            "popularity",
            "213",
            "--n",
            "5",
            "--permutations",
            "--descents",
            "1,4"
        ])
        .trim(),
        "20"
    );
    assert_eq!(
        stdout(&["tracestat", "_44_", "3,6", "1332", "15415432"]).trim(),
        "2"
    );
    assert_eq!(stdout(&["psi", "1232"]).trim(), "2213");
    assert_eq!(stdout(&["psi", "2213", "--inverse"]).trim(), "1232");
}

#[test]
fn rewriting() {
    let f = json(&["feq", "1332", "2331"]);
    assert_eq!(f["f_equivalent"], true);
    let steps = json(&["fpath", "2331"]);
    let steps = steps.as_array().unwrap();
    assert_eq!(steps[0]["before"], "2331");
    for pair in steps.windows(2) {
        assert_eq!(pair[0]["after"], pair[1]["before"]);
    }
    assert_eq!(json(&["feq", "12", "21"])["f_equivalent"], false);
}

#[test]
fn lemma_maps() {
    let one = json(&[
        "lemma1",
        "--p",
        "1132",
        "--s",
        "1232",
        "--t",
        "1_54",
        "--A",
        "2,8,10",
        "--word",
        "21143615441",
    ]);
    assert_eq!(one["image"], "21443615441");
    assert_eq!(one["statistic"], serde_json::json!([2, 2]));
    let two = json(&[
        "lemma2",
        "--p",
        "125134",
        "--s",
        "135124",
        "--t",
        "1_81_7",
        "--A",
        "2,9,11,14",
        "--word",
        "217349648815371",
    ]);
    assert_eq!(two["image"], "217559638816471");
    let back = json(&[
        "lemma2",
        "--p",
        "125134",
        "--s",
        "135124",
        "--t",
        "1_81_7",
        "--A",
        "2,9,11,14",
        "--word",
        "217559638816471",
        "--inverse",
    ]);
    assert_eq!(back["image"], "217349648815371");
}

#[test]
fn lemma_verification_reports_histograms() {
    let r = json(&[
        "verify-lemma2",
        "--p",
        "1332",
        "--s",
        "2331",
        "--t",
        "_44_",
        "--A",
        "3,6",
        "--n",
        "8",
        "--alphabet",
        "1..5",
        "--descents",
        "2,3,5,6,7",
    ]);
    assert_eq!(r["verdict"], "holds");
    assert_eq!(
        r["params"]["source_histogram"],
        serde_json::json!({"0": 141, "1": 6, "2": 3})
    );
    assert_eq!(
        r["params"]["source_histogram"],
        r["params"]["target_histogram"]
    );
    let too_big = dequiv(&[
        "--max-class-size",
        "10",
        "verify-lemma2",
        "--p",
        "1332",
        "--s",
        "2331",
        "--t",
        "_44_",
        "--A",
        "3,6",
        "--n",
        "8",
        "--alphabet",
        "1..5",
        "--descents",
        "2,3,5,6,7",
    ]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn verdicts_set_the_exit_code() {
    let holds = dequiv(&[
        "verify-equipop",
        "213",
        "312",
        "--n",
        "5",
        "--permutations",
        "--descents",
        "1,4",
    ]);
    assert_eq!(holds.status.code(), Some(0));
    let fails = dequiv(&[
        "verify-equipop",
        "12",
        "21",
        "--n",
        "2",
        "--alphabet",
        "1,2",
    ]);
    assert_eq!(fails.status.code(), Some(1));
    assert_eq!(dequiv(&["separate", "1332", "2331"]).status.code(), Some(2));
    let sep = json(&["separate", "12", "21"]);
    assert_eq!(sep["popularity"], serde_json::json!([1, 0]));
}

#[test]
fn small_sweeps() {
    for kind in ["d", "descent", "permutation"] {
        let r = json(&[
            "--jobs", "2", "sweep", "--n", "4", "--q", "3", "--k", "3", "--kind", kind,
        ]);
        assert_eq!(r["verdict"], "holds", "{kind}");
    }
}
