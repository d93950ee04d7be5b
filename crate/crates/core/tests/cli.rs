use std::collections::BTreeSet;
use std::process::{Command, Output};

fn mincode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mincode"))
        .args(args)
        .env_remove("MINCODE_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(mincode(&["check", "--demo", "z4"]).status.code(), Some(0));
    assert_eq!(mincode(&["check", "--demo", "z6"]).status.code(), Some(3));
    assert_eq!(
        mincode(&["check", "--ring", "4", "--omit", "e1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(mincode(&["check"]).status.code(), Some(2));
    assert_eq!(
        mincode(&["check", "--demo", "z4", "--ring", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mincode(&["check", "--ring", "1"]).status.code(), Some(2));
    assert_eq!(
        mincode(&["construct", "--ring", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(mincode(&["bogus"]).status.code(), Some(2));
    assert_eq!(mincode(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_json_has_fixed_keys() {
    let o = mincode(&["check", "--demo", "z6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        BTreeSet::from([
            "verdict",
            "witnesses",
            "w_min",
            "w_max",
            "ab_ratio_ok",
            "cases"
        ])
    );
    assert_eq!(v["verdict"], "not_minimal");
    let found = v["witnesses"].as_array().unwrap().iter().any(|w| {
        w["covered"]["components"] == serde_json::json!([1, 0, 1, 1, 1, 1, 1, 2, 3, 4])
            && w["coverer"]["components"] == serde_json::json!([2, 3, 5, 5, 2, 5, 2, 1, 3, 5])
    });
    assert!(found);

    let o = mincode(&["check", "--demo", "z4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "minimal");
    assert_eq!(v["witnesses"], serde_json::json!([]));
    assert_eq!(v["w_min"], 4);
    assert_eq!(v["w_max"], 7);
    assert_eq!(v["cases"], 15);
}

#[test]
fn construct_then_check_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let path_str = path.to_str().unwrap();
    let o = mincode(&[
        "construct",
        "--ring",
        "4",
        "--extra",
        "2,0;0,2;2,2",
        "--out",
        path_str,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "modulus 4\nrows 2 cols 9\n1 0 1 1 2 1 2 0 2\n0 1 1 3 1 2 0 2 2\n"
    );

    let printed = mincode(&["construct", "--ring", "4", "--extra", "2,0;0,2;2,2"]);
    assert_eq!(stdout(&printed), text);

    let from_file = mincode(&["enumerate", "--matrix", path_str]);
    let from_demo = mincode(&["enumerate", "--demo", "z4"]);
    assert_eq!(stdout(&from_file), stdout(&from_demo));
    assert_eq!(
        mincode(&["check", "--matrix", path_str]).status.code(),
        Some(0)
    );
}

#[test]
fn malformed_matrix_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "modulus 4\nrows 2 cols 2\n1 5\n0 1\n").unwrap();
    let o = mincode(&["check", "--matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let missing = dir.path().join("nope.txt");
    assert_eq!(
        mincode(&["check", "--matrix", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_outputs() {
    let out = stdout(&mincode(&["enumerate", "--demo", "z4"]));
    let words: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(words.len(), 16);
    assert!(words.contains(&"(3,3,2,0,1,1,2,2,0) supp={1,2,3,5,6,7,8}"));
    assert!(words.contains(&"(0,0,0,0,0,0,0,0,0) supp={}"));
    assert!(out.ends_with("# 16 codewords from 16 coefficient pairs\n"));

    let out = stdout(&mincode(&["enumerate", "--ring", "2"]));
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 4);

    let o = mincode(&["enumerate", "--demo", "z6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["modulus"], 6);
    assert_eq!(v["length"], 10);
    assert_eq!(v["codewords"].as_array().unwrap().len(), 36);
}

#[test]
fn verify_lemmas() {
    for ring in ["4", "9"] {
        let o = mincode(&["verify-lemmas", "--ring", ring]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert_eq!(
            out.lines().filter(|l| l.contains(" holds ")).count(),
            6,
            "{out}"
        );
    }
    let o = mincode(&["verify-lemmas", "--ring", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);

    let o = mincode(&["verify-lemmas", "--ring", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("prime-power"));
}

#[test]
fn ratio_example_reports_ratio_failure() {
    let o = mincode(&["check", "--demo", "z3-conclusion"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: minimal"));
    assert!(out.contains("w_min: 3\n"));
    assert!(out.contains("w_max: 5\n"));
    assert!(out.contains("ab_ratio_ok: false"));
}

#[test]
fn enumeration_cap() {
    // Z_27 canonical matrix: 729 pairs x 36 columns = 26244 evaluations.
    let o = mincode(&["check", "--ring", "27", "--cap", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("26244"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_mincode"))
        .args(["check", "--ring", "27"])
        .env("MINCODE_ENUM_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_mincode"))
        .args(["check", "--ring", "27"])
        .env("MINCODE_ENUM_CAP", "26244")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn scaled_and_omitted_constructions() {
    let o = mincode(&["check", "--ring", "9", "--scale", "2,4,5,7,8,1,2,4,5,7,8,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // a zero divisor is not a valid scalar
    assert_eq!(
        mincode(&["construct", "--ring", "4", "--scale", "2,1,1,1,1,1"])
            .status
            .code(),
        Some(2)
    );
    for kind in ["e1", "e2", "unit:3", "d:2", "dstar:2"] {
        let o = mincode(&[
            "check",
            "--ring",
            "4",
            "--omit",
            kind,
            "--extra",
            "2,0;0,2;2,2",
        ]);
        assert_eq!(o.status.code(), Some(3), "{kind}");
    }
    // an A column that is a unit multiple of the omitted kind
    let o = mincode(&["construct", "--ring", "4", "--omit", "e1", "--extra", "3,0"]);
    assert_eq!(o.status.code(), Some(2));
}
