use std::fs;

use nilmult_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nilmult").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn witt_count() {
    assert_eq!(
        call(&["witt", "--generators", "2", "--length", "4"]),
        (0, "3\n".into(), String::new())
    );
    let (code, out, _) = call(&[
        "witt",
        "--generators",
        "3",
        "--length",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witt"], "18");
}

#[test]
fn basis_listing() {
    let (code, out, _) = call(&["basis", "--generators", "2", "--length", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[2].ends_with("[x2,x1]"));
}

#[test]
fn multiplier_outputs() {
    assert_eq!(call(&["mult", "--algebra", "A(1)", "--c", "2"]).1, "0\n");
    assert_eq!(call(&["mult", "--algebra", "H(1)", "--c", "1"]).1, "2\n");
    let (code, out, _) = call(&["mult", "--algebra", "L5_8", "--c", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim_multiplier"], 18);
    assert_eq!(v["s2"], 5);
    assert_eq!(v["verdict"], "L4_3 or L5_8");
}

#[test]
fn classify_and_capability() {
    let (code, out, _) = call(&["classify", "--algebra", "H(3)+A(2)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "s2: 3\nverdict: H(k)+A(n-2k-1), k>=2\n");
    assert_eq!(call(&["capable2", "--algebra", "L4_3"]).1, "true\n");
    assert_eq!(
        call(&["capable2", "--algebra", "H(2)"]).1,
        "false\nwitness: x5\n"
    );
    let (_, out, _) = call(&["capable2", "--algebra", "H(2)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witness"], serde_json::json!({ "5": "1" }));
}

#[test]
fn user_errors_exit_with_one() {
    let (code, _, err) = call(&["show", "--algebra", "L6_22"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown algebra"));
    assert_eq!(call(&["classify", "--algebra", "A(3)"]).0, 1);
    assert_eq!(call(&["mult", "--algebra", "L4_3", "--c", "3"]).0, 1);
    assert_eq!(call(&["mult", "--algebra", "L4_3", "--ceiling", "10"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        "{ \"dim\": 3, \"brackets\": { \"2,1\": { \"3\": \"1\" } } }",
    )
    .unwrap();
    assert_eq!(call(&["mult", "--algebra", bad.to_str().unwrap()]).0, 1);
    let jacobi = dir.path().join("jacobi.json");
    fs::write(
        &jacobi,
        r#"{ "dim": 3, "brackets": { "1,2": { "2": "1" }, "1,3": { "2": "1", "3": "1" }, "2,3": { "1": "1" } } }"#,
    )
    .unwrap();
    let (code, _, err) = call(&["show", "--algebra", jacobi.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("Jacobi"), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("capable2"));
}

#[test]
fn json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["L5_5", "H(2)+A(1)", "L4_3+A(1)"] {
        let (code, text, _) = call(&["show", "--algebra", name, "--format", "json"]);
        assert_eq!(code, 0);
        let path = dir.path().join("algebra.json");
        fs::write(&path, &text).unwrap();
        let direct = call(&["mult", "--algebra", name, "--format", "json"]);
        let via_file = call(&[
            "mult",
            "--algebra",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(direct, via_file, "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["show", "--algebra", "L5_8+A(1)"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn report_matches_shipped_table() {
    let (code, out, err) = call(&["report", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let mut rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    let l43 = rows.iter().find(|r| r["name"] == "L4_3").unwrap();
    assert_eq!(
        (
            &l43["n"],
            &l43["m"],
            &l43["class"],
            &l43["dim_multiplier"],
            &l43["s2"],
            &l43["two_capable"]
        ),
        (
            &4.into(),
            &2.into(),
            &3.into(),
            &6.into(),
            &5.into(),
            &true.into()
        )
    );

    // A tampered table makes the run fail with exit code 2.
    rows[1]["dim_multiplier"] = 99.into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("expected.json");
    fs::write(&path, serde_json::to_string(&rows).unwrap()).unwrap();
    let (code, table, err) = call(&["report", "--expected", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(table.contains("n/a (abelian)"));
    assert!(
        err.contains("mismatch: H(1) dim_multiplier: expected 99, found 5"),
        "{err}"
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nilmult");
    let ok = std::process::Command::new(bin)
        .args(["mult", "--algebra", "L4_3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "6\n");
    let bad = std::process::Command::new(bin)
        .args(["mult", "--algebra", "B(2)"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}
