//! End-to-end checks of the binary: output shape and exit codes.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quartic-lucas"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_match_exits_zero() {
    let out = run(&["verify", "1", "29"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("case=I.1.c"), "{text}");
    assert!(text.contains("predicted (U, V) = (13, 0)"), "{text}");
    assert!(text.contains("status: match"), "{text}");
}

#[test]
fn verify_skip_exits_zero() {
    let out = run(&["verify", "1", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped: p = b^2+4"));

    let out = run(&["verify", "1", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped: (d/p) = -1"));
}

#[test]
fn predict_and_eta_and_classify() {
    let out = run(&["predict", "2", "17"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("predicted U_((p-1)/4) = 12, V_((p-1)/4) = 0"));

    let out = run(&["eta", "1", "41"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("predicted eta = i") && text.contains("agree"), "{text}");

    let out = run(&["classify", "8", "53"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("case III.1.a"));
}

#[test]
fn witness_exits_zero_and_reports_errata() {
    let out = run(&["witness"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("coverage: 49/49 cases; 4 errata"), "{text}");
    assert!(text.contains("141 is not prime"), "{text}");
}

#[test]
fn sweep_writes_jsonl_and_exits_zero() {
    let dir = std::env::temp_dir().join(format!("qlsweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let out = run(&[
        "sweep",
        "--conjecture",
        "1",
        "--b-max",
        "9",
        "--p-max",
        "500",
        "--jobs",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("mismatched=0"));
    let text = std::fs::read_to_string(&path).unwrap();
    let first = text.lines().next().unwrap();
    let val: serde_json::Value = serde_json::from_str(first).unwrap();
    for key in [
        "b", "d", "p", "case", "x", "y", "u", "v", "eta", "u_pred", "v_pred", "u_actual",
        "v_actual", "status",
    ] {
        assert!(val.get(key).is_some(), "missing {key} in {first}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_csv_has_header() {
    let dir = std::env::temp_dir().join(format!("qlcsv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = run(&[
        "sweep",
        "--conjecture",
        "4",
        "--b-max",
        "6",
        "--p-max",
        "300",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("b,d,p,case,x,y,u,v,eta,u_pred,v_pred,u_actual,v_actual,status"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    // unknown flag
    let out = run(&["sweep", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // bad conjecture selector
    let out = run(&["sweep", "--conjecture", "7", "--b-max", "9", "--p-max", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // empty b range after filtering
    let out = run(&["sweep", "--conjecture", "3", "--b-max", "7", "--p-max", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // bad format
    let out = run(&[
        "sweep", "--conjecture", "1", "--b-max", "9", "--p-max", "100", "--format", "xml",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // general form with mismatched discriminant
    let out = run(&["general-form", "1", "0", "5", "--p", "29", "--d", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_defaults_apply_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("qlcfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("sweep.conf");
    std::fs::write(&cfg, "# defaults\nb_max = 5\np_max = 200\njobs = 1\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "sweep", "--conjecture", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    // b in {1,3,5}, p in {5,13,17,29,37,41,53,61,73,89,97,101,...<200}
    assert!(text.contains("checked="), "{text}");

    // flag overrides config: p_max 100 shrinks the run
    let out2 = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "sweep",
        "--conjecture",
        "1",
        "--p-max",
        "100",
    ]);
    assert_eq!(out2.status.code(), Some(0));
    let t1: u64 = text
        .split("checked=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    let t2: u64 = stdout(&out2)
        .split("checked=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(t2 < t1, "override should shrink the sweep: {t2} vs {t1}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn general_form_prints_exact_identity() {
    let out = run(&["general-form", "2", "0", "7", "--p", "113", "--d", "14"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("a' = 2"), "{text}");
    assert!(text.contains("(exact)"), "{text}");

    // representable by no means: exit 0 with a message
    let out = run(&["general-form", "1", "0", "65", "--p", "29", "--d", "65"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("not represented"));
}
