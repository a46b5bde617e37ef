use std::process::Command;

use crystalzeta::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("crystalzeta").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn count_examples() {
    assert_eq!(stdout_of(&["count", "p2m", "16", "--normal"]), "199\n");
    assert_eq!(stdout_of(&["count", "p2m", "1"]), "1\n");
    assert_eq!(stdout_of(&["count", "p2m", "4"]), "283\n");
    assert_eq!(stdout_of(&["count", "p1", "2"]), "7\n");
    assert_eq!(stdout_of(&["count", "p-1", "2", "--normal"]), "15\n");
    assert_eq!(stdout_of(&["count", "PM", "3"]), "7\n");
}

#[test]
fn series_csv() {
    assert_eq!(
        stdout_of(&["series", "p2m", "--max", "4"]),
        "n,count\n1,1\n2,31\n3,15\n4,283\n"
    );
    assert_eq!(
        stdout_of(&["series", "p2m", "--max", "6", "--normal"]),
        "n,count\n1,1\n2,31\n3,0\n4,155\n5,0\n6,5\n"
    );
}

#[test]
fn series_methods_agree() {
    for normal in [false, true] {
        let mut base = vec!["series", "p2m", "--max", "16"];
        if normal {
            base.push("--normal");
        }
        let outputs: Vec<String> = ["formula", "convolution", "oracle"]
            .iter()
            .map(|m| {
                let mut args = base.clone();
                args.extend(["--method", m]);
                stdout_of(&args)
            })
            .collect();
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[1], outputs[2]);
    }
    for group in ["p1", "p-1", "p2", "pm"] {
        let conv = stdout_of(&["series", group, "--max", "12"]);
        let oracle = stdout_of(&["series", group, "--max", "12", "--method", "oracle"]);
        assert_eq!(conv, oracle, "{group}");
    }
}

#[test]
fn enumerate_json_lines() {
    let out = stdout_of(&["enumerate", "p2m", "2"]);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 31);
    for v in &lines {
        assert_eq!(v["index"], 2);
        assert_eq!(v["normal"], true);
        let image = v["point_image"].as_array().unwrap();
        assert_eq!(image[0], "E");
        assert_eq!(v["shifts"].as_object().unwrap().len(), image.len() - 1);
        assert_eq!(v["lattice"][1][0], 0);
    }
    let normal = stdout_of(&["enumerate", "p2m", "4", "--normal"]);
    assert_eq!(normal.lines().count(), 155);
    let all = stdout_of(&["enumerate", "p2m", "4"]);
    assert_eq!(all.lines().count(), 283);
    assert!(all.lines().any(|l| l.contains("\"normal\":false")));
}

#[test]
fn sum_report() {
    let out = stdout_of(&["sum", "--kind", "sigma", "--points", "100,1000,10000"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,raw_sum,normalized,target,rel_err");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("100,8299,"));
    assert!(lines[4].starts_with("fitted_exponent,"));
}

#[test]
fn usage_errors() {
    let cases: [&[&str]; 9] = [
        &["count", "p3", "2"],
        &["count", "p2m", "0"],
        &["count", "p2m", "-1"],
        &["series", "pm", "--max", "4", "--method", "formula"],
        &["series", "p2m", "--max", "25", "--method", "oracle"],
        &["enumerate", "p2m", "25"],
        &["sum", "--kind", "b", "--points", "10,20,30"],
        &["sum", "--kind", "a", "--points", "10,20"],
        &["bogus"],
    ];
    for args in cases {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = call(&["enumerate", "p2m", "25"]);
    assert!(err.contains("24"), "{err}");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn output_is_deterministic() {
    let a = stdout_of(&["enumerate", "p2m", "8"]);
    let b = stdout_of(&["enumerate", "p2m", "8"]);
    assert_eq!(a, b);
}

#[test]
fn verify_asymptotic_suite_writes_report() {
    let path = std::env::temp_dir().join(format!("crystalzeta-report-{}.md", std::process::id()));
    let (code, out, _) = call(&[
        "verify",
        "--suite",
        "asymptotic",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let md = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(md.contains("## asymptotic suite"));
    assert!(md.contains("ALL PASSED"));
}

#[test]
fn binary_environment_limit() {
    let bin = env!("CARGO_BIN_EXE_crystalzeta");
    let ok = Command::new(bin)
        .args(["count", "p2m", "16", "--normal"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "199\n");

    let raised = Command::new(bin)
        .args(["series", "p2", "--max", "26", "--method", "oracle"])
        .env("CRYSTALZETA_ORACLE_MAX", "26")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&raised.stdout).lines().count(), 27);

    let bad = Command::new(bin)
        .args(["enumerate", "p2m", "2"])
        .env("CRYSTALZETA_ORACLE_MAX", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
