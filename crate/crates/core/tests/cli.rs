use std::fs;

use dsineq::cli::{run_with, TABLE_HEADER};
use dsineq::ratio::eval_f;
use dsineq::FamilyKind;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["dsineq"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .parse()
        .unwrap()
}

#[test]
fn eval_prints_value_and_constants() {
    let (code, out, _) = run(&["eval", "--family", "trig-sin", "--p", "2", "--x", "1.0"]);
    assert_eq!(code, 0);
    assert!((field(&out, "f") - 0.244_835).abs() < 1e-6);
    assert_eq!(field(&out, "upper"), 0.25);
    assert!((field(&out, "lower") - 0.237_410_300_887_945_9).abs() < 1e-15);
}

#[test]
fn eval_accepts_pi_fractions() {
    let (code, out, _) = run(&["eval", "--family", "trig-cos", "--p", "3", "--x", "pi/4"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "x"), std::f64::consts::FRAC_PI_4);
    let (code, _, err) = run(&["eval", "--family", "trig-cos", "--p", "3", "--x", "pi/2"]);
    assert_eq!(code, 65);
    assert!(err.contains("[0, pi/2)"), "{err}");
}

#[test]
fn bounds_lists_direction() {
    let (code, out, _) = run(&["bounds", "--family", "hyp-cos", "--p", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("direction increasing"));
    assert_eq!(field(&out, "lower"), -0.375);
}

#[test]
fn verify_rigorous_certifies() {
    let (code, out, _) = run(&["verify", "--family", "trig-cos", "--p", "3", "--mode", "rigorous"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.contains("CERTIFIED")));
    assert!(out.lines().next().unwrap().contains("mode=rigorous"));
}

#[test]
fn verify_json_output() {
    let (code, out, _) = run(&[
        "verify",
        "--family",
        "trig-sin",
        "--p",
        "4",
        "--grid-points",
        "32",
        "--interior-margin",
        "pi/100",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["status"], "CERTIFIED");
    assert_eq!(v[0]["cells_checked"], 32);
}

#[test]
fn falsified_claim_forces_exit_one() {
    // the sign claim fails while monotonicity and envelope pass
    let (code, out, _) = run(&["verify", "--family", "hyp-cos", "--p", "2", "--grid-points", "64"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FALSIFIED"));
    assert_eq!(out.matches("CERTIFIED").count(), 2);
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--family", "hyp-sin", "--p", "3", "--mode", "rigorous"][..],
        &["verify", "--family", "trig-sin", "--p", "3", "--grid-points", "8"],
        &["eval", "--family", "trig-tan", "--p", "2", "--x", "1"],
        &["eval", "--family", "trig-sin", "--p", "2"],
        &["cheb", "--n", "3"],
        &["cheb", "--n", "3", "--t", "0.5", "--p", "3"],
        &["cheb"],
        &["frobnicate"],
        &[
            "table",
            "--family",
            "trig-sin",
            "--p",
            "2",
            "--points",
            "1",
            "--out",
            "/dev/null",
        ],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 64, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let (_, _, err) = run(&["eval", "--family", "trig-sin", "--p", "2"]);
    assert!(err.contains("--x"), "{err}");
}

#[test]
fn domain_errors() {
    for args in [
        &["bounds", "--family", "trig-sin", "--p", "1"][..],
        &["cheb", "--p", "7", "--y", "0.3"],
        &["cheb", "--n", "2", "--t", "1.5"],
        &["eval", "--family", "hyp-sin", "--p", "0", "--x", "1"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 65, "{args:?}: {err}");
    }
}

#[test]
fn cheb_examples() {
    let (code, out, _) = run(&["cheb", "--p", "7", "--y", "0.1"]);
    assert_eq!(code, 0);
    assert!((field(&out, "lo") - 6.44).abs() < 1e-12);
    assert!((field(&out, "value") - 6.452_926).abs() < 1e-6);
    assert!((field(&out, "hi") - 6.502_327).abs() < 1e-6);
    let (code, out, _) = run(&["cheb", "--n", "2", "--t", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "U_2(0.5) 0");
}

#[test]
fn table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&[
        "table", "--family", "trig-cos", "--p", "3", "--points", "50", "--out", p,
    ]);
    assert_eq!(code, 0, "{out}");
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>().join(","),
        TABLE_HEADER
    );
    let mut rows = 0;
    for (rec, line) in rdr.records().zip(text.lines().skip(1)) {
        let rec = rec.unwrap();
        let vals: Vec<f64> = rec.iter().map(|c| c.parse().unwrap()).collect();
        // parse then reformat gives back the same bytes
        let again: Vec<String> = vals.iter().map(|v| format!("{v:.16e}")).collect();
        assert_eq!(again.join(","), line);
        assert_eq!(vals[1], eval_f(FamilyKind::TrigCos, 3.0, vals[0]).unwrap());
        assert!(vals[4] > 0.0 && vals[5] > 0.0);
        assert_eq!(vals[4], vals[1] - vals[2]);
        rows += 1;
    }
    assert_eq!(rows, 50);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let (code, _, _) = run(&[
            "table",
            "--family",
            "hyp-sin",
            "--p",
            "5",
            "--points",
            "64",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let args = [
        "verify",
        "--family",
        "trig-sin",
        "--p",
        "6",
        "--grid-points",
        "40",
        "--mode",
        "rigorous",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn unwritable_table_path() {
    let (code, _, err) = run(&[
        "table",
        "--family",
        "trig-sin",
        "--p",
        "2",
        "--points",
        "4",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(code, 74, "{err}");
}
