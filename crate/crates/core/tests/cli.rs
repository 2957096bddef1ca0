use std::process::{Command, Output};

use gt_hypergeo::cli::{main_with, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use proptest::prelude::*;
use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gt-hypergeo"));
    cmd.env_remove("GT_HYPERGEO_PRECISION");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    let text = stdout(o);
    assert_eq!(text.trim().lines().count(), 1, "expected one JSON line, got:\n{text}");
    serde_json::from_str(text.trim()).expect("valid JSON")
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("gt-hypergeo").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_json_is_one_object_with_the_standard_fields() {
    let o = run(&["--format", "json", "eval", "bessel", "--lambda", "1.5,-0.5", "--s", "0.3,-0.2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v = json(&o);
    for key in ["command", "inputs", "value", "est_error", "work", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["command"], "eval bessel");
    assert!(v["value"].as_f64().unwrap().is_finite());
}

#[test]
fn bessel_at_the_origin_is_one() {
    let o = run(&["eval", "bessel", "--lambda", "1,0", "--s", "0,0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let value: f64 = stdout(&o).split_whitespace().find_map(|w| w.parse().ok()).unwrap();
    assert!((value - 1.0).abs() < 1e-8, "{value}");
}

#[test]
fn macdonald_json_lists_exact_coefficients() {
    let o = run(&["--format", "json", "eval", "macdonald", "--partition", "2", "--n", "2", "--q", "1/2", "--t", "1/4"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v = json(&o);
    let terms = v["value"].as_array().unwrap();
    let find = |mu: &[u64]| {
        terms
            .iter()
            .find(|t| t["monomial"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(mu.iter().copied()))
    };
    assert_eq!(find(&[2, 0]).unwrap()["coefficient"], "1");
    assert_eq!(find(&[1, 1]).unwrap()["coefficient"], "25/21");
}

#[test]
fn precision_comes_from_the_environment_unless_overridden() {
    let args = ["--format", "json", "eval", "macdonald", "--partition", "1", "--n", "1", "--q", "2", "--t", "3"];
    let o = bin().args(args).env("GT_HYPERGEO_PRECISION", "200").output().unwrap();
    assert_eq!(json(&o)["inputs"]["precision"], 200);
    let mut with_flag = vec!["--precision", "96"];
    with_flag.extend(args);
    let o = bin().args(&with_flag).env("GT_HYPERGEO_PRECISION", "200").output().unwrap();
    assert_eq!(json(&o)["inputs"]["precision"], 96);
}

#[test]
fn passing_verify_exits_zero_and_failing_verify_exits_one() {
    let o = run(&["--format", "json", "verify", "unitary", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!(v["first_failure"].is_null());

    let o = run(&["--format", "json", "verify", "eigen", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(EXIT_FAILURE));
    let v = json(&o);
    assert_eq!(v["pass"], false);
    assert!(v["first_failure"].is_object());
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["eval", "bessel", "--lambda", "1,1", "--s", "0,0"][..],
        &["eval", "bessel", "--lambda", "1,0", "--s", "0"],
        &["sample-orbit", "--lambda", "1,0", "--s", "0.2,0.1", "--samples", "0"],
        &["verify", "nonsense"],
        &["eval", "bessel", "--lambda", "1,x", "--s", "0,0"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn sample_orbit_is_reproducible_per_seed() {
    let args = ["sample-orbit", "--lambda", "1.2,-0.4", "--s", "0.5,0.1", "--samples", "20000", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    *other.last_mut().unwrap() = "8";
    assert_ne!(run(&other).stdout, a.stdout);
}

#[test]
fn csv_output_has_a_header_row() {
    let o = run(&[
        "--format",
        "csv",
        "sample-orbit",
        "--lambda",
        "1,0",
        "--s",
        "0.3,0",
        "--samples",
        "1000",
        "--batches",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("batch,samples,value,est_error"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn unicode_minus_is_accepted() {
    let (code, out, _) = in_process(&["eval", "ho", "--lambda", "1,\u{2212}1", "--s", "0.2,\u{2212}0.1"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Two-point Bessel evaluation: a collision in λ is a usage error,
    // anything else succeeds.
    #[test]
    fn exit_code_tracks_degeneracy(a in -3i32..=3, b in -3i32..=3, s in -2.0f64..2.0, k in 1u32..=2) {
        let lambda = format!("{a},{b}");
        let s = format!("{s},0");
        let k = k.to_string();
        let (code, out, err) = in_process(&["eval", "bessel", "--lambda", &lambda, "--s", &s, "--k", &k, "--nodes", "8"]);
        if a == b {
            prop_assert_eq!(code, EXIT_USAGE);
            prop_assert!(out.is_empty());
            prop_assert!(!err.is_empty());
        } else {
            prop_assert_eq!(code, EXIT_OK, "stderr: {}", err);
            prop_assert!(!out.is_empty());
        }
    }
}
