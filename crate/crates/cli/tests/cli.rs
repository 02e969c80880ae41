use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use framelab_cli::{run, FrameFile, LoadedFrame};
use framelab_core::{ExactFrame, FloatFrame, Frame, Rational, Vector};

fn frame_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "frames", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn framelab(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["framelab"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = framelab(&all);
    assert!(err.is_empty(), "stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn schema() -> jsonschema::Validator {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "report-schema.json"].iter().collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn decide_wpr_yes_exits_zero() {
    let (code, r) = json_report(&["decide", "wpr", &frame_path("pm-ones-4x3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["outcome"], "yes");
    assert_eq!(r["results"][0]["check"], "weak-phase-retrieval");
}

#[test]
fn decide_no_exits_one_with_verified_witness() {
    let (code, r) = json_report(&["decide", "wpr", &frame_path("canonical-member-4x3.json")]);
    assert_eq!(code, 1);
    let res = &r["results"][0];
    assert_eq!(res["outcome"], "no");
    assert_eq!(res["verified"], true);
    assert_eq!(res["witness"]["kind"], "ambiguity-pair");
    assert_eq!(res["witness"]["relation"]["related"], false);

    let (code, r) = json_report(&["decide", "pr", &frame_path("pm-ones-4x3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["results"][0]["witness"]["kind"], "partition");
    let (code, _) = json_report(&["decide", "spark", &frame_path("basis-plus-sum-2.json")]);
    assert_eq!(code, 0);
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = framelab(&["decide", "wpr", "missing.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.json"));

    let dir = tempfile::tempdir().unwrap();
    let bad = [
        r#"{"n": 2, "vectors": [[1, 2, 3]]}"#,
        r#"{"n": 2, "vectors": [[1, "1/0"]]}"#,
        r#"{"n": 2, "vectors": [[1, true]]}"#,
        r#"not json"#,
    ];
    for (i, text) in bad.iter().enumerate() {
        let p = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&p, text).unwrap();
        let (code, out, err) = framelab(&["decide", "wpr", p.to_str().unwrap()]);
        assert_eq!(code, 2, "{text}");
        assert!(out.is_empty());
        assert!(err.starts_with("error:"));
    }
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    assert_eq!(framelab(&[]).0, 2);
    assert_eq!(framelab(&["decide", "frobnicate", "x.json"]).0, 2);
    assert_eq!(framelab(&["classify", "--x", "1,2"]).0, 2);
    assert_eq!(framelab(&["construct", "p3"]).0, 2);
    assert_eq!(framelab(&["examples", "get", "no-such-frame"]).0, 2);
    let (code, out, _) = framelab(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("decide"));
    assert_eq!(framelab(&["--version"]).0, 0);
}

#[test]
fn classify_reports_one_based_sets_in_text() {
    let (code, out, _) = framelab(&[
        "classify",
        "--frame",
        &frame_path("pm-ones-4x3.json"),
        "--x",
        "2,3,0",
        "--y",
        "3,2,0",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("a = 2/3"), "{out}");
    assert!(out.contains("I4 = {1}"));
    assert!(out.contains("I5 = {2}"));
    assert!(out.contains("I3 = {3}"));
}

#[test]
fn classify_json_uses_zero_based_sets() {
    let (_, r) = json_report(&["classify", "--x", "2,3,0", "--y", "3,2,0"]);
    let c = &r["data"]["classification"];
    assert_eq!(c["a"]["exact"], "2/3");
    assert_eq!(c["I4"], serde_json::json!([0]));
    assert_eq!(c["I5"], serde_json::json!([1]));
    assert_eq!(r["data"]["reproduces"], true);
    let (code, _, _) = framelab(&["classify", "--x", "1,1,0", "--y", "1,2,3"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_validate_against_schema() {
    let v = schema();
    let pm = frame_path("pm-ones-4x3.json");
    let cm = frame_path("canonical-member-4x3.json");
    let base = frame_path("nondensity-base-3.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", &pm],
        vec!["analyze", &cm],
        vec!["decide", "spark", &cm],
        vec!["decide", "pr", &pm],
        vec!["decide", "wpr", &cm],
        vec!["witness", &pm],
        vec!["witness", &cm],
        vec!["classify", "--frame", &pm, "--x", "2,3,0", "--y", "3,2,0"],
        vec!["project", &cm],
        vec!["project", &pm, "--coords", "1,2"],
        vec!["construct", "p3", "--m", "4", "--n", "3"],
        vec!["construct", "fullspark", "--m", "5", "--n", "3", "--orthonormal-tail"],
        vec!["construct", "failing", "--x", "2,3,0", "--y", "3,2,0"],
        vec!["examples", "list"],
        vec!["examples", "get", "basis-2"],
        vec!["experiment", "density", &base, "--trials", "5"],
        vec!["experiment", "density", &base, "--trials", "5", "--sweep", "2", "--timings"],
        vec!["experiment", "p1", "--trials", "20"],
        vec!["experiment", "l1l3", "--trials", "20"],
        vec!["distance", "--x", "1,0,0;0,1,0", "--y", "1,0,0"],
    ];
    for args in cases {
        let (code, r) = json_report(&args);
        assert!(code <= 1, "{args:?}");
        let errors: Vec<String> = v.iter_errors(&r).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let base = frame_path("nondensity-base-3.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["--json", "experiment", "density", &base, "--trials", "10", "--seed", "7"],
        vec!["--json", "construct", "fullspark", "--m", "5", "--n", "3", "--seed", "11"],
        vec!["experiment", "l1l3", "--trials", "30", "--seed", "2"],
        vec!["--json", "analyze", &base],
    ];
    for args in runs {
        assert_eq!(framelab(&args), framelab(&args), "{args:?}");
    }
}

#[test]
fn seed_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_framelab");
    let run_bin = |seed: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(["--json", "construct", "fullspark", "--m", "4", "--n", "2"]);
        c.env_remove("FRAMELAB_SEED");
        if let Some(s) = seed {
            c.env("FRAMELAB_SEED", s);
        }
        let o = c.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    assert_eq!(run_bin(None)["config"]["seed"], 0);
    let r = run_bin(Some("42"));
    assert_eq!(r["config"]["seed"], 42);
    assert_eq!(run_bin(Some("42")), r);

    let o = Command::new(bin).args(["decide", "wpr", "missing.json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constructed_frames_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("failing.json");
    let p = path.to_str().unwrap();
    let (code, _) = json_report(&["construct", "failing", "--x", "2,3,0", "--y", "3,2,0", "--output", p]);
    assert_eq!(code, 0);
    let (code, r) = json_report(&["decide", "wpr", p]);
    assert_eq!(code, 1);
    assert_eq!(r["results"][0]["verified"], true);

    let path = dir.path().join("pm.json");
    let p = path.to_str().unwrap();
    assert_eq!(framelab(&["examples", "get", "pm-ones-4x3", "--output", p]).0, 0);
    assert_eq!(std::fs::read(p).unwrap(), std::fs::read(frame_path("pm-ones-4x3.json")).unwrap());
}

#[test]
fn float_frames_are_decided_at_their_binary_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"n": 2, "backend": "float", "vectors": [[0.5, 0.25], [1, -2], ["1/4", 3]]}"#).unwrap();
    let (code, r) = json_report(&["decide", "pr", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["input"]["backend"], "float");
}

#[test]
fn decimals_in_exact_files_are_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    std::fs::write(&path, r#"{"n": 2, "vectors": [[0.1, 0.2], [0.3, 0.6]]}"#).unwrap();
    let (code, r) = json_report(&["decide", "spark", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["results"][0]["witness"]["subset"], serde_json::json!([0, 1]));
}

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_frame_file_round_trip(rows in (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(rational(), n), 1..=5)
    })) {
        let frame: ExactFrame = Frame::new(rows.into_iter().map(|r| Vector::new(r).unwrap()).collect()).unwrap();
        let text = FrameFile::from_exact(&frame).to_json();
        let back = FrameFile::parse(&text).unwrap().load().unwrap();
        prop_assert_eq!(back, LoadedFrame::Exact(frame));
    }

    #[test]
    fn float_frame_file_round_trip(rows in (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-1e300f64..1e300, n), 1..=5)
    })) {
        let frame: FloatFrame = Frame::new(rows.into_iter().map(|r| Vector::new(r).unwrap()).collect()).unwrap();
        let text = FrameFile::from_float(&frame).to_json();
        let back = FrameFile::parse(&text).unwrap().load().unwrap();
        prop_assert_eq!(back.exact().unwrap(), frame.to_exact().unwrap());
    }
}
