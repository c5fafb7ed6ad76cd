use std::fs;
use std::path::Path;

use plemelj::cli::{run, EXIT_CONFIG, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_STRICT};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn plemelj(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("plemelj").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Data rows of a CSV artifact (provenance comments and header dropped).
fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn json_of(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn eval_prints_csv_with_provenance() {
    let r = plemelj(&["eval", "--density", "power:2", "--z", "0.5,0", "--z", "0,0.25"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert!(lines.next().unwrap().starts_with("# plemelj "));
    let config = lines.next().unwrap().strip_prefix("# config: ").unwrap();
    let config: Value = serde_json::from_str(config).unwrap();
    assert_eq!(config["density"]["kind"], "power");
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 2);
    assert!((rows[0][2] - 0.25).abs() < 1e-12);
    assert!((rows[1][2] + 0.0625).abs() < 1e-12);
    assert!(r.stderr.contains("eval: 2 point(s)"));
}

#[test]
fn eval_reads_points_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    fs::write(&pts, "re_z,im_z\n0.1,0.0\n3.0,1.0\n").unwrap();
    let r = plemelj(&["eval", "--curve", "ellipse:2,1", "--density", "pole:3,0", "--points", pts.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let rows = csv_rows(&r.stdout);
    // 1/(s - 3) with the pole outside: Φ = f inside, 0 outside.
    assert!((rows[0][2] - 1.0 / (0.1 - 3.0)).abs() < 1e-12);
    assert!(rows[1][2].abs() < 1e-12 && rows[1][3].abs() < 1e-12);
}

#[test]
fn trace_and_operator_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = plemelj(&["trace", "--N", "16", "--density", "power:-1", "--export-operator", "--out", out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let trace = csv_rows(&fs::read_to_string(dir.path().join("trace.csv")).unwrap());
    assert_eq!(trace.len(), 16);
    for row in &trace {
        // B(1/s) = -1/s
        assert!((row[5] + row[1]).abs() < 1e-13 && (row[6] + row[2]).abs() < 1e-13);
    }
    let op = csv_rows(&fs::read_to_string(dir.path().join("operator.csv")).unwrap());
    assert_eq!(op.len(), 16);
    assert!(op.iter().all(|r| r.len() == 32));
}

#[test]
fn export_operator_needs_an_output_directory() {
    let r = plemelj(&["trace", "--N", "16", "--export-operator"]);
    assert_eq!(r.code, EXIT_CONFIG);
}

#[test]
fn jump_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = plemelj(&["jump", "--N", "128", "--density", "example1", "--out", out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc = json_of(&dir.path().join("jump.json"));
    assert_eq!(doc["skipped"].as_array().unwrap().len(), 7);
    assert_eq!(doc["aggregates"]["retained"], 121);
    let rows = csv_rows(&fs::read_to_string(dir.path().join("jump.csv")).unwrap());
    assert_eq!(rows.len(), 121);
}

#[test]
fn under_resolved_jump_warns_and_fails_under_strict() {
    let args = ["jump", "--curve", "kite", "--density", "pole:3,0", "--N", "256"];
    let r = plemelj(&args);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stderr.contains("warning:"));
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(!doc["unresolved"].as_array().unwrap().is_empty());
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(plemelj(&strict).code, EXIT_STRICT);
}

#[test]
fn classify_verdicts_and_exit_codes() {
    let r = plemelj(&["classify", "--density", "power:3"]);
    assert_eq!(r.code, EXIT_OK);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["decision"], "interior");
    assert_eq!(doc["grids"], serde_json::json!([64, 128, 256]));

    // A pole just outside the circle: residuals still falling, not yet small.
    let r = plemelj(&["classify", "--density", "pole:1.02,0"]);
    assert_eq!(r.code, EXIT_INCONCLUSIVE, "{}", r.stdout);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["decision"], "inconclusive");
}

#[test]
fn classify_samples_needs_a_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let n = 256;
    let mut text = String::from("tau,re_f,im_f\n");
    for j in 0..n {
        let tau = std::f64::consts::TAU * j as f64 / n as f64;
        // s^2 on the circle
        text.push_str(&format!("{tau:.17e},{:.17e},{:.17e}\n", (2.0 * tau).cos(), (2.0 * tau).sin()));
    }
    fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let r = plemelj(&["classify", "--samples", p]);
    assert_eq!(r.code, EXIT_CONFIG);
    assert!(r.stderr.contains("threshold"));
    let r = plemelj(&["classify", "--samples", p, "--threshold", "1e-6"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["decision"], "interior");
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"density": {"kind": "power", "n": -1}, "grids": [32, 64, 128]}"#).unwrap();
    let r = plemelj(&["classify", "--density", "power:2", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["decision"], "exterior");
    assert_eq!(doc["config"]["grids"], serde_json::json!([32, 64, 128]));
    assert_eq!(doc["config"]["command"], "classify");
}

#[test]
fn circle_demo_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = plemelj(&["circle-demo", "--N", "256", "--out", out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc = json_of(&dir.path().join("circle_demo.json"));
    assert_eq!(doc["n"], 256);
    assert_eq!(doc["growth"].as_array().unwrap().len(), 4);
    let text = fs::read_to_string(dir.path().join("circle_demo.csv")).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with("phi,re_f,im_f,re_B0f_spectral"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 257);
}

#[test]
fn converge_table() {
    let r = plemelj(&["converge", "--density", "power:3", "--z", "0.5,0", "--grids", "16,32,64"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["reference"], "closed_form");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[2]["error"].as_f64().unwrap() <= 1e-12);
    assert!(rows[2]["order"].is_null());

    let r = plemelj(&["converge", "--quantity", "trace", "--density", "pole:2,0", "--node-fraction", "0.25", "--grids", "32,64,128"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
}

#[test]
fn bad_input_exits_with_2() {
    for args in [
        &["eval", "--curve", "square", "--z", "0,0"][..],
        &["eval"],
        &["eval", "--z", "1,0"],
        &["eval", "--N", "7", "--z", "0,0"],
        &["trace", "--density", "example1", "--curve", "kite"],
        &["jump", "--ratio", "1.5"],
        &["converge", "--grids", "32,64"],
        &["classify", "--threshold", "0.7"],
        &["nonsense"],
    ] {
        let r = plemelj(args);
        assert_eq!(r.code, EXIT_CONFIG, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn near_curve_points_trip_strict_mode() {
    let args = ["eval", "--z", "0.999,0"];
    assert_eq!(plemelj(&args).code, EXIT_OK);
    let r = plemelj(&["eval", "--z", "0.999,0", "--strict"]);
    assert_eq!(r.code, EXIT_STRICT);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows[0][4], 1.0);
}

#[test]
fn help_and_version_succeed() {
    let r = plemelj(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("circle-demo"));
    assert_eq!(plemelj(&["--version"]).code, EXIT_OK);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["classify", "--curve", "ellipse:2,1", "--density", "pole:0.5,0"][..],
        &["jump", "--curve", "kite", "--density", "power:3", "--N", "512"],
    ] {
        let outputs: Vec<String> = ["1", "8"]
            .iter()
            .map(|t| {
                let mut a = args.to_vec();
                a.extend(["--threads", t]);
                let r = plemelj(&a);
                assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
                r.stdout
            })
            .collect();
        assert_eq!(outputs[0], outputs[1]);
        assert!(!outputs[0].contains("threads"));
    }
}

#[test]
fn documented_invocations() {
    let r = plemelj(&["eval", "--curve", "circle", "--N", "256", "--density", "constant:1", "--z", "0.3,0.2"]);
    assert_eq!(r.code, EXIT_OK);
    let row = &csv_rows(&r.stdout)[0];
    assert!((row[2] - 1.0).abs() <= 1e-12 && row[3].abs() <= 1e-12);

    let r = plemelj(&["classify", "--curve", "circle", "--density", "power:3", "--grids", "64,128,256", "--threshold", "1e-6"]);
    assert_eq!(r.code, EXIT_OK);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["decision"], "interior");
    assert_eq!(doc["threshold"], 1e-6);

    let r = plemelj(&["converge", "--quantity", "jump", "--density", "example1", "--node-fraction", "0.5", "--grids", "256,512,1024"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc: Value = serde_json::from_str(&r.stdout).unwrap();
    let errors: Vec<f64> = doc["rows"].as_array().unwrap().iter().map(|r| r["error"].as_f64().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn every_artifact_embeds_config_and_version() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(plemelj(&["jump", "--N", "64", "--density", "power:2", "--seed", "17", "--out", out]).code, EXIT_OK);
    let csv = fs::read_to_string(dir.path().join("jump.csv")).unwrap();
    assert!(csv.starts_with("# plemelj 0.1.0\n# config: {"));
    assert!(csv.contains("\"seed\":17"));
    let doc = json_of(&dir.path().join("jump.json"));
    assert_eq!(doc["version"], "plemelj 0.1.0");
    assert_eq!(doc["config"]["seed"], 17);
}
