use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn gneiting(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gneiting"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Writes `text` to a temporary config file.
fn temp_config(text: &str) -> tempfile::NamedTempFile {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), text).unwrap();
    file
}

/// The sphere example with the given fields merged into its JSON.
fn sphere_config(extra: Value) -> tempfile::NamedTempFile {
    let text = std::fs::read_to_string(config("sphere_pure_power.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    for (k, x) in extra.as_object().unwrap() {
        v[k] = x.clone();
    }
    temp_config(&v.to_string())
}

#[test]
fn eval_at_origin_is_one_over_g0() {
    // f(w) = 1/w, r = 1 reduces to 1 / g(0) = 1 / (3 - cos 0).
    let cfg = sphere_config(serde_json::json!({"grid": [[0.0], [0.0], [0.0]]}));
    let out = gneiting(&["eval", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "t,u,v,value\n0,0,0,0.5\n");
}

#[test]
fn eval_default_grid_has_eleven_points_per_axis() {
    let out = gneiting(&[
        "eval",
        "--config",
        config("sphere_singular.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1 + 1331);
}

#[test]
fn eval_outside_an_atom_domain_is_a_domain_error() {
    let cfg = sphere_config(serde_json::json!({"grid": [[0.0], [3.0], [0.0]]}));
    let out = gneiting(&["eval", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_and_missing_configs_exit_2() {
    let cfg = temp_config("{ not json");
    assert_eq!(
        code(&gneiting(&[
            "eval",
            "--config",
            cfg.path().to_str().unwrap()
        ])),
        2
    );
    assert_eq!(code(&gneiting(&["report"])), 2);
    assert_eq!(
        code(&gneiting(&[
            "report",
            "--config",
            "/nonexistent/config.json"
        ])),
        2
    );
}

#[test]
fn certify_guaranteed_fixture_passes() {
    let out = gneiting(&[
        "certify",
        "--config",
        config("line_spheres_bounded.json").to_str().unwrap(),
        "--trials",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0]["verdict"], "SPD_pass");
    assert_eq!(lines[5]["summary"]["pass"], true);
}

#[test]
fn certify_with_embedded_counterexample_fails() {
    let path = config("sphere_pure_power.json");
    let out = gneiting(&[
        "certify",
        "--config",
        path.to_str().unwrap(),
        "--trials",
        "3",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("SPD_fail"));
}

#[test]
fn certify_rejects_zero_trials() {
    let path = config("sphere_singular.json");
    assert_eq!(
        code(&gneiting(&[
            "certify",
            "--config",
            path.to_str().unwrap(),
            "--trials",
            "0"
        ])),
        2
    );
}

#[test]
fn sampling_exhaustion_is_a_runtime_error() {
    let cfg = temp_config(
        r#"{"model": {"variant": "F_r",
            "f": {"class": "stieltjes", "lambda": 1, "constants": {"D": 1}},
            "g": {"op": "three_minus_cos"},
            "h": {"op": "shift", "c": 1, "of": {"op": "three_minus_cos"}},
            "r": 2,
            "spaces": [{"kind": "discrete", "param": 2}, {"kind": "discrete", "param": 2}]},
            "n": 10, "trials": 2}"#,
    );
    let out = gneiting(&["certify", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn report_and_counterexample() {
    let path = config("sphere_pure_power.json");
    let report: Value = serde_json::from_str(&stdout(&gneiting(&[
        "report",
        "--config",
        path.to_str().unwrap(),
    ])))
    .unwrap();
    assert_eq!(report["verdict"], "necessary_condition_violated");
    let open = config("sphere_open.json");
    let report: Value = serde_json::from_str(&stdout(&gneiting(&[
        "report",
        "--config",
        open.to_str().unwrap(),
    ])))
    .unwrap();
    assert_eq!(report["verdict"], "open_case");

    let out = gneiting(&["counterexample", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let cex: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cex["clause"], "pure_power_outer");
    assert!(cex["det"].as_f64().unwrap().abs() <= 1e-12);

    let guaranteed = config("sphere_singular.json");
    assert_eq!(
        code(&gneiting(&[
            "counterexample",
            "--config",
            guaranteed.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn gram_csv_has_header_and_is_symmetric() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("gram.csv");
    let points = dir.path().join("points.csv");
    let path = config("circle_interval_f_r.json");
    let out = gneiting(&[
        "gram",
        "--config",
        path.to_str().unwrap(),
        "--n",
        "5",
        "--seed",
        "3",
        "--output",
        matrix.to_str().unwrap(),
        "--points-out",
        points.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&matrix).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,5"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for j in 0..5 {
        for k in 0..5 {
            assert_eq!(rows[j][k], rows[k][j]);
        }
    }
    let points = std::fs::read_to_string(&points).unwrap();
    assert_eq!(points.lines().count(), 6);
    assert_eq!(points.lines().next(), Some("s0_angle,s1_t"));
}

#[test]
fn suite_filter_and_determinism() {
    let out = gneiting(&["suite", "--filter", "cnd"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("] ")).count(), 1);
    assert!(text.contains("cnd"));

    let a = gneiting(&[
        "suite", "--filter", "eigen", "--seed", "7", "--format", "json",
    ]);
    let b = gneiting(&[
        "suite", "--filter", "eigen", "--seed", "7", "--format", "json",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
