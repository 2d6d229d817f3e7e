use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourier-grid")).args(args).output().expect("spawn fourier-grid")
}

fn run_with_workers(workers: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourier-grid"))
        .env("FOURIER_WORKERS", workers)
        .args(args)
        .output()
        .expect("spawn fourier-grid")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses a CSV table into its header and rows of floats.
fn table(out: &Output) -> (String, Vec<Vec<f64>>) {
    let text = stdout(out);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_owned();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

const SMALL: [&str; 7] = ["verify", "--functions", "cos:1", "--grid-sizes", "4", "--mode-limit", "3"];

#[test]
fn verify_small_config_passes() {
    let out = run(&[&SMALL[..], &["--seed", "7"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["schema"], 1);
    let reports = json["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 16);
    for r in reports {
        assert_eq!(r["status"], "pass", "{r}");
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 5);
        for key in ["check_name", "status", "worst_residual", "worst_location", "tolerance_used"] {
            assert!(keys.contains(&key));
        }
        let loc = r["worst_location"].as_object().unwrap();
        assert_eq!(loc.len(), 4);
    }
}

#[test]
fn verify_rejects_bad_configuration() {
    let out = run(&["verify", "--grid-sizes", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid size 0"));

    assert_eq!(run(&["verify", "--functions", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tolerance", "not_a_check=1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tolerance", "ftc"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--epsilons", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_injected_tolerance_fails_once() {
    let out = run(&[&SMALL[..], &["--tolerance", "dft_identity_2=1e-30"]].concat());
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&serde_json::Value> =
        json["reports"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["check_name"], "dft_identity_2");
    let used = failed[0]["tolerance_used"].as_f64().unwrap();
    assert!((used / 1e-30 - 1.0).abs() < 1e-12);
}

#[test]
fn verify_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (path_a, path_b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(run(&[&SMALL[..], &["--out", path_a]].concat()).status.code(), Some(0));
    assert_eq!(run_with_workers("1", &[&SMALL[..], &["--out", path_b]].concat()).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn worker_override_is_validated() {
    for bad in ["0", "-3", "many"] {
        assert_eq!(run_with_workers(bad, &SMALL).status.code(), Some(2), "{bad}");
    }
    assert_eq!(run_with_workers("2", &SMALL).status.code(), Some(0));
}

#[test]
fn converge_tables() {
    let (header, rows) = table(&run(&["converge", "--function", "trig:2", "--N", "1,2,3"]));
    assert_eq!(header, "N,sup_error,m_test_bound");
    assert_eq!(rows.len(), 3);
    assert!(rows[1][1] <= 1e-11 && rows[2][1] <= 1e-11);

    let out = run(&["converge", "--function", "expcos"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = table(&out);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [1.0, 2.0, 4.0, 8.0, 16.0, 32.0]);
    assert!(rows.windows(2).all(|w| w[1][1] <= w[0][1]));
    assert!(rows.iter().all(|r| r[1] <= r[2]));
    // 17 significant digits.
    let text = stdout(&out);
    let first_value = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(first_value.split('e').next().unwrap().replace('.', "").len(), 17);

    assert_eq!(run(&["converge", "--function", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["converge"]).status.code(), Some(2));
    assert_eq!(run(&["converge", "--function", "expcos", "--N", "4,2"]).status.code(), Some(2));
}

#[test]
fn spectrum_tables() {
    let (header, rows) = table(&run(&["spectrum", "--function", "cos:1", "--n", "8"]));
    assert_eq!(header, "m,abs_coeff,decay_bound");
    assert_eq!(rows.len(), 15);
    let ms: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(ms, (-8..=7).filter(|&m| m != 0).map(f64::from).collect::<Vec<_>>());
    let one = rows.iter().find(|r| r[0] == 1.0).unwrap();
    assert!((one[1] - 1.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[1] <= r[2]));

    let (_, rows) = table(&run(&["spectrum", "--function", "trig:0"]));
    assert_eq!(rows.len(), 127);
    assert!(rows.iter().all(|r| r[1] <= 1e-12));

    assert_eq!(run(&["spectrum", "--function", "expcos", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--function", "expcos", "--n", "x"]).status.code(), Some(2));
}

fn max_error(out: &Output) -> f64 {
    let (header, rows) = table(out);
    assert_eq!(header, "x,f,reconstruction,abs_error");
    assert_eq!(rows.len(), 257);
    rows.iter().map(|r| r[3]).fold(0.0, f64::max)
}

#[test]
fn rescale_demo_tables() {
    let out = run(&["rescale-demo", "--a", "0", "--b", "1", "--function", "cos-period", "--N", "4"]);
    assert!(max_error(&out) <= 1e-10);
    let (_, rows) = table(&out);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[256][0], 1.0);

    assert!(
        max_error(&run(&["rescale-demo", "--a", "-3", "--b", "2.5", "--function", "exp-cos-period", "--N", "16"]))
            <= 1e-10
    );

    assert_eq!(run(&["rescale-demo", "--a", "0", "--b", "0"]).status.code(), Some(2));
    assert_eq!(run(&["rescale-demo", "--a", "1", "--b", "0"]).status.code(), Some(2));
    assert_eq!(run(&["rescale-demo", "--a", "0", "--b", "1", "--function", "nosuch"]).status.code(), Some(2));
}

#[test]
fn rescale_on_the_circle_matches_converge() {
    // On [-1, 1] the interval series is the circle series, and exp(-cos(pi x))
    // has the same truncation errors as exp(cos(pi x)) on the shifted samples.
    for order in ["2", "4", "8"] {
        let demo =
            max_error(&run(&["rescale-demo", "--a", "-1", "--b", "1", "--function", "exp-cos-period", "--N", order]));
        let (_, rows) = table(&run(&["converge", "--function", "expcos", "--N", order, "--samples", "256"]));
        assert!((demo - rows[0][1]).abs() <= 1e-10, "N={order}: {demo} vs {}", rows[0][1]);
    }
}

#[test]
fn csv_reruns_are_byte_identical() {
    for args in [
        &["converge", "--function", "expcos"][..],
        &["spectrum", "--function", "trig:3", "--n", "16"],
        &["rescale-demo", "--a", "0.5", "--b", "2", "--function", "exp-cos-period"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
