use std::fs;
use std::path::Path;
use std::process::Command;

use halfcav::mirror::decay_from_trajectory;
use halfcav::{MemoryConfig, MirrorTrajectory, TimeGrid};

fn halfcav(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_halfcav"))
        .args(args)
        .current_dir(dir)
        .env_remove("HALFCAV_THREADS")
        .output()
        .expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn store_writes_consistent_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = halfcav(&["store", "--out", "res"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&dir.path().join("res/timeseries.csv"));
    assert_eq!(
        header,
        ["t", "xi_in_re", "xi_in_im", "xi_out_re", "xi_out_im", "gamma_z_w", "gamma_z_r", "l_over_lambda", "P"]
    );
    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("res/run.json")).unwrap()).unwrap();
    let eta = record["eta"].as_f64().unwrap();
    assert!((eta - record["eta_w"].as_f64().unwrap() * record["eta_r"].as_f64().unwrap()).abs() < 1e-10);
    assert_eq!(record["capped_w"], false);
    assert_eq!(record["files"]["timeseries"], "timeseries.csv");

    // Trapezoid over the emitted intensity column reproduces eta.
    let dt = rows[1][0] - rows[0][0];
    let intensity: Vec<f64> = rows.iter().map(|r| r[3] * r[3] + r[4] * r[4]).collect();
    let n = intensity.len();
    let emitted = dt * (intensity.iter().sum::<f64>() - 0.5 * (intensity[0] + intensity[n - 1]));
    assert!((emitted - eta).abs() < 1e-6, "{emitted} {eta}");

    // Storage (t < 0 side ends the write, t > 0 side starts the read) is centred on t = 0.
    let first_out = rows.iter().position(|r| r[6] > 0.0).unwrap();
    let last_in = rows.iter().rposition(|r| r[5] > 0.0).unwrap();
    assert!((rows[first_out][0] + rows[last_in][0]).abs() < 0.02);
}

#[test]
fn mirror_file_round_trips_to_rates() {
    let dir = tempfile::tempdir().unwrap();
    let out = halfcav(&["mirror", "--out", "."], dir.path());
    assert!(out.status.success());
    let (header, rows) = read_csv(&dir.path().join("mirror.csv"));
    assert_eq!(header, ["t", "gamma_z", "l_over_lambda", "velocity"]);
    let grid = TimeGrid::with_step(rows[0][0], rows[1][0] - rows[0][0], rows.len()).unwrap();
    let traj = MirrorTrajectory::new(grid, rows.iter().map(|r| r[2]).collect()).unwrap();
    let back = decay_from_trajectory(&traj, &MemoryConfig::default()).unwrap();
    let worst = rows
        .iter()
        .zip(back.rate_z())
        .map(|(r, g)| (r[1] - g).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-9, "{worst}");
    assert!(rows.iter().all(|r| (0.0..=0.25).contains(&r[2])));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("feasibility.json")).unwrap()).unwrap();
    assert!(report["v_max_lambda_gamma0"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_uses_config_block_and_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("s.json"),
        r#"{"sweep": {"sigma_min": 0.2, "sigma_max": 3.0, "n_points": 5}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_halfcav"))
        .args(["sweep", "--config", "s.json", "--out", "o"])
        .current_dir(dir.path())
        .env("HALFCAV_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&dir.path().join("o/sweep.csv"));
    assert_eq!(header, ["sigma_over_gamma0", "eta_w", "eta_r", "eta", "F"]);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], 0.2);

    let bad = Command::new(env!("CARGO_BIN_EXE_halfcav"))
        .args(["sweep", "--config", "s.json", "--out", "o"])
        .current_dir(dir.path())
        .env("HALFCAV_THREADS", "zero")
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn oracle_reports_json_and_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let out = halfcav(&["oracle", "--seed", "99"], dir.path());
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 99);
    assert_eq!(report["pass"], true);
    assert_eq!(report["pairs"].as_array().unwrap().len(), 21);
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"pulse": {"sigma": -1}}"#).unwrap();
    let out = halfcav(&["store", "--config", "bad.json"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma"));
    let out = halfcav(&["sweep"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn phase_compensation_flag_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    assert!(halfcav(&["store", "--out", "a"], dir.path()).status.success());
    assert!(halfcav(&["store", "--out", "b", "--no-phase-compensation"], dir.path()).status.success());
    let a: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a/run.json")).unwrap()).unwrap();
    let b: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("b/run.json")).unwrap()).unwrap();
    assert_eq!(b["config"]["phase_compensation"], false);
    assert!(b["eta_w"].as_f64().unwrap() < a["eta_w"].as_f64().unwrap());
}

#[test]
fn repeated_store_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["x", "y"] {
        assert!(halfcav(&["store", "--out", out], dir.path()).status.success());
    }
    for file in ["timeseries.csv", "run.json"] {
        assert_eq!(
            fs::read(dir.path().join("x").join(file)).unwrap(),
            fs::read(dir.path().join("y").join(file)).unwrap()
        );
    }
}
