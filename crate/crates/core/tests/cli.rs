use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn dualspin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualspin"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Data rows of a CSV file as (header, rows).
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn orbit_writes_one_row_per_second() {
    let dir = TempDir::new().unwrap();
    let out = dualspin(dir.path(), &["orbit", "--orbits", "1", "--dt", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("orbit.csv")).unwrap();
    assert!(text.starts_with("# dualspin-orbit v1"));
    let (header, rows) = read_csv(&dir.path().join("orbit.csv"));
    assert_eq!(header.len(), 10);
    assert_eq!(rows.len(), 7226);
    assert_eq!(rows[0][0], 0.0);
}

#[test]
fn zero_duration_is_header_only() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "duration_s = 0.0\n");
    let out = dualspin(dir.path(), &["orbit", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = read_csv(&dir.path().join("orbit.csv"));
    assert!(rows.is_empty());
}

#[test]
fn eccentric_orbit_perigee_altitude() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "e = 0.2\ni_deg = 30.0\n");
    let out = dualspin(dir.path(), &["orbit", "--config", &cfg, "--dt", "0.5"]);
    assert!(out.status.success());
    let (header, rows) = read_csv(&dir.path().join("orbit.csv"));
    let r = column(&header, "R");
    let lowest = rows.iter().map(|row| row[r]).fold(f64::INFINITY, f64::min) - 6378.137;
    assert!((83.0..=86.0).contains(&lowest), "{lowest}");
}

#[test]
fn configuration_errors_exit_with_2() {
    let dir = TempDir::new().unwrap();
    for text in ["eccentricity = 0.1\n", "e = 1.5\n"] {
        let cfg = config(dir.path(), text);
        let out = dualspin(dir.path(), &["simulate", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(!out.stderr.is_empty());
    }
    let missing = dir.path().join("absent.toml");
    let out = dualspin(dir.path(), &["orbit", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = dualspin(dir.path(), &["simulate", "--dt", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn impact_exits_with_3() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "a_km = 6400.0\ne = 0.01\ntrue_anomaly_deg = 180.0\nduration_s = 3000.0\n");
    let out = dualspin(dir.path(), &["orbit", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unforced_circular_equatorial_run_stays_at_rest() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "e = 0.0\ni_deg = 0.0\nimpulse_volts = 0.0\nduration_s = 500.0\n");
    let out = dualspin(dir.path(), &["simulate", "--config", &cfg]);
    assert!(out.status.success());
    let (header, rows) = read_csv(&dir.path().join("trajectory.csv"));
    assert_eq!(rows.len(), 5001);
    for name in ["p", "q", "r", "phi_s", "theta_s", "psi_s", "delta_n", "delta_e"] {
        let k = column(&header, name);
        assert!(rows.iter().all(|row| row[k] == 0.0), "{name}");
    }
}

#[test]
fn simulate_summary_reports_the_long_period_and_entries() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "e = 0.2\ni_deg = 30.0\norbits = 2.0\n");
    let out = dualspin(dir.path(), &["simulate", "--config", &cfg]);
    assert!(out.status.success());
    let summary: toml::Table = std::fs::read_to_string(dir.path().join("summary.toml")).unwrap().parse().unwrap();
    assert_eq!(summary["schema_version"].as_integer(), Some(1));
    assert_eq!(summary["mode"].as_str(), Some("direct"));
    let period = summary["period_estimate_s"].as_float().unwrap();
    assert!((period / 7225.0 - 1.0).abs() < 0.05, "{period}");
    let matrices = summary["matrices"].as_table().unwrap();
    for (name, value) in dualspin::validation::PUBLISHED_ENTRIES {
        assert_eq!(matrices[name].as_float(), Some(value), "{name}");
    }
}

#[test]
fn eig_without_gravity_gradient_shows_the_nutation_pair() {
    let dir = TempDir::new().unwrap();
    let out = dualspin(dir.path(), &["eig", "--no-gg"]);
    assert!(out.status.success());
    let (header, rows) = read_csv(&dir.path().join("eig.csv"));
    assert_eq!(rows.len(), 6);
    let im = column(&header, "im");
    for sign in [1.0, -1.0] {
        assert!(
            rows.iter().any(|row| (sign * row[im] / 3.8686 - 1.0).abs() < 1e-3),
            "no eigenvalue near {}3.8686j",
            if sign > 0.0 { "+" } else { "-" }
        );
    }
}

#[test]
fn sweep_is_ordered_and_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "duration_s = 200.0\n");
    let first = TempDir::new().unwrap();
    let second = TempDir::new().unwrap();
    assert!(dualspin(first.path(), &["sweep", "--config", &cfg, "--jobs", "1"]).status.success());
    assert!(dualspin(second.path(), &["sweep", "--config", &cfg, "--jobs", "4"]).status.success());
    let a = std::fs::read(first.path().join("sweep.csv")).unwrap();
    let b = std::fs::read(second.path().join("sweep.csv")).unwrap();
    assert_eq!(a, b);

    let (header, rows) = read_csv(&first.path().join("sweep.csv"));
    assert_eq!(rows.len(), 6);
    let (e, i) = (column(&header, "e"), column(&header, "i_deg"));
    let grid: Vec<(f64, f64)> = rows.iter().map(|row| (row[e], row[i])).collect();
    assert_eq!(grid, vec![(0.0, 0.0), (0.0, 30.0), (0.0, 60.0), (0.2, 0.0), (0.2, 30.0), (0.2, 60.0)]);
}

#[test]
fn empty_sweep_grid_is_header_only() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "e_values = []\n");
    assert!(dualspin(dir.path(), &["sweep", "--config", &cfg]).status.success());
    let (header, rows) = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(header.len(), 10);
    assert!(rows.is_empty());
}

#[test]
fn validate_exit_code_follows_the_report() {
    let dir = TempDir::new().unwrap();
    let out = dualspin(dir.path(), &["validate"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    for k in 1..=9 {
        assert!(stdout.contains(&format!("AC-{k} ")), "AC-{k} missing");
    }
    let any_failed = stdout.lines().any(|l| l.contains(" FAIL "));
    assert_eq!(out.status.code(), Some(if any_failed { 4 } else { 0 }));

    let cfg = config(dir.path(), "a13 = 3.7114\n");
    let out = dualspin(dir.path(), &["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stdout).unwrap().contains("AC-6 FAIL"));
}
