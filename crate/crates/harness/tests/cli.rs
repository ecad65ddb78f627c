use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn uavnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavnet")).args(args).output().unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn collision_at_contact_is_certain() {
    let o = uavnet(&["collision", "--xi", "1.5", "--r", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"p_coll\": 1.0}\n");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(uavnet(&["collision", "--bogus"]).status.code(), Some(1));
    assert_eq!(uavnet(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(uavnet(&["--set", "nope=1", "band"]).status.code(), Some(1));
    assert_eq!(uavnet(&["--config", "/definitely/missing.cfg", "band"]).status.code(), Some(1));
}

#[test]
fn numeric_failures_exit_two() {
    let o = uavnet(&["collision", "--r=-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("1.5,-1.0,,"));
}

#[test]
fn band_table() {
    let cfg = config("iv-d.cfg");
    let o = uavnet(&["band", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,value"));
    let keys: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert!(keys.contains(&"r_min") && keys.contains(&"r_max"), "{text}");
}

#[test]
fn shipped_configs_load() {
    for name in ["defaults.cfg", "iv-d.cfg"] {
        let cfg = config(name);
        let o = uavnet(&["--config", cfg.to_str().unwrap(), "collision", "--r", "10"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn coverage_without_sampling_has_no_mc_columns() {
    let o = uavnet(&["coverage", "--r", "5,10", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("r,p_analytic,error"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn sweep_range_syntax() {
    let o = uavnet(&["sweep", "--metric", "rmin_vs_xi", "--grid", "xi=1:3:1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("1.0,"));
}

#[test]
fn out_flag_writes_file_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rmin.csv");
    let o = uavnet(&["--out", path.to_str().unwrap(), "sweep", "--metric", "rmin_vs_xi", "--grid", "xi=1.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("xi,r_min,error\n"));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rmin.csv.meta.json")).unwrap()).unwrap();
    assert!(meta.is_object());
}

#[test]
fn route_is_seed_deterministic() {
    let cfg = config("iv-d.cfg");
    let args = ["--config", cfg.to_str().unwrap(), "--seed", "9", "--format", "json", "route"];
    let (a, b) = (uavnet(&args), uavnet(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 24);
}

#[test]
fn reproduce_figures_writes_every_panel() {
    let dir = tempfile::tempdir().unwrap();
    let o = uavnet(&["reproduce-figures", "--trials", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for i in 6..=14 {
        let csv = dir.path().join(format!("fig{i}.csv"));
        let text = std::fs::read_to_string(&csv).unwrap();
        assert!(text.lines().count() > 1, "fig{i} is empty");
        assert!(dir.path().join(format!("fig{i}.csv.meta.json")).exists());
    }
}

#[test]
fn validate_is_byte_stable() {
    let args = ["validate", "--seed", "42", "--trials", "20000"];
    let (a, b) = (uavnet(&args), uavnet(&args));
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("check,statistic,tolerance,status\n"));
}

#[test]
fn marginal_coverage_point_query() {
    let o = uavnet(&["coverage", "--marginal", "--trials", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let p = v["p_cov"].as_f64().unwrap();
    assert!(p > 0.0 && p < 1.0);
}
