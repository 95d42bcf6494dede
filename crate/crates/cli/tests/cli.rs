use std::path::Path;
use std::process::Command;
use theta_spectrum::io::ZeroCache;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_theta-spectrum"))
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(name);
    let status = bin()
        .args(args)
        .arg("--output")
        .arg(&path)
        .env_remove("THETA_SPECTRUM_CACHE")
        .status()
        .unwrap();
    let body = std::fs::read_to_string(&path).unwrap_or_default();
    (status.code().unwrap(), body)
}

#[test]
fn spectrum_solve_writes_one_root_per_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let (code, csv) = run_to(
        dir.path(),
        "s.csv",
        &["spectrum-solve", "--a", "3", "--t-max", "60", "--no-timestamp"],
    );
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "j,t_j,weight,norm_sq,tau_j,residual,deriv_cert");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let t: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    // every row but the last carries the root of its bracket
    assert!(rows.len() > 40);
    for (k, r) in rows[..rows.len() - 1].iter().enumerate() {
        let tau: f64 = r[4].parse().unwrap();
        assert!(t[k] < tau && tau < t[k + 1], "row {k}");
        assert!(r[6].parse::<f64>().unwrap() > 0.0);
    }
    assert_eq!(rows.last().unwrap()[4], "");
}

#[test]
fn casimir_json_has_the_reference_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_to(dir.path(), "c.json", &["casimir", "--n", "4", "--preset", "section5"]);
    assert_eq!(code, 0);
    assert!(json.contains("\"4*s^2 + 4*sf^2 - 8*sf - 4*s\""));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["split_check"]["holds"], true);
    assert_eq!(v["central"], true);
}

#[test]
fn intertwine_json_reports_the_specialization() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_to(dir.path(), "i.json", &["intertwine", "--word", "2,1,3,2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 4);
    assert_eq!(v["end"], serde_json::json!(["s3 + 2", "s4 + 2", "s1 - 2", "s2 - 2"]));
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn ms_norm_json() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_to(dir.path(), "m.json", &["ms", "norm", "--a", "3", "--t", "12.5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["closed_form"].as_f64().unwrap() > 0.0);
    assert!(v["residual"].as_f64().unwrap() < 1e-6);
    assert!(v.get("extrapolated").is_some());
}

#[test]
fn unknown_flag_exits_one_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let (code, body) = run_to(dir.path(), "x.csv", &["spectrum-solve", "--bogus"]);
    assert_eq!(code, 1);
    assert!(body.is_empty());
    assert!(!dir.path().join("x.csv").exists());
}

#[test]
fn bad_values_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_to(dir.path(), "a.csv", &["count", "--a", "0.5"]).0, 1);
    assert_eq!(run_to(dir.path(), "b.csv", &["count", "--t-max", "400"]).0, 1);
    assert_eq!(run_to(dir.path(), "c.csv", &["spectrum-solve", "--theta", "nope"]).0, 1);
    assert!(!dir.path().join("a.csv").exists());
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("spectrum-solve"));
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scattering-zeros", "--a", "3", "--t-max", "40", "--no-timestamp"];
    let (c1, one) = run_to(dir.path(), "1.csv", &args);
    let (c2, two) = run_to(dir.path(), "2.csv", &args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(one, two);
    assert!(!one.starts_with('#'));
    let (_, stamped) = run_to(dir.path(), "3.csv", &args[..5]);
    assert!(stamped.starts_with("# generated"));
    assert_eq!(stamped.split_once('\n').unwrap().1, one);
}

#[test]
fn count_matches_winding() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_to(dir.path(), "n.json", &["count", "--a", "2", "--t-max", "100"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["observed"].as_i64(), v["winding"].as_i64());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let st = bin()
            .args([
                "scattering-zeros",
                "--a",
                "3",
                "--t-max",
                "30",
                "--no-timestamp",
                "--output",
            ])
            .arg(&out)
            .env("THETA_SPECTRUM_CACHE", &cache)
            .status()
            .unwrap();
        assert!(st.success());
        std::fs::read_to_string(out).unwrap()
    };
    let first = run("first.csv");
    let cached = cache.join(ZeroCache::file_name(3.0, 30.0, 0.01));
    let on_disk = ZeroCache::read(&cached).unwrap();
    assert_eq!(ZeroCache::from_csv(&first).unwrap(), on_disk);
    // the second run reads the cache and must reproduce the first exactly
    assert_eq!(run("second.csv"), first);
}

#[test]
fn correlate_emits_histograms() {
    let dir = tempfile::tempdir().unwrap();
    let (code, csv) = run_to(dir.path(), "h.csv", &["correlate", "--no-timestamp"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("set,lo,hi,count,density\n"));
    assert!(csv.lines().any(|l| l.starts_with("line,")) && csv.lines().any(|l| l.starts_with("theta,")));
}
