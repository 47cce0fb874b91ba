use std::path::PathBuf;
use std::process::{Command, Output};

fn dzeros(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dzeros")).args(args).env_remove("ZETA_ZEROS_DIR").output().expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn bound_prints_breakdown() {
    let o = dzeros(&["bound", "--field", "Q", "--T", "11", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,a,sigma,Q,main_term,middle_term,degree_term,total"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[7] - 46.55).abs() < 0.01);
    assert!((row[4] + row[5] + row[6] - row[7]).abs() < 1e-8);
}

#[test]
fn output_is_deterministic() {
    for args in [&["bound", "--T", "50", "--a", "0.5"][..], &["table", "--T-range", "11:14:0.5"], &["measure", "solve"]] {
        let a = dzeros(args);
        let b = dzeros(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&dzeros(&["mult", "--T", "10", "--sigma", "0.75"]));
    let json = stdout(&dzeros(&["--json", "mult", "--T", "10", "--sigma", "0.75"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, header);
    for (k, x) in header.iter().zip(row) {
        assert_eq!(v[k].as_f64().unwrap(), x, "{k}");
    }
    assert!((v["total"].as_f64().unwrap() - 13.93).abs() < 0.005);
}

#[test]
fn corollaries() {
    let o = dzeros(&["cor1", "--T", "10"]);
    assert!(stdout(&o).contains(",17.74"), "{}", stdout(&o));
    let ok = dzeros(&["cor2-check", "--log-T", "1e30"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).trim_end().ends_with("true,true,true,true"));
    let bad = dzeros(&["cor2-check", "--L", "200000"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    let o = dzeros(&["bound", "--T", "11"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dzeros(&["bound", "--T", "5", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DomainError"));
    let o = dzeros(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dzeros(&["compare", "--a", "1", "--T-range", "11:12:0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dzeros(&["table", "--T-range", "12:11:1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_descriptor_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    std::fs::write(&path, "# Q(sqrt 5)\ndegree = 2\nr1 = 2\nr2 = 0\nlog_disc = 1.6094379124341003\n").unwrap();
    let o = dzeros(&["bound", "--field", path.to_str().unwrap(), "--T", "11", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let q = dzeros(&["bound", "--T", "11", "--a", "1"]);
    let total = |o: &Output| stdout(o).lines().nth(1).unwrap().rsplit(',').next().unwrap().parse::<f64>().unwrap();
    assert!(total(&o) > total(&q));
    std::fs::write(&path, "degree = 2\nr1 = 1\nr2 = 0\nlog_disc = 1\n").unwrap();
    let bad = dzeros(&["bound", "--field", path.to_str().unwrap(), "--T", "11", "--a", "1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("SignatureMismatch"));
}

#[test]
fn measure_solve_and_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let o = dzeros(&["measure", "solve", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b1,0.355"));
    let c = dzeros(&["measure", "check", "--file", path.to_str().unwrap(), "--a", "2"]);
    assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
    assert!(stdout(&c).contains("holds,true"));
    // the three-atom measure at a = 1, alpha = 1/4 does not cover
    std::fs::write(&path, "alpha,0.25\nwindow_a,1\ncenter,weight\n0,0.0320614\n0.7071067811865476,0.1369863\n").unwrap();
    let c = dzeros(&["measure", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(1), "{}", stdout(&c));
    assert!(stdout(&c).contains("holds,false"));
}

#[test]
fn compare_uses_env_directory() {
    let o = Command::new(env!("CARGO_BIN_EXE_dzeros"))
        .args(["compare", "--field", "Q", "--a", "1,1.9", "--T-range", "11:12:0.5"])
        .env("ZETA_ZEROS_DIR", data_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "T,a,empirical,grh_bound,uncond_bound,grh_slack,uncond_slack");
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines[1].starts_with("11,1,0,46.54497"));
    assert!(lines[2].starts_with("11,1.9,0,NA,"));
    let explicit = dzeros(&["compare", "--zeros", data_dir().join("zeta_zeros_1e5.txt").to_str().unwrap(), "--a", "1,1.9", "--T-range", "11:12:0.5"]);
    assert_eq!(explicit.stdout, o.stdout);
}

#[test]
fn verify_suites() {
    let o = dzeros(&["verify", "--suite", "lemmas"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("[lemmas] PASS")));
    let o = dzeros(&["verify", "--suite", "measures"]);
    assert_eq!(o.status.code(), Some(0));
    // the stated Lorentz constants do not hold, so this suite fails
    let o = dzeros(&["verify", "--suite", "specfun"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL lorentz_kernels"));
    let o = dzeros(&["--json", "verify", "--suite", "riemann", "--zeros", data_dir().join("zeta_zeros_1e5.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"dual_oracle") && names.contains(&"empirical_sweep"));
}

#[test]
fn table_marks_out_of_domain_cells() {
    let o = dzeros(&["table", "--T-range", "10:11:1", "--sigma", "0.75", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines[0], "quantity,T,parameter,value");
    assert!(lines[1].starts_with("f_tilde,10,0.75,92.88"));
    assert_eq!(lines[2], "bound_window,10,1,NA");
    assert!(lines[4].starts_with("bound_window,11,1,46.54"));
}
