use std::process::{Command, Output};

fn bcfwt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcfwt")).args(args).output().expect("spawn bcfwt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<f64>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn eval_fwt1d_gaussian() {
    let o = bcfwt(&["eval", "fwt1d", "--m", "0", "--n", "0", "--grid", "p:-2:2:5,q:-2:2:5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "p,q,z1_re,z1_im,z2_re,z2_im");
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 25);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert!((origin[2] - 0.5f64.sqrt()).abs() < 1e-14);
    assert!(!text.contains('\r'));
}

#[test]
fn eval_phi_grid() {
    let o = bcfwt(&["eval", "phi", "--n", "2", "--grid", "5"]);
    assert!(o.status.success());
    assert_eq!(csv_rows(&o).len(), 625);
}

#[test]
fn eval_kernel_at_zero() {
    let o = bcfwt(&["eval", "kernel", "--variant", "corrected", "--W", "0", "--grid", "3"]);
    assert!(o.status.success());
    for r in csv_rows(&o) {
        let env = (-0.25 * r[..4].iter().map(|x| x * x).sum::<f64>()).exp();
        assert!((r[4] - env).abs() < 1e-15 && r[5] == 0.0 && r[6] == 0.0 && r[7] == 0.0);
    }
}

#[test]
fn eval_json_and_fwt_aliases() {
    let o = bcfwt(&["fwt", "evalbc1d", "--m", "1", "--grid", "2", "--out", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
    assert_eq!(v["columns"][0], "x1");
    let o = bcfwt(&["fwt", "eval2d", "--grid", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "x1,x2,y1,y2,z1_re,z1_im,z2_re,z2_im");
}

#[test]
fn hermite_eval_columns() {
    let o = bcfwt(&["hermite", "eval", "--m", "1", "--n", "2", "--alpha", "0.5", "--grid", "x:0:1:2,y:0:0:1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "m,n,alpha,re_z,im_z,re_h,im_h");
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][..3], [1.0, 2.0, 0.5]);
}

#[test]
fn verify_closedform_counts() {
    let o = bcfwt(&["verify", "closedform", "--tol", "1e-8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1875);
    assert_eq!(reports[0]["schema"], "bcfwt-report/1");
}

#[test]
fn verify_is_deterministic() {
    let a = bcfwt(&["verify", "moyal1d", "--tol", "1e-8", "--seed", "7"]);
    let b = bcfwt(&["verify", "moyal1d", "--tol", "1e-8", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bcfwt(&["verify", "moyal1d", "--tol", "1e-8", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_failure_status() {
    let o = bcfwt(&["verify", "closedform", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failing report"));
}

#[test]
fn ledger_always_succeeds() {
    let o = bcfwt(&["verify", "ledger", "--tol", "1e-30"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"ledger_v1def_ratio"));
    assert!(names.contains(&"ledger_kernel_printed"));
    let kernel = v.as_array().unwrap().iter().find(|r| r["name"] == "ledger_kernel_corrected").unwrap();
    assert_eq!(kernel["config"]["note"], "normative=corrected");
}

#[test]
fn bargmann_commands() {
    let o = bcfwt(&["bargmann", "gram", "--family", "phi", "--maxorder", "3", "--order4d", "20"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 4);

    let o = bcfwt(&["bargmann", "polyorder", "--f", "conj-power", "--n", "3", "--order", "2", "--h", "0.05"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["residual"].as_f64().unwrap() > 1e-2);

    let o = bcfwt(&["bargmann", "polyorder", "--f", "psi", "--order", "0", "--h", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_errors() {
    let dir = std::env::temp_dir().join(format!("bcfwt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.toml");
    std::fs::write(&path, "sigma = 1.0\norder1d = -3\n").unwrap();
    let o = bcfwt(&["--config", path.to_str().unwrap(), "eval", "phi"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let good = dir.join("good.toml");
    std::fs::write(&good, "grid = \"p:0:0:1,q:0:0:1\"\nout = \"json\"\n").unwrap();
    let o = bcfwt(&["eval", "fwt1d", "--config", good.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"rows\""));

    let o = bcfwt(&["eval", "phi", "--sigma", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bcfwt(&["eval", "phi", "--grid", "a:b"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--grid"));
    let o = bcfwt(&["eval", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bcfwt(&["verify", "moyal1d", "--order4d", "91"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_bcfwt"))
            .env("BCFWT_THREADS", v)
            .args(["eval", "phi", "--grid", "2"])
            .output()
            .unwrap()
    };
    assert!(run("1").status.success());
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("bcfwt-out-{}.csv", std::process::id()));
    let o = bcfwt(&["eval", "psi", "--m", "1", "--n", "1", "--grid", "2", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 17);
}
