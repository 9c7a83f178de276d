use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselasym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn half_order_k_terminates() {
    let o = run(&[
        "eval", "--kind", "K", "--nu", "0.5", "--z-mod", "3", "--z-arg", "0", "--terms", "1",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want = (std::f64::consts::PI / 6.0).sqrt() * (-3f64).exp();
    assert!((v["value_re"].as_f64().unwrap() - want).abs() < 1e-16);
    assert_eq!(v["value_im"].as_f64(), Some(0.0));
    assert_eq!(v["remainder_bound"].as_f64(), Some(0.0));
    assert_eq!(v["value_bound"].as_f64(), Some(0.0));
    assert_eq!(v["bound_source"], "exact-termination");
    assert_eq!(v["sector_ok"], true);
}

#[test]
fn exit_codes() {
    // flag errors
    assert_eq!(
        run(&["eval", "--kind", "Q", "--z-mod", "3", "--terms", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["eval", "--kind", "K", "--nu", "1+x", "--z-mod", "3", "--terms", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "bound",
            "--kind",
            "K",
            "--z-mod",
            "3",
            "--terms",
            "2",
            "--grid-arg",
            "0:1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(run(&["figure", "--id", "3"]).status.code(), Some(1));
    // domain and sector errors
    assert_eq!(
        run(&["eval", "--kind", "K", "--z-mod", "3", "--z-arg", "5", "--terms", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["eval", "--kind", "K", "--z-mod", "-3", "--terms", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["reexpand", "--kind", "J", "--z-mod", "3", "--z-arg", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn figure_csv_is_deterministic() {
    let a = run(&["figure", "--id", "1"]);
    let b = run(&["figure", "--id", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("arg_z,scaled_remainder,paper_bound,olver_bound")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 200);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[199][0], std::f64::consts::PI);
    for r in &rows {
        assert!(r[1] <= r[2] && r[1] <= r[3], "{r:?}");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn bound_grid_rows() {
    let o = run(&[
        "bound",
        "--kind",
        "Kp",
        "--nu",
        "2+1i",
        "--z-mod",
        "8",
        "--terms",
        "6",
        "--grid-arg",
        "-1:1:3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["theorem"], "complex-order-derivative");
    assert_eq!(rows[0]["total"], rows[2]["total"]);
}

#[test]
fn reexpansion_output() {
    let o = run(&[
        "reexpand", "--kind", "K", "--z-mod", "5", "--terms", "20", "--terms2", "10", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["tail_bound"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["N"], 20);
    let o = run(&[
        "reexpand", "--kind", "K", "--z-mod", "5", "--terms", "20", "--terms2", "0", "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.0000000000000000e0,0.0000000000000000e0,"));
}

#[test]
fn output_file_and_validation() {
    let path = std::env::temp_dir().join(format!("besselasym-cli-{}.txt", std::process::id()));
    let o = run(&[
        "validate",
        "--suite",
        "signs",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert!(text.starts_with("signs:") && text.contains("0 violations"));
}

#[test]
fn quadrature_tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_besselasym"))
        .args(["validate", "--suite", "integral-reps"])
        .env("BESSELASYM_QUAD_TOL", "1e-13")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
