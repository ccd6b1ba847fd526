use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_x1scatter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (String, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_owned();
    (
        header,
        lines
            .map(|l| l.split(',').map(str::to_owned).collect())
            .collect(),
    )
}

#[test]
fn smatrix_sweep_is_unitary() {
    let o = run(&[
        "smatrix",
        "--A",
        "2.5",
        "--B",
        "4",
        "--k-min",
        "0.1",
        "--k-max",
        "5",
        "--k-steps",
        "50",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, "k,re_s,im_s,abs_s,delta,re_s_gpt,im_s_gpt");
    assert_eq!(rows.len(), 50);
    for row in &rows {
        let abs: f64 = row[3].parse().unwrap();
        assert!((abs - 1.0).abs() < 1e-10);
    }
    assert_eq!(rows[0][0], "1.0000000000000001e-1");
    assert_eq!(rows[49][0], "5.0000000000000000e0");
}

#[test]
fn bound_states_for_a_two_and_a_half() {
    let o = run(&["bound-states", "--A", "2.5", "--B", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        header,
        "nu,energy,norm_analytic,norm_quadrature,schrodinger_residual,energy_shooting"
    );
    let energies: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(energies, [0.0, 4.0, 6.0]);
    for row in &rows {
        let shot: f64 = row[5].parse().unwrap();
        let exact: f64 = row[1].parse().unwrap();
        assert!((shot - exact).abs() < 1e-6);
    }
}

#[test]
fn headers_are_stable() {
    let expect = [
        ("potential", "r,v_gpt,v_extended"),
        ("phase-shift", "k,delta_gpt,delta_extended"),
    ];
    for (cmd, header) in expect {
        let o = run(&[cmd, "--k-steps", "4", "--r-steps", "5"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert_eq!(stdout(&o).lines().next().unwrap(), header);
    }
    let o = run(&["potential", "--r-steps", "5"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "phase-shift",
        "--A",
        "1.2",
        "--B",
        "3.7",
        "--k-steps",
        "64",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_envelope() {
    let o = run(&[
        "smatrix",
        "--A",
        "0.5",
        "--B",
        "2",
        "--k-steps",
        "3",
        "--kind",
        "gpt",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "smatrix");
    assert_eq!(v["params"]["A"], 0.5);
    assert_eq!(v["params"]["kind"], "gpt");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // with --kind gpt both column groups describe the same potential
    assert_eq!(rows[1]["re_s"], rows[1]["re_s_gpt"]);
}

#[test]
fn verify_single_fixture_passes() {
    let o = run(&["verify", "--A", "0.5", "--B", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(
        text.lines()
            .filter(|l| l.trim_start().starts_with("PASS"))
            .count()
            >= 10
    );
}

#[test]
fn verify_csv_rows() {
    let o = run(&["verify", "--A", "2.5", "--B", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, "a,b,check,measured,tolerance,status");
    assert!(rows.iter().all(|r| r.last().unwrap() == "PASS"));
}

#[test]
fn constraint_violation_is_a_usage_error() {
    let o = run(&["smatrix", "--A", "2.5", "--B", "3.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("B > A + 1 > 1"));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["smatrix", "--A", "2.5"]).status.code(), Some(1));
    assert_eq!(
        run(&["smatrix", "--k-min", "0.0005"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["smatrix", "--k-steps", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["potential", "--r-min", "5", "--r-max", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("x1scatter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pot.csv");
    let o = run(&[
        "potential",
        "--r-steps",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
    let bad = dir.join("missing").join("x.csv");
    assert_eq!(
        run(&["potential", "--output", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
