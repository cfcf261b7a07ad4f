use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hecke-signs"));
    c.env_remove("HECKE_SIGNS_CACHE");
    c
}

fn run(args: &[&str], cache: &Path) -> Output {
    bin().args(args).arg("--cache-dir").arg(cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measure_of_sign_union() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["measure", "--nu", "3", "--class", "pos"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), 0.5);
    let o = run(&["measure", "--nu", "5", "--class", "neg", "--class2", "pos"], dir.path());
    assert!((stdout(&o).trim().parse::<f64>().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn coeffs_of_delta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&["coeffs", "--form", "delta", "--limit", "100", "--out-dir", out.to_str().unwrap()], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,a_p,lambda,theta");
    assert_eq!(lines.len(), 1 + 25);
    let taus: Vec<i64> = lines[1..5].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(taus, vec![-24, 252, 4830, -16744]);
    for l in &lines[1..] {
        let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(f[2].abs() <= 2.0);
        assert!((2.0 * f[3].cos() - f[2]).abs() < 1e-12);
    }
    assert_eq!(fs::read_to_string(out.join("coeffs.csv")).unwrap(), text);
    assert!(dir.path().join("delta_100.csv").exists());
}

#[test]
fn nu_density_reports_both_normalizations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(
        &[
            "nu-density",
            "--f1",
            "delta",
            "--f2",
            "ec11",
            "--p",
            "5",
            "--x",
            "100000",
            "--band",
            "0.48,0.52",
            "--out-dir",
            out.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("no relation up to height 1000"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("nu-density.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["results"]["sign"]["report"]["nonzero_densities"]["positive"].is_number());
    assert!(report["results"]["sign"]["report"]["densities"]["positive"].is_number());
    assert_eq!(report["config"]["x"], 100000);
    assert!(report["version"].as_str().unwrap().starts_with("hecke-signs "));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o =
        run(&["prime-density", "--f1", "delta", "--f2", "ec11", "--limit", "1000", "--band", "0.9,1.0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["coeffs", "--form", "nope"],
        &["coeffs"],
        &["prime-density", "--f1", "delta", "--f2", "ec11", "--nu", "2", "--limit", "100"],
        &["measure", "--nu", "4"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
    let o = bin()
        .args(["coeffs", "--form", "ec37", "--limit", "50", "--no-build", "--cache-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out");
    fs::write(&cfg, r#"{"f1": "delta", "f2": "ec11", "limit": 2000, "nu": [1, 3], "bins": 4}"#).unwrap();
    let o = run(
        &["pair-st", "--config", cfg.to_str().unwrap(), "--bins", "2", "--out-dir", out.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let hist = fs::read_to_string(out.join("pair-histogram.csv")).unwrap();
    assert_eq!(hist.lines().count(), 1 + 4);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("pair-st.json")).unwrap()).unwrap();
    assert_eq!(report["config"]["limit"], 2000);
    assert_eq!(report["config"]["bins"], 2);

    fs::write(&cfg, r#"{"typo": 1}"#).unwrap();
    assert_eq!(run(&["measure", "--nu", "1", "--config", cfg.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["angles", "--form", "ec11", "--limit", "30"])
        .env("HECKE_SIGNS_CACHE", dir.path())
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("ec11_30.csv").exists());
    assert_eq!(stdout(&o).lines().next(), Some("p,theta"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("mine.json");
    fs::write(
        &spec,
        r#"{"k": 1, "N": 11, "t": 1, "chi": {"kind": "kronecker", "discriminant": -11}, "underlying": "ec11"}"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for run_dir in ["a", "b"] {
        let out = dir.path().join(run_dir);
        let o = run(
            &[
                "halfint-density",
                "--s1",
                "delta-half",
                "--s2",
                spec.to_str().unwrap(),
                "--nu",
                "1",
                "--nu",
                "3",
                "--limit",
                "3000",
                "--out-dir",
                out.to_str().unwrap(),
            ],
            dir.path(),
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let mut files: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        outputs
            .push(files.iter().map(|f| (f.file_name().unwrap().to_owned(), fs::read(f).unwrap())).collect::<Vec<_>>());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].len(), 3);
}

#[test]
fn weyl_boxes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "weyl",
            "--f1",
            "delta",
            "--f2",
            "ec11",
            "--p",
            "5",
            "--x",
            "20000",
            "--box",
            "0,1,0,1",
            "--box",
            "0,0.5,0,0.5",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("box [0,1]x[0,1]: proportion 1 "));
    assert!(text.contains("discrepancy"));
}

#[test]
fn relation_screen_at_five() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["relation-screen", "--f1", "delta", "--f2", "ec11", "--p", "5", "--height", "100"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("no relation up to height 100"));
}
