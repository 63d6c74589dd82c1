use std::fs;
use std::process::{Command, Output};

fn optocorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optocorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HEADER: &str = "preset,subsystem,sweep_name,sweep_value,alpha,beta,r,n_th,T_kelvin,E_N,D";

#[test]
fn vacuum_sweep_is_all_zero() {
    let o = optocorr(&[
        "sweep", "--vary", "r", "--from", "0", "--to", "0", "--beta", "0", "--nth", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[9], "0.00000000000e0");
        assert_eq!(fields[10], "0.00000000000e0");
    }
}

#[test]
fn preset_output_is_byte_stable() {
    let a = optocorr(&["preset", "fig7", "--grid", "17"]);
    let b = optocorr(&["preset", "fig7", "--grid", "17", "--sequential"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 3 * 17);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.csv");
    let o = optocorr(&[
        "preset",
        "fig4",
        "--grid",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(HEADER));
    assert!(text.lines().skip(1).all(|l| l.starts_with("fig4,hc,r,")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "alpha = 0.01\nbeta = 50.0\nr = 2.0\nnth = 10.0\nvary = \"beta\"\nfrom = 0.0\nto = 100.0\ngrid = 3\nsubsystems = \"mm\"\nmeasures = \"en\"\n",
    )
    .unwrap();
    let o = optocorr(&["sweep", "--config", cfg.to_str().unwrap(), "--nth", "25"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(row[1], "mm");
        assert_eq!(row[4], "1.00000000000e-2");
        assert_eq!(row[7], "2.50000000000e1");
        assert_eq!(row[10], "");
        // Above n_th = 25 the mechanical pair stays separable up to beta = 100.
        assert_eq!(row[9], "0.00000000000e0");
    }
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "alpah = 0.1\n").unwrap();
    let o = optocorr(&["thresholds", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thresholds_table() {
    let o = optocorr(&["thresholds", "--alpha", "0.01", "--r", "2", "--nth", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let beta0_mm = text
        .lines()
        .find(|l| l.starts_with("beta0,mm,"))
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse::<f64>()
        .unwrap();
    assert!((beta0_mm - 25.84).abs() < 0.005 * 25.84);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["sweep", "--vary", "x", "--from", "0", "--to", "1"],
        vec![
            "sweep",
            "--vary",
            "r",
            "--from",
            "0",
            "--to",
            "1",
            "--subsystems",
            "mx",
        ],
        vec![
            "sweep",
            "--vary",
            "r",
            "--from",
            "0",
            "--to",
            "1",
            "--measures",
            "foo",
        ],
        vec![
            "sweep", "--vary", "r", "--from", "0", "--to", "1", "--grid", "1",
        ],
        vec![
            "sweep",
            "--vary",
            "r",
            "--from",
            "0",
            "--to",
            "1",
            "--nth",
            "1",
            "--temp-kelvin",
            "1e-4",
        ],
        vec![
            "sweep", "--vary", "r", "--from", "0", "--to", "1", "--alpha", "-1",
        ],
        vec!["preset", "fig9"],
        vec!["preset", "fig2", "--beta", "3"],
        vec!["validate", "--trials", "0"],
        vec!["--no-such-flag"],
        vec!["sweep", "--log", "--linear"],
    ] {
        let o = optocorr(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn validate_passes_and_is_deterministic() {
    let a = optocorr(&["validate", "--trials", "10", "--seed", "7"]);
    let b = optocorr(&["validate", "--trials", "10", "--seed", "7"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a).trim(),
        "trial,check,alpha,beta,r,n_th,value,limit"
    );
}

#[test]
fn injected_fault_fails_validation() {
    let o = optocorr(&["validate", "--trials", "1", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text
        .lines()
        .skip(1)
        .any(|l| l.split(',').nth(1) == Some("oracle_equivalence")));
}

#[test]
fn help_exits_zero() {
    let o = optocorr(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("preset"));
}
