//! End-to-end runs of the `stgrf` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn stgrf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stgrf"))
        .args(args)
        .env_remove("STGRF_THREADS")
        .output()
        .expect("binary runs")
}

fn simulate_to(dir: &Path, name: &str, seed: &str) -> Vec<u8> {
    let out = dir.join(name);
    let o = stgrf(&[
        "simulate",
        "--spectrum",
        "coef:nu1=3,nu2=2",
        "--nlat",
        "6",
        "--nlon",
        "8",
        "--times",
        "0,0.5",
        "--J",
        "8",
        "--K",
        "6",
        "--seed",
        seed,
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read(out).unwrap()
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = simulate_to(dir.path(), "a.csv", "11");
    let b = simulate_to(dir.path(), "b.csv", "11");
    let c = simulate_to(dir.path(), "c.csv", "12");
    assert_eq!(a, b);
    assert_ne!(a, c);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("colatitude_rad,longitude_rad,time,value")
    );
    assert_eq!(lines.count(), 6 * 8 * 2);
    let prov = fs::read_to_string(dir.path().join("a.csv.provenance")).unwrap();
    assert!(prov.contains("seed = 11"), "{prov}");
}

#[test]
fn bad_arguments_exit_with_two() {
    for args in [
        &["simulate", "--spectrum", "coef:nu1=-3,nu2=2"][..],
        &[
            "simulate",
            "--spectrum",
            "coef:nu1=3,nu2=2",
            "--seed",
            "minus",
        ][..],
        &["bound"][..],
        &["bound", "--spectrum", "coef:nu1=3,nu2=2", "--epsilon", "x"][..],
    ] {
        let o = stgrf(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        "[spectrum]\nspectrum = coef:nu1=3,nu2=2\n[truncation]\nJ = 50\nK = 50\n[bound]\nepsilon = 8.2\n",
    )
    .unwrap();
    let file_only = dir.path().join("file.csv");
    let o = stgrf(&[
        "--config",
        cfg.to_str().unwrap(),
        "bound",
        "-o",
        file_only.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let flagged = dir.path().join("flag.csv");
    let o = stgrf(&[
        "--config",
        cfg.to_str().unwrap(),
        "bound",
        "--epsilon",
        "4",
        "-o",
        flagged.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let a = fs::read_to_string(file_only).unwrap();
    let b = fs::read_to_string(flagged).unwrap();
    assert!(a.contains("0.0502674"), "{a}");
    assert_ne!(a, b);
    assert!(!b.contains("0.0502674"));
}

#[test]
fn misplaced_config_key_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "[grid]\nseed = 3\n").unwrap();
    let o = stgrf(&["--config", cfg.to_str().unwrap(), "bound"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed"));
}

#[test]
fn kernel_grid_and_table_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("k.csv");
    let o = stgrf(&[
        "kernel-grid",
        "--spectrum",
        "coef:nu1=3,nu2=2",
        "--J",
        "10",
        "--K",
        "10",
        "--n-theta",
        "5",
        "--n-u",
        "3",
        "-o",
        grid.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(grid).unwrap().lines().count(), 1 + 5 * 3);
    let table = dir.path().join("t.csv");
    let o = stgrf(&[
        "table",
        "--spectrum",
        "coef",
        "--scenarios",
        "3:2,2:3",
        "--J",
        "50,100",
        "--K",
        "50,100",
        "-o",
        table.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        fs::read_to_string(table).unwrap().lines().count(),
        1 + 2 * 4
    );
}
