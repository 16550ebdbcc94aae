//! End-to-end checks of the command-line interface and its exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rdweno"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rdweno-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn list_presets_names_every_preset() {
    let out = bin().arg("list-presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "fisher-table1",
        "zeldovich-table",
        "nws-table",
        "bistable-table",
        "lv-table",
        "fisher-stability",
        "zeldovich-stability",
        "nws-stability",
        "bistable-stability",
        "lv-stability",
        "nws-speed",
        "nws-cfl",
    ] {
        assert!(text.contains(name), "missing preset {name} in:\n{text}");
    }
}

#[test]
fn solve_writes_report_and_prints_summary() {
    let dir = temp_dir("solve");
    let config = dir.join("run.toml");
    fs::write(
        &config,
        "preset = \"fisher-stability\"\nt_final = 8e-4\n",
    )
    .unwrap();
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config)
        .args(["--override", "scheme.kind=fd6"])
        .arg("--out")
        .arg(dir.join("results"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("fisher"), "{stdout}");
    assert!(stdout.contains("L1 ="), "{stdout}");
    let report = fs::read_to_string(dir.join("results/report.csv")).unwrap();
    assert!(report.lines().next().unwrap().starts_with("preset,model"));
    assert!(report.contains(",fd6,"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_reports_blowup_with_exit_zero() {
    let dir = temp_dir("blowup");
    let config = dir.join("run.toml");
    fs::write(
        &config,
        "preset = \"fisher-stability\"\n\n[scheme]\nkind = \"weno-lsz\"\n",
    )
    .unwrap();
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.join("results"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("blew up"), "{stdout}");
    let report = fs::read_to_string(dir.join("results/report.csv")).unwrap();
    assert!(report.contains("blowup"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors_exit_with_code_two() {
    let dir = temp_dir("badcfg");
    let config = dir.join("bad.toml");
    fs::write(&config, "preset = \"no-such-preset\"\n").unwrap();
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("no-such-preset"), "{stderr}");

    fs::write(&config, "preset = \"fisher-table1\"\nn_cells = 4\n").unwrap();
    let out = bin()
        .args(["solve", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_table_family_exits_with_code_two() {
    let out = bin()
        .args(["table", "--family", "nope", "--out", "/tmp"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_writes_the_family_csv() {
    let dir = temp_dir("table");
    let out = bin()
        .args(["table", "--family", "nws-cfl", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.join("nws-cfl.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,model,scheme,alpha,cfl,n_cells,species,l1,l2,linf,order_l1,status,blowup_t,front_speed"
    );
    assert_eq!(lines.count(), 9);
    assert!(csv.contains("nws-cfl,nws,cweno,2,0.13,300,0"));
    assert!(dir.join("plot_nws-cfl.py").exists());
    fs::remove_dir_all(&dir).ok();
}
