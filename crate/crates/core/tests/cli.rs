use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn neoseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neoseg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn synth_writes_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("a.ppm");
    let txt = dir.path().join("b.ppm");
    stdout(&neoseg(&["synth", "--width", "20", "--height", "8", "--out", p(&bin)]));
    stdout(&neoseg(&["synth", "--width", "20", "--height", "8", "--ascii", "--out", p(&txt)]));
    let a = neoseg::raster::read_ppm(&fs::read(&bin).unwrap()).unwrap();
    let b = neoseg::raster::read_ppm(&fs::read(&txt).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(fs::read(&txt).unwrap().starts_with(b"P3"));
}

#[test]
fn run_with_preset_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&neoseg(&[
        "run",
        "--preset",
        "paper-test-9",
        "--out",
        p(dir.path()),
        "generations=30",
        "--pop=12",
        "synth_width=24",
        "synth_height=24",
    ]));
    let rows = neoseg::harness::parse_summary_csv(&out).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].generations, 30);
    assert!(dir.path().join("summary.csv").is_file());
    assert!(dir.path().join("timing.csv").is_file());
}

#[test]
fn matrix_then_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    fs::write(
        &spec,
        "generations = 20\npop = 10\nsynth_width = 16\nsynth_height = 16\n\
         [run C-1]\nschedule = C\nseed = 1\n[run C-2]\nschedule = C\nseed = 2\n\
         [run LD-1]\nschedule = LD\nseed = 1\n[run LD-2]\nschedule = LD\nseed = 2\n",
    )
    .unwrap();
    let out_dir = dir.path().join("m");
    stdout(&neoseg(&["matrix", "--spec", p(&spec), "--out", p(&out_dir)]));
    let summary = out_dir.join("summary.csv");
    let table = stdout(&neoseg(&["aggregate", p(&summary)]));
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "strategy,R=1,R=2,average");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("average,"));

    let by_schedule = stdout(&neoseg(&["aggregate", "--by", "schedule", p(&summary)]));
    assert_eq!(by_schedule.lines().count(), 4);
}

#[test]
fn matrix_preset_table2_small() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&neoseg(&[
        "matrix",
        "--preset",
        "table2",
        "--generations",
        "8",
        "--out",
        p(dir.path()),
        "pop=6",
        "synth_width=16",
        "synth_height=16",
    ]));
    assert_eq!(neoseg::harness::parse_summary_csv(&out).unwrap().len(), 35);
}

#[test]
fn init_report_and_schedules() {
    let report = stdout(&neoseg(&["init-report", "--seeds", "1,2", "synth_width=16", "synth_height=16"]));
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines[0], "seed,best,worst,mean,stddev,sum");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,"));

    let curves = stdout(&neoseg(&["schedules", "--g-max", "10"]));
    assert_eq!(curves.lines().count(), 12);
    assert!(curves.starts_with("g,"));
}

#[test]
fn errors_exit_nonzero() {
    for args in [
        vec!["run", "bogus_key=1"],
        vec!["run", "not-an-assignment"],
        vec!["run", "--preset", "no-such-preset"],
        vec!["matrix"],
        vec!["aggregate", "/nonexistent/summary.csv"],
        vec!["synth", "--colors", "1", "--out", "/dev/null"],
    ] {
        let o = neoseg(&args);
        assert!(!o.status.success(), "{args:?} should fail");
        assert!(String::from_utf8_lossy(&o.stderr).contains("neoseg: "), "{args:?}");
    }
    assert!(!neoseg(&["frobnicate"]).status.success());
}
