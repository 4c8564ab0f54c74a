use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mixmin::cli::{curve_value, format_value, Curve};
use mixmin::ModelParams;

fn mixmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixmin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/goldens")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn sweep(dir: &Path, k: &str, steps: &str, curves: &str, format: &str) -> Output {
    let dir = dir.to_str().unwrap();
    mixmin(&[
        "sweep",
        "--K",
        k,
        "--p-start",
        "0.01",
        "--p-end",
        "0.5",
        "--steps",
        steps,
        "--curves",
        curves,
        "--format",
        format,
        "--out-dir",
        dir,
    ])
}

fn parse_dat(text: &str) -> Vec<(f64, f64)> {
    text.lines()
        .map(|l| {
            let mut it = l.split(' ').map(|x| x.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

#[test]
fn mi_matches_goldens() {
    for (p, alpha, file) in [
        ("0.5", "1,1,2,4,8,16", "mi_K5_p0.5.txt"),
        ("0.25", "1,1,1,2,3,4", "mi_K5_p0.25.txt"),
        ("0.01", "1,1,1,1,1,1", "mi_K5_p0.01.txt"),
    ] {
        let o = mixmin(&["mi", "--K", "5", "--p", p, "--alpha", alpha]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), golden(file));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(mixmin(&["--help"]).status.code(), Some(0));
    assert_eq!(
        mixmin(&["mi", "--p", "0.7", "--alpha", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mixmin(&["mi", "--p", "0.2", "--alpha", "1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mixmin(&["optimal", "--K", "9", "--p", "0.2"]).status.code(),
        Some(2)
    );
    assert_eq!(mixmin(&["no-such-command"]).status.code(), Some(2));
    let o = mixmin(&["mi", "--K", "3", "--p", "0.2", "--alpha", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn sweep_rows_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let o = sweep(dir.path(), "6", "7", "uniform,binary", "dat");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let listed: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(listed.len(), 2);
    let dat = std::fs::read_to_string(dir.path().join("uniform_K6.dat")).unwrap();
    let rows = parse_dat(&dat);
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0].0, 0.01);
    assert_eq!(rows[6].0, 0.5);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));

    let o = sweep(dir.path(), "6", "7", "linear", "csv");
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("linear_K6.csv")).unwrap();
    assert!(csv.starts_with("p,value\r\n"));
    assert_eq!(csv.matches("\r\n").count(), 8);
}

#[test]
fn sweep_values_equal_library_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = sweep(
        dir.path(),
        "5",
        "6",
        "greedy,blu,optimal,bound_trivial",
        "dat",
    );
    assert!(o.status.success());
    for curve in [
        Curve::Greedy,
        Curve::Blu,
        Curve::Optimal,
        Curve::BoundTrivial,
    ] {
        let text =
            std::fs::read_to_string(dir.path().join(format!("{}_K5.dat", curve.name()))).unwrap();
        for line in text.lines() {
            let (p, v) = line.split_once(' ').unwrap();
            let params = ModelParams::new(p.parse().unwrap(), 5).unwrap();
            let expected = curve_value(curve, &params).unwrap().value();
            assert_eq!(v, format_value(expected), "{} at p={p}", curve.name());
        }
    }
}

#[test]
fn sweep_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(
            sweep(d.path(), "8", "9", "greedy,blu,bound_geometric", "csv")
                .status
                .success()
        );
    }
    for name in ["greedy_K8.csv", "blu_K8.csv", "bound_geometric_K8.csv"] {
        assert_eq!(
            std::fs::read(a.path().join(name)).unwrap(),
            std::fs::read(b.path().join(name)).unwrap()
        );
    }
}

#[test]
fn swept_bound_lies_below_swept_greedy() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        sweep(dir.path(), "15", "25", "greedy,bound_geometric", "dat")
            .status
            .success()
    );
    let read = |n: &str| parse_dat(&std::fs::read_to_string(dir.path().join(n)).unwrap());
    let greedy = read("greedy_K15.dat");
    let bound = read("bound_geometric_K15.dat");
    assert_eq!(greedy.len(), bound.len());
    for (g, b) in greedy.iter().zip(&bound) {
        assert_eq!(g.0, b.0);
        assert!(b.1 <= g.1 + 1e-9, "p={}: bound {} greedy {}", g.0, b.1, g.1);
    }
}

#[test]
fn pmf_output_sums_to_one() {
    let o = mixmin(&["pmf", "--K", "6", "--p", "0.3", "--name", "binary"]);
    assert!(o.status.success());
    let rows = parse_dat(&stdout(&o));
    assert_eq!(rows.len(), 64);
    let total: f64 = rows.iter().map(|r| r.1).sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn verify_kkt_reports_ok() {
    let o = mixmin(&[
        "verify-kkt",
        "--K",
        "2",
        "--p",
        "0.4",
        "--n",
        "20",
        "--solve",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "status ok"));
}
