use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn kapprox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kapprox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

const EXAMPLE: &str = "value,probability\n1,0.3\n2,0.4\n3,0.2\n4,0.1\n";

#[test]
fn compress_with_budget() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.csv", EXAMPLE);
    let output = path(&dir, "out.csv");
    for alg in ["binsearch", "saddleback", "linear", "oracle"] {
        let out = kapprox(&[
            "compress",
            "--input",
            &input,
            "--m",
            "2",
            "--algorithm",
            alg,
            "--output",
            &output,
        ]);
        assert!(out.status.success(), "{alg}: {}", stderr(&out));
        assert!(stdout(&out).contains("support: 2"));
        let eps: f64 = stdout(&out)
            .lines()
            .next()
            .unwrap()
            .trim_start_matches("epsilon: ")
            .parse()
            .unwrap();
        assert!((eps - 0.3).abs() < 1e-12, "{alg}: {eps}");
        let written = fs::read_to_string(&output).unwrap();
        assert!(written.starts_with("value,probability\n"));
        assert_eq!(written.lines().count(), 3);
    }
}

#[test]
fn compress_with_epsilon_and_modes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "b.csv", "1,0.05\n2,0.45\n3,0.5\n");
    let output = path(&dir, "out.csv");
    let strict = kapprox(&[
        "compress",
        "--input",
        &input,
        "--epsilon",
        "0.1",
        "--output",
        &output,
    ]);
    assert!(strict.status.success());
    assert!(stdout(&strict).contains("support: 3"));
    let paper = kapprox(&[
        "compress",
        "--input",
        &input,
        "--epsilon",
        "0.1",
        "--mode",
        "paper",
        "--output",
        &output,
    ]);
    assert!(paper.status.success());
    assert!(stdout(&paper).contains("support: 2"));
}

#[test]
fn distance_both_ways() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", EXAMPLE);
    let b = write(&dir, "b.csv", "1,0.3\n2,0.4\n3,0.3\n");
    let out = kapprox(&["distance", &a, &b]);
    assert!(out.status.success());
    assert!((stdout(&out).trim().parse::<f64>().unwrap() - 0.1).abs() < 1e-12);
    let out = kapprox(&["distance", &b, &a, "--one-sided"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim().parse::<f64>().unwrap(), 0.0);
}

#[test]
fn schedule_interval() {
    let dir = TempDir::new().unwrap();
    let tree = write(
        &dir,
        "t.json",
        r#"{"type":"series","children":[
            {"type":"leaf","pmf":[[1,0.5],[2,0.5]]},
            {"type":"leaf","pmf":[[1,0.5],[2,0.5]]}]}"#,
    );
    let out = kapprox(&[
        "schedule",
        "--tree",
        &tree,
        "--trim",
        "2",
        "--algorithm",
        "linear",
        "--deadline",
        "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("miss_probability: [0, 0.25]"), "{text}");
    assert!(text.contains("budget_total: 0.25"), "{text}");
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let output = path(&dir, "bench.csv");
    let run = || {
        let out = kapprox(&[
            "bench",
            "--sizes",
            "8,16",
            "--m",
            "3",
            "--algorithms",
            "saddleback,linear",
            "--seed",
            "1",
            "--grid",
            "32",
            "--output",
            &output,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        fs::read_to_string(&output).unwrap()
    };
    let strip_time = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(i, _)| *i != 8)
                    .map(|(_, f)| f)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    let first = run();
    assert_eq!(first.lines().count(), 5);
    assert!(first.starts_with(
        "n,m,algorithm,epsilon,dual_calls,step_count,iterations,peak_regions,wall_nanos,seed"
    ));
    assert_eq!(strip_time(&first), strip_time(&run()));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "a.csv", EXAMPLE);
    let output = path(&dir, "out.csv");
    assert_eq!(
        kapprox(&["compress", "--input", &input, "--output", &output])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        kapprox(&["compress", "--input", &input, "--m", "0", "--output", &output])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kapprox(&["frobnicate"]).status.code(), Some(2));

    let missing = path(&dir, "missing.csv");
    let out = kapprox(&[
        "compress", "--input", &missing, "--m", "2", "--output", &output,
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("missing.csv"));

    let big: String = (0..25).map(|i| format!("{i},0.04\n")).collect();
    let big = write(&dir, "big.csv", &big);
    let out = kapprox(&[
        "compress",
        "--input",
        &big,
        "--m",
        "2",
        "--algorithm",
        "oracle",
        "--output",
        &output,
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
}

#[test]
fn malformed_inputs_get_diagnostics() {
    let dir = TempDir::new().unwrap();
    let output = path(&dir, "out.csv");
    let cases = [
        ("bad1.csv", "1,0.5\n2,abc\n", "line 2"),
        ("bad2.csv", "1,0.5,9\n", "line 1"),
        ("bad3.csv", "", "at least one"),
        ("bad4.csv", "1,0.2\n2,0.2\n", "total mass"),
        ("bad5.csv", "1,-0.5\n2,1.5\n", "negative mass"),
    ];
    for (name, text, needle) in cases {
        let input = write(&dir, name, text);
        let out = kapprox(&[
            "compress", "--input", &input, "--m", "2", "--output", &output,
        ]);
        assert_eq!(out.status.code(), Some(3), "{name}");
        let err = stderr(&out);
        assert!(err.contains(needle) && err.contains(name), "{name}: {err}");
        assert!(!err.contains("panicked"));
    }
    let tree = write(
        &dir,
        "t.json",
        r#"{"type":"series","children":[{"type":"leaf","pmf":[[1,1]]},{"type":"loop"}]}"#,
    );
    let out = kapprox(&[
        "schedule",
        "--tree",
        &tree,
        "--trim",
        "2",
        "--deadline",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("root.children[1]"),
        "{}",
        stderr(&out)
    );
}
