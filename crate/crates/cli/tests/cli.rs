use std::path::Path;
use std::process::{Command, Output};

fn k2net(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k2net"))
        .args(args)
        .output()
        .expect("failed to run k2net")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn run_ok(args: &[&str]) -> String {
    let out = k2net(args);
    assert!(
        out.status.success(),
        "k2net {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field_after(text: &str, prefix: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(prefix))
        .unwrap_or_else(|| panic!("no line starting with {prefix:?} in\n{text}"));
    line[prefix.len()..].trim().parse().unwrap()
}

#[test]
fn score_worked_example() {
    let out = run_ok(&[
        "score",
        "bundled:bs1",
        "bundled:table1",
        "--prior",
        "all-dags",
    ]);
    let p = field_after(&out, "P(B_S, D) =");
    assert!((p - 8.91e-11).abs() < 0.01e-11, "{p}");

    let out = run_ok(&[
        "score",
        "bundled:bs2",
        "bundled:table1",
        "--prior",
        "all-dags",
    ]);
    let p = field_after(&out, "P(B_S, D) =");
    assert!((p - 8.91e-12).abs() < 0.01e-12, "{p}");

    let out = run_ok(&["score", "bundled:bs1", "bundled:table1", "--prior", "none"]);
    let p = field_after(&out, "P(B_S, D) =");
    assert!((p / 2.2269e-9 - 1.0).abs() < 1e-4, "{p}");
}

#[test]
fn incomplete_case_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let cases = dir.path().join("cases.csv");
    std::fs::write(&cases, "x1,x2,x3\npresent,,absent\n").unwrap();
    let out = k2net(&["score", "bundled:bs1", path(&cases)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing value"));
}

#[test]
fn learn_recovers_chain_and_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let structure = dir.path().join("out.toml");
    let out = run_ok(&[
        "learn-k2",
        "bundled:table1",
        "--ordering",
        "x1,x2,x3",
        "--max-parents",
        "2",
        "--dot",
        path(&dot),
        "--output",
        path(&structure),
    ]);
    assert!(out.contains("x1 ← {}"), "{out}");
    assert!(out.contains("x2 ← {x1}"), "{out}");
    assert!(out.contains("x3 ← {x2}"), "{out}");

    let dot = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot.matches("->").count(), 2);

    let rescored = run_ok(&[
        "score",
        path(&structure),
        "bundled:table1",
        "--prior",
        "all-dags",
    ]);
    assert!(rescored.contains("8.9074e-11"), "{rescored}");
}

#[test]
fn learn_trace_lists_every_candidate() {
    let out = run_ok(&[
        "learn-k2",
        "bundled:table1",
        "--ordering",
        "x1,x2,x3",
        "--max-parents",
        "2",
        "--trace",
    ]);
    assert_eq!(out.matches(" try ").count(), 4, "{out}");
    assert_eq!(out.matches("accepted").count(), 2, "{out}");
}

#[test]
fn learn_rejects_partial_ordering() {
    let out = k2net(&["learn-k2", "bundled:table1", "--ordering", "x1,x2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn learn_threaded_matches_sequential() {
    let args = ["learn-k2", "bundled:table1", "--max-parents", "2"];
    let one = run_ok(&[&args[..], &["--threads", "1"]].concat());
    let four = run_ok(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn posteriors_over_all_dags() {
    let out = run_ok(&["posteriors", "bundled:table1", "--all-dags"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 25);

    let posterior = |arcs: &str| -> f64 {
        let row = rows.iter().find(|r| r.ends_with(arcs)).unwrap();
        row.split('\t').nth(1).unwrap().parse().unwrap()
    };
    assert!((posterior("\tx1→x2, x2→x3") - 0.109).abs() <= 0.001);
    assert!((posterior("\tx1→x2, x1→x3") - 0.011).abs() <= 0.001);

    let column: Vec<f64> = rows
        .iter()
        .map(|r| r.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(column.windows(2).all(|w| w[0] >= w[1]));
    assert!((column.iter().sum::<f64>() - 1.0).abs() < 1e-5);
    // the reversed chain x3→x2→x1 outscores x1→x2→x3 on these cases
    assert!(rows[0].ends_with("\tx2→x1, x3→x2"), "{out}");
}

#[test]
fn posteriors_over_listed_structures() {
    let out = run_ok(&[
        "posteriors",
        "bundled:table1",
        "--structures",
        "bundled:bs1",
        "bundled:bs2",
    ]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(
        rows[0].contains("0.909091") && rows[0].contains("bundled:bs1"),
        "{out}"
    );
    assert!(
        rows[1].contains("0.090909") && rows[1].contains("bundled:bs2"),
        "{out}"
    );
}

#[test]
fn posteriors_enumeration_guard() {
    let dir = tempfile::tempdir().unwrap();
    let cases = dir.path().join("seven.csv");
    std::fs::write(
        &cases,
        "x1,x2,x3,x4,x5,x6,x7\na,a,a,a,a,a,a\nb,b,b,b,b,b,b\n",
    )
    .unwrap();
    let out = k2net(&["posteriors", path(&cases), "--all-dags"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration guard exceeded"));
}

#[test]
fn infer_conditional() {
    let out = run_ok(&[
        "infer",
        "bundled:b1",
        "--target",
        "x3=present",
        "--given",
        "x1=present",
    ]);
    let p: f64 = out.rsplit('=').next().unwrap().trim().parse().unwrap();
    assert!((p - 0.75).abs() < 1e-12, "{out}");
}

#[test]
fn infer_rejects_unknown_value() {
    let out = k2net(&["infer", "bundled:b1", "--target", "x3=maybe"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_structures() {
    assert_eq!(run_ok(&["count", "3", "dags"]).trim(), "25");
    assert_eq!(
        run_ok(&["count", "10", "dags"]).trim(),
        "4175098976430598143"
    );
    assert_eq!(run_ok(&["count", "3", "ordered"]).trim(), "8");
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        run_ok(&[
            "sample",
            "bundled:b1",
            "--m",
            "10",
            "--seed",
            "7",
            "--out",
            path(out),
        ]);
    }
    let a = std::fs::read(&a).unwrap();
    assert_eq!(a, std::fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 11);
}

#[test]
fn fit_then_infer() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("fitted.toml");
    run_ok(&["fit", "bundled:bs1", "bundled:table1", "--out", path(&net)]);
    // x1=present in 5 of 10 cases, so the fitted prior is (5+1)/(10+2)
    let out = run_ok(&["infer", path(&net), "--target", "x1=present"]);
    let p: f64 = out.rsplit('=').next().unwrap().trim().parse().unwrap();
    assert!((p - 0.5).abs() < 1e-12, "{out}");
}

#[test]
fn compare_gives_ratio_of_ten() {
    let out = run_ok(&[
        "compare",
        "bundled:bs1",
        "bundled:bs2",
        "bundled:table1",
        "--ln",
    ]);
    let r = field_after(&out, "ratio =");
    assert!((r - 10.0).abs() < 1e-9, "{out}");
    assert!((field_after(&out, "log10 ratio =") - 1.0).abs() < 1e-6);
}

#[test]
fn reconstruct_reference_network() {
    let out = run_ok(&[
        "reconstruct",
        "bundled:reference10",
        "--m",
        "500,5000",
        "--seed",
        "1",
        "--max-parents",
        "4",
    ]);
    let last = out.lines().last().unwrap();
    let total: usize = last.split('\t').nth(4).unwrap().parse().unwrap();
    assert!(total <= 2, "{out}");
}

#[test]
fn unknown_bundled_name() {
    let out = k2net(&["score", "bundled:nope", "bundled:table1"]);
    assert_eq!(out.status.code(), Some(2));
}
