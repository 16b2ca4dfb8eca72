use std::fs;
use std::process::{Command, Output};

fn netenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netenum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = netenum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn totals(csv: &str) -> Vec<(u32, u64)> {
    let mut acc: Vec<(u32, u64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (n, c) = (f[0].parse().unwrap(), f[2].parse::<u64>().unwrap());
        match acc.last_mut() {
            Some((m, s)) if *m == n => *s += c,
            _ => acc.push((n, c)),
        }
    }
    acc
}

#[test]
fn series_parallel_table() {
    let csv = stdout(&["compute", "--family", "sp", "--n-max", "9"]);
    assert!(csv.starts_with("n,m,count\n2,1,1\n3,3,1\n"));
    let t: Vec<u64> = totals(&csv).into_iter().map(|(_, c)| c).collect();
    assert_eq!(t, vec![1, 1, 2, 5, 15, 51, 230, 1142]);
}

#[test]
fn m_max_filters_rows() {
    let csv = stdout(&["compute", "--family", "sp", "--n-max", "6", "--m-max", "6"]);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(1).unwrap().parse::<u32>().unwrap() <= 6));
    assert!(csv.contains("6,6,1"));
}

#[test]
fn labelled_series_parallel() {
    let csv = stdout(&["compute", "--family", "sp", "--count", "labelled", "--n-max", "5"]);
    assert_eq!(totals(&csv)[..3], [(2, 1), (3, 1), (4, 9)]);
    assert_eq!(csv, stdout(&["oracle", "--emit", "counts", "--family", "sp", "--count", "labelled", "--n-max", "5"]));
}

#[test]
fn projective_planar_json() {
    let json = stdout(&["compute", "--family", "pp", "--n-max", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0], serde_json::json!({"n": 5, "m": 10, "count": "1"}));
    let csv = stdout(&["compute", "--family", "pp", "--n-max", "8"]);
    assert_eq!(totals(&csv), vec![(5, 1), (6, 2), (7, 14), (8, 102)]);
}

#[test]
fn networks_and_tau() {
    let r = stdout(&["compute", "--family", "sp", "--kind", "networks", "--n-max", "4"]);
    assert_eq!(totals(&r).into_iter().map(|(_, c)| c).collect::<Vec<_>>(), vec![1, 2, 8, 38, 208]);
    let rt = stdout(&["compute", "--family", "sp", "--kind", "networks-tau", "--n-max", "4"]);
    assert_eq!(totals(&rt).into_iter().map(|(_, c)| c).collect::<Vec<_>>(), vec![1, 2, 4, 10, 24]);
}

#[test]
fn oracle_wser_feeds_compute() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("planar.wser");
    let p = path.to_str().unwrap();
    stdout(&["oracle", "--emit", "wf-planar", "--n-max", "7", "--out", p]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("WSER 1 nmax=7 mmax=inf kind=graph\n"));
    let from_file = stdout(&["compute", "--family", "planar", "--n-max", "7", "--f-data", p]);
    let from_oracle = stdout(&["compute", "--family", "planar", "--n-max", "7"]);
    assert_eq!(from_file, from_oracle);
    assert_eq!(totals(&from_file).into_iter().map(|(_, c)| c).collect::<Vec<_>>(), vec![1, 1, 3, 9, 44, 294]);
}

#[test]
fn wser_of_k4() {
    let text = stdout(&["oracle", "--emit", "wf-all", "--n-max", "4"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "WSER 1 nmax=4 mmax=inf kind=graph");
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"a=1:4 b=1:6 c=- coef=1/24"));
}

#[test]
fn oracle_counts_match_compute() {
    let oracle = stdout(&["oracle", "--emit", "counts", "--family", "k33free", "--n-max", "7"]);
    let series = stdout(&["compute", "--family", "k33free", "--n-max", "7"]);
    assert_eq!(oracle, series);
    let oracle = stdout(&["oracle", "--emit", "counts", "--family", "planar", "--count", "labelled", "--n-max", "6"]);
    let series = stdout(&["compute", "--family", "planar", "--count", "labelled", "--n-max", "6"]);
    assert_eq!(oracle, series);
}

#[test]
fn checks_pass() {
    assert_eq!(stdout(&["oracle", "--check", "dissymmetry", "--n-max", "6"]), "PASS\n");
    assert_eq!(stdout(&["oracle", "--check", "identities", "--n-max", "5"]), "PASS\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "--family", "planar", "--n-max", "7", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn errors_exit_nonzero() {
    for args in [
        &["compute", "--family", "toroidal", "--n-max", "5"][..],
        &["compute", "--family", "pp", "--kind", "networks", "--n-max", "6"],
        &["compute", "--family", "sp", "--kind", "networks-tau", "--count", "labelled", "--n-max", "4"],
        &["compute", "--family", "planar", "--n-max", "12"],
        &["compute", "--family", "planar", "--n-max", "5", "--f-data", "/nonexistent/file.wser"],
        &["oracle", "--emit", "counts", "--count", "labelled", "--n-max", "9"],
    ] {
        let out = netenum(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn short_data_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.wser");
    let p = path.to_str().unwrap();
    stdout(&["oracle", "--emit", "wf-planar", "--n-max", "5", "--out", p]);
    let out = netenum(&["compute", "--family", "planar", "--n-max", "7", "--f-data", p]);
    assert!(!out.status.success());
}
