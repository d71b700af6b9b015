use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strichartz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectra_csv_contains_diagonal_value() {
    let o = run(&["spectra", "--d", "3", "--k", "3", "--max-n", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("kappa,n,exact,float\n"));
    assert!(s.contains("3,5/9,0.555555"), "{s}");
    assert_eq!(s.lines().count(), 22);
}

#[test]
fn certify_reports_top_two() {
    let o = run(&["certify", "--k", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    let row = &v["rows"][0];
    assert_eq!(row[1], "1/1");
    assert_eq!(row[3], "0");
    assert_eq!(row[4], "8320/19683");
    assert_eq!(row[6], "10");
}

#[test]
fn certify_kappa_one_has_two_alpha_indices() {
    let o = run(&["certify", "--k", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1,1/3,0.3333333333333333,1;5,469136/1594323"));
}

#[test]
fn quarter_search_has_no_hits() {
    let o = run(&["quarter-search", "--k", "all", "--max-n", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hits: 0"));
}

#[test]
fn figure1_rows() {
    let o = run(&["figure1", "--count", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "series,n,exact,float\nG0,0,1/1,1.0\nG1,1,1/3,0.3333333333333333\n");
    let o = run(&["figure1", "--count", "3", "--format", "csv"]);
    let g0: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("G0")).map(String::from).collect();
    assert_eq!(g0.len(), 3);
    assert!(g0[0].starts_with("G0,0,1/1,"));
    assert!(g0[1].starts_with("G0,2,0/1,"));
    assert!(g0[2].starts_with("G0,4,7/27,"));
    let o = run(&["figure1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1002);
}

#[test]
fn figure1_writes_file_identical_to_stdout() {
    let dir = std::env::temp_dir().join(format!("strichartz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.csv");
    let o = run(&["figure1", "--count", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = run(&["bridge-verify", "--k", "2", "--s-max", "2", "--format", "json"]);
    let b = run(&["bridge-verify", "--k", "2", "--s-max", "2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn eigenvector_text() {
    let o = run(&["eigenvector", "--k", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("polynomial: 1/1*x1*x2"), "{s}");
    assert!(s.contains("harmonic: true"));
}

#[test]
fn special_check_file_and_builtins() {
    let dir = std::env::temp_dir().join(format!("strichartz-sc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // 1/(1 - w1): not special.
    let mut text = String::from("order: 6\n# geometric in w1\n");
    for a in 0..=6 {
        text.push_str(&format!("{a} 0 0 1\n"));
    }
    let path = dir.join("geo.txt");
    std::fs::write(&path, text).unwrap();
    let o = run(&["special-check", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["notes"]["special"], "false");
    assert_eq!(v["verdict"], "pass");

    let o = run(&["special-check", "--builtin", "identity", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("e_n: 1/1 1/1 1/1 1/1"));

    std::fs::write(&path, "1 0 0 1\n").unwrap();
    let o = run(&["special-check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_kernel_passes() {
    let o = run(&["oracle", "kernel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn oracle_qform_passes_and_tight_tol_fails() {
    let o = run(&["oracle", "qform", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = run(&["oracle", "strichartz", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--cutoff", "10"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--k", "7"]).status.code(), Some(2));
    assert_eq!(run(&["figure1", "--count", "0"]).status.code(), Some(2));
    assert_eq!(run(&["selftest", "--only", "12"]).status.code(), Some(2));
}

#[test]
fn selftest_subset() {
    let o = run(&["selftest", "--only", "1,11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1,top-two eigenvalues certified,pass"));
    assert!(s.contains("11,eigenvector geometry,pass"));
}
