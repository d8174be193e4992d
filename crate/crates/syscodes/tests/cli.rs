use std::fs;
use std::process::{Command, Output};

fn syscodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syscodes"))
        .args(args)
        .env("SYSCODES_THREADS", "2")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn code_prints_parameters() {
    let o = syscodes(&["code", "torus:2", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[8,2,2]]"));

    let o = syscodes(&["code", "rp2", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("n=15 k=1"), "{text}");
    assert!(text.contains("csys_1(primal)=3 csys_1(dual)=5"), "{text}");
}

#[test]
fn code_witness_and_weight_cap() {
    let o = syscodes(&["code", "torus:3", "--witness"]);
    assert!(stdout(&o).contains("witness: primal cycle on cells"));
    let o = syscodes(&["code", "torus:3", "--max-weight", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("weight <= 2"));
}

#[test]
fn code_exit_codes() {
    assert_eq!(syscodes(&["code", "torus:1"]).status.code(), Some(3));
    assert_eq!(syscodes(&["code", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(syscodes(&["code", "torus:2", "--i", "3"]).status.code(), Some(3));
    assert_eq!(syscodes(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(syscodes(&["--help"]).status.code(), Some(0));
}

#[test]
fn complex_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("torus.json");
    let o = syscodes(&["code", "torus:3", "--write-complex", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = syscodes(&["code", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[18,2,3]]"));
    assert!(stdout(&o).contains("route: systoles"));

    // Without the trust flag the distance comes from the CSS search.
    let text = fs::read_to_string(&good)
        .unwrap()
        .replace("\"closed_surface\": true", "\"closed_surface\": false");
    let untrusted = dir.path().join("untrusted.json");
    fs::write(&untrusted, text).unwrap();
    let o = syscodes(&["code", untrusted.to_str().unwrap()]);
    assert!(stdout(&o).contains("[[18,2,3]]"));
    assert!(stdout(&o).contains("route: css search"));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dims": [2, 1], "boundary": [[[0, 9]]]}"#).unwrap();
    let o = syscodes(&["code", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("boundary[0][0][1]"), "{}", stderr(&o));

    let bad = dir.path().join("typo.json");
    fs::write(&bad, r#"{"dims": [2, 1], "boundry": []}"#).unwrap();
    let o = syscodes(&["code", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("boundry"), "{}", stderr(&o));

    let circle = dir.path().join("circle.json");
    fs::write(&circle, r#"{"dims": [3, 3], "boundary": [[[0, 1], [1, 2], [2, 0]]]}"#).unwrap();
    let o = syscodes(&["code", circle.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[[3,1,1]]"), "{}", stdout(&o));
    let o = syscodes(&["code", circle.to_str().unwrap(), "--i", "0"]);
    assert!(stdout(&o).contains("[[3,1,1]]"), "{}", stdout(&o));
}

#[test]
fn scan_csv() {
    let o = syscodes(&["scan", "torus:2", "torus:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("descriptor,n,k,d,d2_over_n,R_delta2_n2,bound36"));
    assert!(lines[1..].iter().all(|l| l.split(',').nth(6) == Some("true")));

    let o = syscodes(&["scan", "subdiv:torus:2:rounds=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().nth(1),
        Some("subdiv:torus:2:rounds=3,64,2,2,0.062500,0.125000,true,16,2,false")
    );

    assert_eq!(syscodes(&["scan"]).status.code(), Some(2));
    assert_eq!(syscodes(&["scan", "klein:2"]).status.code(), Some(2));
    assert_eq!(syscodes(&["scan", "genus:0"]).status.code(), Some(3));
    let o = syscodes(&["scan", "torus:2", "--output", "/nonexistent-dir/out.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["tritorus:4", "rp2", "genus:2", "subdiv:rp2:rounds=1", "torus:5"];
    for path in [&a, &b] {
        let mut full = vec!["scan"];
        full.extend(args);
        full.extend(["--output", path.to_str().unwrap()]);
        assert_eq!(syscodes(&full).status.code(), Some(0));
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, args);
}

#[test]
fn bad_thread_setting_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_syscodes"))
        .args(["scan", "torus:2"])
        .env("SYSCODES_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = syscodes(&["verify", "fuchsian", "--p", "3", "--N", "2", "--B", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min nontrivial trace 6 >= 2"), "{}", stdout(&o));

    let o = syscodes(&["verify", "metric", "--eta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let inequalities = text
        .lines()
        .filter(|l| l.starts_with("pass:") && (l.contains("1/77") || l.contains("1/150") || l.contains("< 1/2")))
        .count();
    assert_eq!(inequalities, 3, "{text}");

    let o = syscodes(&["verify", "oracle", "--n", "4", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(syscodes(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(syscodes(&["verify", "fuchsian", "--p", "5"]).status.code(), Some(3));
    assert_eq!(syscodes(&["verify", "metric", "--eta", "0.25"]).status.code(), Some(3));
    assert_eq!(syscodes(&["verify", "metric", "--eta", "half"]).status.code(), Some(2));
}

#[test]
fn fuchsian_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traces.csv");
    let o = syscodes(&["verify", "fuchsian", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,N,B,count,min_trace,bound,satisfied");
    assert_eq!(lines.len(), 16);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}
