use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rekonfig"))
        .args(args)
        .env_remove("REKONFIG_BUDGET_STATES")
        .env_remove("REKONFIG_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_c4_is_no() {
    let o = run(&["solve", path(&fixture("c4_is_1tj.txt"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no\n");
}

#[test]
fn xp_vcr_c4_is_no() {
    let o = run(&["xp-vcr", "--mu", "1", path(&fixture("c4_vc.txt"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no\n");
    let solve = run(&["solve", path(&fixture("c4_vc.txt"))]);
    assert_eq!(solve.status.code(), o.status.code());
    // A disagreeing guaranteed value is a usage error.
    assert_eq!(run(&["xp-vcr", "--mu", "2", path(&fixture("c4_vc.txt"))]).status.code(), Some(2));
}

#[test]
fn bound_arithmetic() {
    let o = run(&["bound", "--n", "10", "--size", "5", "--mu", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "max_length 7\n");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/file"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "p reconfig 2 0 is xyz 1\ns 1\nt 2\n").unwrap();
    let o = run(&["solve", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 19"));
}

#[test]
fn budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("int.txt");
    let o = run(&["reduce", "int2isr", path(&fixture("sample.cnf")), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_rekonfig"))
        .args(["solve", path(&out)])
        .env("REKONFIG_BUDGET_STATES", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn shortest_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("int.txt");
    let cert = dir.path().join("cert.txt");
    assert_eq!(run(&["reduce", "int2isr", "--mu", "2", path(&fixture("sample.cnf")), "-o", path(&inst)]).status.code(), Some(0));
    let o = run(&["solve", "--shortest", "--certificate", path(&cert), path(&inst)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "yes\n"));
    let v = run(&["verify", path(&inst), "--certificate", path(&cert)]);
    assert_eq!((v.status.code(), stdout(&v).as_str()), (Some(0), "yes\n"));

    // Reversing the certificate breaks its start.
    let text = std::fs::read_to_string(&cert).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.reverse();
    std::fs::write(&cert, lines.join("\n")).unwrap();
    assert_eq!(run(&["verify", path(&inst), "--certificate", path(&cert)]).status.code(), Some(1));
}

#[test]
fn reductions_match_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let pipelines: [(&[&str], &[&str]); 4] = [
        (&["reduce", "int2isr"], &["oracle", "sat", "--mixed"]),
        (&["reduce", "ncl2isr", "--k", "2", "--rule", "kts"], &["oracle", "ncl"]),
        (&["reduce", "pmr2isr", "--rule", "kts"], &["oracle", "pmr"]),
        (&["reduce", "pmr2isr"], &["oracle", "pmr"]),
    ];
    let inputs = ["sample.cnf", "sample.ncl", "c4.pmr", "c4.pmr"];
    for ((reduce, oracle), input) in pipelines.iter().zip(inputs) {
        let f = fixture(input);
        let mut args = reduce.to_vec();
        args.extend([path(&f), "-o", path(&out)]);
        assert_eq!(run(&args).status.code(), Some(0), "{args:?}");
        let mut o = oracle.to_vec();
        o.push(path(&f));
        let want = run(&o);
        let got = run(&["solve", path(&out)]);
        assert_eq!(got.status.code(), want.status.code(), "{input}");
        assert_eq!(stdout(&got), stdout(&want));
    }
}

#[test]
fn sat2int_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("e3.cnf");
    // Satisfiable, but by neither constant assignment alone.
    std::fs::write(&src, "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let o = run(&["reduce", "sat2int", path(&src)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p cnf 39 126\n"));
    // Already satisfied by all-true: rejected.
    std::fs::write(&src, "p cnf 3 1\n1 2 3 0\n").unwrap();
    assert_eq!(run(&["reduce", "sat2int", path(&src)]).status.code(), Some(2));
}

#[test]
fn planarize_fixture() {
    let o = run(&["reduce", "planarize", path(&fixture("sample.cnf"))]);
    assert_eq!(o.status.code(), Some(0));
    let head = stdout(&o).lines().next().unwrap().to_owned();
    assert!(head.starts_with("p reconfig 219 "), "{head}");
}
