use std::path::Path;
use std::process::{Command, Output};

const F1: &str =
    "problem uncap\nnodes 3\nsink 2\nnode 0 demand -2\narc 0 1 gain 1\narc 1 2 gain 1/2\narc 0 2 gain 1/4\n";

fn gflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gflow")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn weak_solve_of_f1_checks_and_has_value_one() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = file(dir.path(), "f1.txt", F1);
    let out = gflow(&["solve", &f1, "--algorithm", "weak", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).lines().any(|l| l == "value 1"), "{}", stdout(&out));
}

#[test]
fn infeasible_lp2_exits_one_with_a_checkable_certificate() {
    let dir = tempfile::tempdir().unwrap();
    // x0 + x1 = 1 and x0 - x1 = 3 with x1 <= 5 forces x1 = -1
    let lp = file(
        dir.path(),
        "lp.txt",
        "problem lp2\nrows 2 cols 2\nentry 0 0 1\nentry 0 1 1\nentry 1 0 1\nentry 1 1 -1\nrhs 0 1\nrhs 1 3\nub 1 5\n",
    );
    let out = gflow(&["lp2", &lp, "--certificate"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("status infeasible"));
    let cert = file(dir.path(), "cert.txt", &text);
    assert_eq!(gflow(&["check", &lp, &cert]).status.code(), Some(0));
}

#[test]
fn generation_and_solving_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let path = path.to_str().unwrap();
        let gen = gflow(&[
            "gen", "--kind", "uncap", "--nodes", "5", "--arcs", "12", "--seed", "11", "--bits", "4", "-o", path,
        ]);
        assert_eq!(gen.status.code(), Some(0));
        let solved = gflow(&["solve", path, "--check"]);
        assert_eq!(solved.status.code(), Some(0));
        (std::fs::read_to_string(path).unwrap(), stdout(&solved))
    };
    assert_eq!(run("a.txt"), run("b.txt"));
}

#[test]
fn solver_output_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, seed) in [("uncap", "1"), ("std", "2"), ("std", "5")] {
        let inst = dir.path().join(format!("{kind}{seed}.txt"));
        let inst = inst.to_str().unwrap();
        gflow(&["gen", "--kind", kind, "--nodes", "4", "--arcs", "9", "--seed", seed, "-o", inst]);
        let out = gflow(&["solve", inst]);
        assert!(matches!(out.status.code(), Some(0 | 2)));
        let sol = file(dir.path(), "sol.txt", &stdout(&out));
        assert_eq!(gflow(&["check", inst, &sol]).status.code(), Some(0));
    }
}

#[test]
fn tampered_solution_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = file(dir.path(), "f1.txt", F1);
    let sol = file(dir.path(), "sol.txt", &stdout(&gflow(&["solve", &f1])).replace("value 1", "value 2"));
    assert_eq!(gflow(&["check", &f1, &sol]).status.code(), Some(1));
}

#[test]
fn bad_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let zero = file(dir.path(), "zero.txt", "problem uncap\nnodes 3\nsink 2\narc 1 2 gain 0\n");
    let out = gflow(&["solve", &zero]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let missing = file(dir.path(), "missing.txt", "problem uncap\nnodes 3\nsink 2\narc 0 2 gain 1\n");
    let out = gflow(&["solve", &missing]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no arc into the sink"));
    assert_eq!(gflow(&["solve", "/nonexistent/file"]).status.code(), Some(3));
}

#[test]
fn unbounded_standard_instance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let std = file(dir.path(), "std.txt", "problem std\nnodes 3\nsink 2\narc 0 1 gain 2 cap inf\narc 1 0 gain 1 cap inf\narc 0 2 gain 1 cap inf\narc 1 2 gain 1 cap 1\n");
    let out = gflow(&["solve", &std]);
    assert_eq!(out.status.code(), Some(2));
    let sol = file(dir.path(), "sol.txt", &stdout(&out));
    assert_eq!(gflow(&["check", &std, &sol]).status.code(), Some(0));
    let out = gflow(&["transform", &std, "-o", dir.path().join("u.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trace_lines_carry_the_stable_fields() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.txt");
    let inst = inst.to_str().unwrap();
    gflow(&["gen", "--kind", "uncap", "--nodes", "5", "--arcs", "12", "--seed", "7", "-o", inst]);
    let trace = dir.path().join("t.jsonl");
    let out = gflow(&["solve", inst, "--algorithm", "weak", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&trace).unwrap();
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["iter", "kind", "delta", "psi", "kappa", "D_size", "violations"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
        assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    }
}
