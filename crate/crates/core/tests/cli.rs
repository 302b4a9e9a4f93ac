use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ubaforge(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ubaforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn translates_a_formula_argument() {
    let o = ubaforge(&["--check", "F G a"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("HOA: v1\nname: \"F G a\"\n"), "{text}");
    assert!(text.contains("unambiguous"));
    assert!(text.contains("States: 3\n"));
    assert!(text.trim_end().ends_with("--END--"));
}

#[test]
fn ablation_flags_change_the_result() {
    let o = ubaforge(&["--no-heuristic", "--no-rewrites", "--check", "F G a"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("States: 5\n"));
}

#[test]
fn reads_one_formula_per_line() {
    let o = ubaforge(&[], Some("a U b\n\nG F a\n"));
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("HOA: v1").count(), 2);
}

#[test]
fn prefix_syntax() {
    let infix = ubaforge(&["a U b"], None);
    let prefix = ubaforge(&["--prefix", "U a b"], None);
    assert!(prefix.status.success());
    assert_eq!(stdout(&infix), stdout(&prefix));
}

#[test]
fn emits_each_stage() {
    let vwaa = ubaforge(&["--emit=vwaa", "a U b"], None);
    assert!(vwaa.status.success());
    assert!(!stdout(&vwaa).starts_with("HOA"));
    let tgba = ubaforge(&["--emit=tgba", "G F a & G F b"], None);
    assert!(stdout(&tgba).contains("acc-name: generalized-Buchi 2"));
    let bad = ubaforge(&["--emit=dot", "a"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn stats_are_json_lines() {
    let o = ubaforge(&["--stats", "--check", "F G a"], None);
    let stderr = String::from_utf8(o.stderr).unwrap();
    let stages: Vec<String> = stderr
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["stage"].as_str().unwrap().to_string()
        })
        .collect();
    for stage in ["simplify", "vwaa", "iteration", "disambiguation", "uba", "check"] {
        assert!(stages.iter().any(|s| s == stage), "{stage} missing from {stages:?}");
    }
}

#[test]
fn errors_set_the_exit_code_but_keep_going() {
    let o = ubaforge(&[], Some("a U\nF a\n"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).matches("HOA: v1").count(), 1);
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: a U:"));
}

#[test]
fn output_is_deterministic() {
    let input = "G (a -> F b) & F G c\nF (a & X (b U c))\n";
    let first = ubaforge(&["--check"], Some(input));
    let second = ubaforge(&["--check"], Some(input));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
