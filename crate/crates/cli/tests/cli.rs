use std::process::{Command, Output};

use rigid_fingerprint::catalog::CatalogRecord;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigid-fp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_text() {
    let o = run(&["enumerate", "--theory", "B", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1^5\n2^2 1\n");
    assert_eq!(stdout(&run(&["enumerate", "--theory", "C", "--rank", "2"])), "1^4\n2 1^2\n");
    assert_eq!(stdout(&run(&["enumerate", "--theory", "D", "--rank", "0"])), "()\n");
}

#[test]
fn enumerate_pairs_json() {
    let o = run(&["enumerate", "--theory", "B", "--rank", "1", "--pairs", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("[1,1,1]"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(run(&["enumerate", "--theory", "Q", "--rank", "1"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--theory", "B"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--theory", "B", "--rank", "999"]).status.code(), Some(2));
    assert_eq!(run(&["fingerprint", "--theory", "B", "2,2"]).status.code(), Some(2));
    assert_eq!(run(&["fingerprint", "--theory", "B", "2,x"]).status.code(), Some(2));
    assert_eq!(run(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["fingerprint", "--theory", "C", "2 1^2", "--mode", "diagonal"]).status.code(), Some(2));
}

#[test]
fn fingerprint_records() {
    let o = run(&["fingerprint", "--theory", "B", "2^2 1", "1^2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = CatalogRecord::from_json_line(stdout(&o).trim()).unwrap();
    assert_eq!(r.alpha.unwrap().parts(), &[2, 1]);
    assert!(r.beta.unwrap().is_empty());

    let o = run(&["fingerprint", "--theory", "C", "2 1^2", "1^2", "--json"]);
    let r = CatalogRecord::from_json_line(stdout(&o).trim()).unwrap();
    assert_eq!(r.alpha.unwrap().parts(), &[1, 1]);
    assert_eq!(r.beta.unwrap().parts(), &[1]);

    let o = run(&["fingerprint", "--theory", "C", "2 1^2", "1^2", "--iii", "vacuous", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = CatalogRecord::from_json_line(stdout(&o).trim()).unwrap();
    assert!(r.alpha.is_none());
    assert_eq!(r.diagnostics.len(), 1);
    assert_eq!(r.diagnostics[0].value, 2);

    let text = stdout(&run(&["fingerprint", "--theory", "C", "2 1^2", "1^2", "--iii", "vacuous"]));
    assert!(text.contains("unpaired even value 2"), "{text}");
}

#[test]
fn compare_shows_mode_sensitivity() {
    let text = stdout(&run(&["fingerprint", "--theory", "C", "2 1^2", "1^2", "--compare"]));
    assert!(text.contains("mode interleave tie-break prime  iii sp      -> alpha 1^2  beta 1"), "{text}");
    assert!(text.contains("mode sum        tie-break prime  iii sp      -> alpha ()  beta 1^3"), "{text}");
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", "parity", "--rank", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS parity"));
    assert_eq!(run(&["check", "condition-ii", "--rank", "6"]).status.code(), Some(0));
    assert_eq!(run(&["check", "path-equivalence", "--rank", "4"]).status.code(), Some(0));
}

#[test]
fn fibers_report() {
    let text = stdout(&run(&["fibers", "--theory", "B", "--rank", "1"]));
    assert!(text.contains("[1; ()] (2 members)"), "{text}");
    assert!(text.contains("  1^3; ()\n  1; 1^2\n"), "{text}");
    let text = stdout(&run(&["fibers", "--theory", "C", "--rank", "0"]));
    assert!(text.contains("0 fibers"), "{text}");
}

#[test]
fn render_diagram() {
    let text = stdout(&run(&["render", "--theory", "B", "2^2 1", "1^2"]));
    assert!(text.starts_with("combined (interleave):\n##\n##\n#\n*\n*\n"), "{text}");
}

#[test]
fn out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    let args = ["enumerate", "--theory", "C", "--rank", "4", "--json", "--out", path.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    assert!(!first.is_empty());
}
