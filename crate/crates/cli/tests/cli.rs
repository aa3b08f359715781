use std::process::{Command, Output};

use fractopo::exec::Engine;
use fractopo::ifs::e4_projection;
use fractopo::topology::classify;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fractopo")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_projection() {
    let o = run(&["analyze", "--name", "E4-proj", "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "SegmentsOrPoints (1,0)");
}

#[test]
fn analyze_output_is_the_library_result() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = run(&["analyze", "--name", "E4-proj", "--kmax", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let got: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let want = serde_json::to_value(classify(&e4_projection(), 3, &Engine::default()).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn certify_word_pair() {
    let o = run(&["certify", "--name", "f3-osc", "--Lmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f8∘f9 and f9∘f4"));
}

#[test]
fn certify_too_short_words_fails() {
    let o = run(&["certify", "--name", "f3-osc", "--Lmax", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["analyze", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--name", "no-such"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--name", "E1", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn budget_exit_code() {
    let o = run(&["analyze", "--name", "E1", "--kmax", "12", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn render_writes_pixmap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e1.pgm");
    let o = run(&["render", "--name", "E1", "--k", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(&out).unwrap();
    assert!(bytes.starts_with(b"P5\n256 256\n255\n"));
    assert_eq!(bytes.len(), 15 + 256 * 256);
}

#[test]
fn section_dump() {
    let o = run(&["section", "--name", "E4", "--k", "1", "--axis", "2", "--z0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("cellset dim=2 base=3 level=1"));
    assert_eq!(s.lines().count(), 4);
}

#[test]
fn config_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("carpet.toml");
    std::fs::write(
        &cfg,
        "name = \"my-carpet\"\ndim = 2\nkind = \"grid\"\nn = 3\ndigits = [[0,0],[1,0],[2,0],[0,1],[2,1],[0,2],[1,2],[2,2]]\n",
    )
    .unwrap();
    let o = run(&["analyze", "--config", cfg.to_str().unwrap(), "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "Connected");
}

#[test]
fn corpus_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["corpus", "--name", "cantor-strips", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("cantor-strips.json").exists());
    assert!(dir.path().join("cantor-strips-picture.pgm").exists());
}
