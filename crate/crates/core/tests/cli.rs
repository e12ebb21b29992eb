use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twosided"))
        .args(args)
        .output()
        .expect("spawn twosided")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const I2_GF2: &str = "field gf 2\nrows 2 cols 2\n1 0\n0 1\n";

#[test]
fn certify_identity() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", I2_GF2);
    let out = run(&["certify", "--left", s(&a), "--right", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "BA=I confirmed\n");
}

#[test]
fn invert_then_certify_then_verify() {
    let dir = TempDir::new().unwrap();
    let fixtures = [
        "field rational\nrows 3 cols 3\n2 1 0\n0 3 1\n5 0 7\n",
        "field gf 7\nrows 3 cols 3\n0 1 2\n3 0 1\n1 2 0\n",
        "field gf 2\nrows 2 cols 2\n1 1\n0 1\n",
        "field rational\nrows 1 cols 1\n-3/4\n",
        "field rational\nrows 0 cols 0\n",
    ];
    for (k, body) in fixtures.iter().enumerate() {
        let a = write(&dir, &format!("a{k}.mat"), body);
        let b = dir.path().join(format!("b{k}.mat"));
        let cert = dir.path().join(format!("c{k}.json"));

        let out = run(&["invert", s(&a), "-o", s(&b)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

        let out = run(&["certify", "--left", s(&a), "--right", s(&b), "--emit", s(&cert)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

        let out = run(&["verify", "--cert", s(&cert), "--left", s(&a), "--right", s(&b)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

        // Swapping the roles also certifies: B is a left factor of A too.
        let out = run(&["certify", "--left", s(&b), "--right", s(&a)]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
}

#[test]
fn invert_singular_prints_witness() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", "field rational\nrows 2 cols 2\n1 2\n2 4\n");
    let out = run(&["invert", s(&a)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "{\"singular\":true,\"witness\":[\"2\",\"-1\"]}\n");
}

#[test]
fn invert_to_stdout() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", "field rational\nrows 2 cols 2\n2 0\n0 4\n");
    let out = run(&["invert", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "field rational\nrows 2 cols 2\n1/2 0\n0 1/4\n");
}

#[test]
fn certify_rejects_non_inverse() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", "field rational\nrows 2 cols 2\n1 0\n0 0\n");
    let i = write(&dir, "i.mat", "field rational\nrows 2 cols 2\n1 0\n0 1\n");
    let out = run(&["certify", "--left", s(&a), "--right", s(&i)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("entry (2,2) is 0, expected 1"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn verify_rejects_tampered_and_mismatched() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", "field rational\nrows 2 cols 2\n0 1\n1 1\n");
    let b = write(&dir, "b.mat", "field rational\nrows 2 cols 2\n-1 1\n1 0\n");
    let c = write(&dir, "c.mat", "field rational\nrows 2 cols 2\n-1 1\n1 1\n");
    let cert = dir.path().join("cert.json");
    let out = run(&["certify", "--left", s(&a), "--right", s(&b), "--emit", s(&cert)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let out = run(&["verify", "--cert", s(&cert), "--left", s(&a), "--right", s(&c)]);
    assert_eq!(out.status.code(), Some(4));

    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"swap 1 2\""));
    let tampered = write(&dir, "t.json", &text.replacen("\"swap 1 2\"", "\"swap 2 1\"", 1));
    let out = run(&["verify", "--cert", s(&tampered), "--left", s(&a), "--right", s(&b)]);
    // swap 2 1 is the same operation, so this still verifies.
    assert_eq!(out.status.code(), Some(0));

    let tampered = write(&dir, "t2.json", &text.replacen("\"swap 1 2\"", "\"scale 1 2\"", 1));
    let out = run(&["verify", "--cert", s(&tampered), "--left", s(&a), "--right", s(&b)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("level 1"), "{}", stderr(&out));

    let truncated = write(&dir, "t3.json", &text.replacen("\"n\": 2", "\"n\": 3", 1));
    let out = run(&["verify", "--cert", s(&truncated), "--left", s(&a), "--right", s(&b)]);
    assert_eq!(out.status.code(), Some(4));

    let garbage = write(&dir, "t4.json", "{ \"field\": ");
    let out = run(&["verify", "--cert", s(&garbage), "--left", s(&a), "--right", s(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("t4.json:1:"), "{}", stderr(&out));
}

#[test]
fn solve_and_rank() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.mat", "field gf 2\nrows 2 cols 2\n1 1\n0 0\n");
    let out = run(&["solve", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 1\n");
    let out = run(&["rank", s(&a)]);
    assert_eq!(stdout(&out), "1\n");

    let i = write(&dir, "i.mat", "field rational\nrows 3 cols 3\n1 0 0\n0 1 0\n0 0 1\n");
    let out = run(&["solve", s(&i)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
    assert_eq!(stdout(&run(&["rank", s(&i)])), "3\n");

    // Read in GF(2) instead: rows 1 and 2 coincide there.
    let r = write(&dir, "r.mat", "field rational\nrows 2 cols 2\n1 3\n3 1\n");
    assert_eq!(stdout(&run(&["rank", s(&r)])), "2\n");
    assert_eq!(stdout(&run(&["rank", s(&r), "--field", "gf2"])), "1\n");
}

#[test]
fn parse_errors_name_file_line_and_column() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "bad.mat", "field rational\nrows 2 cols 2\n1 0\n0 x\n");
    let out = run(&["rank", s(&a)]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains(&format!("{}:4:3:", a.display())), "{err}");

    let out = run(&["rank", s(&dir.path().join("missing.mat"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["exhaust", "--field", "gf4", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["exhaust", "--field", "gf2", "--n", "2", "--jobs", "0"]).status.code(), Some(1));
    assert_eq!(run(&["exhaust", "--field", "rational", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["exhaust", "--field", "gf2", "--n", "7"]).status.code(), Some(1));
    assert_eq!(
        run(&["random-check", "--field", "gf5", "--n", "2", "--trials", "0", "--seed", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["shift-demo", "--field", "gf2", "--max-index", "0"]).status.code(), Some(1));
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("shift-demo"));
}

#[test]
fn exhaust_report() {
    let out = run(&["exhaust", "--field", "gf2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"field\":\"gf2\",\"n\":2,\"pairs_checked\":6,\"invertible_count\":6,\"violations\":0,\"cert_failures\":0}\n"
    );
}

#[test]
fn random_check_is_deterministic() {
    let args = ["random-check", "--field", "gf13", "--n", "3", "--trials", "25", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).ends_with("\"seed\":7}\n"));
}

#[test]
fn shift_demo_json() {
    let out = run(&["shift-demo", "--field", "rational", "--max-index", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"field\":\"rational\",\"max_index\":5,\"ba_identity\":true,\"ab_identity\":false,\"witness\":\"e_1\"}\n"
    );
}

#[test]
fn in_process_runner_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = twosided::cli::run(["twosided", "exhaust", "--field", "gf3", "--n", "1"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, run(&["exhaust", "--field", "gf3", "--n", "1"]).stdout);
}
