use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const FOUR_CLAUSE: &str = include_str!("../../core/tests/fixtures/epmx_four_clause.json");

fn superstars(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_superstars"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = superstars(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_stars_examples() {
    assert_eq!(stdout(&["solve", "stars"], "{*2|*3}"), "P");
    assert_eq!(stdout(&["solve", "stars"], "0"), "P");
    assert_eq!(stdout(&["solve", "stars", "--first", "left"], "{0|*1}"), "Left");
    assert_eq!(stdout(&["solve", "paintcan"], "BRGYB/GGGG"), stdout(&["solve", "stars"], "{0,*2,*4|*1,*2}+*4"));
}

#[test]
fn reduce_four_clause_instance_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("four.json");
    std::fs::write(&input, FOUR_CLAUSE).unwrap();
    let out = dir.path().join("sum.txt");
    let cert = dir.path().join("cert.json");
    stdout(&["reduce", "epmx-to-stars", "--in", path(&input), "--out", path(&out), "--certificate", path(&cert)], "");
    let sum = std::fs::read_to_string(&out).unwrap();
    assert_eq!(sum, "{*1,*2,*16|0}+{*4,*7,*32|0}+{0|*1,*2}+{0|*8,*9,*10}+*15");
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(cert["kind"], "epmx-to-stars");
    assert_eq!(cert["components"], serde_json::json!(["x0", "x1", "y0", "y1"]));

    // Round trip: the output parses as a sum and solves.
    let outcome = stdout(&["solve", "stars", "--in", path(&out)], "");
    assert!(["L", "R", "N", "P"].contains(&outcome.as_str()));
    let comets = stdout(&["reduce", "stars-to-comets"], &sum);
    assert_eq!(stdout(&["solve", "stars"], &comets), outcome);
}

#[test]
fn satisfiable_formula_pipeline_ends_in_l_or_p() {
    let cnf = "p cnf 3 3\n1 2 3 0\n-1 -2 3 0\n-1 2 -3 0\n";
    let sat: serde_json::Value = serde_json::from_str(&stdout(&["oracle", "sat"], cnf)).unwrap();
    assert_eq!(sat["satisfiable"], true);
    let epmx = stdout(&["reduce", "3sat-to-epmx"], cnf);
    assert_eq!(stdout(&["solve", "epmx"], &epmx), "X");
    let stars = stdout(&["reduce", "epmx-to-stars"], &epmx);
    let outcome = stdout(&["solve", "stars"], &stars);
    assert!(outcome == "L" || outcome == "P", "{outcome}");
}

#[test]
fn set_cover_pipeline() {
    let uniform = r#"{"elements":6,"sets":[[1,2,3],[4,5,6],[2,3,4]],"k":2}"#;
    let pure = stdout(&["reduce", "setcover-to-pure"], uniform);
    let exact: serde_json::Value = serde_json::from_str(&stdout(&["oracle", "exact-cover"], &pure)).unwrap();
    assert_eq!(exact["exactCover"], true);
    let sc = r#"{"elements":3,"sets":[[1],[2,3],[1,2]],"k":2}"#;
    let board = stdout(&["reduce", "pure-to-blackout"], sc);
    assert_eq!(stdout(&["solve", "blackout"], &board), "AllOff");
    let min: serde_json::Value = serde_json::from_str(&stdout(&["oracle", "min-cover"], sc)).unwrap();
    assert_eq!(min["minCover"], 2);
}

#[test]
fn exit_statuses() {
    assert_eq!(superstars(&["solve", "stars"], "{*2|").status.code(), Some(2));
    assert_eq!(superstars(&["reduce", "stars-to-comets"], "{*2|*3}").status.code(), Some(3));
    let big = "{*1,*2|*3,*4}+{*5|*6,*1}+*7+{*3|*4}";
    assert_eq!(superstars(&["solve", "stars", "--budget", "1"], big).status.code(), Some(4));
    assert_eq!(superstars(&["solve", "stars", "--in", "/nonexistent/file"], "").status.code(), Some(1));
    assert_eq!(superstars(&["frobnicate"], "").status.code(), Some(2));
    let err = superstars(&["solve", "stars"], "{*2|");
    assert!(err.stdout.is_empty());
    assert!(String::from_utf8_lossy(&err.stderr).contains("parse error"));
}

#[test]
fn bench_output_is_seeded_json() {
    let a: serde_json::Value =
        serde_json::from_str(&stdout(&["bench", "nimsum", "--seed", "9", "--size", "1000", "--iterations", "3"], ""))
            .unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&stdout(&["bench", "nimsum", "--seed", "9", "--size", "1000", "--iterations", "3"], ""))
            .unwrap();
    assert_eq!(a["result"], b["result"]);
    let s: serde_json::Value =
        serde_json::from_str(&stdout(&["bench", "solver", "--seed", "2", "--iterations", "2"], "")).unwrap();
    assert_eq!(s["bench"], "solver");
}

#[test]
fn serve_answers_health_checks() {
    use std::io::{BufRead, BufReader, Read};
    let mut child = Command::new(env!("CARGO_BIN_EXE_superstars"))
        .args(["serve", "--port", "0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().rsplit("http://").next().unwrap().to_string();
    let mut stream = std::net::TcpStream::connect(&addr).unwrap();
    stream.write_all(b"GET /healthz HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains(r#""status":"ok""#));
}
