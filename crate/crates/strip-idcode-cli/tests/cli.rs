//! Black-box tests of the installed binary: exit codes, output schemas,
//! and round-trips between subcommands.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strip-idcode")).args(args).output().expect("binary spawns")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strip-idcode"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary spawns")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_pattern(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).expect("create pattern file");
    writeln!(f, "{text}").expect("write pattern file");
    path
}

#[test]
fn solve_text_reports_height_one() {
    let out = run(&["solve", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let s = stdout(&out);
    assert!(s.contains("height 1: minimum density 1/2 (= 0.500000)"), "got: {s}");
    assert!(s.contains("period 2, cycle mean 1/2"), "got: {s}");
    assert!(s.contains("pattern:"), "got: {s}");
}

#[test]
fn solve_json_reports_the_exact_height_two_answer() {
    let out = run(&["solve", "2", "--format", "json"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["k"], 2);
    assert_eq!(v["density"]["num"], 3);
    assert_eq!(v["density"]["den"], 7);
    assert!((v["density_decimal"].as_f64().unwrap() - 3.0 / 7.0).abs() < 1e-12);
    assert_eq!(v["cycle_length"], 7);
    assert_eq!(v["n"], 169);
    assert_eq!(v["m"], 581);
    assert!(v["seconds"].as_f64().unwrap() >= 0.0);
    assert!(v["certified"].is_null(), "no --certify, no claim");
    let pattern = v["pattern"].as_str().unwrap();
    assert_eq!(pattern.lines().count(), 2);
    assert!(pattern.lines().all(|l| l.len() == 7));
    let occupied = pattern.chars().filter(|&c| c == '#').count();
    assert_eq!(occupied, 6, "3/7 of 14 cells");
}

#[test]
fn solve_json_is_deterministic_apart_from_timing() {
    let strip = |out: Output| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    let a = strip(run(&["solve", "2", "--format", "json"]));
    let b = strip(run(&["solve", "2", "--format", "json"]));
    let c = strip(run(&["solve", "2", "--format", "json", "--threads", "2"]));
    assert_eq!(a, b, "same invocation, same answer");
    assert_eq!(a, c, "thread count must not change the answer");
}

#[test]
fn solve_certify_marks_the_report() {
    let out = run(&["solve", "1", "--certify", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["certified"], true);
    let text = run(&["solve", "1", "--certify"]);
    assert!(stdout(&text).contains("certified: feasibility probes confirm the minimum"));
}

#[test]
fn solve_refuses_tall_heights_without_the_flag() {
    let out = run(&["solve", "6"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("--huge"), "got: {}", stderr(&out));
}

#[test]
fn solve_rejects_heights_outside_the_supported_range() {
    assert_eq!(code(&run(&["solve", "0"])), 2);
    assert_eq!(code(&run(&["solve", "9", "--huge"])), 2);
}

#[test]
fn solve_honors_the_memory_budget_variable() {
    let out = run_env(&["solve", "3"], "STRIP_IDCODE_MEM_BUDGET_MB", "0");
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn verify_accepts_solver_output() {
    let solved = run(&["solve", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&solved)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "best2.txt", v["pattern"].as_str().unwrap());
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let s = stdout(&out);
    assert!(s.contains("pattern 2x7, 6 occupied cells, density 3/7"), "got: {s}");
    assert!(s.contains("valid: both checkers agree"), "got: {s}");
}

#[test]
fn verify_rejects_an_undercoded_pattern_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "thin.txt", "#.....\n......");
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let s = stdout(&out);
    assert!(s.contains("INVALID:"), "got: {s}");
    assert!(s.contains("no occupied cell in reach"), "got: {s}");
}

#[test]
fn verify_names_twin_pairs() {
    // One occupied cell on a period of three: its two flanks both see
    // exactly that cell, and the far cell sees nothing.
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "twin.txt", "#..");
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("see the same occupied cells"), "got: {}", stdout(&out));
}

#[test]
fn verify_rejects_unreadable_or_malformed_files_with_exit_two() {
    let out = run(&["verify", "/nonexistent/pattern.txt"]);
    assert_eq!(code(&out), 2);
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "bad.txt", "#x\n..");
    assert_eq!(code(&run(&["verify", file.to_str().unwrap()])), 2);
    let ragged = write_pattern(dir.path(), "ragged.txt", "##\n#");
    assert_eq!(code(&run(&["verify", ragged.to_str().unwrap()])), 2);
}

#[test]
fn stats_text_and_json_agree_on_height_one() {
    let text = run(&["stats", "1"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("height 1: 10 vertices, 15 edges"), "got: {}", stdout(&text));
    let json = run(&["stats", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["vertices"], 10);
    assert_eq!(v["edges"], 15);
    assert_eq!(v["self_loops"], 1);
    assert_eq!(v["strongly_connected"], true);
}

#[test]
fn stats_dump_edges_writes_one_line_per_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.edges");
    let out = run(&["stats", "1", "--dump-edges", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("wrote 15 edges"), "got: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 15);
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(fields.len(), 4, "src dst weight mask: {line}");
        let u: usize = fields[0].parse().unwrap();
        let v: usize = fields[1].parse().unwrap();
        let w: u32 = fields[2].parse().unwrap();
        assert!(u < 10 && v < 10 && w <= 1);
        u32::from_str_radix(fields[3], 16).expect("hex mask");
    }
}

#[test]
fn oracle_sweep_agrees_with_the_solver_on_height_one() {
    let out = run(&["oracle", "1", "--lmax", "4"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("minimum density 1/2 over periods 1..=4 at height 1"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn oracle_refuses_oversized_sweeps_with_exit_three() {
    let out = run(&["oracle", "2", "--lmax", "20", "--budget", "1000"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn oracle_rejects_zero_arguments_with_exit_two() {
    assert_eq!(code(&run(&["oracle", "0", "--lmax", "3"])), 2);
    assert_eq!(code(&run(&["oracle", "1", "--lmax", "0"])), 2);
}

#[test]
fn render_ascii_tiles_the_requested_periods() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "p.txt", "#.");
    let out = run(&["render", file.to_str().unwrap(), "--periods", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "#.|#.|#.\n");
}

#[test]
fn render_svg_draws_every_cell() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "p.txt", "#.#\n.#.");
    let out = run(&["render", file.to_str().unwrap(), "--style", "svg", "--periods", "2"]);
    assert_eq!(code(&out), 0);
    let s = stdout(&out);
    assert!(s.starts_with("<svg "));
    assert_eq!(s.matches("<rect").count(), 2 * 3 * 2);
    assert_eq!(s.matches("<line").count(), 1);
}

#[test]
fn render_rejects_zero_periods() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_pattern(dir.path(), "p.txt", "#.");
    assert_eq!(code(&run(&["render", file.to_str().unwrap(), "--periods", "0"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["solve"])), 2);
}
