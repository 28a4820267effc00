//! Command-line front end for the strip identifying-code solver.
//!
//! Exit codes: 0 success; 1 the verified pattern is invalid; 2 bad usage or
//! bad input; 3 the job was refused as too large for its budget; 4 an
//! internal self-check failed (a bug, not bad input).

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use strip_idcode::automaton::{build_automaton_with_budget, BuildError, DEFAULT_MEM_BUDGET_MB};
use strip_idcode::oracle::{brute_force_with_budget, DEFAULT_CANDIDATE_BUDGET};
use strip_idcode::render::{render_ascii, render_svg};
use strip_idcode::solve::SolveError;
use strip_idcode::verify::Violation;
use strip_idcode::{
    solve, verify_periodic_pattern, verify_window_oracle, BarPattern, SolveOptions,
};

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REFUSED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Heights this tall build multi-gigabyte tables and run for hours; ask for
/// them explicitly.
const HUGE_HEIGHT: usize = 6;

/// Environment variable overriding the memory budget (MiB) for automaton
/// construction and the solver working set.
const MEM_BUDGET_ENV: &str = "STRIP_IDCODE_MEM_BUDGET_MB";

#[derive(Parser)]
#[command(
    name = "strip-idcode",
    version,
    about = "Exact minimum-density periodic identifying codes in grid strips",
    long_about = "Computes, verifies, and draws minimum-density periodic identifying codes \
                  in grid strips of a given height. Densities are exact fractions; every \
                  answer is re-verified by two independent checkers before it is printed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the minimum density and an optimal periodic pattern.
    Solve {
        /// Strip height (rows).
        k: usize,
        /// Worker threads for the relaxation sweeps; 0 = all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Predecessor-history rounds for cycle extraction; 0 = automatic.
        #[arg(long, default_value_t = 0)]
        window: usize,
        /// Re-prove the result with two independent feasibility probes.
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow heights 6 and up (hours of runtime, huge tables).
        #[arg(long)]
        huge: bool,
    },
    /// Check a pattern file; exit 0 if valid, 1 with the violations if not.
    Verify {
        /// Pattern file: one line of `#`/`.` per row.
        file: PathBuf,
    },
    /// Structural facts about a height's transition digraph.
    Stats {
        /// Strip height (rows).
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also dump every edge as `source target weight column_hex` lines.
        #[arg(long, value_name = "FILE")]
        dump_edges: Option<PathBuf>,
        /// Allow heights 6 and up.
        #[arg(long)]
        huge: bool,
    },
    /// Exhaustive sweep over all patterns with short periods (small cases).
    Oracle {
        /// Strip height (rows).
        k: usize,
        /// Largest period to sweep.
        #[arg(long)]
        lmax: usize,
        /// Cap on candidate patterns visited.
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
        budget: u64,
    },
    /// Draw a pattern file on stdout.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Style::Ascii)]
        style: Style,
        /// How many consecutive periods to draw.
        #[arg(long, default_value_t = 3)]
        periods: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve { k, threads, window, certify, format, huge } => {
            cmd_solve(k, threads, window, certify, format, huge)
        }
        Command::Verify { file } => cmd_verify(&file),
        Command::Stats { k, format, dump_edges, huge } => cmd_stats(k, format, dump_edges, huge),
        Command::Oracle { k, lmax, budget } => cmd_oracle(k, lmax, budget),
        Command::Render { file, style, periods } => cmd_render(&file, style, periods),
    }
}

fn fail(code: u8, msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn mem_budget_mb() -> u64 {
    std::env::var(MEM_BUDGET_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MEM_BUDGET_MB)
}

fn refuse_huge(k: usize, huge: bool) -> Option<ExitCode> {
    (k >= HUGE_HEIGHT && !huge).then(|| {
        fail(
            EXIT_USAGE,
            format!("height {k} takes hours and gigabytes; pass --huge to run it anyway"),
        )
    })
}

fn cmd_solve(
    k: usize,
    threads: usize,
    window: usize,
    certify: bool,
    format: Format,
    huge: bool,
) -> ExitCode {
    if let Some(code) = refuse_huge(k, huge) {
        return code;
    }
    let opts = SolveOptions { threads, window, certify, mem_budget_mb: mem_budget_mb() };
    let report = match solve(k, &opts) {
        Ok(r) => r,
        Err(e @ SolveError::Build(BuildError::HeightOutOfRange { .. })) => {
            return fail(EXIT_USAGE, e)
        }
        Err(
            e @ (SolveError::Build(BuildError::MemoryBudget { .. })
            | SolveError::WorkingMemory { .. }),
        ) => return fail(EXIT_REFUSED, e),
        Err(e) => return fail(EXIT_INTERNAL, e),
    };
    match format {
        Format::Json => {
            let json = serde_json::json!({
                "k": report.height,
                "density": { "num": report.density.num(), "den": report.density.den() },
                "density_decimal": report.density.to_f64(),
                "pattern": report.pattern.to_text(),
                "cycle_length": report.cycle_length,
                "n": report.vertices,
                "m": report.edges,
                "seconds": report.seconds,
                "certified": report.certified,
            });
            println!("{json}");
        }
        Format::Text => {
            println!(
                "height {}: minimum density {} (= {:.6})",
                report.height,
                report.density,
                report.density.to_f64()
            );
            println!(
                "period {}, cycle mean {}, digraph {} vertices / {} edges, {:.2} s",
                report.cycle_length, report.lambda, report.vertices, report.edges, report.seconds
            );
            if report.certified == Some(true) {
                println!("certified: feasibility probes confirm the minimum");
            }
            println!("pattern:");
            println!("{}", report.pattern);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(file: &PathBuf) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", file.display())),
    };
    let pattern = match BarPattern::parse_text(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", file.display())),
    };
    println!(
        "pattern {}x{}, {} occupied cells, density {}",
        pattern.rows(),
        pattern.len(),
        pattern.code_count(),
        pattern.density()
    );
    let windowed = verify_periodic_pattern(&pattern);
    let unrolled = verify_window_oracle(&pattern);
    if windowed.valid != unrolled.valid {
        return fail(
            EXIT_INTERNAL,
            format!(
                "verifiers disagree (windowed: {}, unrolled: {})",
                windowed.valid, unrolled.valid
            ),
        );
    }
    if windowed.valid {
        println!("valid: both checkers agree");
        return ExitCode::SUCCESS;
    }
    println!("INVALID: {} violations", windowed.violations.len());
    for v in &windowed.violations {
        match v {
            Violation::EmptyNeighborhood { vertex: (c, r) } => {
                println!("  column {c}, row {r}: no occupied cell in reach");
            }
            Violation::TwinPair { a: (ca, ra), b: (cb, rb) } => {
                println!("  ({ca},{ra}) and ({cb},{rb}) see the same occupied cells");
            }
        }
    }
    ExitCode::from(EXIT_INVALID)
}

fn cmd_stats(k: usize, format: Format, dump_edges: Option<PathBuf>, huge: bool) -> ExitCode {
    if let Some(code) = refuse_huge(k, huge) {
        return code;
    }
    let automaton = match build_automaton_with_budget(k, mem_budget_mb()) {
        Ok(a) => a,
        Err(e @ BuildError::HeightOutOfRange { .. }) => return fail(EXIT_USAGE, e),
        Err(e @ BuildError::MemoryBudget { .. }) => return fail(EXIT_REFUSED, e),
    };
    let stats = automaton.stats();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&stats).expect("stats serialize")),
        Format::Text => {
            println!("height {}: {} vertices, {} edges", stats.height, stats.vertices, stats.edges);
            println!(
                "in-degree {}..={}, out-degree {}..={}, {} self-loops",
                stats.min_in_degree,
                stats.max_in_degree,
                stats.min_out_degree,
                stats.max_out_degree,
                stats.self_loops
            );
            println!(
                "strongly connected: {}; within {} steps from and {} steps to the source",
                stats.strongly_connected, stats.max_dist_from_source, stats.max_dist_to_source
            );
        }
    }
    if let Some(path) = dump_edges {
        let file = match fs::File::create(&path) {
            Ok(f) => f,
            Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", path.display())),
        };
        let mut out = std::io::BufWriter::new(file);
        if let Err(e) = automaton.write_edges(&mut out).and_then(|()| out.flush()) {
            return fail(EXIT_USAGE, format!("{}: {e}", path.display()));
        }
        eprintln!("wrote {} edges to {}", automaton.edge_count(), path.display());
    }
    ExitCode::SUCCESS
}

fn cmd_oracle(k: usize, lmax: usize, budget: u64) -> ExitCode {
    if k == 0 || lmax == 0 {
        return fail(EXIT_USAGE, "height and period must be at least 1");
    }
    match brute_force_with_budget(k, lmax, budget) {
        Ok(r) => {
            println!("minimum density {} over periods 1..={lmax} at height {k}", r.density);
            println!("pattern:");
            println!("{}", r.pattern);
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_REFUSED, e),
    }
}

fn cmd_render(file: &PathBuf, style: Style, periods: usize) -> ExitCode {
    if periods == 0 {
        return fail(EXIT_USAGE, "--periods must be at least 1");
    }
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", file.display())),
    };
    let pattern = match BarPattern::parse_text(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", file.display())),
    };
    match style {
        Style::Ascii => print!("{}", render_ascii(&pattern, periods)),
        Style::Svg => print!("{}", render_svg(&pattern, periods)),
    }
    ExitCode::SUCCESS
}
