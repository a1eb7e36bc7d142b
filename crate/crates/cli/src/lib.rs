//! Command-line front end: reductions, solvers, oracles, timings and the
//! game server.
//!
//! Results go to stdout as a single machine-readable value; diagnostics go
//! to stderr. Exit status 2 means unparsable input, 3 a violated
//! precondition, 4 an exhausted search budget, 1 anything else.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use superstars::blackout::{self, BlackoutPosition, BlackoutSolveConfig, Side};
use superstars::epmx::{self, EpmxDocument, EpmxSolveConfig, Owner};
use superstars::families::{random_nimbers, random_superstar};
use superstars::game::DEFAULT_NODE_BUDGET;
use superstars::nimber::nim_sum;
use superstars::paintcan::{position_value, PaintCanPosition};
use superstars::reductions::{
    oracle_exact_cover_witness, oracle_min_cover_witness, oracle_sat, run_reduction, CnfInstance, ReductionKind,
    SetCoverInstance,
};
use superstars::{Error, ErrorKind, Player, Solver, SolverConfig, StarValue, SumPosition};

#[derive(Debug, Parser)]
#[command(name = "superstars", version, about = "Superstar games, Paint Can, EPMX and Blackout")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduce {
    #[value(name = "3sat-to-epmx")]
    ThreesatToEpmx,
    EpmxToStars,
    StarsToComets,
    SetcoverToPure,
    PureToBlackout,
}

impl From<Reduce> for ReductionKind {
    fn from(r: Reduce) -> ReductionKind {
        match r {
            Reduce::ThreesatToEpmx => ReductionKind::ThreesatToEpmx,
            Reduce::EpmxToStars => ReductionKind::EpmxToStars,
            Reduce::StarsToComets => ReductionKind::StarsToComets,
            Reduce::SetcoverToPure => ReductionKind::SetcoverToPure,
            Reduce::PureToBlackout => ReductionKind::PureToBlackout,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    Stars,
    Epmx,
    Blackout,
    Paintcan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Sat,
    MinCover,
    ExactCover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchKind {
    Nimsum,
    Solver,
}

/// First player. `X` is Left and `Y` is Right; in Blackout Left is AllOff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum First {
    #[value(name = "left", alias = "Left")]
    Left,
    #[value(name = "right", alias = "Right")]
    Right,
    #[value(name = "X", alias = "x")]
    X,
    #[value(name = "Y", alias = "y")]
    Y,
}

impl First {
    fn player(self) -> Player {
        match self {
            First::Left | First::X => Player::Left,
            First::Right | First::Y => Player::Right,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Io {
    /// Input file; standard input when absent or `-`.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a source document to the target problem.
    Reduce {
        kind: Reduce,
        #[command(flatten)]
        io: Io,
        /// Output file; standard output when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Write a JSON certificate mapping witnesses across the reduction.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Print the outcome class, or the winner when `--first` is given
    /// (EPMX and Blackout always print the winner).
    Solve {
        kind: SolveKind,
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        first: Option<First>,
        /// Positions expanded before giving up.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// Brute-force checkers, printing one JSON value.
    Oracle {
        kind: OracleKind,
        #[command(flatten)]
        io: Io,
    },
    /// Time a primitive on seeded random input and print the result as JSON.
    Bench {
        kind: BenchKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of nimbers, or superstar components for `solver`.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 100)]
        iterations: u32,
    },
    /// Run the HTTP game service until interrupted.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of static files to serve alongside the API.
        #[arg(long = "static", value_name = "DIR")]
        static_dir: Option<PathBuf>,
        /// Default AI search budget.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
        /// Append session histories to this JSON-lines file.
        #[arg(long, value_name = "PATH")]
        history: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Parse => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::Budget => 4,
            },
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_input(io: &Io) -> Result<String, CliError> {
    match &io.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| io_err(p, e)),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Runs a command, returning what it prints on stdout.
pub fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Reduce { kind, io, out, certificate } => {
            let input = read_input(&io)?;
            let r = run_reduction(kind.into(), &input, certificate.is_some())?;
            if let (Some(path), Some(cert)) = (&certificate, &r.certificate) {
                write_file(path, &serde_json::to_string_pretty(cert).expect("certificates serialize"))?;
            }
            match out {
                Some(path) => {
                    write_file(&path, &r.output)?;
                    Ok(String::new())
                }
                None => Ok(r.output),
            }
        }
        Command::Solve { kind, io, first, budget } => {
            solve(kind, &read_input(&io)?, first, budget.unwrap_or(DEFAULT_NODE_BUDGET))
        }
        Command::Oracle { kind, io } => oracle(kind, &read_input(&io)?),
        Command::Bench { kind, seed, size, iterations } => Ok(bench(kind, seed, size, iterations.max(1))),
        Command::Serve { port, static_dir, budget, history } => {
            let config = superstars_service::ServiceConfig { ai_budget: budget, static_dir, history_log: history };
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            rt.block_on(superstars_service::serve(port, config)).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(String::new())
        }
    }
}

fn solve_sum(sum: &SumPosition, first: Option<First>, budget: u64) -> Result<String, CliError> {
    let mut solver = Solver::new(SolverConfig::default().with_budget(budget));
    Ok(match first {
        None => solver.outcome(sum)?.to_string(),
        Some(f) => {
            let p = f.player();
            if solver.wins_moving_first(sum, p)? { p } else { p.opponent() }.to_string()
        }
    })
}

pub fn solve(kind: SolveKind, input: &str, first: Option<First>, budget: u64) -> Result<String, CliError> {
    match kind {
        SolveKind::Stars => solve_sum(&input.trim().parse()?, first, budget),
        SolveKind::Paintcan => {
            let pos: PaintCanPosition = input.trim().parse()?;
            solve_sum(&position_value(&pos), first, budget)
        }
        SolveKind::Epmx => {
            let doc = EpmxDocument::from_json(input)?;
            let starter = match first {
                Some(f) if f.player() == Player::Left => Owner::X,
                Some(_) => Owner::Y,
                None => doc.first_player.unwrap_or(Owner::X),
            };
            let config = EpmxSolveConfig { node_budget: budget, ..EpmxSolveConfig::default() };
            Ok(epmx::solve(&doc.instance()?, starter, config)?.winner.to_string())
        }
        SolveKind::Blackout => {
            let mut pos = BlackoutPosition::from_json(input)?;
            if let Some(f) = first {
                let side = Side::from_player(f.player());
                pos = BlackoutPosition::new(
                    pos.lights().clone(),
                    pos.rows(Side::AllOff).to_vec(),
                    pos.rows(Side::OneOn).to_vec(),
                    pos.pass_budget(),
                    side,
                )?;
            }
            let config = BlackoutSolveConfig { node_budget: budget, ..BlackoutSolveConfig::default() };
            Ok(blackout::winner(&pos, config)?.to_string())
        }
    }
}

pub fn oracle(kind: OracleKind, input: &str) -> Result<String, CliError> {
    let value = match kind {
        OracleKind::Sat => {
            let cnf = CnfInstance::parse_dimacs(input)?;
            let a = oracle_sat(&cnf)?;
            let lits = a.as_ref().map(|a| {
                a.iter().enumerate().map(|(i, &v)| if v { i as i64 + 1 } else { -(i as i64 + 1) }).collect::<Vec<_>>()
            });
            json!({"satisfiable": a.is_some(), "assignment": lits})
        }
        OracleKind::MinCover => {
            let sc = SetCoverInstance::from_json(input)?;
            let c = oracle_min_cover_witness(&sc)?;
            json!({"minCover": c.as_ref().map(Vec::len), "cover": c})
        }
        OracleKind::ExactCover => {
            let sc = SetCoverInstance::from_json(input)?;
            let c = oracle_exact_cover_witness(&sc, sc.k())?;
            json!({"exactCover": c.is_some(), "sets": c})
        }
    };
    Ok(value.to_string())
}

pub fn bench(kind: BenchKind, seed: u64, size: Option<usize>, iterations: u32) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        BenchKind::Nimsum => {
            let values = random_nimbers(&mut rng, size.unwrap_or(1 << 16));
            let start = Instant::now();
            let mut result = nim_sum([]);
            for _ in 0..iterations {
                result = nim_sum(std::hint::black_box(&values).iter().copied());
            }
            let nanos = start.elapsed().as_nanos() as f64 / f64::from(iterations);
            json!({"bench": "nimsum", "seed": seed, "items": values.len(), "iterations": iterations,
                   "nanosPerIter": nanos, "result": result.0})
            .to_string()
        }
        BenchKind::Solver => {
            let values: Vec<StarValue> =
                (0..size.unwrap_or(4)).map(|_| StarValue::Star(random_superstar(&mut rng, 6))).collect();
            let sum = SumPosition::new(values.into_iter().map(Into::into));
            let start = Instant::now();
            let mut solver = Solver::default();
            let outcome = solver.outcome(&sum);
            let cold = start.elapsed().as_nanos() as f64;
            let start = Instant::now();
            for _ in 0..iterations {
                let _ = solver.outcome(std::hint::black_box(&sum));
            }
            let warm = start.elapsed().as_nanos() as f64 / f64::from(iterations);
            json!({"bench": "solver", "seed": seed, "sum": sum.to_string(), "iterations": iterations,
                   "outcome": outcome.map(|o| o.to_string()).unwrap_or_else(|e| e.to_string()),
                   "coldNanos": cold, "warmNanosPerIter": warm, "expanded": solver.expanded()})
            .to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_examples() {
        assert_eq!(solve(SolveKind::Stars, "{*2|*3}", None, 1000).unwrap(), "P");
        assert_eq!(solve(SolveKind::Stars, "0", None, 1000).unwrap(), "P");
        assert_eq!(solve(SolveKind::Stars, "*1", Some(First::Right), 1000).unwrap(), "Right");
        assert_eq!(solve(SolveKind::Paintcan, "GG", None, 1000).unwrap(), "N");
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        let parse = solve(SolveKind::Stars, "{*2|", None, 10).unwrap_err();
        assert_eq!(parse.exit_code(), 2);
        let budget = solve(SolveKind::Stars, "{*1,*2|*3,*4}+{*5|*6,*1}+*7+{*3|*4}", None, 1).unwrap_err();
        assert_eq!(budget.exit_code(), 4);
        let pre = run_reduction(ReductionKind::StarsToComets, "{*2|*3}", false).map_err(CliError::from).unwrap_err();
        assert_eq!(pre.exit_code(), 3);
    }

    #[test]
    fn oracles_print_json() {
        let sat: serde_json::Value =
            serde_json::from_str(&oracle(OracleKind::Sat, "p cnf 1 1\n-1 0\n").unwrap()).unwrap();
        assert_eq!(sat, json!({"satisfiable": true, "assignment": [-1]}));
        let sc = r#"{"elements":3,"sets":[[1,2],[2,3],[3]],"k":2}"#;
        let min: serde_json::Value = serde_json::from_str(&oracle(OracleKind::MinCover, sc).unwrap()).unwrap();
        assert_eq!(min["minCover"], 2);
        let exact: serde_json::Value = serde_json::from_str(&oracle(OracleKind::ExactCover, sc).unwrap()).unwrap();
        assert_eq!(exact, json!({"exactCover": true, "sets": [0, 2]}));
    }

    #[test]
    fn benches_are_seeded() {
        let a: serde_json::Value = serde_json::from_str(&bench(BenchKind::Nimsum, 3, Some(100), 2)).unwrap();
        let b: serde_json::Value = serde_json::from_str(&bench(BenchKind::Nimsum, 3, Some(100), 2)).unwrap();
        assert_eq!(a["result"], b["result"]);
        let s: serde_json::Value = serde_json::from_str(&bench(BenchKind::Solver, 3, Some(2), 2)).unwrap();
        assert!(s["sum"].as_str().unwrap().contains('|'));
    }
}
