use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use dibrooks::colouring::is_valid;
use dibrooks::exceptions::classify_exception;
use dibrooks::generators::{gen_family, gen_k_regular, gen_ktree, gen_random, FamilyKind, RNG_NAME};
use dibrooks::hardness::reduce;
use dibrooks::io::{colouring_from_json, colouring_to_json, export_dot, parse_edge_list, serialize_edge_list};
use dibrooks::oracle::Oracle;
use dibrooks::selftest::{run_selftest, SelftestConfig};
use dibrooks::{dicolour, Colouring, Digraph, Error, Strategy};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dibrooks", version, about = "Dicolouring digraphs within the directed Brooks bound")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a digraph and print it as an edge list.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        #[arg(long, env = "DIBROOKS_SEED", default_value_t = 0, global = true)]
        seed: u64,
    },
    /// Exact dichromatic number.
    Chi {
        file: PathBuf,
        #[arg(long, default_value_t = dibrooks::oracle::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Colour with at most delta_max colours (plus one for exception components).
    Colour {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Also write the colouring file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a colouring is a dicolouring of a digraph.
    Check { graph: PathBuf, colouring: PathBuf },
    /// Report whether the digraph is an exception at its own level.
    Classify { file: PathBuf },
    /// Build the gadget digraph with mindegree at most k.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Cross-check all colourers against the exact oracle on random digraphs.
    Selftest {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "DIBROOKS_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Export to Graphviz DOT, optionally coloured.
    Dot {
        file: PathBuf,
        #[arg(long)]
        colouring: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// directed_cycle, symmetric_cycle or symmetric_complete.
    Family { kind: FamilyKind, n: usize },
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p_arc: f64,
        #[arg(long, default_value_t = 0.1)]
        p_digon: f64,
    },
    Kregular { n: usize, k: usize },
    Ktree { k: usize, pieces: usize },
}

/// Failures that mean the input violates a checked property (exit 1), as
/// opposed to usage and parse errors (exit 2).
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

fn read_graph(path: &Path) -> anyhow::Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A colouring file, a JSON object holding one under `"colouring"`, or a
/// bare array of colours.
fn read_colouring(path: &Path) -> anyhow::Result<Colouring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.is_array() {
        let colours = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
        return Colouring::new(colours).with_context(|| format!("parsing {}", path.display()));
    }
    let inner = value.get("colouring").cloned().unwrap_or(value);
    colouring_from_json(&inner.to_string()).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(out: &mut impl Write, value: serde_json::Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Gen { what, seed } => {
            let (g, extra) = match what {
                GenCommand::Family { kind, n } => (gen_family(kind, n)?, json!({ "family": kind })),
                GenCommand::Random { n, p_arc, p_digon } => {
                    (gen_random(n, p_arc, p_digon, seed)?, json!({ "p_arc": p_arc, "p_digon": p_digon }))
                }
                GenCommand::Kregular { n, k } => (gen_k_regular(n, k, seed)?, json!({ "k": k })),
                GenCommand::Ktree { k, pieces } => {
                    let (g, d) = gen_ktree(k, pieces, seed)?;
                    (g, json!({ "decomposition": d }))
                }
            };
            if cli.json {
                print_json(&mut out, json!({ "graph": g, "seed": seed, "rng": RNG_NAME, "params": extra }))?;
            } else {
                writeln!(out, "# generated with seed {seed} by {RNG_NAME}")?;
                write!(out, "{}", serialize_edge_list(&g))?;
            }
        }
        Command::Chi { file, limit } => {
            let g = read_graph(&file)?;
            let chi = Oracle::new(limit).chi_exact(&g)?;
            if cli.json {
                print_json(&mut out, json!({ "chi": chi, "n": g.n(), "delta_max": g.delta_max(), "delta_min": g.delta_min() }))?;
            } else {
                writeln!(out, "chi = {chi}")?;
            }
        }
        Command::Colour { file, strategy, output } => {
            let g = read_graph(&file)?;
            let col = match dicolour(&g, strategy) {
                Err(e @ Error::InternalUnreachable(_)) => return Err(Violation(e.to_string()).into()),
                other => other?,
            };
            if !is_valid(&g, &col)? {
                return Err(Violation("colourer returned an invalid colouring".into()).into());
            }
            if let Some(path) = &output {
                fs::write(path, colouring_to_json(&col) + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                print_json(&mut out, json!({
                    "strategy": strategy,
                    "num_colours": col.num_colours(),
                    "delta_max": g.delta_max(),
                    "colouring": col,
                }))?;
            } else {
                writeln!(out, "strategy {strategy}: {} colours (delta_max = {})", col.num_colours(), g.delta_max())?;
                writeln!(out, "{}", colouring_to_json(&col))?;
            }
        }
        Command::Check { graph, colouring } => {
            let g = read_graph(&graph)?;
            let col = read_colouring(&colouring)?;
            let valid = is_valid(&g, &col)?;
            if cli.json {
                print_json(&mut out, json!({ "valid": valid, "num_colours": col.num_colours() }))?;
            } else {
                writeln!(out, "{}", if valid { "valid" } else { "invalid: monochromatic directed cycle" })?;
            }
            if !valid {
                return Err(Violation("colouring is not a dicolouring".into()).into());
            }
        }
        Command::Classify { file } => {
            let g = read_graph(&file)?;
            let cert = classify_exception(&g, g.delta_max())?;
            if cli.json {
                print_json(&mut out, json!({ "delta_max": g.delta_max(), "exception": cert }))?;
            } else {
                match cert {
                    Some(c) => writeln!(out, "exception: {:?}, k = {}, witness {:?}", c.kind, c.k, c.witness)?,
                    None => writeln!(out, "not an exception (delta_max = {})", g.delta_max())?,
                }
            }
        }
        Command::Reduce { file, k } => {
            let g = read_graph(&file)?;
            let r = reduce(&g, k)?;
            if cli.json {
                print_json(&mut out, serde_json::to_value(&r)?)?;
            } else {
                writeln!(out, "# gadget digraph for k = {k}; vertex u maps to u*{} + (0: u-, 1: u+, 2..: inner)", k + 1)?;
                write!(out, "{}", serialize_edge_list(&r.graph))?;
            }
        }
        Command::Selftest { n_max, trials, seed } => {
            if n_max == 0 || n_max > 14 {
                bail!("--n-max must be between 1 and 14");
            }
            let report = run_selftest(SelftestConfig { n_max, trials, seed })?;
            if cli.json {
                print_json(&mut out, serde_json::to_value(&report)?)?;
            } else {
                writeln!(out, "{:<12} {:>8} {:>8}  result", "check", "passed", "failed")?;
                for c in &report.checks {
                    let verdict = if c.failed == 0 { "PASS" } else { "FAIL" };
                    writeln!(out, "{:<12} {:>8} {:>8}  {verdict}", c.name, c.passed, c.failed)?;
                }
                for f in report.failures.iter().take(10) {
                    writeln!(out, "trial {} [{}]: {}", f.trial, f.check, f.detail)?;
                }
            }
            if !report.passed() {
                return Err(Violation(format!("{} selftest failures", report.failures.len())).into());
            }
        }
        Command::Dot { file, colouring } => {
            let g = read_graph(&file)?;
            let col = colouring.as_deref().map(read_colouring).transpose()?;
            write!(out, "{}", export_dot(&g, col.as_ref())?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) if e.is::<Violation>() => {
            eprintln!("dibrooks: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("dibrooks: {e:#}");
            ExitCode::from(2)
        }
    }
}
