//! `graphpoly` — compute graph polynomials, compare graphs and check
//! certificates of polynomial equivalence from the command line.
//!
//! Exit codes: 0 success, 1 certificate invalid or not found, 2 bad input
//! (unparsable file, bad option, inapplicable invariant), 3 size limit hit.

mod report;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphpoly::cert::{self, Certificate, Context, NotFound, SearchLimits, Verdict};
use graphpoly::io::parse_graph_auto;
use graphpoly::{Config, Error, Execution, LabelledGraph};

use report::{compute, Invariant, Params, Report};

#[derive(Parser)]
#[command(
    name = "graphpoly",
    version,
    about = "Exact graph polynomials and equivalence certificates"
)]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limits {
    /// Largest graph (vertices) that may be canonicalised for isomorphism tests
    #[arg(long, global = true, default_value_t = 10)]
    max_vertices: usize,
    /// Largest edge count for subset expansions (2^m subsets)
    #[arg(long, global = true, default_value_t = 20)]
    max_subset_edges: usize,
    /// Budget for assignment enumerations such as (λ+1)^n
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_enumeration: u64,
    /// Budget for rotation systems in genus distributions
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_rotations: u64,
    /// Run every enumeration on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
}

impl Limits {
    fn config(&self) -> Config {
        Config {
            exec: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
            canon_limit: self.max_vertices,
            max_subset_edges: self.max_subset_edges,
            max_enumeration: self.max_enumeration,
            max_rotation_systems: self.max_rotations,
            ..Config::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of a graph file
    Poly {
        #[arg(value_enum)]
        invariant: Invariant,
        file: String,
        #[command(flatten)]
        params: Params,
        /// Emit a JSON report instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compare two graphs invariant by invariant
    Compare {
        a: String,
        b: String,
        /// Comma-separated invariant names
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "tutte,chromatic"
        )]
        invariants: Vec<Invariant>,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
    /// Verify or search for certificates
    #[command(subcommand)]
    Cert(CertCommand),
}

#[derive(Subcommand)]
enum CertCommand {
    /// Check a certificate JSON file
    Verify {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Breadth-first search for a certificate from A to B
    Search {
        a: String,
        b: String,
        #[arg(long, value_enum)]
        context: ContextArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextArg {
    Tutte,
    Chromatic,
}

impl From<ContextArg> for Context {
    fn from(c: ContextArg) -> Self {
        match c {
            ContextArg::Tutte => Context::Tutte,
            ContextArg::Chromatic => Context::Chromatic,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } | Error::CanonLimit { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{path}: {e}"),
    })
}

fn load_graph(path: &str) -> Result<LabelledGraph, Failure> {
    parse_graph_auto(&read(path)?).map_err(|e| Failure {
        code: 2,
        message: format!("{path}: {e}"),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = cli.limits.config();
    match cli.command {
        Command::Poly {
            invariant,
            file,
            params,
            json,
        } => {
            let graph = load_graph(&file)?;
            let report = compute(invariant, &graph, &params, &cfg)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json(invariant)).expect("serialisable")
                );
            } else {
                println!("{}", report.text());
            }
            Ok(0)
        }
        Command::Compare {
            a,
            b,
            invariants,
            params,
            json,
        } => {
            let (ga, gb) = (load_graph(&a)?, load_graph(&b)?);
            let mut rows: Vec<(Invariant, bool)> = Vec::new();
            for inv in invariants {
                let ra: Report = compute(inv, &ga, &params, &cfg)?;
                let rb: Report = compute(inv, &gb, &params, &cfg)?;
                rows.push((inv, ra == rb));
            }
            let equal = rows.iter().filter(|(_, e)| *e).count();
            if json {
                let table: serde_json::Map<String, serde_json::Value> = rows
                    .iter()
                    .map(|(inv, e)| {
                        (
                            inv.name().to_string(),
                            (if *e { "EQUAL" } else { "DISTINCT" }).into(),
                        )
                    })
                    .collect();
                let out = serde_json::json!({ "results": table, "equal": equal, "distinct": rows.len() - equal });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serialisable")
                );
            } else {
                let width = rows.iter().map(|(i, _)| i.name().len()).max().unwrap_or(0);
                for (inv, e) in &rows {
                    println!(
                        "{:<width$}  {}",
                        inv.name(),
                        if *e { "EQUAL" } else { "DISTINCT" }
                    );
                }
                println!(
                    "{} invariants: {equal} equal, {} distinct",
                    rows.len(),
                    rows.len() - equal
                );
            }
            Ok(0)
        }
        Command::Cert(CertCommand::Verify { file, json }) => {
            let cert = Certificate::from_json(&read(&file)?).map_err(|e| Failure {
                code: 2,
                message: format!("{file}: {e}"),
            })?;
            let verdict = cert::verify_with(&cert, &cfg);
            let (line, code) = match &verdict {
                Verdict::Valid => ("VALID".to_string(), 0),
                Verdict::Invalid { step, reason } => (format!("INVALID step {step}: {reason}"), 1),
            };
            if json {
                let out = match verdict {
                    Verdict::Valid => serde_json::json!({ "verdict": "VALID" }),
                    Verdict::Invalid { step, reason } => {
                        serde_json::json!({ "verdict": "INVALID", "step": step, "reason": reason })
                    }
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serialisable")
                );
            } else {
                println!("{line}");
            }
            Ok(code)
        }
        Command::Cert(CertCommand::Search {
            a,
            b,
            context,
            depth,
            max_nodes,
        }) => {
            let (ga, gb) = (load_graph(&a)?.graph, load_graph(&b)?.graph);
            let limits = SearchLimits {
                max_depth: depth,
                max_nodes,
            };
            match cert::search_with(&ga, &gb, context.into(), limits, &cfg) {
                Ok(found) => {
                    println!("{}", found.to_json());
                    Ok(0)
                }
                Err(NotFound::Limit(what)) => Err(Failure {
                    code: 3,
                    message: format!("NOT-FOUND: limit: {what}"),
                }),
                Err(why) => {
                    println!("NOT-FOUND: {why}");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
