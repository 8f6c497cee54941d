mod commands;
mod query;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{Config, Item, Status};
use leavitt_core::graph::DEFAULT_LATTICE_CAP;
use leavitt_core::kernel::SearchBudget;
use leavitt_core::monoid::Bounds;
use serde_json::json;

#[derive(Parser)]
#[command(name = "leavitt", version, about = "Leavitt path algebras of finite graphs over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Rewrite steps allowed in a monoid equality search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    eq_depth: Option<u64>,
    /// States a monoid search may store, and products the properly infinite search may spend.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    search_cap: Option<u64>,
    /// Largest vertex count for which hereditary saturated sets are enumerated.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=63))]
    lattice_cap: Option<u64>,
    /// Seed for randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide simplicity and pure infiniteness, with evidence.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// List the hereditary saturated sets and their covering relation.
    Ideals {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Produce and verify a subequivalence witness.
    Witness {
        path: PathBuf,
        #[arg(value_enum)]
        kind: commands::WitnessKind,
        /// A vertex id, an element literal, or a path such as `e1.e2`.
        argument: String,
    },
    /// Answer a query in the graph monoid.
    Monoid {
        path: PathBuf,
        /// For example `eq: v = 2v` or `23div: v`.
        query: String,
    },
    /// Run the randomized property suite against each graph.
    Selfcheck {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Random cases per property.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
}

fn config(cli: &Cli, trials: usize) -> Config {
    let defaults = Bounds::default();
    let budget = SearchBudget::default();
    Config {
        bounds: Bounds {
            depth: cli.eq_depth.map_or(defaults.depth, |d| d as usize),
            states: cli.search_cap.map_or(defaults.states, |s| s as usize),
            component_cap: None,
        },
        budget: SearchBudget {
            max_products: cli.search_cap.map_or(budget.max_products, |s| s as usize),
            ..budget
        },
        lattice_cap: cli.lattice_cap.map_or(DEFAULT_LATTICE_CAP, |c| c as usize),
        seed: cli.seed,
        trials,
    }
}

fn emit(format: Format, command: &str, items: &[Item], batch: bool) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let value = if batch {
                json!({
                    "schema": "leavitt.batch/1",
                    "command": command,
                    "results": items.iter().map(|i| i.json.clone()).collect::<Vec<_>>(),
                })
            } else {
                items[0].json.clone()
            };
            serde_json::to_writer_pretty(&mut out, &value)?;
            writeln!(out)
        }
        Format::Text => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", item.text)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, items, batch) = match &cli.command {
        Command::Classify { paths } => {
            let cfg = config(&cli, 0);
            ("classify", paths.iter().map(|p| commands::classify(p, &cfg)).collect(), true)
        }
        Command::Ideals { paths } => {
            let cfg = config(&cli, 0);
            ("ideals", paths.iter().map(|p| commands::ideals(p, &cfg)).collect(), true)
        }
        Command::Witness { path, kind, argument } => {
            let cfg = config(&cli, 0);
            ("witness", vec![commands::witness(path, *kind, argument, &cfg)], false)
        }
        Command::Monoid { path, query } => {
            let cfg = config(&cli, 0);
            ("monoid", vec![commands::monoid(path, query, &cfg)], false)
        }
        Command::Selfcheck { paths, trials } => {
            let cfg = config(&cli, *trials as usize);
            ("selfcheck", paths.iter().map(|p| commands::selfcheck(p, &cfg)).collect(), true)
        }
    };
    let items: Vec<Item> = items;
    if let Err(e) = emit(cli.format, name, &items, batch) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let worst = items.iter().map(|i| i.status).max().unwrap_or(Status::Ok);
    ExitCode::from(match worst {
        Status::Ok => 0,
        Status::PropertyFailure => 1,
        Status::InputError => 2,
    })
}
