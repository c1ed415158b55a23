use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use stablelab::harness::{
    bimodule_dot, filters_dot, hasse_dot, load_model, model_to_toml, run_suite, world_index, Suite,
};
use stablelab::lattice::{DEFAULT_MAX_BASE, ENUMERATION_HARD_CAP};
use stablelab::logic::parse;
use stablelab::semantics::{
    countermodel_search, explain, force, SearchOutcome, UnboundAtoms, DEFAULT_VARS_CAP, VARS_HARD_CAP,
};

#[derive(Parser)]
#[command(name = "stablelab", version, about = "Stable semantics over finite distributive lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a world of a model forces a formula.
    Force {
        model: PathBuf,
        world: String,
        formula: String,
        /// Print the clause trace, including disjunction witnesses.
        #[arg(long)]
        explain: bool,
        /// Read atoms missing from the valuation as the least filter.
        #[arg(long)]
        unbound_bottom: bool,
    },
    /// Look for a countermodel over every enumerated frame.
    Search {
        formula: String,
        #[arg(long, env = "STABLELAB_MAX_BASE", default_value_t = DEFAULT_MAX_BASE)]
        max_base: usize,
        #[arg(long, default_value_t = DEFAULT_VARS_CAP)]
        vars: usize,
    },
    /// Run a law suite and print its JSON report.
    Verify {
        /// One of: filtering, stable-vs-algebraic, upset-embedding, adjunction,
        /// bimodule-roundtrip, duality, scott-extension, johnstone,
        /// fragment-agreement.
        suite: String,
        #[arg(long, env = "STABLELAB_MAX_BASE", default_value_t = DEFAULT_MAX_BASE)]
        max_base: usize,
    },
    /// Emit a Graphviz description of a model.
    ExportDot {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Hasse)]
        what: What,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Hasse,
    Bimodule,
    Filters,
}

fn check_base(max_base: usize) -> Result<()> {
    if max_base > ENUMERATION_HARD_CAP {
        bail!("--max-base {max_base} exceeds the hard cap {ENUMERATION_HARD_CAP}");
    }
    Ok(())
}

/// Exit 0 on success, found countermodel or passing suite; 1 on exhausted
/// search or failing suite.
fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Force { model, world, formula, explain: want_trace, unbound_bottom } => {
            let mut m = load_model(&model).with_context(|| format!("loading {}", model.display()))?;
            if unbound_bottom {
                m = m.with_unbound(UnboundAtoms::Bottom);
            }
            let w = world_index(&m, &world)?;
            let f = parse(&formula)?;
            println!("{}", force(&m, w, &f)?);
            if want_trace {
                println!("{}", explain(&m, w, &f)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { formula, max_base, vars } => {
            check_base(max_base)?;
            if vars > VARS_HARD_CAP {
                bail!("--vars {vars} exceeds the hard cap {VARS_HARD_CAP}");
            }
            let f = parse(&formula)?;
            match countermodel_search(&f, max_base, vars)? {
                SearchOutcome::Found(c) => {
                    print!("{}", model_to_toml(&c.model));
                    println!("# frame: {}", c.lattice);
                    println!("# refuted at world: {}", c.model.frame().name(c.world));
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted { models_checked } => {
                    println!("exhausted: no countermodel among {models_checked} models (max base {max_base})");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { suite, max_base } => {
            check_base(max_base)?;
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, max_base)?;
            println!("{}", report.to_json());
            eprintln!("{}", report.summary());
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ExportDot { model, what } => {
            let m = load_model(&model).with_context(|| format!("loading {}", model.display()))?;
            let dot = match what {
                What::Hasse => hasse_dot(m.frame().poset()),
                What::Bimodule => bimodule_dot(&m)?,
                What::Filters => filters_dot(&m)?,
            };
            print!("{dot}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
