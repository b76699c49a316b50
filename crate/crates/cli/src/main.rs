use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tautilt_cli::{envelope, execute, parse_workspace, Command};

#[derive(Parser, Debug)]
#[command(name = "tautilt", version, about = "Exact tau-tilting computations over bound quiver algebras")]
struct Cli {
    /// Workspace file with the algebra, modules, pairs and complexes.
    #[arg(short, long, global = true)]
    workspace: Option<PathBuf>,
    /// Print the JSON report instead of the text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Role of a pair (τ-rigid, almost τ-tilting, τ-tilting).
    Check { pair: String },
    /// Auslander-Reiten translate of a module.
    Tau { module: String },
    /// Mutation of a τ-tilting pair at a slot (0-based, as listed by `check`).
    Mutate { pair: String, slot: usize },
    /// Bongartz completion, absolute or relative to `--rel`.
    Bongartz {
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(long)]
        rel: Option<String>,
        anchor: String,
    },
    /// Exchange graph of support τ-tilting pairs.
    Graph {
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Maximal green sequences ending at a pair.
    Mgs {
        pair: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// τ-tilting reduction at a τ-rigid pair.
    Reduce {
        pair: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Transport of a maximal green sequence to the reduction.
    Transport {
        pair: String,
        mgs_id: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Command {
        match s {
            Sub::Check { pair } => Command::Check { pair },
            Sub::Tau { module } => Command::Tau { module },
            Sub::Mutate { pair, slot } => Command::Mutate { pair, slot },
            Sub::Bongartz { left, rel, anchor, .. } => Command::Bongartz { left, rel, anchor },
            Sub::Graph { dot, budget } => Command::Graph { dot, budget },
            Sub::Mgs { pair, budget } => Command::Mgs { pair, budget },
            Sub::Reduce { pair, budget } => Command::Reduce { pair, budget },
            Sub::Transport { pair, mgs_id, budget } => Command::Transport { pair, mgs_id, budget },
            Sub::Verify {
                suite,
                seed,
                budget,
                samples,
            } => Command::Verify {
                suite,
                seed,
                budget,
                samples,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let ws = match &cli.workspace {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            };
            match parse_workspace(&text) {
                Ok(w) => Some(w),
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
        }
        None => None,
    };
    let cmd = Command::from(cli.command);
    match execute(&cmd, ws.as_ref()) {
        Ok(out) => {
            if cli.json {
                let v = envelope(&cmd, ws.as_ref(), &out);
                println!("{}", serde_json::to_string_pretty(&v).expect("reports serialize"));
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
