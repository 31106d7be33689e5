use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hasse_pareto::Algorithm;
use hasse_pareto_cli::bench::{BenchConfig, Family};
use hasse_pareto_cli::commands::{
    cmd_bench, cmd_oracle, cmd_screen, cmd_solve, BenchArgs, OracleArgs, ScreenArgs, SolveArgs,
};
use hasse_pareto_cli::{parse_sizes, Result, Status};

/// Exact Pareto fronts for order-constrained multi-objective problems.
#[derive(Parser)]
#[command(name = "hasse-pareto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Basic,
    Improved,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chain,
    Grid,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write its faces as JSON.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "improved")]
        algorithm: AlgorithmArg,
        #[arg(long)]
        output: PathBuf,
        /// Graphviz export of the initial diagram.
        #[arg(long)]
        dot_diagram: Option<PathBuf>,
        /// Graphviz export of the resolution tree.
        #[arg(long)]
        dot_tree: Option<PathBuf>,
    },
    /// Check the improved solver against brute-force lattice enumeration.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: u32,
        /// Damage one face before verifying (the check must then fail).
        #[arg(long)]
        corrupt: bool,
    },
    /// Time the improved solver on random signatures of a family.
    Bench {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Inclusive range `A..B` or `A..B:STEP`; grid sizes are side lengths.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Probability that a variable is maximized.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Solve every signature of a small grid.
    Screen {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        csv: PathBuf,
    },
}

fn run(command: Command) -> Result<Status> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::Solve {
            input,
            algorithm,
            output,
            dot_diagram,
            dot_tree,
        } => {
            let algorithm = match algorithm {
                AlgorithmArg::Basic => Algorithm::Basic,
                AlgorithmArg::Improved => Algorithm::Improved,
            };
            let args = SolveArgs {
                input,
                algorithm,
                output,
                dot_diagram,
                dot_tree,
            };
            cmd_solve(&args, &mut out)
        }
        Command::Oracle {
            input,
            steps,
            corrupt,
        } => cmd_oracle(
            &OracleArgs {
                input,
                steps,
                corrupt,
            },
            &mut out,
        ),
        Command::Bench {
            family,
            sizes,
            instances,
            p,
            seed,
            csv,
        } => {
            let family = match family {
                FamilyArg::Chain => Family::Chain,
                FamilyArg::Grid => Family::Grid,
            };
            let config = BenchConfig {
                family,
                sizes: parse_sizes(&sizes)?,
                instances,
                p,
                seed,
            };
            cmd_bench(&BenchArgs { config, csv }, &mut out)
        }
        Command::Screen { rows, cols, csv } => {
            cmd_screen(&ScreenArgs { rows, cols, csv }, &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
