//! `grfold`: build Grassmannian seeds, run folding schedules and verify the
//! resulting identities from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad usage.
//! Errors are written to stderr as `{"error":{"kind","message"}}`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grfold::ScheduleVariant;

#[derive(Parser, Debug)]
#[command(name = "grfold", version, about = "Foldable seeds of Grassmannian cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the rectangular initial seed.
    Seed {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        output: Output,
    },
    /// Apply a mutation sequence and print the seed with its exchange trace.
    Mutate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        steps: Steps,
        #[command(flatten)]
        output: Output,
    },
    /// Run the folding schedule; print the schedule, seed and equations.
    Fold {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Variant::Uniform)]
        variant: Variant,
        #[command(flatten)]
        output: Output,
    },
    /// Check the initial and folded seeds against the label and quiver formulas.
    VerifySeed {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Variant::Uniform)]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check exchange relations exactly on random integer matrices.
    VerifyExchange {
        #[command(flatten)]
        shape: Shape,
        /// Mutation sequence to check instead of the folding schedule.
        #[command(flatten)]
        steps: Steps,
        #[arg(long, value_enum, default_value_t = Variant::Uniform)]
        variant: Variant,
        /// Random matrices per exchange relation.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the D=3 residual suite or the D=4 negative control.
    VerifyKinematics {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        dim: u8,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Residual tolerance (D=3) or violation threshold (D=4).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a seed as Graphviz with vertices pinned to the grid.
    ExportDot {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        steps: Steps,
        /// Export the folded seed instead.
        #[arg(long, conflicts_with_all = ["sequence", "positions", "input"])]
        fold: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Shape {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

/// Either `--k/--n` for the initial seed or `--input` for a seed file.
#[derive(Args, Debug, Clone)]
struct Source {
    #[arg(long, requires = "n", required_unless_present = "input")]
    k: Option<usize>,
    #[arg(long, requires = "k", required_unless_present = "input")]
    n: Option<usize>,
    /// Seed JSON as written by `seed`, `mutate` or `fold`.
    #[arg(long, conflicts_with_all = ["k", "n"])]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct Steps {
    /// Comma-separated vertex ids, column-major from the top-left.
    #[arg(long, value_delimiter = ',', conflicts_with = "positions")]
    sequence: Option<Vec<u32>>,
    /// Semicolon-separated `row,col` pairs, e.g. `1,3;2,3`.
    #[arg(long)]
    positions: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Variant {
    Uniform,
    Literal,
}

impl From<Variant> for ScheduleVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Uniform => ScheduleVariant::Uniform,
            Variant::Literal => ScheduleVariant::Literal,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            return commands::Failure::usage(message.trim_end()).report();
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
