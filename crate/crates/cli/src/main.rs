use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "k2net",
    version,
    about = "Learn and score discrete Bayesian belief networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Model and case inputs are file paths, or `bundled:NAME` for one of the
/// shipped examples (b1, bs1, bs2, table1, reference10).
#[derive(Subcommand)]
enum Command {
    /// Score a structure (or the structure of a network) against a case file.
    Score {
        model: String,
        cases: String,
        #[arg(long, value_enum, default_value_t = Prior::None)]
        prior: Prior,
    },
    /// Learn a structure with K2 under a node ordering.
    LearnK2 {
        cases: String,
        /// Comma-separated variable names; defaults to the case-file column order.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<String>>,
        /// Maximum parents per node; defaults to n - 1 (required above 15 variables).
        #[arg(long)]
        max_parents: Option<usize>,
        /// Structure or network file declaring the variables and value order.
        #[arg(long)]
        variables: Option<String>,
        #[arg(long, value_enum, default_value_t = Prior::Ordered)]
        prior: Prior,
        /// Search every ordering-consistent parent set instead of greedily.
        #[arg(long)]
        exhaustive: bool,
        /// Write the learned graph as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the learned structure as a structure file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print every candidate evaluation.
        #[arg(long)]
        trace: bool,
        #[arg(long, env = "K2NET_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Posterior probabilities of a set of structures, highest first.
    Posteriors {
        cases: String,
        /// Score every DAG over the case variables (at most 6 variables).
        #[arg(long, conflicts_with = "structures")]
        all_dags: bool,
        /// Structure files making up the candidate set.
        #[arg(long, num_args = 1.., required_unless_present = "all_dags")]
        structures: Vec<String>,
        #[arg(long)]
        variables: Option<String>,
        #[arg(long, value_enum, default_value_t = Prior::None)]
        prior: Prior,
    },
    /// Draw cases from a network.
    Sample {
        network: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit CPTs for a structure from a case file.
    Fit {
        structure: String,
        cases: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conditional probability of target values given evidence.
    Infer {
        network: String,
        /// `name=value`, repeatable or comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Posterior ratio of two structures under equal priors.
    Compare {
        first: String,
        second: String,
        cases: String,
        /// Print the natural-log ratio as well.
        #[arg(long)]
        ln: bool,
    },
    /// Number of structures on n nodes.
    Count {
        n: usize,
        #[arg(value_enum)]
        mode: CountMode,
    },
    /// Sample from a reference network, relearn it at several case counts and
    /// report arc errors.
    Reconstruct {
        network: String,
        /// Comma-separated case counts.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_parents: Option<usize>,
        /// Defaults to the network's topological order.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<String>>,
        #[arg(long, env = "K2NET_THREADS", default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Prior {
    None,
    AllDags,
    Ordered,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CountMode {
    Dags,
    Ordered,
}

fn run(cli: Cli) -> Result<String, CliError> {
    use Command::*;
    match cli.command {
        Score {
            model,
            cases,
            prior,
        } => commands::score(&model, &cases, prior),
        LearnK2 {
            cases,
            ordering,
            max_parents,
            variables,
            prior,
            exhaustive,
            dot,
            output,
            trace,
            threads,
        } => commands::learn(commands::LearnArgs {
            cases,
            ordering,
            max_parents,
            variables,
            prior,
            exhaustive,
            dot,
            output,
            trace,
            threads,
        }),
        Posteriors {
            cases,
            all_dags,
            structures,
            variables,
            prior,
        } => commands::posteriors(&cases, all_dags, &structures, variables.as_deref(), prior),
        Sample {
            network,
            m,
            seed,
            out,
        } => commands::sample(&network, m, seed, out.as_deref()),
        Fit {
            structure,
            cases,
            out,
        } => commands::fit(&structure, &cases, out.as_deref()),
        Infer {
            network,
            target,
            given,
        } => commands::infer(&network, &target, &given),
        Compare {
            first,
            second,
            cases,
            ln,
        } => commands::compare(&first, &second, &cases, ln),
        Count { n, mode } => Ok(commands::count(n, mode)),
        Reconstruct {
            network,
            m,
            seed,
            max_parents,
            ordering,
            threads,
        } => commands::reconstruct(&network, &m, seed, max_parents, ordering, threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
