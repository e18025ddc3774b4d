mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "qmachine", version, about = "Quantum machine simulations and state property system audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Master seed for all random draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the command's acceptance tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate machine, Born and trace-rule probabilities over the angle between state and direction.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 181)]
        grid: usize,
    },
    /// Monte Carlo frequencies of outcome O1 against cos²(γ/2).
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 7)]
        grid: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
    },
    /// Sweep the elastic width ε over states w = x·u, x ∈ [-1, 1].
    Epsilon {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Comma-separated list of widths in (0, 1].
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.1,0.000001")]
        epsilon: Vec<f64>,
    },
    /// Rod-model correlations on an x–z plane grid, optionally with the CHSH value.
    Bell {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        grid: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long)]
        chsh: bool,
    },
    /// Audit a state property space document against the lattice axioms.
    Lattice {
        #[command(flatten)]
        common: Common,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the coproduct of two systems, audit it, and write both.
    Coproduct {
        #[command(flatten)]
        common: Common,
        /// Two input documents; the two-direction spin system is used for both when omitted.
        #[arg(long = "in", num_args = 1)]
        inputs: Vec<PathBuf>,
        /// Where to write the audit; defaults to `<out>.report.json`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Probe { common, grid } => commands::probe(&common, grid),
        Command::Simulate { common, grid, trials } => commands::simulate(&common, grid, trials),
        Command::Epsilon { common, grid, trials, epsilon } => commands::epsilon(&common, grid, trials, &epsilon),
        Command::Bell { common, grid, trials, chsh } => commands::bell(&common, grid, trials, chsh),
        Command::Lattice { common, input } => commands::lattice(&common, &input),
        Command::Coproduct { common, inputs, report } => commands::coproduct(&common, &inputs, report.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmachine: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
