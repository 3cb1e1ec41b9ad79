mod commands;
mod input;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use input::InputArgs;
use pspec_core::pspectral::SolveOptions;

#[derive(Debug, Parser)]
#[command(name = "pspec", version, about = "p-spectral radius of graphs: solver, bounds and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Exponent p > 1
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, env = "PSPEC_SEED", default_value_t = 42)]
    pub seed: u64,
}

impl SolverArgs {
    pub fn options(&self) -> SolveOptions {
        SolveOptions { restarts: self.restarts, tol: self.tol, max_iter: self.max_iter, seed: self.seed, require_positive: false }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the p-spectral radius
    Lambda {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check every applicable closed-form bound
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Clique bound parameter (defaults to the clique number)
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Construct T_r(n), or K_r^+(s;t) with --s and --t
    Turan {
        #[arg(long)]
        r: usize,
        #[arg(long, required_unless_present = "s")]
        n: Option<usize>,
        #[arg(long, requires = "t", conflicts_with = "n")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Joint size js_r: most r-cliques sharing one edge
    Joints {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Replace the graph by a complete multipartite graph with larger
    /// weighted degrees
    Symmetrize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Comma-separated weights (defaults to the computed eigenvector)
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Remove minimum-entry vertices until the minimum degree is large
    Extract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long = "A")]
        a: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long = "R", default_value_t = 0.0)]
        big_r: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite
    Verify(commands::VerifyArgs),
    /// List graphs of order n up to isomorphism in graph6
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only graphs with clique number at most this
        #[arg(long)]
        max_clique: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        ExitCode::from(2)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                _ => {
                    let text = e.render().to_string();
                    eprintln!("{}", one_line(&text));
                    ExitCode::from(2)
                }
            };
        }
    };
    let result = match cli.command {
        Command::Lambda { input, solver, out } => commands::lambda(&input, &solver, out.format),
        Command::Bounds { input, solver, r, out } => commands::bounds(&input, &solver, r, out.format),
        Command::Turan { r, n, s, t, out } => commands::turan(r, n, s.zip(t), out.format),
        Command::Joints { input, r, out } => commands::joints(&input, r, out.format),
        Command::Symmetrize { input, solver, weights, out } => commands::symmetrize(&input, &solver, weights, out.format),
        Command::Extract { input, solver, a, gamma, big_r, out } => commands::extract(&input, &solver, a, gamma, big_r, out.format),
        Command::Verify(args) => commands::verify(&args),
        Command::Enumerate { n, max_clique, out } => commands::enumerate(n, max_clique, out.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// clap spreads some messages over several lines; keep the first sentence
fn one_line(text: &str) -> String {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines.next().unwrap_or("error: invalid arguments").to_owned();
    if first.ends_with(':') {
        let rest: Vec<&str> = lines.take_while(|l| !l.starts_with("Usage:")).collect();
        format!("{first} {}", rest.join(", "))
    } else {
        first
    }
}
