use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::Failure;

/// Ricci iteration, ancient Ricci iteration, prescribed Ricci curvature and
/// Ricci flow on homogeneous spaces with two isotropy summands.
#[derive(Parser, Debug)]
#[command(name = "ricciter", version)]
struct Cli {
    /// More log output (-v info, -vv debug); RUST_LOG overrides.
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in spaces with their constants and Einstein metrics.
    Catalog {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the structural invariants of a space.
    Validate {
        #[command(flatten)]
        space: SpaceArgs,
        /// Absolute tolerance for the Casimir identity.
        #[arg(long, default_value_t = 1e-12, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve Ric g = cT for a target T.
    Solve {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the forward iteration Ric g_{i+1} = g_i from Ric g_1 = cT.
    Iterate {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, default_value_t = ricciter::dynamics::DEFAULT_TOL, value_parser = positive)]
        tol: f64,
        #[arg(long, default_value_t = ricciter::dynamics::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the ancient iteration g_{i-1} = Ric g_i from g_1.
    Ancient {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, default_value_t = 5000)]
        steps: usize,
        #[arg(long, default_value_t = ricciter::dynamics::DEFAULT_TOL, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Integrate Ricci flow: the ratio flow for --ratio, the unnormalized
    /// flow for --x1/--x2.
    Flow {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, default_value_t = ricciter::flow::COMPARE_T_MAX, value_parser = positive)]
        t_max: f64,
        #[arg(long, default_value_t = ricciter::flow::COMPARE_DT, value_parser = positive)]
        dt: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Predict the forward and ancient behaviour from closed-form data.
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the forward iteration with the normalized Ricci flow.
    Compare {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        start: StartArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify and run both iterations over a log-spaced grid of ratios.
    Sweep {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 0.05, value_parser = positive)]
        from: f64,
        #[arg(long, default_value_t = 20.0, value_parser = positive)]
        to: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = ricciter::dynamics::DEFAULT_TOL, value_parser = positive)]
        tol: f64,
        #[arg(long, default_value_t = ricciter::dynamics::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Step cap for the ancient runs.
        #[arg(long, default_value_t = 5000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct SpaceArgs {
    /// Catalog name: so5-u2, so6-su3, syn-1, so2m-1-um-1:m=<k>, so2m-sum:m=<k>.
    #[arg(long)]
    space: Option<String>,
    /// JSON space description.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = true)]
struct StartArgs {
    /// Ratio x1/x2 of the initial metric or target.
    #[arg(long, conflicts_with_all = ["x1", "x2"], value_parser = positive)]
    ratio: Option<f64>,
    #[arg(long, requires = "x2", value_parser = positive)]
    x1: Option<f64>,
    #[arg(long, requires = "x1", value_parser = positive)]
    x2: Option<f64>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    use commands as c;
    match cli.command {
        Command::Catalog { output } => c::catalog(&output),
        Command::Validate { space, tol, output } => c::validate(&space, tol, &output),
        Command::Solve { space, start, output } => c::solve(&space, &start, &output),
        Command::Iterate { space, start, tol, max_steps, output } => {
            c::iterate(&space, &start, tol, max_steps, &output)
        }
        Command::Ancient { space, start, steps, tol, output } => {
            c::ancient(&space, &start, steps, tol, &output)
        }
        Command::Flow { space, start, t_max, dt, output } => c::flow(&space, &start, t_max, dt, &output),
        Command::Classify { space, start, output } => c::classify(&space, &start, &output),
        Command::Compare { space, start, output } => c::compare(&space, &start, &output),
        Command::Sweep { space, from, to, points, tol, max_steps, steps, output } => {
            c::sweep(&space, (from, to, points), tol, max_steps, steps, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors
            return ExitCode::from(if e.use_stderr() { commands::EXIT_USAGE } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.line);
            ExitCode::from(f.code)
        }
    }
}
