use std::path::Path;

use log::info;
use rayon::prelude::*;

use ricciter::dynamics::tidy;
use ricciter::{
    catalog, compare_flow_iteration, export, integrate_metric_flow, integrate_ratio_flow, load_space_with,
    validate_space_with_tol, DiagonalMetric, Dynamics, Error, FlowOutcome, ForwardPrediction,
    HomogeneousSpaceData, LoadOptions, RegimeOutcome, ValidationPolicy,
};

use crate::render::{self, CatalogEntry, SweepRow};
use crate::{Format, OutputArgs, SpaceArgs, StartArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NONEXISTENCE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_CAP: u8 = 4;

/// A failed run: exit code plus one `kind: message` line for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub line: String,
}

impl Failure {
    fn new(code: u8, line: impl Into<String>) -> Self {
        Self { code, line: line.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSolvable(ns) => Failure::new(EXIT_NONEXISTENCE, format!("not-solvable: {ns}")),
            Error::Validation(report) => {
                let all: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                Failure::new(EXIT_VALIDATION, format!("validation: {}", all.join("; ")))
            }
            Error::StepUnderflow { .. } => Failure::new(EXIT_CAP, format!("step-underflow: {e}")),
            Error::Io { .. } => Failure::new(EXIT_USAGE, format!("io: {e}")),
            Error::Schema { .. } => Failure::new(EXIT_USAGE, format!("schema: {e}")),
            e => Failure::new(EXIT_USAGE, format!("error: {e}")),
        }
    }
}

enum Start {
    Ratio(f64),
    Components([f64; 2]),
}

impl Start {
    fn from_args(args: &StartArgs) -> Self {
        match (args.ratio, args.x1, args.x2) {
            (Some(a), _, _) => Start::Ratio(a),
            (None, Some(x1), Some(x2)) => Start::Components([x1, x2]),
            _ => unreachable!("clap enforces --ratio or --x1/--x2"),
        }
    }

    fn ratio(&self) -> f64 {
        match *self {
            Start::Ratio(a) => a,
            Start::Components([x1, x2]) => x1 / x2,
        }
    }

    fn components(&self) -> [f64; 2] {
        match *self {
            Start::Ratio(a) => [a, 1.0],
            Start::Components(x) => x,
        }
    }
}

fn load(args: &SpaceArgs, policy: ValidationPolicy, tol: f64) -> Result<HomogeneousSpaceData, Failure> {
    let data = match (&args.space, &args.file) {
        (Some(name), _) => catalog::lookup(name)?,
        (None, Some(path)) => load_space_with(path, LoadOptions { policy, tol })?,
        (None, None) => unreachable!("clap enforces --space or --file"),
    };
    info!("loaded {}", data.name);
    Ok(data)
}

fn load_checked(args: &SpaceArgs) -> Result<HomogeneousSpaceData, Failure> {
    load(args, ValidationPolicy::Reject, ricciter::space::DEFAULT_VALIDATION_TOL)
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("io: cannot write {}: {e}", path.display())))?;
    info!("wrote {}", path.display());
    Ok(())
}

pub fn catalog(output: &OutputArgs) -> Result<(), Failure> {
    let spaces = catalog::builtin();
    let dynamics = spaces.iter().map(|(_, s)| Dynamics::new(s)).collect::<Result<Vec<_>, _>>()?;
    let entries: Vec<CatalogEntry> = spaces
        .iter()
        .zip(&dynamics)
        .map(|((key, data), dynamics)| CatalogEntry { key, data, dynamics })
        .collect();
    let text = match output.format {
        Format::Csv => render::catalog_csv(&entries),
        Format::Json => render::catalog_json(&entries),
    };
    emit(output, &text)
}

pub fn validate(space: &SpaceArgs, tol: f64, output: &OutputArgs) -> Result<(), Failure> {
    let data = load(space, ValidationPolicy::Skip, tol)?;
    let report = validate_space_with_tol(&data, tol);
    let text = match output.format {
        Format::Csv => render::validation_csv(&data.name, &report),
        Format::Json => render::validation_json(&data.name, &report),
    };
    emit(output, &text)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Validation(report).into())
    }
}

pub fn solve(space: &SpaceArgs, start: &StartArgs, output: &OutputArgs) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let start = Start::from_args(start);
    let target = DiagonalMetric::new(start.components().to_vec())?;
    let sol = ricciter::solve(&data, &target)?;
    let text = match output.format {
        Format::Csv => render::solution_csv(start.ratio(), &sol),
        Format::Json => render::solution_json(start.ratio(), &sol),
    };
    emit(output, &text)
}

pub fn iterate(
    space: &SpaceArgs,
    start: &StartArgs,
    tol: f64,
    max_steps: usize,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let d = Dynamics::new(&data)?;
    let alpha = Start::from_args(start).ratio();
    let traj = d.run_forward(alpha, max_steps, tol)?;
    info!("{} after {} records", traj.outcome.tag(), traj.records.len());
    let text = match output.format {
        Format::Csv => export::iteration_csv(&traj),
        Format::Json => render::trajectory_json(&data.name, "iterate", &traj),
    };
    emit(output, &text)?;
    match traj.outcome {
        RegimeOutcome::NoIterationExists { failed_at_step, alpha: at, threshold } => {
            let why = match d.classify(alpha).forward {
                ForwardPrediction::NoIteration { reason } => reason,
                ForwardPrediction::Converges { .. } => format!(
                    "ratio {} at step {failed_at_step} does not exceed threshold {}",
                    tidy(at),
                    tidy(threshold)
                ),
            };
            Err(Failure::new(EXIT_NONEXISTENCE, format!("no-iteration: {why}")))
        }
        RegimeOutcome::StoppedFinite { steps } => {
            Err(Failure::new(EXIT_CAP, format!("cap-exhausted: not settled within {steps} steps")))
        }
        RegimeOutcome::Inconclusive { alpha } => Err(Failure::new(
            EXIT_CAP,
            format!("inconclusive: ratios settled at {} away from every Einstein ratio", tidy(alpha)),
        )),
        _ => Ok(()),
    }
}

pub fn ancient(
    space: &SpaceArgs,
    start: &StartArgs,
    steps: usize,
    tol: f64,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let d = Dynamics::new(&data)?;
    let traj = d.run_ancient(Start::from_args(start).components(), steps, tol)?;
    info!("{} after {} records", traj.outcome.tag(), traj.records.len());
    let text = match output.format {
        Format::Csv => export::iteration_csv(&traj),
        Format::Json => render::trajectory_json(&data.name, "ancient", &traj),
    };
    emit(output, &text)?;
    match traj.outcome {
        RegimeOutcome::DivergedPositivityLoss { step, component } => Err(Failure::new(
            EXIT_NONEXISTENCE,
            format!("positivity-loss: component {component} of Ric is not positive at step {step}"),
        )),
        RegimeOutcome::StoppedFinite { steps } => {
            Err(Failure::new(EXIT_CAP, format!("cap-exhausted: not settled within {steps} steps")))
        }
        RegimeOutcome::Inconclusive { alpha } => Err(Failure::new(
            EXIT_CAP,
            format!("inconclusive: ratios settled at {} away from every Einstein ratio", tidy(alpha)),
        )),
        _ => Ok(()),
    }
}

pub fn flow(
    space: &SpaceArgs,
    start: &StartArgs,
    t_max: f64,
    dt: f64,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let k = data.two_summand()?;
    let traj = match Start::from_args(start) {
        Start::Ratio(a) => integrate_ratio_flow(&data, a, t_max, dt)?,
        Start::Components(x) => integrate_metric_flow(&data, &DiagonalMetric::new(x.to_vec())?, t_max, dt)?,
    };
    info!("{} after {} samples", traj.outcome.tag(), traj.samples.len());
    let text = match output.format {
        Format::Csv => export::flow_csv(&traj, &k),
        Format::Json => render::flow_json(&data.name, &traj),
    };
    emit(output, &text)?;
    match traj.outcome {
        FlowOutcome::Unsettled { alpha } => Err(Failure::new(
            EXIT_CAP,
            format!(
                "unsettled: ratio {} at t_max={} is not near an Einstein ratio",
                tidy(alpha),
                tidy(t_max)
            ),
        )),
        _ => Ok(()),
    }
}

pub fn classify(space: &SpaceArgs, start: &StartArgs, output: &OutputArgs) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let p = Dynamics::new(&data)?.classify(Start::from_args(start).ratio());
    let text = match output.format {
        Format::Csv => render::prediction_csv(&p),
        Format::Json => render::prediction_json(&p),
    };
    emit(output, &text)
}

pub fn compare(space: &SpaceArgs, start: &StartArgs, output: &OutputArgs) -> Result<(), Failure> {
    let data = load_checked(space)?;
    let report = compare_flow_iteration(&data, Start::from_args(start).ratio())?;
    let text = match output.format {
        Format::Csv => render::comparison_csv(&report),
        Format::Json => render::comparison_json(&report),
    };
    emit(output, &text)
}

pub fn sweep(
    space: &SpaceArgs,
    (from, to, points): (f64, f64, usize),
    tol: f64,
    max_steps: usize,
    steps: usize,
    output: &OutputArgs,
) -> Result<(), Failure> {
    if from >= to || points < 2 {
        return Err(Failure::new(EXIT_USAGE, "error: sweep needs --from < --to and --points >= 2"));
    }
    let data = load_checked(space)?;
    let d = Dynamics::new(&data)?;
    let grid: Vec<f64> =
        (0..points).map(|i| from * (to / from).powf(i as f64 / (points - 1) as f64)).collect();
    // every run is independent; collect() keeps grid order
    let rows = grid
        .par_iter()
        .map(|&alpha| -> Result<SweepRow, Error> {
            let forward = d.run_forward(alpha, max_steps, tol)?;
            let ancient = d.run_ancient([alpha, 1.0], steps, tol)?;
            Ok(SweepRow {
                alpha,
                prediction: d.classify(alpha),
                forward_steps: forward.records.len(),
                forward: forward.outcome,
                index: d.ricci_index(alpha, 1000),
                ancient: ancient.outcome,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let text = match output.format {
        Format::Csv => render::sweep_csv(&rows),
        Format::Json => render::sweep_json(&rows),
    };
    emit(output, &text)
}
