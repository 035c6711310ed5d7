//! Homogeneous Ricci flow `dx_i/dt = -2 r_i(x)` and its ratio reduction
//! `d alpha/dt = -2 (r_1(alpha) - alpha r_2(alpha))` (time rescaled so that
//! `x_2 = 1`). Zeros of the ratio field are the Einstein ratios.

use crate::curvature::DiagonalMetric;
use crate::dynamics::{Dynamics, ForwardPrediction, RegimeOutcome, DEFAULT_MAX_STEPS, DEFAULT_TOL};
use crate::einstein::EinsteinSet;
use crate::error::{Error, Result};
use crate::space::{HomogeneousSpaceData, TwoSummand};

pub const COLLAPSE_ALPHA: f64 = 1e-9;
pub const DIVERGE_ALPHA: f64 = 1e9;
/// Terminal distance (relative) to an Einstein ratio counted as converged.
pub const CONVERGED_TOL: f64 = 1e-8;
/// Integration stops early once this close to an Einstein ratio.
const ARRIVAL_TOL: f64 = 1e-10;
const MIN_DT: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSample {
    pub t: f64,
    pub components: [f64; 2],
    pub alpha: f64,
    pub scalar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlowOutcome {
    RatioConverged {
        ratio: f64,
    },
    RatioCollapsedToZero,
    RatioDivergedToInfinity,
    /// A component of the unnormalized flow reached zero in finite time.
    ExtinctionReached {
        t: f64,
    },
    /// `t_max` was reached away from every Einstein ratio.
    Unsettled {
        alpha: f64,
    },
}

impl FlowOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            FlowOutcome::RatioConverged { .. } => "RatioConverged",
            FlowOutcome::RatioCollapsedToZero => "RatioCollapsedToZero",
            FlowOutcome::RatioDivergedToInfinity => "RatioDivergedToInfinity",
            FlowOutcome::ExtinctionReached { .. } => "ExtinctionReached",
            FlowOutcome::Unsettled { .. } => "Unsettled",
        }
    }

    pub fn limit_ratio(&self) -> Option<f64> {
        match self {
            FlowOutcome::RatioConverged { ratio } => Some(*ratio),
            FlowOutcome::RatioCollapsedToZero => Some(0.0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowTrajectory {
    pub samples: Vec<FlowSample>,
    pub outcome: FlowOutcome,
}

pub fn flow_rhs(space: &HomogeneousSpaceData, x: &DiagonalMetric) -> Result<Vec<f64>> {
    let r = crate::curvature::ricci_components(space, x)?;
    Ok(r.components.iter().map(|r| -2.0 * r).collect())
}

fn ratio_field(k: &TwoSummand, alpha: f64) -> f64 {
    let (r1, r2) = k.ricci(alpha);
    -2.0 * (r1 - alpha * r2)
}

pub fn ratio_flow_rhs(space: &HomogeneousSpaceData, alpha: f64) -> Result<f64> {
    let k = space.two_summand()?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonPositiveRatio(alpha));
    }
    Ok(ratio_field(&k, alpha))
}

fn sample(k: &TwoSummand, t: f64, x: [f64; 2]) -> FlowSample {
    let alpha = x[0] / x[1];
    let (r1, r2) = k.ricci(alpha);
    FlowSample { t, components: x, alpha, scalar: k.d1 * r1 / x[0] + k.d2 * r2 / x[1] }
}

/// One RK4 step of the ratio field, or `None` when a stage leaves `alpha > 0`.
fn rk4_ratio(k: &TwoSummand, a: f64, h: f64) -> Option<f64> {
    let f = |x: f64| (x > 0.0).then(|| ratio_field(k, x));
    let k1 = f(a)?;
    let k2 = f(a + 0.5 * h * k1)?;
    let k3 = f(a + 0.5 * h * k2)?;
    let k4 = f(a + h * k3)?;
    let next = a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    (next > 0.0 && next.is_finite()).then_some(next)
}

fn terminal(set: &EinsteinSet, alpha: f64, tol: f64) -> Option<f64> {
    set.nearest_within(alpha, tol).map(|(_, r)| r)
}

/// RK4 with nominal step `dt`, halved while a step would change `alpha` by
/// more than 10% or leave the positive axis, and regrown afterwards.
pub fn integrate_ratio_flow_with(
    k: &TwoSummand,
    set: &EinsteinSet,
    alpha0: f64,
    t_max: f64,
    dt: f64,
) -> Result<FlowTrajectory> {
    if !(alpha0 > 0.0 && alpha0.is_finite()) {
        return Err(Error::NonPositiveRatio(alpha0));
    }
    if !(dt > 0.0 && t_max >= 0.0) {
        return Err(Error::InvalidArgument(format!("need dt > 0 and t_max >= 0, got {dt}, {t_max}")));
    }
    let mut samples = vec![sample(k, 0.0, [alpha0, 1.0])];

    // An equilibrium stays put; integrating would only amplify rounding at
    // repelling ratios.
    if let Some(ratio) = terminal(set, alpha0, 1e-12) {
        let n = (t_max / dt).ceil() as usize;
        for i in 1..=n {
            samples.push(sample(k, (i as f64 * dt).min(t_max), [ratio, 1.0]));
        }
        return Ok(FlowTrajectory { samples, outcome: FlowOutcome::RatioConverged { ratio } });
    }

    let (mut t, mut a, mut h) = (0.0, alpha0, dt);
    while t < t_max {
        let step = h.min(t_max - t);
        match rk4_ratio(k, a, step) {
            Some(next) if (next - a).abs() <= 0.1 * a => {
                t += step;
                a = next;
                samples.push(sample(k, t, [a, 1.0]));
                h = (2.0 * h).min(dt);
                if a < COLLAPSE_ALPHA {
                    return Ok(FlowTrajectory { samples, outcome: FlowOutcome::RatioCollapsedToZero });
                }
                if a > DIVERGE_ALPHA {
                    return Ok(FlowTrajectory { samples, outcome: FlowOutcome::RatioDivergedToInfinity });
                }
                if let Some(ratio) = terminal(set, a, ARRIVAL_TOL) {
                    return Ok(FlowTrajectory { samples, outcome: FlowOutcome::RatioConverged { ratio } });
                }
            }
            _ => {
                h = 0.5 * step;
                if h < MIN_DT {
                    return Err(Error::StepUnderflow { t, dt: h });
                }
            }
        }
    }
    let outcome = match terminal(set, a, CONVERGED_TOL) {
        Some(ratio) => FlowOutcome::RatioConverged { ratio },
        None => FlowOutcome::Unsettled { alpha: a },
    };
    Ok(FlowTrajectory { samples, outcome })
}

pub fn integrate_ratio_flow(
    space: &HomogeneousSpaceData,
    alpha0: f64,
    t_max: f64,
    dt: f64,
) -> Result<FlowTrajectory> {
    let d = Dynamics::new(space)?;
    integrate_ratio_flow_with(&d.constants, &d.einstein, alpha0, t_max, dt)
}

/// The unnormalized two-component flow. Components shrink to zero in finite
/// time; the run ends at extinction (a component below `1e-12` of its initial
/// size), at `t_max`, or when the ratio collapses or diverges.
pub fn integrate_metric_flow(
    space: &HomogeneousSpaceData,
    x0: &DiagonalMetric,
    t_max: f64,
    dt: f64,
) -> Result<FlowTrajectory> {
    let d = Dynamics::new(space)?;
    let k = d.constants;
    if x0.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: x0.len() });
    }
    DiagonalMetric::new(x0.components().to_vec())?;
    if !(dt > 0.0 && t_max >= 0.0) {
        return Err(Error::InvalidArgument(format!("need dt > 0 and t_max >= 0, got {dt}, {t_max}")));
    }
    let x_init = [x0.components()[0], x0.components()[1]];
    let rhs = |x: [f64; 2]| -> Option<[f64; 2]> {
        if !(x[0] > 0.0 && x[1] > 0.0) {
            return None;
        }
        let (r1, r2) = k.ricci(x[0] / x[1]);
        Some([-2.0 * r1, -2.0 * r2])
    };
    let axpy = |x: [f64; 2], h: f64, v: [f64; 2]| [x[0] + h * v[0], x[1] + h * v[1]];

    let mut samples = vec![sample(&k, 0.0, x_init)];
    let (mut t, mut x, mut h) = (0.0, x_init, dt);
    while t < t_max {
        let step = h.min(t_max - t);
        let attempt = (|| {
            let k1 = rhs(x)?;
            let k2 = rhs(axpy(x, 0.5 * step, k1))?;
            let k3 = rhs(axpy(x, 0.5 * step, k2))?;
            let k4 = rhs(axpy(x, step, k3))?;
            let next = [
                x[0] + step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                x[1] + step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ];
            let ok = (0..2).all(|i| next[i] > 0.0 && (next[i] - x[i]).abs() <= 0.1 * x[i]);
            ok.then_some(next)
        })();
        match attempt {
            Some(next) => {
                t += step;
                x = next;
                samples.push(sample(&k, t, x));
                h = (2.0 * h).min(dt);
                if x[0] < 1e-12 * x_init[0] || x[1] < 1e-12 * x_init[1] {
                    return Ok(FlowTrajectory { samples, outcome: FlowOutcome::ExtinctionReached { t } });
                }
            }
            None => {
                h = 0.5 * step;
                if h < MIN_DT {
                    // the flow is pinching in finite time
                    return Ok(FlowTrajectory { samples, outcome: FlowOutcome::ExtinctionReached { t } });
                }
            }
        }
    }
    let a = x[0] / x[1];
    let outcome = if a < COLLAPSE_ALPHA {
        FlowOutcome::RatioCollapsedToZero
    } else if a > DIVERGE_ALPHA {
        FlowOutcome::RatioDivergedToInfinity
    } else {
        match terminal(&d.einstein, a, CONVERGED_TOL) {
            Some(ratio) => FlowOutcome::RatioConverged { ratio },
            None => FlowOutcome::Unsettled { alpha: a },
        }
    };
    Ok(FlowTrajectory { samples, outcome })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    /// The flow collapses while the iteration ceases to exist.
    FlowCollapsesIterationStops,
    Disagree,
}

impl Agreement {
    pub fn label(&self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::FlowCollapsesIterationStops => "flow-collapses-iteration-stops",
            Agreement::Disagree => "disagree",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub alpha0: f64,
    pub predicted: ForwardPrediction,
    pub iteration: RegimeOutcome,
    pub flow: FlowOutcome,
    pub agreement: Agreement,
}

pub const COMPARE_T_MAX: f64 = 500.0;
pub const COMPARE_DT: f64 = 0.01;

pub fn compare_flow_iteration(space: &HomogeneousSpaceData, alpha0: f64) -> Result<ComparisonReport> {
    let d = Dynamics::new(space)?;
    let predicted = d.classify(alpha0).forward;
    let iteration = d.run_forward(alpha0, DEFAULT_MAX_STEPS, DEFAULT_TOL)?.outcome;
    let flow =
        integrate_ratio_flow_with(&d.constants, &d.einstein, alpha0, COMPARE_T_MAX, COMPARE_DT)?.outcome;
    let agreement = match (&iteration, &flow) {
        (RegimeOutcome::ConvergedEinstein { ratio: a, .. }, FlowOutcome::RatioConverged { ratio: b })
            if (a - b).abs() <= 1e-6 * a.max(1.0) =>
        {
            Agreement::Agree
        }
        (RegimeOutcome::NoIterationExists { .. }, FlowOutcome::RatioCollapsedToZero) => {
            Agreement::FlowCollapsesIterationStops
        }
        _ => Agreement::Disagree,
    };
    Ok(ComparisonReport { alpha0, predicted, iteration, flow, agreement })
}
