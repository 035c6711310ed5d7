//! Forward (`Ric g_{i+1} = g_i`) and ancient (`g_{i-1} = Ric g_i`) Ricci
//! iterations on two-summand spaces, the Ricci index, and closed-form regime
//! prediction.
//!
//! The forward iteration is run on ratios `alpha_i = x_1/x_2`: each step solves
//! a prescribed Ricci problem. Magnitudes are recovered afterwards from
//! `g_i = Ric (alpha_{i+1}, 1)`.

use std::collections::BTreeMap;

use crate::curvature::{build_polynomial, DiagonalMetric, RicciPolynomial};
use crate::einstein::{find_einstein, membership_with, regime, EinsteinSet, Regime};
use crate::error::{Error, NotSolvable, NotSolvableReason, Result};
use crate::prescribed::{maximal_root, EtaConstants};
use crate::space::{HomogeneousSpaceData, TwoSummand};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// A converged ratio is matched to an Einstein ratio within this (relative).
pub const SNAP_TOL: f64 = 1e-6;
/// Collapse is declared once `x_1 < COLLAPSE_RATIO * x_2` ...
pub const COLLAPSE_RATIO: f64 = 1e-9;
/// ... and `x_2` is within this of the limit coefficient.
pub const COLLAPSE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub step: i64,
    pub alpha: f64,
    pub components: [f64; 2],
    pub ricci: [f64; 2],
    /// Scale of the record: `components = c * (alpha, 1)`.
    pub c: f64,
    pub scalar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegimeOutcome {
    ConvergedEinstein {
        ratio: f64,
        fixed_point: [f64; 2],
    },
    /// The prescribed Ricci problem at `alpha` (the ratio of step
    /// `failed_at_step`) has no solution.
    NoIterationExists {
        failed_at_step: usize,
        alpha: f64,
        threshold: f64,
    },
    StoppedFinite {
        steps: usize,
    },
    /// Limit tensor `(0, A_2)`.
    CollapsedToSubgroup {
        limit: [f64; 2],
    },
    DivergedPositivityLoss {
        step: i64,
        component: usize,
    },
    /// The ratios settled but not near any Einstein ratio.
    Inconclusive {
        alpha: f64,
    },
}

impl RegimeOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            RegimeOutcome::ConvergedEinstein { .. } => "ConvergedEinstein",
            RegimeOutcome::NoIterationExists { .. } => "NoIterationExists",
            RegimeOutcome::StoppedFinite { .. } => "StoppedFinite",
            RegimeOutcome::CollapsedToSubgroup { .. } => "CollapsedToSubgroup",
            RegimeOutcome::DivergedPositivityLoss { .. } => "DivergedPositivityLoss",
            RegimeOutcome::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn limit_ratio(&self) -> Option<f64> {
        match self {
            RegimeOutcome::ConvergedEinstein { ratio, .. } => Some(*ratio),
            RegimeOutcome::CollapsedToSubgroup { .. } => Some(0.0),
            _ => None,
        }
    }

    pub fn limit_components(&self) -> Option<[f64; 2]> {
        match self {
            RegimeOutcome::ConvergedEinstein { fixed_point, .. } => Some(*fixed_point),
            RegimeOutcome::CollapsedToSubgroup { limit } => Some(*limit),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrajectory {
    pub records: Vec<IterationRecord>,
    pub outcome: RegimeOutcome,
    /// `c` with `g_1 = c T` (forward runs that produced at least one metric).
    pub initial_scale_c: Option<f64>,
    /// `xi_members`: records with non-negative scalar curvature;
    /// `max_identity_residual`: worst relative residual of the step-distance
    /// identity along the run.
    pub diagnostics: BTreeMap<String, f64>,
}

impl IterationTrajectory {
    pub fn alphas(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.alpha).collect()
    }
}

/// Everything a run needs about the space, computed once.
#[derive(Debug, Clone)]
pub struct Dynamics {
    pub constants: TwoSummand,
    pub regime: Regime,
    pub einstein: EinsteinSet,
    poly: RicciPolynomial,
    eta: Option<EtaConstants>,
    dims: [f64; 2],
}

impl Dynamics {
    pub fn new(space: &HomogeneousSpaceData) -> Result<Self> {
        let constants = space.two_summand()?;
        let regime = regime(space)?;
        let einstein = find_einstein(space)?;
        let poly = build_polynomial(space)?;
        let eta = (constants.g122 > 0.0).then(|| constants.eta());
        Ok(Self { constants, regime, einstein, poly, eta, dims: [constants.d1, constants.d2] })
    }

    pub fn ricci(&self, alpha: f64) -> [f64; 2] {
        let (r1, r2) = self.constants.ricci(alpha);
        [r1, r2]
    }

    /// `alpha_{i+1}` from `alpha_i`.
    pub fn step(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::NonPositiveRatio(alpha));
        }
        match self.regime {
            Regime::Maximal => maximal_root(&self.poly, [alpha, 1.0]),
            Regime::ConstantRicci => {
                let [r1, r2] = self.ricci(1.0);
                let reason = if !(r1 > 0.0 && r2 > 0.0) {
                    NotSolvableReason::ConstantRicciNotPositive
                } else if (alpha - r1 / r2).abs() > 1e-12 * (r1 / r2).max(1.0) {
                    NotSolvableReason::NotProportionalToConstantRicci
                } else {
                    return Ok(r1 / r2);
                };
                Err(Error::NotSolvable(NotSolvable { alpha_t: alpha, threshold: r1 / r2, reason }))
            }
            _ => {
                let eta = self.eta.expect("gamma_22^1 > 0 outside the constant-Ricci regime");
                self.constants.f_map(eta, alpha).ok_or(Error::NotSolvable(NotSolvable {
                    alpha_t: alpha,
                    threshold: eta.threshold(),
                    reason: NotSolvableReason::BelowThreshold,
                }))
            }
        }
    }

    pub fn membership(&self, alpha: f64) -> bool {
        membership_with(self.regime, &self.einstein, &self.constants, alpha)
    }

    fn record(&self, step: i64, x: [f64; 2]) -> IterationRecord {
        let alpha = x[0] / x[1];
        let ricci = self.ricci(alpha);
        let scalar = self.dims[0] * ricci[0] / x[0] + self.dims[1] * ricci[1] / x[1];
        IterationRecord { step, alpha, components: x, ricci, c: x[1], scalar }
    }

    fn identity_residual(&self, rec: &IterationRecord) -> f64 {
        let (x, r, d) = (rec.components, rec.ricci, self.dims);
        let n = d[0] + d[1];
        let lhs: f64 = (0..2).map(|i| d[i] * ((x[i] - r[i]) / x[i]).powi(2)).sum();
        let norm: f64 = (0..2).map(|i| d[i] * (r[i] / x[i]).powi(2)).sum();
        let rhs = n + norm - 2.0 * rec.scalar;
        (lhs - rhs).abs() / rhs.abs().max(1.0)
    }

    fn diagnostics(&self, records: &[IterationRecord]) -> BTreeMap<String, f64> {
        let members = records.iter().filter(|r| r.scalar >= 0.0).count();
        let residual = records.iter().map(|r| self.identity_residual(r)).fold(0.0, f64::max);
        BTreeMap::from([
            ("xi_members".to_string(), members as f64),
            ("max_identity_residual".to_string(), residual),
        ])
    }

    fn snap(&self, alpha: f64) -> RegimeOutcome {
        match self.einstein.nearest_within(alpha, SNAP_TOL) {
            Some((i, ratio)) => {
                let fp = self.einstein.fixed_point(i);
                RegimeOutcome::ConvergedEinstein {
                    ratio,
                    fixed_point: [fp.components()[0], fp.components()[1]],
                }
            }
            None => RegimeOutcome::Inconclusive { alpha },
        }
    }

    pub fn run_forward(&self, alpha_t: f64, max_steps: usize, tol: f64) -> Result<IterationTrajectory> {
        if !(alpha_t > 0.0 && alpha_t.is_finite()) {
            return Err(Error::NonPositiveRatio(alpha_t));
        }
        let mut alphas = vec![alpha_t];
        let mut outcome = RegimeOutcome::StoppedFinite { steps: max_steps };
        for i in 1..=max_steps {
            let current = alphas[i - 1];
            match self.step(current) {
                Ok(next) => {
                    alphas.push(next);
                    if (next - current).abs() < tol * current.max(1.0) {
                        outcome = self.snap(next);
                        break;
                    }
                }
                Err(Error::NotSolvable(ns)) => {
                    outcome = RegimeOutcome::NoIterationExists {
                        failed_at_step: i,
                        alpha: current,
                        threshold: ns.threshold,
                    };
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let records: Vec<IterationRecord> =
            alphas.windows(2).enumerate().map(|(i, w)| self.record(i as i64 + 1, self.ricci(w[1]))).collect();
        let initial_scale_c = records.first().map(|r| r.c);
        let diagnostics = self.diagnostics(&records);
        Ok(IterationTrajectory { records, outcome, initial_scale_c, diagnostics })
    }

    pub fn run_ancient(&self, g1: [f64; 2], steps: usize, tol: f64) -> Result<IterationTrajectory> {
        DiagonalMetric::new(g1.to_vec())?;
        let a2 = self.constants.collapse_coefficient();
        let mut records = vec![self.record(1, g1)];
        let mut outcome = RegimeOutcome::StoppedFinite { steps };
        for _ in 0..steps {
            let current = records.last().expect("non-empty").clone();
            let next = current.ricci;
            let step = current.step - 1;
            if let Some(k) = next.iter().position(|&r| !(r > 0.0)) {
                outcome = RegimeOutcome::DivergedPositivityLoss { step, component: k + 1 };
                break;
            }
            records.push(self.record(step, next));
            if self.regime == Regime::TrivialIntermediate
                && next[0] < COLLAPSE_RATIO * next[1]
                && (next[1] - a2).abs() < COLLAPSE_TOL
            {
                outcome = RegimeOutcome::CollapsedToSubgroup { limit: [0.0, a2] };
                break;
            }
            let settled = (0..2).all(|i| {
                (next[i] - current.components[i]).abs() < tol * current.components[i].max(1.0)
                    && next[i] > tol
            });
            if settled {
                outcome = self.snap(next[0] / next[1]);
                break;
            }
        }
        let diagnostics = self.diagnostics(&records);
        Ok(IterationTrajectory { records, outcome, initial_scale_c: None, diagnostics })
    }

    pub fn ricci_index(&self, alpha: f64, cap: u64) -> RicciIndex {
        if self.membership(alpha) {
            return RicciIndex::Infinite;
        }
        let mut x = [alpha, 1.0];
        let mut count = 1;
        while count < cap {
            let r = self.ricci(x[0] / x[1]);
            if !(r[0] > 0.0 && r[1] > 0.0) {
                return RicciIndex::Finite(count);
            }
            x = r;
            count += 1;
        }
        RicciIndex::Inconclusive { reached: cap }
    }

    pub fn classify(&self, alpha_t: f64) -> RegimePrediction {
        let set = &self.einstein;
        let forward = self.predict_forward(alpha_t);
        let member = self.membership(alpha_t);
        let ancient = if !member {
            AncientPrediction::FiniteIndex
        } else if let Some((_, r)) = set.nearest_within(alpha_t, 1e-12) {
            AncientPrediction::Einstein { ratio: Some(r) }
        } else {
            match self.regime {
                Regime::Maximal => AncientPrediction::Einstein { ratio: None },
                Regime::TrivialIntermediate => {
                    AncientPrediction::Collapse { a2: self.constants.collapse_coefficient() }
                }
                Regime::NontrivialIntermediate => AncientPrediction::Einstein { ratio: set.alpha_minus() },
                Regime::ConstantRicci => AncientPrediction::Einstein { ratio: set.alpha_minus() },
            }
        };
        RegimePrediction {
            regime: self.regime,
            alpha_t,
            alpha_minus: set.alpha_minus(),
            alpha_plus: set.alpha_plus(),
            trivial_first_summand: self.regime == Regime::TrivialIntermediate,
            einstein_empty: set.is_empty(),
            forward,
            member_m_infinity: member,
            ancient,
        }
    }

    fn predict_forward(&self, alpha_t: f64) -> ForwardPrediction {
        let set = &self.einstein;
        if let Some((_, r)) = set.nearest_within(alpha_t, 1e-12) {
            return ForwardPrediction::Converges { limit_ratio: r };
        }
        let (Some(lo), Some(hi)) = (set.alpha_minus(), set.alpha_plus()) else {
            return ForwardPrediction::NoIteration { reason: "no invariant Einstein metrics".to_string() };
        };
        match self.regime {
            Regime::Maximal => {
                ForwardPrediction::Converges { limit_ratio: maximal_forward_limit(self, alpha_t) }
            }
            Regime::TrivialIntermediate => ForwardPrediction::Converges { limit_ratio: lo },
            Regime::NontrivialIntermediate => {
                if alpha_t < lo {
                    ForwardPrediction::NoIteration {
                        reason: format!("alpha_T below alpha_minus={}", tidy(lo)),
                    }
                } else {
                    ForwardPrediction::Converges { limit_ratio: hi }
                }
            }
            Regime::ConstantRicci => ForwardPrediction::NoIteration {
                reason: format!("Ricci curvature is constant with ratio {}", tidy(lo)),
            },
        }
    }
}

/// Between consecutive Einstein ratios the forward iteration moves in the
/// direction of the sign of `tilde_P`; outside them it moves toward the
/// nearest extreme ratio.
fn maximal_forward_limit(d: &Dynamics, alpha: f64) -> f64 {
    let ratios = &d.einstein.ratios;
    let first = ratios[0];
    let last = *ratios.last().expect("non-empty");
    if alpha <= first {
        return first;
    }
    if alpha >= last {
        return last;
    }
    let j = ratios.iter().rposition(|&r| r < alpha).expect("alpha above first ratio");
    let (lo, hi) = (ratios[j], ratios[j + 1]);
    if d.constants.tilde_p(0.5 * (lo + hi)) > 0.0 {
        hi
    } else {
        lo
    }
}

/// Rounds to 12 significant digits for messages.
pub fn tidy(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    format!("{v:.11e}").parse::<f64>().map(|x| x.to_string()).unwrap_or_else(|_| v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RicciIndex {
    Finite(u64),
    Infinite,
    /// The chain stayed positive for `reached` metrics without deciding.
    Inconclusive {
        reached: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum BackwardStep {
    Metric(DiagonalMetric),
    /// `Ric g` has a non-positive component (1-based).
    PositivityLoss {
        component: usize,
        ricci: [f64; 2],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForwardPrediction {
    Converges { limit_ratio: f64 },
    NoIteration { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum AncientPrediction {
    /// Convergence to an Einstein metric; `None` when the limit is not
    /// determined in closed form.
    Einstein {
        ratio: Option<f64>,
    },
    Collapse {
        a2: f64,
    },
    FiniteIndex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimePrediction {
    pub regime: Regime,
    pub alpha_t: f64,
    pub alpha_minus: Option<f64>,
    pub alpha_plus: Option<f64>,
    pub trivial_first_summand: bool,
    pub einstein_empty: bool,
    pub forward: ForwardPrediction,
    pub member_m_infinity: bool,
    pub ancient: AncientPrediction,
}

fn two_components(g: &DiagonalMetric) -> Result<[f64; 2]> {
    if g.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: g.len() });
    }
    DiagonalMetric::new(g.components().to_vec())?;
    Ok([g.components()[0], g.components()[1]])
}

pub fn step_forward(space: &HomogeneousSpaceData, alpha: f64) -> Result<f64> {
    Dynamics::new(space)?.step(alpha)
}

pub fn step_backward(space: &HomogeneousSpaceData, g: &DiagonalMetric) -> Result<BackwardStep> {
    let x = two_components(g)?;
    let (r1, r2) = space.two_summand()?.ricci(x[0] / x[1]);
    Ok(match [r1, r2].iter().position(|&r| !(r > 0.0)) {
        Some(k) => BackwardStep::PositivityLoss { component: k + 1, ricci: [r1, r2] },
        None => BackwardStep::Metric(DiagonalMetric::tensor(vec![r1, r2])),
    })
}

pub fn run_forward(
    space: &HomogeneousSpaceData,
    t: &DiagonalMetric,
    max_steps: usize,
    tol: f64,
) -> Result<IterationTrajectory> {
    let z = two_components(t)?;
    let mut traj = Dynamics::new(space)?.run_forward(z[0] / z[1], max_steps, tol)?;
    traj.initial_scale_c = traj.initial_scale_c.map(|c| c / z[1]);
    Ok(traj)
}

pub fn run_ancient(
    space: &HomogeneousSpaceData,
    g1: &DiagonalMetric,
    steps: usize,
    tol: f64,
) -> Result<IterationTrajectory> {
    let x = two_components(g1)?;
    Dynamics::new(space)?.run_ancient(x, steps, tol)
}

pub fn ricci_index(space: &HomogeneousSpaceData, g: &DiagonalMetric, cap: u64) -> Result<RicciIndex> {
    let x = two_components(g)?;
    Ok(Dynamics::new(space)?.ricci_index(x[0] / x[1], cap))
}

pub fn classify(space: &HomogeneousSpaceData, t: &DiagonalMetric) -> Result<RegimePrediction> {
    let z = two_components(t)?;
    Ok(Dynamics::new(space)?.classify(z[0] / z[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{make_collapsing_example, make_noncollapsing_example, make_synthetic_maximal};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    fn ratio(a: f64) -> DiagonalMetric {
        DiagonalMetric::from_ratio(a).unwrap()
    }

    #[test]
    fn so5_forward_steps() {
        let so5 = make_noncollapsing_example(3).unwrap();
        assert!(close(step_forward(&so5, 1.5).unwrap(), 1.608495, 1e-6));
        assert!(close(step_forward(&so5, 2.0).unwrap(), 2.0, 1e-15));
        let a = step_forward(&so5, 0.8).unwrap();
        assert!(close(a, 0.5 * (3.84f64.sqrt() - 0.8), 1e-14));
        assert!(matches!(step_forward(&so5, a), Err(Error::NotSolvable(_))));
    }

    #[test]
    fn so5_forward_converges_to_alpha_plus() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let traj = run_forward(&so5, &ratio(1.5), DEFAULT_MAX_STEPS, DEFAULT_TOL).unwrap();
        match traj.outcome {
            RegimeOutcome::ConvergedEinstein { ratio, fixed_point } => {
                assert!(close(ratio, 2.0, 1e-12));
                assert!(close(fixed_point[0], 2.0 / 3.0, 1e-12));
                assert!(close(fixed_point[1], 1.0 / 3.0, 1e-12));
            }
            other => panic!("unexpected {other:?}"),
        }
        let last = traj.records.last().unwrap();
        assert!((last.components[0] - 2.0 / 3.0).abs() < 1e-8);
        assert!(traj.diagnostics["max_identity_residual"] < 1e-12);
    }

    #[test]
    fn so5_forward_fails_below_alpha_minus() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let traj = run_forward(&so5, &ratio(0.9), 100, DEFAULT_TOL).unwrap();
        assert_eq!(traj.outcome.tag(), "NoIterationExists");
        let traj = run_forward(&so5, &ratio(0.8), 100, DEFAULT_TOL).unwrap();
        match traj.outcome {
            RegimeOutcome::NoIterationExists { failed_at_step, alpha, threshold } => {
                assert_eq!(failed_at_step, 2);
                assert!(alpha < 2.0 / 3.0);
                assert!(close(threshold, 2.0 / 3.0, 1e-15));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(traj.records.len(), 1);
    }

    #[test]
    fn initial_scale() {
        let so6 = make_collapsing_example(3).unwrap();
        let t = DiagonalMetric::new(vec![10.0, 2.0]).unwrap();
        let traj = run_forward(&so6, &t, DEFAULT_MAX_STEPS, DEFAULT_TOL).unwrap();
        let c = traj.initial_scale_c.unwrap();
        let g1 = traj.records[0].components;
        assert!(close(g1[0], c * 10.0, 1e-14) && close(g1[1], c * 2.0, 1e-14));
        assert!(close(traj.outcome.limit_ratio().unwrap(), 1.5, 1e-12));
    }

    #[test]
    fn backward_steps() {
        let so6 = make_collapsing_example(3).unwrap();
        match step_backward(&so6, &ratio(3.0)).unwrap() {
            BackwardStep::Metric(g) => {
                assert!(close(g.components()[0], 2.25, 1e-14) && close(g.components()[1], 0.25, 1e-14))
            }
            other => panic!("unexpected {other:?}"),
        }
        let g = DiagonalMetric::new(vec![2.25, 0.25]).unwrap();
        assert!(matches!(
            step_backward(&so6, &g).unwrap(),
            BackwardStep::PositivityLoss { component: 2, .. }
        ));
        let fp = DiagonalMetric::new(vec![9.0 / 16.0, 3.0 / 8.0]).unwrap();
        match step_backward(&so6, &fp).unwrap() {
            BackwardStep::Metric(g) => assert!(close(g.components()[0], 9.0 / 16.0, 1e-14)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ricci_indices() {
        let so6 = make_collapsing_example(3).unwrap();
        assert_eq!(ricci_index(&so6, &ratio(3.0), 100).unwrap(), RicciIndex::Finite(2));
        assert_eq!(ricci_index(&so6, &ratio(1.0), 100).unwrap(), RicciIndex::Infinite);
        assert_eq!(ricci_index(&so6, &ratio(1.5), 100).unwrap(), RicciIndex::Infinite);
    }

    #[test]
    fn ancient_collapse() {
        let so6 = make_collapsing_example(3).unwrap();
        let g = DiagonalMetric::new(vec![1.0, 1.0]).unwrap();
        let traj = run_ancient(&so6, &g, 5000, DEFAULT_TOL).unwrap();
        assert_eq!(traj.outcome, RegimeOutcome::CollapsedToSubgroup { limit: [0.0, 0.5] });
        let last = traj.records.last().unwrap();
        assert!(last.components[0] < 1e-9 && (last.components[1] - 0.5).abs() < 1e-6);
        assert_eq!(traj.records[0].step, 1);
        assert_eq!(traj.records[1].step, 0);
    }

    #[test]
    fn ancient_convergence() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let traj = run_ancient(&so5, &ratio(1.5), 5000, DEFAULT_TOL).unwrap();
        let fp = traj.outcome.limit_components().unwrap();
        assert!(close(fp[0], 5.0 / 12.0, 1e-12) && close(fp[1], 5.0 / 12.0, 1e-12));
        let last = traj.records.last().unwrap().components;
        assert!((last[0] - 5.0 / 12.0).abs() < 1e-8 && (last[1] - 5.0 / 12.0).abs() < 1e-8);

        let syn = make_synthetic_maximal();
        let traj = run_ancient(&syn, &ratio(0.8), 5000, DEFAULT_TOL).unwrap();
        let fp = traj.outcome.limit_components().unwrap();
        assert!(close(traj.outcome.limit_ratio().unwrap(), 1.0, 1e-12));
        assert!(close(fp[0], 3.0 / 8.0, 1e-12));
    }

    #[test]
    fn classify_examples() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let p = classify(&so5, &ratio(0.9)).unwrap();
        assert!(matches!(p.forward, ForwardPrediction::NoIteration { .. }));
        assert!(p.member_m_infinity);
        assert_eq!(p.ancient, AncientPrediction::Einstein { ratio: Some(p.alpha_minus.unwrap()) });

        let so6 = make_collapsing_example(3).unwrap();
        let p = classify(&so6, &ratio(1.2)).unwrap();
        assert!(
            matches!(p.forward, ForwardPrediction::Converges { limit_ratio } if close(limit_ratio, 1.5, 1e-12))
        );
        assert!(matches!(p.ancient, AncientPrediction::Collapse { a2 } if close(a2, 0.5, 1e-15)));
        assert!(p.trivial_first_summand);

        let syn = make_synthetic_maximal();
        let p = classify(&syn, &ratio(3.0)).unwrap();
        assert!(matches!(p.forward, ForwardPrediction::Converges { .. }));
        assert_eq!(p.ancient, AncientPrediction::FiniteIndex);
    }

    #[test]
    fn syn1_forward_selection() {
        let syn = make_synthetic_maximal();
        let ap = (7.0 + 13f64.sqrt()) / 6.0;
        let traj = run_forward(&syn, &ratio(1.3), DEFAULT_MAX_STEPS, DEFAULT_TOL).unwrap();
        let predicted = match classify(&syn, &ratio(1.3)).unwrap().forward {
            ForwardPrediction::Converges { limit_ratio } => limit_ratio,
            other => panic!("unexpected {other:?}"),
        };
        let limit = traj.outcome.limit_ratio().unwrap();
        assert!(close(limit, predicted, 1e-12));
        assert!(close(limit, ap, 1e-12) || close(limit, 1.0, 1e-12));
    }

    #[test]
    fn tidy_rounds() {
        assert_eq!(tidy(1.9999999999999998), "2");
        assert_eq!(tidy(0.5), "0.5");
        assert_eq!(tidy(2.0 / 3.0), "0.666666666667");
    }
}
