//! Invariant Einstein metrics of two-summand spaces and the regimes they
//! delimit.
//!
//! `g = (x, 1)` is Einstein iff `P(x, x) = 0`, i.e. iff `x` is a root of the
//! cubic `tilde_P`. With `gamma_11^2 = 0` the cubic has the factor `x`, leaving
//! a quadratic.

use crate::curvature::DiagonalMetric;
use crate::error::{Error, Result};
use crate::roots::{cubic_roots, merge_close, quadratic_roots};
use crate::space::{HomogeneousSpaceData, TwoSummand};

/// Relative slack for boundary membership tests.
const MEMBERSHIP_SLACK: f64 = 1e-12;

/// Roots closer than this (relative) are reported as one repeated ratio.
const MULTIPLICITY_TOL: f64 = 1e-8;

/// Dynamical regime of a two-summand space, read off its flags and constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Maximal,
    /// Intermediate subgroup with trivial isotropy action on the first summand.
    TrivialIntermediate,
    NontrivialIntermediate,
    /// `gamma_22^1 = 0`: the Ricci tensor does not depend on the metric.
    ConstantRicci,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Maximal => "maximal",
            Regime::TrivialIntermediate => "intermediate-trivial",
            Regime::NontrivialIntermediate => "intermediate-nontrivial",
            Regime::ConstantRicci => "constant-ricci",
        }
    }
}

pub fn regime(space: &HomogeneousSpaceData) -> Result<Regime> {
    let k = space.two_summand()?;
    if space.is_maximal {
        Ok(Regime::Maximal)
    } else if space.has_intermediate {
        if k.g122 == 0.0 {
            Ok(Regime::ConstantRicci)
        } else if space.trivial_first_summand() {
            Ok(Regime::TrivialIntermediate)
        } else {
            Ok(Regime::NontrivialIntermediate)
        }
    } else {
        Err(Error::Unclassified)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinSet {
    /// Ascending Einstein ratios `x_1 / x_2`.
    pub ratios: Vec<f64>,
    /// `c` with `Ric g = c g` for `g = (ratio, 1)`.
    pub constants: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl EinsteinSet {
    pub fn is_empty(&self) -> bool {
        self.ratios.is_empty()
    }

    pub fn alpha_minus(&self) -> Option<f64> {
        self.ratios.first().copied()
    }

    pub fn alpha_plus(&self) -> Option<f64> {
        self.ratios.last().copied()
    }

    /// The Einstein ratio within `rel_tol` of `alpha`, if any.
    pub fn nearest_within(&self, alpha: f64, rel_tol: f64) -> Option<(usize, f64)> {
        self.ratios
            .iter()
            .enumerate()
            .map(|(i, &r)| (i, r, (r - alpha).abs()))
            .filter(|&(_, r, d)| d <= rel_tol * r.max(1.0))
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .map(|(i, r, _)| (i, r))
    }

    /// `c * (ratio, 1)`: the Einstein metric fixed by `Ric`.
    pub fn fixed_point(&self, index: usize) -> DiagonalMetric {
        let c = self.constants[index];
        DiagonalMetric::tensor(vec![c * self.ratios[index], c])
    }
}

fn polish_root(k: &TwoSummand, mut x: f64) -> f64 {
    let (a3, a0) = (-(2.0 * k.d1 + k.d2) * k.g122, (k.d1 + 2.0 * k.d2) * k.g112);
    let (t1, t2) = k.theta();
    for _ in 0..6 {
        let f = ((a3 * x + t2) * x - t1) * x + a0;
        let df = (3.0 * a3 * x + 2.0 * t2) * x - t1;
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if !next.is_finite() || (next - x).abs() > 1e-6 * x.abs().max(1.0) {
            break;
        }
        let fn_ = ((a3 * next + t2) * next - t1) * next + a0;
        if fn_.abs() >= f.abs() {
            break;
        }
        x = next;
    }
    x
}

pub fn find_einstein(space: &HomogeneousSpaceData) -> Result<EinsteinSet> {
    let k = space.two_summand()?;
    let (t1, t2) = k.theta();
    let candidates: Vec<f64> = if k.g122 == 0.0 && k.g112 == 0.0 {
        // constant Ricci tensor: Einstein iff the ratio matches it
        let (r1, r2) = k.ricci(1.0);
        if r1 > 0.0 && r2 > 0.0 {
            vec![r1 / r2]
        } else {
            Vec::new()
        }
    } else if k.g112 == 0.0 {
        // tilde_P(x) = x (-(2d1+d2) g122 x^2 + theta2 x - theta1)
        quadratic_roots(-(2.0 * k.d1 + k.d2) * k.g122, t2, -t1)
            .into_iter()
            .map(|r| polish_root(&k, r))
            .collect()
    } else if k.g122 == 0.0 {
        // tilde_P reduces to theta2 x^2 - theta1 x + (d1+2d2) g112
        quadratic_roots(t2, -t1, (k.d1 + 2.0 * k.d2) * k.g112)
    } else {
        cubic_roots((2.0 * k.d1 + k.d2) * k.g122, -t2, t1, -(k.d1 + 2.0 * k.d2) * k.g112)
    };

    let largest = candidates.iter().cloned().fold(0.0, f64::max);
    let positive: Vec<f64> =
        candidates.into_iter().filter(|&r| r > 1e-10 * largest.max(1.0) && r.is_finite()).collect();

    let mut set = EinsteinSet { ratios: Vec::new(), constants: Vec::new(), multiplicities: Vec::new() };
    for (ratio, mult) in merge_close(&positive, MULTIPLICITY_TOL) {
        let (r1, r2) = k.ricci(ratio);
        let c = r1 / ratio;
        if (c - r2).abs() > 1e-9 * c.abs().max(r2.abs()) {
            log::warn!("{}: Einstein ratio {ratio} has r1/x = {c} but r2 = {r2}", space.name);
        }
        if !(c > 0.0) {
            continue;
        }
        set.ratios.push(ratio);
        set.constants.push(c);
        set.multiplicities.push(mult);
    }
    if set.is_empty() && space.is_maximal {
        log::warn!("{}: maximal space without Einstein metrics; data is inconsistent", space.name);
    }
    Ok(set)
}

/// The Einstein metric `c(ratio) * (ratio, 1)` with `Ric g = g`.
pub fn ricci_fixed_point(space: &HomogeneousSpaceData, ratio: f64) -> Result<DiagonalMetric> {
    let set = find_einstein(space)?;
    let (i, _) = set.nearest_within(ratio, 1e-9).ok_or(Error::NotEinsteinRatio(ratio))?;
    Ok(set.fixed_point(i))
}

fn within(lo: Option<f64>, hi: Option<f64>, alpha: f64) -> bool {
    let lo_ok = lo.is_none_or(|l| alpha >= l * (1.0 - MEMBERSHIP_SLACK));
    let hi_ok = hi.is_none_or(|h| alpha <= h * (1.0 + MEMBERSHIP_SLACK));
    lo_ok && hi_ok
}

/// Whether `(alpha, 1)` has infinite Ricci index, decided in closed form.
pub fn membership_with(regime: Regime, set: &EinsteinSet, k: &TwoSummand, alpha: f64) -> bool {
    if set.is_empty() && regime != Regime::ConstantRicci {
        return false;
    }
    match regime {
        Regime::Maximal => within(set.alpha_minus(), set.alpha_plus(), alpha),
        Regime::TrivialIntermediate => within(None, set.alpha_minus(), alpha),
        Regime::NontrivialIntermediate => within(None, set.alpha_plus(), alpha),
        Regime::ConstantRicci => {
            let (r1, r2) = k.ricci(1.0);
            r1 > 0.0 && r2 > 0.0
        }
    }
}

pub fn membership_m_infinity(space: &HomogeneousSpaceData, alpha: f64) -> Result<bool> {
    let k = space.two_summand()?;
    let regime = regime(space)?;
    let set = find_einstein(space)?;
    Ok(membership_with(regime, &set, &k, alpha))
}
