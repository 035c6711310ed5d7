//! Prescribed Ricci curvature on two-summand spaces: given `T`, find `g` and
//! `c > 0` with `Ric g = c T`.
//!
//! Maximal isotropy: the solution ratio is the unique positive root of the
//! quartic `P(., alpha_T)`. With an intermediate subgroup (`gamma_11^2 = 0`)
//! it is the closed form `F(alpha_T)`, defined above a solvability threshold.

use crate::curvature::{build_polynomial, DiagonalMetric, RicciPolynomial};
use crate::error::{Error, NotSolvable, NotSolvableReason, Result};
use crate::roots::bisect_newton;
use crate::space::{HomogeneousSpaceData, TwoSummand};

#[derive(Debug, Clone, PartialEq)]
pub struct PrescribedSolution {
    /// `x_1 / x_2` of the solution.
    pub alpha_g: f64,
    pub c: f64,
    pub unique: bool,
    /// The solution normalized as `(alpha_g, 1)`.
    pub metric: DiagonalMetric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaConstants {
    pub eta1: f64,
    pub eta2: f64,
}

impl EtaConstants {
    /// `eta_1 / eta_2`: the problem is solvable exactly above this ratio.
    pub fn threshold(&self) -> f64 {
        self.eta1 / self.eta2
    }
}

impl TwoSummand {
    /// `(eta~_1, eta~_2)`: the constant parts of `r_1` and `r_2` when
    /// `gamma_11^2 = 0`.
    pub fn eta_tilde(&self) -> (f64, f64) {
        (
            self.zeta1 + self.g111 / (4.0 * self.d1),
            self.zeta2 + self.g222 / (4.0 * self.d2) + self.g122 / self.d2,
        )
    }

    pub fn eta(&self) -> EtaConstants {
        let (t1, t2) = self.eta_tilde();
        let scale = 2.0 * self.d2 * self.d2 / (self.d1 * self.g122);
        EtaConstants { eta1: scale * t1, eta2: scale * t2 }
    }

    /// `F(x) = (d_1/d_2) (sqrt(x^2 + 2 eta_2 x - 2 eta_1) - x)`, or `None` when
    /// `x` does not exceed the threshold.
    pub fn f_map(&self, eta: EtaConstants, x: f64) -> Option<f64> {
        if !(x * eta.eta2 > eta.eta1) {
            return None;
        }
        let rad = x * x + 2.0 * eta.eta2 * x - 2.0 * eta.eta1;
        // rationalized to avoid cancellation for large x
        let root = rad.sqrt();
        let val = (self.d1 / self.d2) * (2.0 * eta.eta2 * x - 2.0 * eta.eta1) / (root + x);
        (val > 0.0).then_some(val)
    }
}

pub fn eta_constants(space: &HomogeneousSpaceData) -> Result<EtaConstants> {
    let c = space.two_summand()?;
    if !(c.g122 > 0.0) {
        return Err(Error::InvalidArgument("eta constants need gamma_22^1 > 0".to_string()));
    }
    Ok(c.eta())
}

fn check_ratio(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRatio(alpha))
    }
}

/// Homogeneous form of `z_2 P(x, z_1/z_2)`; defined also when one of the
/// target components vanishes.
fn target_quartic(p: &RicciPolynomial, z: [f64; 2], x: f64) -> (f64, f64) {
    let TwoSummand { d1, d2, g112, g122, .. } = p.constants;
    let (t1, t2) = (p.theta1, p.theta2);
    let x2 = x * x;
    let v = z[1] * (d2 * g122 * x2 * x2 + t1 * x2 - 2.0 * d2 * g112 * x)
        + z[0] * (2.0 * d1 * g122 * x2 * x - t2 * x2 - d1 * g112);
    let dv = z[1] * (4.0 * d2 * g122 * x2 * x + 2.0 * t1 * x - 2.0 * d2 * g112)
        + z[0] * (6.0 * d1 * g122 * x2 - 2.0 * t2 * x);
    (v, dv)
}

/// The unique positive root of `z_2 P(., z_1/z_2)`: bracket `[1e-12, X]` with
/// `X` doubled until the quartic is positive, bisect, then Newton-polish.
pub(crate) fn maximal_root(p: &RicciPolynomial, z: [f64; 2]) -> Result<f64> {
    let f = |x: f64| target_quartic(p, z, x).0;
    let df = |x: f64| target_quartic(p, z, x).1;
    let lo = 1e-12;
    let mut hi = if z[1] > 0.0 { (z[0] / z[1]).max(1.0) } else { 1.0 };
    let mut doublings = 0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Bracketing(format!("quartic stays non-positive up to {hi}")));
        }
    }
    bisect_newton(f, df, lo, hi, 1e-13, 5)
}

/// Solves `Ric g = c T` for `T = (z_1, z_2)` positive semidefinite and
/// nonzero, on a maximal space.
pub fn solve_maximal_tensor(space: &HomogeneousSpaceData, z: [f64; 2]) -> Result<PrescribedSolution> {
    if !space.is_maximal {
        return Err(Error::NotMaximal);
    }
    let p = build_polynomial(space)?;
    if !(z[0] >= 0.0 && z[1] >= 0.0 && z[0] + z[1] > 0.0 && z.iter().all(|v| v.is_finite())) {
        return Err(Error::InvalidTarget(z[0], z[1]));
    }
    let alpha_g = maximal_root(&p, z)?;

    let (r1, r2) = p.constants.ricci(alpha_g);
    let c = (r1 * z[0] + r2 * z[1]) / (z[0] * z[0] + z[1] * z[1]);
    let mismatch = (r1 - c * z[0]).abs().max((r2 - c * z[1]).abs());
    if mismatch > 1e-9 * r1.abs().max(r2.abs()) {
        log::warn!(
            "{}: Ric at alpha_g={alpha_g} is ({r1}, {r2}), not proportional to ({}, {})",
            space.name,
            z[0],
            z[1]
        );
    }
    Ok(PrescribedSolution { alpha_g, c, unique: true, metric: DiagonalMetric::from_ratio(alpha_g)? })
}

/// Maximal case with `T = (alpha_t, 1)`.
pub fn solve_maximal(space: &HomogeneousSpaceData, alpha_t: f64) -> Result<PrescribedSolution> {
    space.two_summand()?;
    check_ratio(alpha_t)?;
    solve_maximal_tensor(space, [alpha_t, 1.0])
}

/// Intermediate-subgroup case with `T = (alpha_t, 1)`.
pub fn solve_nonmaximal(space: &HomogeneousSpaceData, alpha_t: f64) -> Result<PrescribedSolution> {
    let k = space.two_summand()?;
    if !space.has_intermediate {
        return Err(Error::NoIntermediateSubgroup);
    }
    check_ratio(alpha_t)?;
    if k.g122 == 0.0 {
        return solve_constant_ricci(&k, alpha_t);
    }
    let eta = k.eta();
    let alpha_g = k.f_map(eta, alpha_t).ok_or(Error::NotSolvable(NotSolvable {
        alpha_t,
        threshold: eta.threshold(),
        reason: NotSolvableReason::BelowThreshold,
    }))?;
    // r_2 carries no cancellation here; r_1 is the consistency check.
    let (r1, r2) = k.ricci(alpha_g);
    let c = r2;
    if (r1 - c * alpha_t).abs() > 1e-9 * r1.abs().max(1e-300) {
        log::warn!("{}: r_1 = {r1} vs c alpha_T = {}", space.name, c * alpha_t);
    }
    Ok(PrescribedSolution { alpha_g, c, unique: true, metric: DiagonalMetric::from_ratio(alpha_g)? })
}

/// `gamma_22^1 = gamma_11^2 = 0`: every metric has the same Ricci tensor, so
/// only targets proportional to it are attainable.
fn solve_constant_ricci(k: &TwoSummand, alpha_t: f64) -> Result<PrescribedSolution> {
    let (r1, r2) = k.ricci(1.0);
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::NotSolvable(NotSolvable {
            alpha_t,
            threshold: r1 / r2,
            reason: NotSolvableReason::ConstantRicciNotPositive,
        }));
    }
    let ratio = r1 / r2;
    if (alpha_t - ratio).abs() > 1e-12 * ratio.max(1.0) {
        return Err(Error::NotSolvable(NotSolvable {
            alpha_t,
            threshold: ratio,
            reason: NotSolvableReason::NotProportionalToConstantRicci,
        }));
    }
    // Any metric solves the problem; report the Einstein one.
    Ok(PrescribedSolution {
        alpha_g: ratio,
        c: r2,
        unique: false,
        metric: DiagonalMetric::from_ratio(ratio)?,
    })
}

/// Dispatches on the structural flags.
pub fn solve(space: &HomogeneousSpaceData, t: &DiagonalMetric) -> Result<PrescribedSolution> {
    space.two_summand()?;
    if t.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: t.len() });
    }
    let z = t.components();
    for (index, &value) in z.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveComponent { index: index + 1, value });
        }
    }
    let alpha_t = z[0] / z[1];
    let mut sol = if space.is_maximal {
        solve_maximal(space, alpha_t)?
    } else if space.has_intermediate {
        solve_nonmaximal(space, alpha_t)?
    } else {
        return Err(Error::Unclassified);
    };
    // Ric is scale invariant, so c scales inversely with T.
    sol.c /= z[1];
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::ricci_s2;
    use crate::space::{make_collapsing_example, make_noncollapsing_example, make_synthetic_maximal};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn so5_eta() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let eta = eta_constants(&so5).unwrap();
        assert!(close(eta.eta1, 8.0, 1e-14) && close(eta.eta2, 12.0, 1e-14));
        assert!(close(eta.threshold(), 2.0 / 3.0, 1e-15));
    }

    #[test]
    fn so5_f_values() {
        let so5 = make_noncollapsing_example(3).unwrap();
        for (t, g) in
            [(1.0, 1.0), (2.0, 2.0), (1.5, 0.5 * (22.25f64.sqrt() - 1.5)), (3.0, 0.5 * (65f64.sqrt() - 3.0))]
        {
            let sol = solve_nonmaximal(&so5, t).unwrap();
            assert!(close(sol.alpha_g, g, 1e-14), "{t}: {} vs {g}", sol.alpha_g);
        }
        assert!(close(solve_nonmaximal(&so5, 1.5).unwrap().alpha_g, 1.608495, 1e-6));
        assert!(close(solve_nonmaximal(&so5, 3.0).unwrap().alpha_g, 2.531129, 1e-6));
    }

    #[test]
    fn so5_below_threshold() {
        let so5 = make_noncollapsing_example(3).unwrap();
        match solve_nonmaximal(&so5, 0.5) {
            Err(Error::NotSolvable(ns)) => {
                assert_eq!(ns.reason, NotSolvableReason::BelowThreshold);
                assert!(close(ns.threshold, 2.0 / 3.0, 1e-15));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(solve_nonmaximal(&so5, 2.0 / 3.0).is_err());
    }

    #[test]
    fn so6_always_solvable() {
        let so6 = make_collapsing_example(3).unwrap();
        assert_eq!(eta_constants(&so6).unwrap().eta1, 0.0);
        for t in [1e-6, 0.1, 1.0, 5.0, 1e6] {
            let sol = solve(&so6, &DiagonalMetric::new(vec![t, 1.0]).unwrap()).unwrap();
            assert!(sol.c > 0.0 && sol.alpha_g > 0.0);
        }
    }

    #[test]
    fn syn1_solutions() {
        let syn = make_synthetic_maximal();
        let sol = solve(&syn, &DiagonalMetric::new(vec![1.0, 1.0]).unwrap()).unwrap();
        assert!(close(sol.alpha_g, 1.0, 1e-12));
        assert!(close(sol.c, 3.0 / 8.0, 1e-12));
        let ap = (7.0 + 13f64.sqrt()) / 6.0;
        assert!(close(solve_maximal(&syn, ap).unwrap().alpha_g, ap, 1e-12));
        let am = (7.0 - 13f64.sqrt()) / 6.0;
        let sol = solve_maximal(&syn, 0.9).unwrap();
        assert!(sol.alpha_g > am && sol.alpha_g < 1.0);
        let p = build_polynomial(&syn).unwrap();
        assert!(p.eval(sol.alpha_g, 0.9).abs() < 1e-12 * p.coefficient_scale(0.9));
    }

    #[test]
    fn solution_scales_with_target() {
        let so5 = make_noncollapsing_example(3).unwrap();
        let a = solve(&so5, &DiagonalMetric::new(vec![3.0, 1.0]).unwrap()).unwrap();
        let b = solve(&so5, &DiagonalMetric::new(vec![6.0, 2.0]).unwrap()).unwrap();
        assert!(close(a.alpha_g, b.alpha_g, 1e-15));
        assert!(close(a.c, 2.0 * b.c, 1e-15));
        let r = ricci_s2(&so5, a.alpha_g).unwrap().components;
        assert!(close(r[0], a.c * 3.0, 1e-12) && close(r[1], a.c, 1e-12));
    }

    #[test]
    fn semidefinite_targets() {
        let syn = make_synthetic_maximal();
        for z in [[1.0, 0.0], [0.0, 1.0]] {
            let sol = solve_maximal_tensor(&syn, z).unwrap();
            let (r1, r2) = syn.two_summand().unwrap().ricci(sol.alpha_g);
            assert!(close(r1, sol.c * z[0], 1e-10) && close(r2, sol.c * z[1], 1e-10));
        }
        assert!(solve_maximal_tensor(&syn, [0.0, 0.0]).is_err());
        assert!(solve_maximal_tensor(&syn, [-1.0, 1.0]).is_err());
    }

    #[test]
    fn wrong_branch_rejected() {
        let so5 = make_noncollapsing_example(3).unwrap();
        assert!(matches!(solve_maximal(&so5, 1.0), Err(Error::NotMaximal)));
        let syn = make_synthetic_maximal();
        assert!(matches!(solve_nonmaximal(&syn, 1.0), Err(Error::NoIntermediateSubgroup)));
        let mut neither = so5.clone();
        neither.has_intermediate = false;
        assert!(matches!(
            solve(&neither, &DiagonalMetric::new(vec![1.0, 1.0]).unwrap()),
            Err(Error::Unclassified)
        ));
    }

    #[test]
    fn constant_ricci_branch() {
        let mut space = make_noncollapsing_example(3).unwrap();
        space.gamma.set(0, 1, 1, 0.0);
        let (r1, r2) = space.two_summand().unwrap().ricci(1.0);
        let sol = solve_nonmaximal(&space, r1 / r2).unwrap();
        assert!(!sol.unique);
        match solve_nonmaximal(&space, 2.0 * r1 / r2) {
            Err(Error::NotSolvable(ns)) => {
                assert_eq!(ns.reason, NotSolvableReason::NotProportionalToConstantRicci)
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
