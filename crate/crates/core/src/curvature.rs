//! Ricci and scalar curvature of diagonal invariant metrics.
//!
//! A diagonal metric `g = sum x_i pi_i^* Q` is stored as its components
//! `x_i`; the same type doubles as a symmetric invariant tensor when some
//! components are allowed to be non-positive.

use crate::error::{Error, Result};
use crate::space::{HomogeneousSpaceData, TwoSummand};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMetric {
    components: Vec<f64>,
}

impl DiagonalMetric {
    /// A symmetric tensor; no sign constraint.
    pub fn tensor(components: Vec<f64>) -> Self {
        Self { components }
    }

    /// A genuine metric: every component must be positive and finite.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        check_positive(&components)?;
        Ok(Self { components })
    }

    /// The normalized two-summand metric `(alpha, 1)`.
    pub fn from_ratio(alpha: f64) -> Result<Self> {
        Self::new(vec![alpha, 1.0])
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_metric(&self) -> bool {
        self.components.iter().all(|&x| x > 0.0 && x.is_finite())
    }

    /// `x_1 / x_2`.
    pub fn ratio(&self) -> f64 {
        self.components[0] / self.components[1]
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self { components: self.components.iter().map(|x| x * lambda).collect() }
    }
}

fn check_positive(components: &[f64]) -> Result<()> {
    for (index, &value) in components.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveComponent { index: index + 1, value });
        }
    }
    Ok(())
}

/// `Ric g = sum r_i pi_i^* Q`. Entries may have any sign.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciComponents {
    pub components: Vec<f64>,
}

impl RicciComponents {
    pub fn is_positive(&self) -> bool {
        self.components.iter().all(|&r| r > 0.0)
    }

    /// 1-based index of the first non-positive component.
    pub fn first_nonpositive(&self) -> Option<usize> {
        self.components.iter().position(|&r| r <= 0.0).map(|i| i + 1)
    }

    pub fn ratio(&self) -> f64 {
        self.components[0] / self.components[1]
    }

    pub fn as_tensor(&self) -> DiagonalMetric {
        DiagonalMetric::tensor(self.components.clone())
    }
}

/// Ricci components for any `s`:
/// `r_i = b_i/2 + sum_{j,k} gamma_jk^i/(4 d_i) (x_i^2/(x_j x_k) - 2 x_j/x_k)`.
///
/// Assumes the summands are pairwise inequivalent, so that the Ricci tensor
/// is diagonal in the given decomposition.
pub fn ricci_components(space: &HomogeneousSpaceData, g: &DiagonalMetric) -> Result<RicciComponents> {
    let s = space.s;
    if g.len() != s {
        return Err(Error::DimensionMismatch { expected: s, got: g.len() });
    }
    check_positive(g.components())?;
    let x = g.components();
    let r = (0..s)
        .map(|i| {
            let mut acc = 0.0;
            for j in 0..s {
                for k in 0..s {
                    let gam = space.gamma.get(j, k, i);
                    if gam != 0.0 {
                        acc += gam * (x[i] * x[i] / (x[j] * x[k]) - 2.0 * x[j] / x[k]);
                    }
                }
            }
            space.killing[i] / 2.0 + acc / (4.0 * space.dim(i))
        })
        .collect();
    Ok(RicciComponents { components: r })
}

impl TwoSummand {
    /// Closed-form `(r_1, r_2)` at `g = (alpha, 1)`.
    pub fn ricci(&self, alpha: f64) -> (f64, f64) {
        let Self { d1, d2, b1, b2, g111, g112, g122, g222, .. } = *self;
        let r1 = b1 / 2.0 - g111 / (4.0 * d1) - g122 / (2.0 * d1) + g122 * alpha * alpha / (4.0 * d1)
            - g112 / (2.0 * d1 * alpha);
        let r2 = b2 / 2.0 - g222 / (4.0 * d2) - g112 / (2.0 * d2) + g112 / (4.0 * d2 * alpha * alpha)
            - g122 * alpha / (2.0 * d2);
        (r1, r2)
    }

    /// `(theta_1, theta_2)` from the Killing constants.
    pub fn theta(&self) -> (f64, f64) {
        let Self { d1, d2, b1, b2, g111, g112, g122, g222, .. } = *self;
        (2.0 * d1 * d2 * b1 - d2 * g111 - 2.0 * d2 * g122, 2.0 * d1 * d2 * b2 - d1 * g222 - 2.0 * d1 * g112)
    }

    /// `(theta_1, theta_2)` from the Casimir constants; equal to [`Self::theta`]
    /// whenever the Casimir identity holds.
    pub fn theta_from_casimir(&self) -> (f64, f64) {
        let Self { d1, d2, g111, g112, g122, g222, zeta1, zeta2, .. } = *self;
        (
            4.0 * d1 * d2 * zeta1 + d2 * g111 + 4.0 * d2 * g112,
            4.0 * d1 * d2 * zeta2 + d1 * g222 + 4.0 * d1 * g122,
        )
    }

    /// `-(2d_1+d_2) gamma_22^1 x^3 + theta_2 x^2 - theta_1 x + (d_1+2d_2) gamma_11^2`.
    pub fn tilde_p(&self, x: f64) -> f64 {
        let (t1, t2) = self.theta();
        let a3 = -(2.0 * self.d1 + self.d2) * self.g122;
        let a0 = (self.d1 + 2.0 * self.d2) * self.g112;
        ((a3 * x + t2) * x - t1) * x + a0
    }

    /// `A_2 = theta_2 / (4 d_1 d_2)`, the second component of the collapsed limit.
    pub fn collapse_coefficient(&self) -> f64 {
        self.theta().1 / (4.0 * self.d1 * self.d2)
    }
}

/// Closed-form Ricci components of `(alpha, 1)` on a two-summand space.
pub fn ricci_s2(space: &HomogeneousSpaceData, alpha: f64) -> Result<RicciComponents> {
    let c = space.two_summand()?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonPositiveRatio(alpha));
    }
    let (r1, r2) = c.ricci(alpha);
    Ok(RicciComponents { components: vec![r1, r2] })
}

/// `S = sum d_i r_i / x_i`.
pub fn scalar_curvature(space: &HomogeneousSpaceData, g: &DiagonalMetric) -> Result<f64> {
    let r = ricci_components(space, g)?;
    Ok(trace(space, g, &r.components))
}

fn trace(space: &HomogeneousSpaceData, g: &DiagonalMetric, t: &[f64]) -> f64 {
    t.iter().zip(g.components()).enumerate().map(|(i, (ti, xi))| space.dim(i) * ti / xi).sum()
}

/// `|T|_g^2 = sum d_i (T_i / x_i)^2`.
pub fn tensor_norm_sq(space: &HomogeneousSpaceData, g: &DiagonalMetric, t: &[f64]) -> f64 {
    t.iter().zip(g.components()).enumerate().map(|(i, (ti, xi))| space.dim(i) * (ti / xi).powi(2)).sum()
}

/// Both sides of `|g - h|_g^2 = n + |Ric g|_g^2 - 2 S(g)` with `h` the tensor
/// to compare against (normally `Ric g`). The two sides agree exactly only
/// when `h = Ric g`.
pub fn step_distance_identity(
    space: &HomogeneousSpaceData,
    g: &DiagonalMetric,
    h: &DiagonalMetric,
) -> Result<(f64, f64)> {
    if h.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), got: h.len() });
    }
    let r = ricci_components(space, g)?;
    let diff: Vec<f64> = g.components().iter().zip(h.components()).map(|(x, y)| x - y).collect();
    let lhs = tensor_norm_sq(space, g, &diff);
    let s = trace(space, g, &r.components);
    let rhs = space.total_dim() + tensor_norm_sq(space, g, &r.components) - 2.0 * s;
    Ok((lhs, rhs))
}

/// Cached data for `P(x, y)`, whose zero set in `x` for fixed `y` gives the
/// solution ratio of `Ric g = c (y, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciPolynomial {
    pub constants: TwoSummand,
    pub theta1: f64,
    pub theta2: f64,
}

impl RicciPolynomial {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let TwoSummand { d1, d2, g112, g122, .. } = self.constants;
        let x2 = x * x;
        d2 * g122 * x2 * x2 + 2.0 * d1 * g122 * y * x2 * x + (self.theta1 - y * self.theta2) * x2
            - 2.0 * d2 * g112 * x
            - d1 * g112 * y
    }

    /// Sum of the absolute coefficients of `P(., y)`; the natural scale for
    /// residual tolerances.
    pub fn coefficient_scale(&self, y: f64) -> f64 {
        let TwoSummand { d1, d2, g112, g122, .. } = self.constants;
        let y = y.abs();
        d2 * g122
            + 2.0 * d1 * g122 * y
            + self.theta1.abs()
            + y * self.theta2.abs()
            + 2.0 * d2 * g112
            + d1 * g112 * y
    }

    pub fn tilde_p(&self, x: f64) -> f64 {
        self.constants.tilde_p(x)
    }
}

pub fn build_polynomial(space: &HomogeneousSpaceData) -> Result<RicciPolynomial> {
    let constants = space.two_summand()?;
    let (theta1, theta2) = constants.theta();
    let (c1, c2) = constants.theta_from_casimir();
    for (name, a, b) in [("theta_1", theta1, c1), ("theta_2", theta2, c2)] {
        if (a - b).abs() > 1e-10 * a.abs().max(b.abs()).max(1.0) {
            log::warn!("{}: {name} = {a} disagrees with Casimir form {b}", space.name);
        }
    }
    Ok(RicciPolynomial { constants, theta1, theta2 })
}

#[allow(non_snake_case)]
pub fn poly_P(space: &HomogeneousSpaceData, x: f64, y: f64) -> Result<f64> {
    Ok(build_polynomial(space)?.eval(x, y))
}

pub fn tilde_p(space: &HomogeneousSpaceData, x: f64) -> Result<f64> {
    let c = space.two_summand()?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::NonPositiveRatio(x));
    }
    Ok(c.tilde_p(x))
}
