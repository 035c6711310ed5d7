//! Structure-constant description of a compact homogeneous space `G/H`.
//!
//! A space is described by the number `s` of irreducible isotropy summands,
//! their dimensions `d_i`, the Killing constants `b_i`, the structure
//! constants `gamma_ik^l` and the Casimir constants `zeta_i`. Indices are
//! 0-based throughout the API; validation messages and space files use
//! 1-based indices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for identities on catalog data.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-12;

/// The rank-3 array `gamma_ik^l`, stored densely as `s * s * s` values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureConstants {
    s: usize,
    values: Vec<f64>,
}

impl StructureConstants {
    pub fn zeros(s: usize) -> Self {
        Self { s, values: vec![0.0; s * s * s] }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    fn offset(&self, i: usize, k: usize, l: usize) -> usize {
        (i * self.s + k) * self.s + l
    }

    pub fn get(&self, i: usize, k: usize, l: usize) -> f64 {
        self.values[self.offset(i, k, l)]
    }

    /// Sets a single entry without touching its permutations.
    pub fn set_raw(&mut self, i: usize, k: usize, l: usize, value: f64) {
        let o = self.offset(i, k, l);
        self.values[o] = value;
    }

    /// Sets an entry together with all permutations of its indices.
    pub fn set(&mut self, i: usize, k: usize, l: usize, value: f64) {
        for (a, b, c) in permutations(i, k, l) {
            self.set_raw(a, b, c, value);
        }
    }

    /// Canonicalization: each entry becomes the mean over the permutations of
    /// its indices. Idempotent on symmetric arrays.
    pub fn symmetrized(&self) -> Self {
        let mut out = Self::zeros(self.s);
        for i in 0..self.s {
            for k in 0..self.s {
                for l in 0..self.s {
                    let perms = permutations(i, k, l);
                    let mean = perms.iter().map(|&(a, b, c)| self.get(a, b, c)).sum::<f64>() / 6.0;
                    out.set_raw(i, k, l, mean);
                }
            }
        }
        out
    }

    /// Entries of the form `(i, k, l)` with `i <= k <= l` and a nonzero value.
    pub fn nonzero_canonical(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.s {
            for k in i..self.s {
                for l in k..self.s {
                    let v = self.get(i, k, l);
                    if v != 0.0 {
                        out.push((i, k, l, v));
                    }
                }
            }
        }
        out
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn permutations(i: usize, k: usize, l: usize) -> [(usize, usize, usize); 6] {
    [(i, k, l), (i, l, k), (k, i, l), (k, l, i), (l, i, k), (l, k, i)]
}

/// The geometric input: `(s, d_i, b_i, gamma_ik^l, zeta_i)` plus structural flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneousSpaceData {
    pub name: String,
    pub s: usize,
    /// Summand dimensions. Signed so that malformed input can be reported by
    /// [`validate_space`] rather than rejected at construction.
    pub dims: Vec<i64>,
    pub killing: Vec<f64>,
    pub gamma: StructureConstants,
    pub casimir: Vec<f64>,
    pub is_maximal: bool,
    pub has_intermediate: bool,
    pub metadata: String,
}

/// Constants of a two-summand space, named after their indices.
///
/// `g112` is `gamma_11^2` (equivalently `gamma_12^1`), `g122` is `gamma_22^1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSummand {
    pub d1: f64,
    pub d2: f64,
    pub b1: f64,
    pub b2: f64,
    pub g111: f64,
    pub g112: f64,
    pub g122: f64,
    pub g222: f64,
    pub zeta1: f64,
    pub zeta2: f64,
}

impl HomogeneousSpaceData {
    pub fn dim(&self, i: usize) -> f64 {
        self.dims[i] as f64
    }

    /// Total dimension `n = sum d_i`.
    pub fn total_dim(&self) -> f64 {
        self.dims.iter().map(|&d| d as f64).sum()
    }

    pub fn two_summand(&self) -> Result<TwoSummand> {
        if self.s != 2 || self.dims.len() != 2 || self.gamma.s() != 2 {
            return Err(Error::RequiresTwoSummands(self.s));
        }
        Ok(TwoSummand {
            d1: self.dim(0),
            d2: self.dim(1),
            b1: self.killing[0],
            b2: self.killing[1],
            g111: self.gamma.get(0, 0, 0),
            g112: self.gamma.get(0, 0, 1),
            g122: self.gamma.get(0, 1, 1),
            g222: self.gamma.get(1, 1, 1),
            zeta1: self.casimir[0],
            zeta2: self.casimir[1],
        })
    }

    /// Trivial isotropy action on the first summand, detected as
    /// `zeta_1 = 0` together with `d_1 = 1`.
    pub fn trivial_first_summand(&self) -> bool {
        !self.casimir.is_empty()
            && self.casimir[0].abs() <= DEFAULT_VALIDATION_TOL
            && self.dims.first() == Some(&1)
    }

    /// Residual of `b_i = 2 zeta_i + (1/d_i) sum_{k,l} gamma_ik^l`.
    pub fn casimir_residual(&self, i: usize) -> f64 {
        let sum: f64 = (0..self.s)
            .flat_map(|k| (0..self.s).map(move |l| (k, l)))
            .map(|(k, l)| self.gamma.get(i, k, l))
            .sum();
        self.killing[i] - 2.0 * self.casimir[i] - sum / self.dim(i)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    LengthMismatch { field: &'static str, expected: usize, got: usize },
    NonPositiveDimension { index: usize, value: i64 },
    NegativeOrNonFinite { field: &'static str, index: usize, value: f64 },
    NegativeOrNonFiniteGamma { i: usize, k: usize, l: usize, value: f64 },
    GammaAsymmetry { i: usize, k: usize, l: usize, residual: f64 },
    Casimir { index: usize, residual: f64 },
    MaximalityCriterion { index: usize },
    IntermediateGamma { value: f64 },
    FlagConflict,
    IntermediateRequiresTwoSummands { s: usize },
    ZeroCasimirDimension { index: usize, dim: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match *self {
            LengthMismatch { field, expected, got } => {
                write!(f, "{field}: expected {expected} entries, got {got}")
            }
            NonPositiveDimension { index, value } => {
                write!(f, "dims[{}] = {value} is not positive", index + 1)
            }
            NegativeOrNonFinite { field, index, value } => {
                write!(f, "{field}[{}] = {value} is negative or not finite", index + 1)
            }
            NegativeOrNonFiniteGamma { i, k, l, value } => {
                write!(f, "gamma({},{},{}) = {value} is negative or not finite", i + 1, k + 1, l + 1)
            }
            GammaAsymmetry { i, k, l, residual } => write!(
                f,
                "gamma not symmetric at ({},{},{}): max permutation difference {residual:e}",
                i + 1,
                k + 1,
                l + 1
            ),
            Casimir { index, residual } => {
                write!(f, "Casimir identity fails for summand {}: residual {residual:e}", index + 1)
            }
            MaximalityCriterion { index } => {
                write!(f, "is_maximal set but gamma_ii^k = 0 for every k != i (i = {})", index + 1)
            }
            IntermediateGamma { value } => {
                write!(f, "has_intermediate set but gamma_11^2 = {value} is nonzero")
            }
            FlagConflict => write!(f, "is_maximal and has_intermediate are both set"),
            IntermediateRequiresTwoSummands { s } => {
                write!(f, "has_intermediate requires s = 2, got s = {s}")
            }
            ZeroCasimirDimension { index, dim } => {
                write!(f, "zeta_{} = 0 requires d_{} = 1, got {dim}", index + 1, index + 1)
            }
        }
    }
}

/// Every invariant violated by a space; empty when the data is valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}

pub fn validate_space(data: &HomogeneousSpaceData) -> ValidationReport {
    validate_space_with_tol(data, DEFAULT_VALIDATION_TOL)
}

/// Validation with a caller-chosen absolute tolerance for the numeric identities.
pub fn validate_space_with_tol(data: &HomogeneousSpaceData, tol: f64) -> ValidationReport {
    let mut violations = Vec::new();
    let s = data.s;

    let mut shape_ok = true;
    for (field, got) in [
        ("dims", data.dims.len()),
        ("killing", data.killing.len()),
        ("casimir", data.casimir.len()),
        ("gamma", data.gamma.s()),
    ] {
        if got != s {
            violations.push(Violation::LengthMismatch { field, expected: s, got });
            shape_ok = false;
        }
    }
    if !shape_ok {
        return ValidationReport { violations };
    }

    let mut numeric_ok = true;
    for (index, &value) in data.dims.iter().enumerate() {
        if value <= 0 {
            violations.push(Violation::NonPositiveDimension { index, value });
            numeric_ok = false;
        }
    }
    for (field, list) in [("killing", &data.killing), ("casimir", &data.casimir)] {
        for (index, &value) in list.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                violations.push(Violation::NegativeOrNonFinite { field, index, value });
                numeric_ok = false;
            }
        }
    }
    for i in 0..s {
        for k in 0..s {
            for l in 0..s {
                let value = data.gamma.get(i, k, l);
                if !value.is_finite() || value < 0.0 {
                    violations.push(Violation::NegativeOrNonFiniteGamma { i, k, l, value });
                    numeric_ok = false;
                }
            }
        }
    }

    for i in 0..s {
        for k in i..s {
            for l in k..s {
                let perms = permutations(i, k, l);
                let vals = perms.map(|(a, b, c)| data.gamma.get(a, b, c));
                let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
                if max - min > tol {
                    violations.push(Violation::GammaAsymmetry { i, k, l, residual: max - min });
                }
            }
        }
    }

    if numeric_ok {
        for i in 0..s {
            let residual = data.casimir_residual(i);
            if residual.abs() > tol {
                violations.push(Violation::Casimir { index: i, residual });
            }
        }
    }

    if data.is_maximal {
        for i in 0..s {
            let ok = (0..s).any(|k| k != i && data.gamma.get(i, i, k) > 0.0);
            if !ok {
                violations.push(Violation::MaximalityCriterion { index: i });
            }
        }
    }

    if data.has_intermediate {
        if s != 2 {
            violations.push(Violation::IntermediateRequiresTwoSummands { s });
        } else {
            let value = data.gamma.get(0, 0, 1);
            if value.abs() > tol {
                violations.push(Violation::IntermediateGamma { value });
            }
        }
        if data.is_maximal {
            violations.push(Violation::FlagConflict);
        }
    }

    for i in 0..s {
        if data.casimir[i].abs() <= tol && data.dims[i] != 1 {
            violations.push(Violation::ZeroCasimirDimension { index: i, dim: data.dims[i] });
        }
    }

    ValidationReport { violations }
}

fn two_summand_space(
    name: String,
    dims: (i64, i64),
    gammas: [(usize, usize, usize, f64); 4],
    casimir: (f64, f64),
    is_maximal: bool,
    metadata: String,
) -> HomogeneousSpaceData {
    let mut gamma = StructureConstants::zeros(2);
    for (i, k, l, v) in gammas {
        gamma.set(i, k, l, v);
    }
    HomogeneousSpaceData {
        name,
        s: 2,
        dims: vec![dims.0, dims.1],
        killing: vec![1.0, 1.0],
        gamma,
        casimir: vec![casimir.0, casimir.1],
        is_maximal,
        has_intermediate: !is_maximal,
        metadata,
    }
}

/// `SO(2m)/SU(m)`: the first summand is one-dimensional with trivial
/// isotropy action, so ancient iterations collapse onto `SO(2m)/U(m)`.
pub fn make_collapsing_example(m: u32) -> Result<HomogeneousSpaceData> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("collapsing example needs m >= 3, got {m}")));
    }
    let m = m as i64;
    let d2 = m * m - m;
    let d2f = d2 as f64;
    Ok(two_summand_space(
        format!("SO({})/SU({})", 2 * m, m),
        (1, d2),
        [(0, 0, 0, 0.0), (0, 0, 1, 0.0), (0, 1, 1, 1.0), (1, 1, 1, 0.0)],
        (0.0, (d2f - 2.0) / (2.0 * d2f)),
        false,
        format!("G=SO({}), K=U({m}), H=SU({m}); Q = -B", 2 * m),
    ))
}

/// `SO(2m-1)/U(m-1)` with intermediate subgroup `SO(2m-2)`; two Einstein
/// metrics with ratios `(2m-3 +- 1)/(m-1)`.
pub fn make_noncollapsing_example(m: u32) -> Result<HomogeneousSpaceData> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("non-collapsing example needs m >= 3, got {m}")));
    }
    let m = m as i64;
    let d1 = (m - 1) * (m - 2);
    let d2 = 2 * (m - 1);
    let mf = m as f64;
    let g122 = d1 as f64 / (2.0 * mf - 3.0);
    let zeta1 = (mf - 2.0) / (2.0 * mf - 3.0);
    // b_2 = 1 = 2 zeta_2 + (2 gamma_22^1 + gamma_22^2) / d_2 with gamma_22^2 = 0
    let zeta2 = 0.5 * (1.0 - 2.0 * g122 / d2 as f64);
    Ok(two_summand_space(
        format!("SO({})/U({})", 2 * m - 1, m - 1),
        (d1, d2),
        [(0, 0, 0, 0.0), (0, 0, 1, 0.0), (0, 1, 1, g122), (1, 1, 1, 0.0)],
        (zeta1, zeta2),
        false,
        format!("G=SO({}), K=SO({}), H=U({}); Q = -B", 2 * m - 1, 2 * m - 2, m - 1),
    ))
}

/// Synthetic maximal space `SYN-1`, symmetric under exchanging the summands.
pub fn make_synthetic_maximal() -> HomogeneousSpaceData {
    two_summand_space(
        "SYN-1".to_string(),
        (3, 3),
        [(0, 0, 0, 0.0), (0, 0, 1, 0.5), (0, 1, 1, 0.5), (1, 1, 1, 0.0)],
        (0.25, 0.25),
        true,
        "synthetic maximal test space".to_string(),
    )
}

/// Built-in spaces addressable by name.
pub mod catalog {
    use super::*;

    pub const NAMES: [&str; 3] = ["so5-u2", "so6-su3", "syn-1"];

    /// Resolves `so5-u2`, `so6-su3`, `syn-1`, `so2m-1-um-1:m=<k>` and `so2m-sum:m=<k>`.
    pub fn lookup(name: &str) -> Result<HomogeneousSpaceData> {
        match name {
            "so5-u2" => return make_noncollapsing_example(3),
            "so6-su3" => return make_collapsing_example(3),
            "syn-1" => return Ok(make_synthetic_maximal()),
            _ => {}
        }
        let parse_m = |rest: &str| -> Result<u32> {
            rest.strip_prefix("m=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("malformed catalog name '{name}'")))
        };
        if let Some(rest) = name.strip_prefix("so2m-1-um-1:") {
            return make_noncollapsing_example(parse_m(rest)?);
        }
        if let Some(rest) = name.strip_prefix("so2m-sum:") {
            return make_collapsing_example(parse_m(rest)?);
        }
        Err(Error::InvalidArgument(format!("unknown catalog space '{name}'")))
    }

    pub fn builtin() -> Vec<(&'static str, HomogeneousSpaceData)> {
        NAMES.iter().map(|&n| (n, lookup(n).expect("built-in catalog entry"))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn so5_u2_is_valid() {
        let so5 = make_noncollapsing_example(3).unwrap();
        assert_eq!(so5.dims, vec![2, 4]);
        assert!(close(so5.gamma.get(0, 1, 1), 2.0 / 3.0, 1e-15));
        assert!(close(so5.casimir[0], 1.0 / 3.0, 1e-15));
        assert!(close(so5.casimir[1], 1.0 / 3.0, 1e-15));
        assert!(validate_space(&so5).is_valid(), "{}", validate_space(&so5));
    }

    #[test]
    fn perturbed_so6_breaks_casimir_on_both_summands() {
        let mut so6 = make_collapsing_example(3).unwrap();
        so6.gamma.set(1, 1, 0, 1.1);
        let report = validate_space(&so6);
        let casimir: Vec<usize> = report
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::Casimir { index, .. } => Some(*index),
                _ => None,
            })
            .collect();
        assert_eq!(casimir, vec![0, 1]);
    }

    #[test]
    fn asymmetric_gamma_is_reported() {
        let mut syn = make_synthetic_maximal();
        syn.gamma.set_raw(0, 1, 0, 0.7);
        let report = validate_space(&syn);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::GammaAsymmetry { i: 0, k: 0, l: 1, .. })));
    }

    #[test]
    fn collapsing_constants() {
        let so6 = make_collapsing_example(3).unwrap();
        assert_eq!(so6.dims, vec![1, 6]);
        assert_eq!(so6.gamma.get(1, 1, 0), 1.0);
        assert_eq!(so6.casimir[0], 0.0);
        assert!(close(so6.casimir[1], 1.0 / 3.0, 1e-15));
        assert!(validate_space(&so6).is_valid());
        assert!(so6.trivial_first_summand());

        let so8 = make_collapsing_example(4).unwrap();
        assert_eq!(so8.dims, vec![1, 12]);
        assert!(close(so8.casimir[1], 5.0 / 12.0, 1e-15));
    }

    #[test]
    fn noncollapsing_m4() {
        let so7 = make_noncollapsing_example(4).unwrap();
        assert_eq!(so7.dims, vec![6, 6]);
        assert!(close(so7.gamma.get(1, 1, 0), 6.0 / 5.0, 1e-15));
        assert!(!so7.trivial_first_summand());
    }

    #[test]
    fn small_m_rejected() {
        assert!(make_collapsing_example(2).is_err());
        assert!(make_noncollapsing_example(1).is_err());
    }

    #[test]
    fn synthetic_maximal_properties() {
        let syn = make_synthetic_maximal();
        assert!(validate_space(&syn).is_valid());
        assert!(syn.gamma.get(0, 0, 1) > 0.0 && syn.gamma.get(1, 1, 0) > 0.0);
        for i in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    assert_eq!(syn.gamma.get(i, k, l), syn.gamma.get(1 - i, 1 - k, 1 - l));
                }
            }
        }
        assert_eq!(syn.dims[0], syn.dims[1]);
        assert_eq!(syn.casimir[0], syn.casimir[1]);
    }

    #[test]
    fn maximal_flag_needs_gamma_iik() {
        let mut so5 = make_noncollapsing_example(3).unwrap();
        so5.is_maximal = true;
        let report = validate_space(&so5);
        assert!(report.violations.contains(&Violation::MaximalityCriterion { index: 0 }));
        assert!(report.violations.contains(&Violation::FlagConflict));
    }

    #[test]
    fn malformed_numbers_are_violations() {
        let mut syn = make_synthetic_maximal();
        syn.dims[0] = 0;
        syn.killing[1] = f64::NAN;
        let report = validate_space(&syn);
        assert!(report.violations.contains(&Violation::NonPositiveDimension { index: 0, value: 0 }));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NegativeOrNonFinite { field: "killing", index: 1, .. })));
    }

    #[test]
    fn zero_casimir_needs_one_dimensional_summand() {
        let mut so5 = make_noncollapsing_example(3).unwrap();
        so5.casimir[0] = 0.0;
        let report = validate_space(&so5);
        assert!(report.violations.contains(&Violation::ZeroCasimirDimension { index: 0, dim: 2 }));
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(catalog::lookup("so5-u2").unwrap().name, "SO(5)/U(2)");
        assert_eq!(catalog::lookup("so6-su3").unwrap().name, "SO(6)/SU(3)");
        assert_eq!(catalog::lookup("so2m-1-um-1:m=5").unwrap().name, "SO(9)/U(4)");
        assert_eq!(catalog::lookup("so2m-sum:m=4").unwrap().name, "SO(8)/SU(4)");
        assert!(catalog::lookup("so2m-sum:m=x").is_err());
        assert!(catalog::lookup("so2m-sum:m=2").is_err());
        assert!(catalog::lookup("cp2").is_err());
    }

    #[test]
    fn symmetrize_spreads_mean() {
        let mut g = StructureConstants::zeros(2);
        g.set_raw(0, 0, 1, 0.6);
        let sym = g.symmetrized();
        assert!(close(sym.get(1, 0, 0), 0.2, 1e-15));
        assert!(close(sym.get(0, 1, 0), 0.2, 1e-15));
    }
}
