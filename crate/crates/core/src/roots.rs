//! Small real-root utilities: bracketed bisection with Newton polish, and the
//! real roots of quadratics and cubics.

use crate::error::{Error, Result};

/// Bisects `f` on `[lo, hi]` (which must bracket a sign change) until the
/// bracket is narrower than `rel_width * hi`, then applies up to
/// `newton_steps` Newton corrections that stay inside the final bracket.
pub fn bisect_newton<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    rel_width: f64,
    newton_steps: usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::Bracketing(format!("f({lo}) = {flo}, f({hi}) = {fhi}")));
    }
    while hi - lo > rel_width * hi.abs().max(lo.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..newton_steps {
        let (fx, dfx) = (f(x), df(x));
        if fx == 0.0 || dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let next = x - fx / dfx;
        if !(next >= lo && next <= hi) || next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn horner_derivative(coeffs: &[f64], x: f64) -> f64 {
    let n = coeffs.len() - 1;
    coeffs[..n].iter().enumerate().fold(0.0, |acc, (k, &c)| acc * x + c * (n - k) as f64)
}

/// Evaluates a polynomial given highest-degree-first coefficients.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    horner(coeffs, x)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (f, d) = (horner(coeffs, x), horner_derivative(coeffs, x));
        if f == 0.0 || d == 0.0 {
            break;
        }
        let next = x - f / d;
        if !next.is_finite() || (next - x).abs() > 1e-3 * x.abs().max(1.0) {
            break;
        }
        let improved = horner(coeffs, next).abs() <= f.abs();
        if !improved {
            break;
        }
        x = next;
    }
    x
}

/// Real roots of `a x^2 + b x + c` (a != 0), ascending. A discriminant that is
/// negative only by rounding is treated as zero, yielding a repeated root.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    let slack = 1e-12 * (b * b).max((4.0 * a * c).abs());
    if disc < -slack {
        return Vec::new();
    }
    let sq = disc.max(0.0).sqrt();
    // Avoid cancellation: q shares the sign of b.
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if q == 0.0 { vec![0.0, 0.0] } else { vec![q / a, c / q] };
    if b == 0.0 {
        roots = vec![-sq / (2.0 * a), sq / (2.0 * a)];
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Real roots of `a3 x^3 + a2 x^2 + a1 x + a0` (a3 != 0), ascending, with
/// repeated roots listed once per multiplicity.
///
/// One root is isolated by bisection on the Cauchy interval, the cubic is
/// deflated, and the remaining quadratic is solved directly; every root is
/// then Newton-polished against the original cubic.
pub fn cubic_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let coeffs = [a3, a2, a1, a0];
    let bound = 1.0 + [a2, a1, a0].iter().map(|c| (c / a3).abs()).fold(0.0, f64::max);
    let f = |x: f64| horner(&coeffs, x);
    let df = |x: f64| horner_derivative(&coeffs, x);
    let first = match bisect_newton(f, df, -bound, bound, 1e-15, 5) {
        Ok(r) => r,
        Err(_) => return Vec::new(),
    };
    // synthetic division by (x - first)
    let q2 = a3;
    let q1 = a2 + first * q2;
    let q0 = a1 + first * q1;
    let mut roots = vec![polish(&coeffs, first)];
    roots.extend(quadratic_roots(q2, q1, q0).into_iter().map(|r| polish(&coeffs, r)));
    roots.sort_by(f64::total_cmp);
    roots
}

/// Groups sorted roots that agree within `rel_tol`, returning
/// `(root, multiplicity)` pairs.
pub fn merge_close(roots: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &r in roots {
        if let Some(last) = out.last_mut() {
            if (r - last.0).abs() <= rel_tol * r.abs().max(last.0.abs()).max(1.0) {
                let m = last.1 as f64;
                last.0 = (last.0 * m + r) / (m + 1.0);
                last.1 += 1;
                continue;
            }
        }
        out.push((r, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect_newton(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0, 1e-13, 5).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(bisect_newton(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0, 1e-13, 5).is_err());
    }

    #[test]
    fn quadratic_cases() {
        assert_eq!(quadratic_roots(1.0, -3.0, 2.0), vec![1.0, 2.0]);
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
        assert_eq!(quadratic_roots(1.0, -2.0, 1.0), vec![1.0, 1.0]);
        assert_eq!(quadratic_roots(1.0, 0.0, -4.0), vec![-2.0, 2.0]);
        assert_eq!(quadratic_roots(-8.0, 12.0, 0.0), vec![0.0, 1.5]);
    }

    #[test]
    fn cubic_three_roots() {
        // (x-1)(x-2)(x-3)
        let r = cubic_roots(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_one_real_root() {
        let r = cubic_roots(1.0, 0.0, 1.0, -2.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_double_root_merges() {
        // (x-1)^2 (x-2)
        let r = cubic_roots(1.0, -4.0, 5.0, -2.0);
        let merged = merge_close(&r, 1e-8);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged[0].1, 2);
        assert!((merged[0].0 - 1.0).abs() < 1e-8);
        assert!((merged[1].0 - 2.0).abs() < 1e-13);
    }
}
