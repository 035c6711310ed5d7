//! Independent reference computations checked against the library.
//!
//! Nothing here calls the library's closed forms: the references are a
//! scalar-curvature formula written directly in the structure constants, and
//! brute-force sign scans of `r_1 - alpha_T r_2` with plain bisection.

use ricciter::{
    catalog, find_einstein, ricci_components, ricci_index, scalar_curvature, solve, DiagonalMetric,
    HomogeneousSpaceData, RicciIndex, StructureConstants,
};

/// `S = 1/2 sum d_i b_i / x_i - 1/4 sum_{ijk} gamma_ijk x_k / (x_i x_j)`.
fn scalar_reference(space: &HomogeneousSpaceData, x: &[f64]) -> f64 {
    let s = space.s;
    let first: f64 = (0..s).map(|i| space.dims[i] as f64 * space.killing[i] / x[i]).sum();
    let mut second = 0.0;
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                second += space.gamma.get(i, j, k) * x[k] / (x[i] * x[j]);
            }
        }
    }
    0.5 * first - 0.25 * second
}

/// Ricci pair of `(alpha, 1)` straight from the double sum over `(j, k)`.
fn ricci_reference(space: &HomogeneousSpaceData, alpha: f64) -> [f64; 2] {
    let x = [alpha, 1.0];
    let mut r = [0.0; 2];
    for (i, ri) in r.iter_mut().enumerate() {
        let d = space.dims[i] as f64;
        let mut acc = space.killing[i] / 2.0;
        for j in 0..2 {
            for k in 0..2 {
                let g = space.gamma.get(j, k, i);
                acc += g / (4.0 * d) * (x[i] * x[i] / (x[j] * x[k]) - 2.0 * x[j] / x[k]);
            }
        }
        *ri = acc;
    }
    r
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All sign changes of `f` on a fine log grid over `[lo, hi]`, refined.
fn scan_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<f64> {
    let grid = log_grid(lo, hi, 20_001);
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (a, b) = (f(w[0]), f(w[1]));
        if a == 0.0 {
            roots.push(w[0]);
        } else if a * b < 0.0 {
            roots.push(bisect(&f, w[0], w[1]));
        }
    }
    roots
}

fn three_summand_space() -> HomogeneousSpaceData {
    let mut gamma = StructureConstants::zeros(3);
    gamma.set(0, 1, 2, 0.7);
    gamma.set(0, 0, 1, 0.2);
    gamma.set(1, 1, 1, 0.3);
    gamma.set(2, 2, 0, 0.45);
    HomogeneousSpaceData {
        name: "three".into(),
        s: 3,
        dims: vec![3, 4, 5],
        killing: vec![1.0, 0.8, 1.3],
        gamma,
        casimir: vec![0.1, 0.1, 0.1],
        is_maximal: false,
        has_intermediate: false,
        metadata: String::new(),
    }
}

#[test]
fn scalar_curvature_matches_structure_constant_formula() {
    let mut spaces: Vec<HomogeneousSpaceData> = catalog::builtin().into_iter().map(|(_, s)| s).collect();
    spaces.push(three_summand_space());
    for space in &spaces {
        for (n, a) in log_grid(0.05, 20.0, 30).into_iter().enumerate() {
            let mut x = vec![a; space.s];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi *= 1.0 + 0.37 * ((i + n) % 5) as f64;
            }
            *x.last_mut().unwrap() = 1.0;
            let got = scalar_curvature(space, &DiagonalMetric::new(x.clone()).unwrap()).unwrap();
            let want = scalar_reference(space, &x);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "{}: x={x:?} S={got} reference={want}",
                space.name
            );
        }
    }
}

#[test]
fn two_summand_ricci_matches_double_sum() {
    for (_, space) in catalog::builtin() {
        for a in log_grid(0.01, 100.0, 41) {
            let got = ricci_components(&space, &DiagonalMetric::new(vec![a, 1.0]).unwrap()).unwrap();
            let want = ricci_reference(&space, a);
            for (g, w) in got.components.iter().zip(want) {
                assert!((g - w).abs() <= 1e-13 * (1.0 + w.abs() + a * a));
            }
        }
    }
}

#[test]
fn einstein_ratios_match_sign_scan() {
    for name in ["so5-u2", "so6-su3", "syn-1", "so2m-1-um-1:m=5", "so2m-sum:m=6"] {
        let space = catalog::lookup(name).unwrap();
        let f = |a: f64| {
            let r = ricci_reference(&space, a);
            r[0] - a * r[1]
        };
        let scanned = scan_roots(f, 1e-3, 1e3);
        let found = find_einstein(&space).unwrap().ratios;
        assert_eq!(scanned.len(), found.len(), "{name}: {scanned:?} vs {found:?}");
        for (a, b) in scanned.iter().zip(&found) {
            assert!((a - b).abs() < 1e-10 * b.max(1.0), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn prescribed_solutions_match_sign_scan() {
    for name in ["so5-u2", "so6-su3", "syn-1"] {
        let space = catalog::lookup(name).unwrap();
        for alpha_t in [0.9, 1.3, 1.5, 3.0, 7.5] {
            let f = |a: f64| {
                let r = ricci_reference(&space, a);
                r[0] - alpha_t * r[1]
            };
            // Only roots where Ric is positive are genuine solutions (c > 0).
            let roots: Vec<f64> = scan_roots(f, 1e-4, 1e4)
                .into_iter()
                .filter(|&a| ricci_reference(&space, a)[1] > 0.0)
                .collect();
            let t = DiagonalMetric::new(vec![alpha_t, 1.0]).unwrap();
            match solve(&space, &t) {
                Ok(sol) => {
                    assert_eq!(roots.len(), 1, "{name} at {alpha_t}: {roots:?}");
                    assert!((sol.alpha_g - roots[0]).abs() < 1e-10 * roots[0].max(1.0));
                    let r = ricci_reference(&space, sol.alpha_g);
                    assert!((sol.c - r[1]).abs() < 1e-10);
                }
                Err(_) => assert!(roots.is_empty(), "{name} at {alpha_t}: {roots:?}"),
            }
        }
    }
}

#[test]
fn syn1_solution_at_point_nine_is_bracketed() {
    let syn = catalog::lookup("syn-1").unwrap();
    let am = (7.0 - 13f64.sqrt()) / 6.0;
    let f = |a: f64| {
        let r = ricci_reference(&syn, a);
        r[0] - 0.9 * r[1]
    };
    let reference = bisect(f, am, 1.0);
    let sol = solve(&syn, &DiagonalMetric::new(vec![0.9, 1.0]).unwrap()).unwrap();
    assert!((sol.alpha_g - reference).abs() < 1e-12);
}

#[test]
fn ricci_index_chain_by_hand() {
    // SO(6)/SU(3): (3,1) -> Ric = (9/4, 1/4) -> Ric at ratio 9 has r_2 < 0.
    let so6 = catalog::lookup("so6-su3").unwrap();
    let r = ricci_reference(&so6, 3.0);
    assert!((r[0] - 2.25).abs() < 1e-15 && (r[1] - 0.25).abs() < 1e-15);
    let r = ricci_reference(&so6, r[0] / r[1]);
    assert!(r[1] < 0.0);
    let idx = ricci_index(&so6, &DiagonalMetric::new(vec![3.0, 1.0]).unwrap(), 100).unwrap();
    assert_eq!(idx, RicciIndex::Finite(2));
}
