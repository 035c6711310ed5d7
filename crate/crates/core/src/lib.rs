//! Ricci iteration, ancient Ricci iteration, prescribed Ricci curvature and
//! Ricci flow on compact homogeneous spaces given by structure constants.
//!
//! The geometric input is [`HomogeneousSpaceData`]; invariant diagonal
//! metrics are [`DiagonalMetric`]s. Most of the dynamics is specific to spaces
//! with two isotropy summands, where metrics are determined up to scale by
//! the ratio `alpha = x_1 / x_2`.
//!
//! ```
//! use ricciter::{catalog, find_einstein, run_forward, DiagonalMetric, RegimeOutcome};
//!
//! let so5 = catalog::lookup("so5-u2").unwrap();
//! assert_eq!(find_einstein(&so5).unwrap().ratios.len(), 2);
//! let t = DiagonalMetric::from_ratio(1.5).unwrap();
//! let traj = run_forward(&so5, &t, 10_000, 1e-10).unwrap();
//! assert!(matches!(traj.outcome, RegimeOutcome::ConvergedEinstein { .. }));
//! ```

// `!(x > 0.0)` is used deliberately so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvature;
pub mod dynamics;
pub mod einstein;
pub mod error;
pub mod export;
pub mod flow;
pub mod io;
pub mod prescribed;
pub mod roots;
pub mod space;

pub use curvature::{
    build_polynomial, poly_P, ricci_components, ricci_s2, scalar_curvature, step_distance_identity, tilde_p,
    DiagonalMetric, RicciComponents, RicciPolynomial,
};
pub use dynamics::{
    classify, ricci_index, run_ancient, run_forward, step_backward, step_forward, AncientPrediction,
    BackwardStep, Dynamics, ForwardPrediction, IterationRecord, IterationTrajectory, RegimeOutcome,
    RegimePrediction, RicciIndex,
};
pub use einstein::{find_einstein, membership_m_infinity, regime, ricci_fixed_point, EinsteinSet, Regime};
pub use error::{Error, NotSolvable, NotSolvableReason, Result};
pub use flow::{
    compare_flow_iteration, flow_rhs, integrate_metric_flow, integrate_ratio_flow, ratio_flow_rhs, Agreement,
    ComparisonReport, FlowOutcome, FlowSample, FlowTrajectory,
};
pub use io::{load_space, load_space_with, save_space, LoadOptions, ValidationPolicy};
pub use prescribed::{
    eta_constants, solve, solve_maximal, solve_maximal_tensor, solve_nonmaximal, EtaConstants,
    PrescribedSolution,
};
pub use space::{
    catalog, make_collapsing_example, make_noncollapsing_example, make_synthetic_maximal, validate_space,
    validate_space_with_tol, HomogeneousSpaceData, StructureConstants, TwoSummand, ValidationReport,
    Violation,
};
