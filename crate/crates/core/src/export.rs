//! CSV trajectory export: header `step,alpha,x1,x2,r1,r2,c,scalar` (flows use
//! `t` for the first column), full-precision rows, and one trailing summary
//! line `# outcome=<tag> limit_ratio=<v> limit_x1=<v> limit_x2=<v>`.

use std::fmt::Write;

use crate::dynamics::{tidy, IterationTrajectory};
use crate::flow::FlowTrajectory;
use crate::space::TwoSummand;

/// 17 significant digits: enough to round-trip any f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(tidy).unwrap_or_else(|| "nan".to_string())
}

pub fn summary_line(tag: &str, ratio: Option<f64>, limit: Option<[f64; 2]>) -> String {
    format!(
        "# outcome={tag} limit_ratio={} limit_x1={} limit_x2={}",
        opt(ratio),
        opt(limit.map(|l| l[0])),
        opt(limit.map(|l| l[1]))
    )
}

pub fn iteration_csv(traj: &IterationTrajectory) -> String {
    let mut out = String::from("step,alpha,x1,x2,r1,r2,c,scalar\n");
    for r in &traj.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.step,
            num(r.alpha),
            num(r.components[0]),
            num(r.components[1]),
            num(r.ricci[0]),
            num(r.ricci[1]),
            num(r.c),
            num(r.scalar)
        )
        .expect("writing to a String");
    }
    let o = &traj.outcome;
    out.push_str(&summary_line(o.tag(), o.limit_ratio(), o.limit_components()));
    out.push('\n');
    out
}

/// Flow rows; `c` is the mean curvature `S / n`, so `c = r_i / x_i` along
/// Einstein solutions.
pub fn flow_csv(traj: &FlowTrajectory, k: &TwoSummand) -> String {
    let n = k.d1 + k.d2;
    let mut out = String::from("t,alpha,x1,x2,r1,r2,c,scalar\n");
    for s in &traj.samples {
        let (r1, r2) = k.ricci(s.alpha);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            num(s.t),
            num(s.alpha),
            num(s.components[0]),
            num(s.components[1]),
            num(r1),
            num(r2),
            num(s.scalar / n),
            num(s.scalar)
        )
        .expect("writing to a String");
    }
    let o = &traj.outcome;
    let limit = o.limit_ratio().map(|r| [r, 1.0]);
    out.push_str(&summary_line(o.tag(), o.limit_ratio(), limit));
    out.push('\n');
    out
}
