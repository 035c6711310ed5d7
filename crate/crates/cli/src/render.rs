//! Report formatting. CSV numbers carry 17 significant digits; missing values
//! are `nan` in CSV and `null` in JSON.

use serde_json::{json, Value};

use ricciter::{
    AncientPrediction, ComparisonReport, Dynamics, FlowOutcome, FlowTrajectory, ForwardPrediction,
    HomogeneousSpaceData, IterationTrajectory, PrescribedSolution, RegimeOutcome, RegimePrediction,
    RicciIndex, ValidationReport,
};

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_else(|| "nan".to_string())
}

fn list(vs: &[f64]) -> String {
    vs.iter().map(|&v| num(v)).collect::<Vec<_>>().join(";")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub struct CatalogEntry<'a> {
    pub key: &'a str,
    pub data: &'a HomogeneousSpaceData,
    pub dynamics: &'a Dynamics,
}

pub fn catalog_csv(entries: &[CatalogEntry]) -> String {
    let mut out = String::from(
        "key,name,d1,d2,gamma111,gamma112,gamma122,gamma222,zeta1,zeta2,regime,\
         alpha_minus,alpha_plus,einstein_ratios,einstein_constants\n",
    );
    for e in entries {
        let k = &e.dynamics.constants;
        let set = &e.dynamics.einstein;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            e.key,
            e.data.name,
            k.d1,
            k.d2,
            num(k.g111),
            num(k.g112),
            num(k.g122),
            num(k.g222),
            num(k.zeta1),
            num(k.zeta2),
            e.dynamics.regime.label(),
            opt(set.alpha_minus()),
            opt(set.alpha_plus()),
            list(&set.ratios),
            list(&set.constants)
        ));
    }
    out
}

pub fn catalog_json(entries: &[CatalogEntry]) -> String {
    let spaces: Vec<Value> = entries
        .iter()
        .map(|e| {
            let k = &e.dynamics.constants;
            let set = &e.dynamics.einstein;
            json!({
                "key": e.key,
                "name": e.data.name,
                "dims": [k.d1, k.d2],
                "gamma": { "111": k.g111, "112": k.g112, "122": k.g122, "222": k.g222 },
                "zeta": [k.zeta1, k.zeta2],
                "regime": e.dynamics.regime.label(),
                "alpha_minus": set.alpha_minus(),
                "alpha_plus": set.alpha_plus(),
                "einstein_ratios": set.ratios,
                "einstein_constants": set.constants,
            })
        })
        .collect();
    pretty(&Value::Array(spaces))
}

pub fn validation_csv(name: &str, report: &ValidationReport) -> String {
    let mut out = String::from("name,valid,violation\n");
    if report.is_valid() {
        out.push_str(&format!("{name},true,\n"));
    }
    for v in &report.violations {
        out.push_str(&format!("{name},false,\"{}\"\n", v.to_string().replace('"', "'")));
    }
    out
}

pub fn validation_json(name: &str, report: &ValidationReport) -> String {
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    pretty(&json!({ "name": name, "valid": report.is_valid(), "violations": violations }))
}

pub fn solution_csv(alpha_t: f64, sol: &PrescribedSolution) -> String {
    let x = sol.metric.components();
    format!(
        "alpha_t,alpha_g,c,x1,x2,unique\n{},{},{},{},{},{}\n",
        num(alpha_t),
        num(sol.alpha_g),
        num(sol.c),
        num(x[0]),
        num(x[1]),
        sol.unique
    )
}

pub fn solution_json(alpha_t: f64, sol: &PrescribedSolution) -> String {
    pretty(&json!({
        "alpha_t": alpha_t,
        "alpha_g": sol.alpha_g,
        "c": sol.c,
        "metric": sol.metric.components(),
        "unique": sol.unique,
    }))
}

pub fn outcome_json(o: &RegimeOutcome) -> Value {
    let mut v = json!({
        "tag": o.tag(),
        "limit_ratio": o.limit_ratio(),
        "limit_components": o.limit_components(),
    });
    let extra = match o {
        RegimeOutcome::NoIterationExists { failed_at_step, alpha, threshold } => {
            json!({ "failed_at_step": failed_at_step, "alpha": alpha, "threshold": threshold })
        }
        RegimeOutcome::StoppedFinite { steps } => json!({ "steps": steps }),
        RegimeOutcome::DivergedPositivityLoss { step, component } => {
            json!({ "step": step, "component": component })
        }
        RegimeOutcome::Inconclusive { alpha } => json!({ "alpha": alpha }),
        _ => json!({}),
    };
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

pub fn trajectory_json(space: &str, command: &str, traj: &IterationTrajectory) -> String {
    let records: Vec<Value> = traj
        .records
        .iter()
        .map(|r| {
            json!({
                "step": r.step,
                "alpha": r.alpha,
                "x1": r.components[0],
                "x2": r.components[1],
                "r1": r.ricci[0],
                "r2": r.ricci[1],
                "c": r.c,
                "scalar": r.scalar,
            })
        })
        .collect();
    pretty(&json!({
        "space": space,
        "command": command,
        "records": records,
        "outcome": outcome_json(&traj.outcome),
        "initial_scale_c": traj.initial_scale_c,
        "diagnostics": traj.diagnostics,
    }))
}

fn flow_outcome_json(o: &FlowOutcome) -> Value {
    let mut v = json!({ "tag": o.tag(), "limit_ratio": o.limit_ratio() });
    match o {
        FlowOutcome::ExtinctionReached { t } => v["t"] = json!(t),
        FlowOutcome::Unsettled { alpha } => v["alpha"] = json!(alpha),
        _ => {}
    }
    v
}

pub fn flow_json(space: &str, traj: &FlowTrajectory) -> String {
    let samples: Vec<Value> = traj
        .samples
        .iter()
        .map(|s| {
            json!({
                "t": s.t,
                "alpha": s.alpha,
                "x1": s.components[0],
                "x2": s.components[1],
                "scalar": s.scalar,
            })
        })
        .collect();
    pretty(&json!({
        "space": space,
        "command": "flow",
        "samples": samples,
        "outcome": flow_outcome_json(&traj.outcome),
    }))
}

fn forward_parts(f: &ForwardPrediction) -> (&'static str, Option<f64>, String) {
    match f {
        ForwardPrediction::Converges { limit_ratio } => ("converges", Some(*limit_ratio), String::new()),
        ForwardPrediction::NoIteration { reason } => ("no-iteration", None, reason.clone()),
    }
}

/// (label, limit ratio, collapse coefficient)
fn ancient_parts(a: &AncientPrediction) -> (&'static str, Option<f64>, Option<f64>) {
    match a {
        AncientPrediction::Einstein { ratio } => ("einstein", *ratio, None),
        AncientPrediction::Collapse { a2 } => ("collapse", Some(0.0), Some(*a2)),
        AncientPrediction::FiniteIndex => ("finite-index", None, None),
    }
}

pub fn prediction_csv(p: &RegimePrediction) -> String {
    let (fwd, fwd_limit, reason) = forward_parts(&p.forward);
    let (anc, anc_ratio, a2) = ancient_parts(&p.ancient);
    format!(
        "alpha_t,regime,alpha_minus,alpha_plus,trivial_first_summand,einstein_empty,forward,\
         forward_limit,member_m_infinity,ancient,ancient_ratio,collapse_a2,note\n\
         {},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        num(p.alpha_t),
        p.regime.label(),
        opt(p.alpha_minus),
        opt(p.alpha_plus),
        p.trivial_first_summand,
        p.einstein_empty,
        fwd,
        opt(fwd_limit),
        p.member_m_infinity,
        anc,
        opt(anc_ratio),
        opt(a2),
        reason
    )
}

pub fn prediction_json(p: &RegimePrediction) -> String {
    let (fwd, fwd_limit, reason) = forward_parts(&p.forward);
    let (anc, anc_ratio, a2) = ancient_parts(&p.ancient);
    pretty(&json!({
        "alpha_t": p.alpha_t,
        "regime": p.regime.label(),
        "alpha_minus": p.alpha_minus,
        "alpha_plus": p.alpha_plus,
        "trivial_first_summand": p.trivial_first_summand,
        "einstein_empty": p.einstein_empty,
        "forward": { "prediction": fwd, "limit_ratio": fwd_limit, "reason": reason },
        "member_m_infinity": p.member_m_infinity,
        "ancient": { "prediction": anc, "limit_ratio": anc_ratio, "collapse_a2": a2 },
    }))
}

pub fn comparison_csv(r: &ComparisonReport) -> String {
    let (pred, pred_limit, _) = forward_parts(&r.predicted);
    format!(
        "alpha0,predicted,predicted_limit,iteration,iteration_limit,flow,flow_limit,agreement\n\
         {},{},{},{},{},{},{},{}\n",
        num(r.alpha0),
        pred,
        opt(pred_limit),
        r.iteration.tag(),
        opt(r.iteration.limit_ratio()),
        r.flow.tag(),
        opt(r.flow.limit_ratio()),
        r.agreement.label()
    )
}

pub fn comparison_json(r: &ComparisonReport) -> String {
    let (pred, pred_limit, reason) = forward_parts(&r.predicted);
    pretty(&json!({
        "alpha0": r.alpha0,
        "predicted": { "prediction": pred, "limit_ratio": pred_limit, "reason": reason },
        "iteration": outcome_json(&r.iteration),
        "flow": flow_outcome_json(&r.flow),
        "agreement": r.agreement.label(),
    }))
}

pub struct SweepRow {
    pub alpha: f64,
    pub prediction: RegimePrediction,
    pub forward: RegimeOutcome,
    pub forward_steps: usize,
    pub index: RicciIndex,
    pub ancient: RegimeOutcome,
}

fn index_label(i: RicciIndex) -> String {
    match i {
        RicciIndex::Finite(k) => k.to_string(),
        RicciIndex::Infinite => "inf".to_string(),
        RicciIndex::Inconclusive { reached } => format!(">{reached}"),
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "alpha,regime,predicted_forward,predicted_limit,forward_outcome,forward_limit,\
         forward_steps,member_m_infinity,ricci_index,ancient_outcome,ancient_limit_x1,ancient_limit_x2\n",
    );
    for r in rows {
        let (pred, pred_limit, _) = forward_parts(&r.prediction.forward);
        let limit = r.ancient.limit_components();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            num(r.alpha),
            r.prediction.regime.label(),
            pred,
            opt(pred_limit),
            r.forward.tag(),
            opt(r.forward.limit_ratio()),
            r.forward_steps,
            r.prediction.member_m_infinity,
            index_label(r.index),
            r.ancient.tag(),
            opt(limit.map(|l| l[0])),
            opt(limit.map(|l| l[1]))
        ));
    }
    out
}

pub fn sweep_json(rows: &[SweepRow]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (pred, pred_limit, reason) = forward_parts(&r.prediction.forward);
            json!({
                "alpha": r.alpha,
                "regime": r.prediction.regime.label(),
                "predicted": { "prediction": pred, "limit_ratio": pred_limit, "reason": reason },
                "forward": outcome_json(&r.forward),
                "forward_steps": r.forward_steps,
                "member_m_infinity": r.prediction.member_m_infinity,
                "ricci_index": index_label(r.index),
                "ancient": outcome_json(&r.ancient),
            })
        })
        .collect();
    pretty(&Value::Array(rows))
}
