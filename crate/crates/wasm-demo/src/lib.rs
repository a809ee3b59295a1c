//! Browser bindings: every entry point takes and returns plain strings so the
//! page needs no glue beyond the generated module.

use gflow_core::enhanced::enhanced_continuous_scaling_with;
use gflow_core::format::{check_report, parse_instance, write_instance, write_report, Instance, Report};
use gflow_core::generate::{random_lp2, random_std, random_uncap, GenParams};
use gflow_core::graph::UncapInstance;
use gflow_core::lp2::{solve_lp2, Lp2Outcome};
use gflow_core::rational::{format_rational, to_f64};
use gflow_core::scaling::{continuous_scaling_with, Solution, SolveOptions};
use gflow_core::trace::TraceRecord;
use gflow_core::transform::{check_boundedness, solve_standard_with, Boundedness, StdOutcome};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn point(record: &TraceRecord) -> Value {
    json!({
        "iter": record.iteration,
        "kind": record.kind.as_str(),
        "delta": format_rational(&record.delta),
        "log2_delta": to_f64(&record.delta).log2(),
        "psi": record.psi,
        "kappa": record.kappa,
        "D_size": record.d_size,
        "violations": record.violations,
    })
}

fn run(inst: &UncapInstance, strong: bool, trace: &mut Vec<Value>) -> Result<Solution, String> {
    let options = SolveOptions::instrumented();
    let mut hook = |r: &TraceRecord| trace.push(point(r));
    let solved = if strong {
        enhanced_continuous_scaling_with(inst, &options, &mut hook)
    } else {
        continuous_scaling_with(inst, &options, &mut hook)
    };
    solved.map_err(|e| e.to_string())
}

/// Solves an uncap or std instance. Returns JSON with `status`, `report`,
/// `checked` and the per-iteration `trace`.
pub fn solve_text(text: &str, algorithm: &str) -> Result<String, String> {
    let strong = match algorithm {
        "strong" => true,
        "weak" => false,
        other => return Err(format!("unknown algorithm `{other}`")),
    };
    let instance = parse_instance(text).map_err(|e| e.to_string())?;
    let mut trace = Vec::new();
    let report = match &instance {
        Instance::Uncap(inst) => match check_boundedness(inst.node_count(), inst.sink(), inst.arcs()) {
            Boundedness::Unbounded(cert) => Report::unbounded_uncap(inst, &cert),
            Boundedness::Bounded => {
                let sol = run(inst, strong, &mut trace)?;
                Report::optimal_uncap(inst, &sol.flow, &sol.labels, &sol.value)
            }
        },
        Instance::Std(inst) => {
            let outcome = solve_standard_with(inst, |u| {
                run(u, strong, &mut trace).map_err(gflow_core::error::SolveError::Internal)
            })
            .map_err(|e| e.to_string())?;
            match outcome {
                StdOutcome::Optimal(sol) => Report::optimal_std(inst, &sol.flow, &sol.labels, &sol.value),
                StdOutcome::Unbounded(cert) => Report::unbounded_std(inst, &cert),
            }
        }
        Instance::Lp2(_) => return Err("use the LP2 solver for `problem lp2` input".into()),
    };
    let checked = check_report(&instance, &report);
    let status = match report {
        Report::Unbounded { .. } => "unbounded",
        _ => "optimal",
    };
    Ok(json!({
        "status": status,
        "report": write_report(&report),
        "checked": checked.is_ok(),
        "check_error": checked.err(),
        "trace": trace,
    })
    .to_string())
}

/// Decides an LP2 instance. Returns JSON with `status`, `report` and `checked`.
pub fn lp2_text(text: &str) -> Result<String, String> {
    let instance = parse_instance(text).map_err(|e| e.to_string())?;
    let Instance::Lp2(lp) = &instance else { return Err("expected `problem lp2`".into()) };
    let (report, status) = match solve_lp2(lp).map_err(|e| e.to_string())? {
        Lp2Outcome::Feasible(x) => (Report::Feasible { x }, "feasible"),
        Lp2Outcome::Infeasible(cert) => (Report::infeasible(&cert), "infeasible"),
    };
    let checked = check_report(&instance, &report);
    Ok(json!({
        "status": status,
        "report": write_report(&report),
        "checked": checked.is_ok(),
        "check_error": checked.err(),
    })
    .to_string())
}

pub fn gen_text(kind: &str, nodes: usize, arcs: usize, seed: u64, bits: u32) -> Result<String, String> {
    if nodes < 2 || !(1..=30).contains(&bits) {
        return Err("need at least 2 nodes and 1 to 30 bits".into());
    }
    let params = GenParams { nodes, arcs, bits, seed };
    let instance = match kind {
        "uncap" => Instance::Uncap(random_uncap(params)),
        "std" => Instance::Std(random_std(params)),
        "lp2" => Instance::Lp2(random_lp2(params)),
        other => return Err(format!("unknown kind `{other}`")),
    };
    Ok(write_instance(&instance))
}

#[wasm_bindgen]
pub fn solve(text: &str, algorithm: &str) -> Result<String, JsError> {
    solve_text(text, algorithm).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lp2(text: &str) -> Result<String, JsError> {
    lp2_text(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gen(kind: &str, nodes: usize, arcs: usize, seed: u32, bits: u32) -> Result<String, JsError> {
    gen_text(kind, nodes, arcs, u64::from(seed), bits).map_err(|e| JsError::new(&e))
}
