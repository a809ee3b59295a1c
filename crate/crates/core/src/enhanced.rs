//! The strongly polynomial variant: filtration, contraction of abundant arcs
//! and expansion of the final labels back to the original instance.

use crate::constants::{Constants, CONTRACTION_FACTOR};
use crate::error::SolveError;
use crate::graph::{Arc, ArcId, ArcKind, Flow, Labeling, NodeId, UncapInstance};
use crate::init::initialize;
use crate::maxflow::{optimality_residual_check, tight_flow, ResidualCheck};
use crate::rational::{cmp_product, int, Rational};
use crate::scaling::{
    augment_on_path, classify, clearing_tight_flow, common_checks, compute_n_within, elementary_step, find_extension,
    find_tight_path, finish, potential_psi, ScalingState, Snapshot, Solution, SolveOptions, StepOutcome,
};
use crate::trace::{IterationClass, IterationKind, RunStats, Termination, TraceRecord};
use crate::views::{excess, is_conservative, nontight_and_reserve, relabeled_gain, surplus};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Arcs whose relabeled flow reaches `17 m Δ`.
pub fn abundant_arcs(inst: &UncapInstance, state: &ScalingState, consts: &Constants) -> Vec<ArcId> {
    let level = consts.abundant_factor() * &state.delta;
    (0..inst.arc_count())
        .filter(|&a| cmp_product(&state.flow[a], &level, &state.labels[inst.arc(a).tail]).is_ge())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionCase {
    /// The tail is an ordinary node and is merged into the head.
    TailMerged,
    /// The tail is the sink and the head is merged into it.
    HeadIntoSink,
}

/// Everything needed to map labels of a contracted instance back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRecord {
    pub case: ContractionCase,
    pub tail: NodeId,
    pub head: NodeId,
    pub gain: Rational,
    pub removed: NodeId,
    /// Old node to new node; the removed node maps to the merged node.
    pub node_map: Vec<NodeId>,
    /// Old arc to the new arc that absorbed it; `None` for arcs between the two ends.
    pub arc_map: Vec<Option<ArcId>>,
    /// New arc to the old arc whose gain it kept.
    pub kept_from: Vec<ArcId>,
    pub before: UncapInstance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub instance: UncapInstance,
    pub flow: Flow,
    pub labels: Labeling,
    pub record: ContractionRecord,
}

/// Merges the ends of the tight arc `arc` into one node.
pub fn contract(inst: &UncapInstance, flow: &Flow, labels: &Labeling, arc: ArcId) -> Result<Contraction, SolveError> {
    let Arc { tail: p, head: q, gain: g_pq, .. } = inst.arc(arc).clone();
    if !relabeled_gain(inst, labels, arc).is_one() {
        return Err(SolveError::Internal(format!("arc {arc} is not tight and cannot be contracted")));
    }
    let t = inst.sink();
    let (case, removed, merged) =
        if p == t { (ContractionCase::HeadIntoSink, q, p) } else { (ContractionCase::TailMerged, p, q) };
    let node_map: Vec<NodeId> = inst
        .nodes()
        .map(|v| {
            let v = if v == removed { merged } else { v };
            if v > removed {
                v - 1
            } else {
                v
            }
        })
        .collect();
    let s = node_map[merged];

    let mut demands: Vec<Rational> = vec![Rational::zero(); inst.node_count() - 1];
    for v in inst.nodes().filter(|&v| v != removed) {
        demands[node_map[v]] = inst.demand(v).clone();
    }
    demands[s] += match case {
        ContractionCase::TailMerged => &g_pq * inst.demand(p),
        ContractionCase::HeadIntoSink => inst.demand(q) / &g_pq,
    };

    // rewritten arcs before parallel merging: (old id, arc, flow)
    let mut rewritten: Vec<(ArcId, Arc, Rational)> = Vec::new();
    for (a, old) in inst.arcs().iter().enumerate() {
        let between = (old.tail == p && old.head == q) || (old.tail == q && old.head == p);
        if between {
            continue;
        }
        let mut gain = old.gain.clone();
        let mut value = flow[a].clone();
        let mut kind = old.kind;
        if old.head == removed {
            kind = ArcKind::Regular;
            gain = match case {
                ContractionCase::TailMerged => gain * &g_pq,
                ContractionCase::HeadIntoSink => gain / &g_pq,
            };
        } else if old.tail == removed {
            kind = ArcKind::Regular;
            match case {
                ContractionCase::TailMerged => {
                    gain /= &g_pq;
                    value *= &g_pq;
                }
                ContractionCase::HeadIntoSink => {
                    gain *= &g_pq;
                    value /= &g_pq;
                }
            }
        }
        let new_arc = Arc { tail: node_map[old.tail], head: node_map[old.head], gain, kind };
        rewritten.push((a, new_arc, value));
    }

    let mut new_labels = vec![Rational::zero(); inst.node_count() - 1];
    for v in inst.nodes().filter(|&v| v != removed) {
        new_labels[node_map[v]] = labels[v].clone();
    }

    // merge parallel arcs at the merged node, keeping the largest gain
    let mut best: BTreeMap<(NodeId, NodeId), usize> = BTreeMap::new();
    for (k, (_, a, _)) in rewritten.iter().enumerate() {
        if a.tail != s && a.head != s {
            continue;
        }
        let entry = best.entry((a.tail, a.head)).or_insert(k);
        if a.gain > rewritten[*entry].1.gain {
            *entry = k;
        }
    }
    let mut keep = vec![true; rewritten.len()];
    let mut target = vec![None; rewritten.len()];
    for (k, (_, a, _)) in rewritten.iter().enumerate() {
        if a.tail == s || a.head == s {
            let winner = best[&(a.tail, a.head)];
            if winner != k {
                keep[k] = false;
                target[k] = Some(winner);
            }
        }
    }
    let mut new_index = vec![usize::MAX; rewritten.len()];
    let mut arcs = Vec::new();
    let mut values = Vec::new();
    let mut kept_from = Vec::new();
    for (k, (old, a, v)) in rewritten.iter().enumerate() {
        if keep[k] {
            new_index[k] = arcs.len();
            arcs.push(a.clone());
            values.push(v.clone());
            kept_from.push(*old);
        }
    }
    let mut arc_map = vec![None; inst.arc_count()];
    for (k, (old, a, v)) in rewritten.iter().enumerate() {
        let winner = target[k].unwrap_or(k);
        arc_map[*old] = Some(new_index[winner]);
        if !keep[k] && v.is_positive() {
            let tight = &a.gain * &new_labels[a.tail] == new_labels[a.head];
            if !tight {
                return Err(SolveError::Internal(format!("dropped parallel arc {old} carries flow but is not tight")));
            }
            values[new_index[winner]] += v;
        }
    }
    let instance = UncapInstance::assemble(
        inst.node_count() - 1,
        node_map[t],
        arcs,
        demands,
        inst.bound().clone(),
        Flow::zero(values.len()),
    );
    let record = ContractionRecord {
        case,
        tail: p,
        head: q,
        gain: g_pq,
        removed,
        node_map,
        arc_map,
        kept_from,
        before: inst.clone(),
    };
    Ok(Contraction { instance, flow: Flow::from_values(values), labels: Labeling::from_values(new_labels), record })
}

/// Label formula of the reverse step, without any checks.
pub fn lift_labels(record: &ContractionRecord, labels: &Labeling) -> Labeling {
    let mut values: Vec<Rational> = record.before.nodes().map(|v| labels[record.node_map[v]].clone()).collect();
    values[record.removed] = match record.case {
        ContractionCase::TailMerged => &labels[record.node_map[record.head]] / &record.gain,
        ContractionCase::HeadIntoSink => record.gain.clone(),
    };
    Labeling::from_values(values)
}

/// Lifts labels of the contracted instance to the instance before contraction,
/// checking dual feasibility and tightness of the contracted arc.
pub fn reverse_expand(record: &ContractionRecord, labels: &Labeling) -> Result<Labeling, SolveError> {
    let inst = &record.before;
    let lifted = lift_labels(record, labels);
    for a in 0..inst.arc_count() {
        if relabeled_gain(inst, &lifted, a) > Rational::one() {
            return Err(SolveError::Internal(format!("expanded labels violate arc {a}")));
        }
    }
    let contracted = (0..inst.arc_count())
        .find(|&a| {
            inst.arc(a).tail == record.tail && inst.arc(a).head == record.head && inst.arc(a).gain == record.gain
        })
        .expect("record names an existing arc");
    if !relabeled_gain(inst, &lifted, contracted).is_one() {
        return Err(SolveError::Internal("contracted arc is not tight after expansion".into()));
    }
    Ok(lifted)
}

/// Replaces the flow inside `V \ T` by a fresh tight flow and clears arcs
/// entering T. Returns violations of the post-filtration excess bound.
pub fn filtration(inst: &UncapInstance, state: &mut ScalingState) -> Result<Vec<String>, SolveError> {
    let outside: Vec<bool> = state.t.iter().map(|&x| !x).collect();
    let fresh = tight_flow(inst, &outside, &state.labels)?;
    for (a, arc) in inst.arcs().iter().enumerate() {
        if outside[arc.tail] && outside[arc.head] {
            state.flow[a] = fresh[a].clone();
        } else if outside[arc.tail] {
            state.flow[a] = Rational::zero();
        }
    }
    let t = inst.sink();
    let max_demand = inst
        .non_sink_nodes()
        .filter(|&j| outside[j])
        .map(|j| (inst.demand(j) / &state.labels[j]).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let (_, reserve) = nontight_and_reserve(inst, &state.flow, &state.labels);
    let n = int(inst.node_count() as i64);
    let mut violations = Vec::new();
    for i in inst.nodes().filter(|&i| outside[i] && i != t) {
        let bound = &reserve[i] / &state.labels[i] + &n * &max_demand;
        if state.relabeled_excess(inst, i) > bound {
            violations.push(format!("node {i} exceeds the post-filtration excess bound"));
        }
    }
    Ok(violations)
}

/// `32 m n Δ` against `|b^mu_i|`; the ratio is `None` (infinite) for zero demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaQuantity {
    pub scaled_delta: Rational,
    pub demand: Rational,
    pub ratio: Option<Rational>,
}

pub fn gamma_quantity(inst: &UncapInstance, state: &ScalingState, consts: &Constants, node: NodeId) -> GammaQuantity {
    let scaled_delta = consts.gamma_scale() * &state.delta;
    let demand = (inst.demand(node) / &state.labels[node]).abs();
    let ratio = (!demand.is_zero()).then(|| &scaled_delta / &demand);
    GammaQuantity { scaled_delta, demand, ratio }
}

fn demand_set(inst: &UncapInstance, state: &ScalingState, consts: &Constants, kappa: u32) -> Vec<bool> {
    let level = &state.delta / consts.filtration_divisor(kappa);
    inst.nodes()
        .map(|i| i != inst.sink() && cmp_product(&inst.demand(i).abs(), &level, &state.labels[i]).is_ge())
        .collect()
}

/// Runs the strongly polynomial algorithm without instrumentation.
pub fn enhanced_continuous_scaling(inst: &UncapInstance) -> Result<Solution, SolveError> {
    enhanced_continuous_scaling_with(inst, &SolveOptions::default(), &mut |_| {})
}

pub fn enhanced_continuous_scaling_with(
    original: &UncapInstance,
    options: &SolveOptions,
    hook: &mut dyn FnMut(&TraceRecord),
) -> Result<Solution, SolveError> {
    match enhanced_continuous_scaling_until(original, options, hook, &mut |_| false)? {
        Run::Finished(solution) => Ok(*solution),
        Run::Stopped(_) => unreachable!("the predicate never fires"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Run {
    Finished(Box<Solution>),
    /// The caller's predicate accepted this feasible flow of the original instance.
    Stopped(Flow),
}

/// Like `enhanced_continuous_scaling_with`, but hands every intermediate flow
/// to `stop` while no arc has been contracted; the run ends as soon as it
/// returns true. Intermediate flows are feasible but not optimal.
pub fn enhanced_continuous_scaling_until(
    original: &UncapInstance,
    options: &SolveOptions,
    hook: &mut dyn FnMut(&TraceRecord),
    stop: &mut dyn FnMut(&Flow) -> bool,
) -> Result<Run, SolveError> {
    let consts = Constants::for_instance(original);
    let threshold = consts.termination_threshold();
    let init = initialize(original)?;
    let mut stats = RunStats::new(init.delta.clone(), init.cancellations);
    let mut inst = original.clone();
    let mut state = ScalingState::new(init.flow, init.labels, init.delta);
    let mut records: Vec<ContractionRecord> = Vec::new();
    // original id of every current node and arc
    let mut node_origin: Vec<NodeId> = inst.nodes().collect();
    let mut arc_origin: Vec<ArcId> = (0..inst.arc_count()).collect();
    let mut kappa: u32 = 0;
    let mut previous_neutral = false;
    // original ids in D at the start of the previous iteration, minus nodes exempted by contractions
    let mut previous_d: Option<Vec<NodeId>> = None;
    let mut pending_filtration: Option<(u64, Vec<NodeId>)> = None;
    let mut shrink_deadline: Option<u64> = None;

    loop {
        if inst.node_count() <= 1 {
            stats.termination = Termination::SingleNode;
            break;
        }
        if state.delta < threshold {
            let all = vec![true; inst.node_count()];
            let flow = tight_flow(&inst, &all, &state.labels)?;
            if surplus(&inst, &flow).is_zero() {
                state.flow = flow;
                stats.termination = Termination::Threshold;
                break;
            }
        }
        if stats.iterations >= options.max_iterations {
            return Err(SolveError::IterationLimit(stats.iterations));
        }
        let iteration = stats.iterations + 1;
        let mut violations = Vec::new();
        let d_now = demand_set(&inst, &state, &consts, kappa);
        let d_ids: Vec<NodeId> = inst.nodes().filter(|&i| d_now[i]).map(|i| node_origin[i]).collect();
        if options.instrument {
            if iteration > 1 {
                for i in inst.non_sink_nodes() {
                    let g = gamma_quantity(&inst, &state, &consts, i);
                    if g.ratio.as_ref().is_some_and(|r| *r < Rational::one()) {
                        violations.push(format!("node {i} has |b^mu| above 32mnΔ"));
                    }
                }
            }
            if let Some(prev) = &previous_d {
                for id in prev {
                    if node_origin.contains(id) && !d_ids.contains(id) {
                        violations.push(format!("original node {id} left D"));
                    }
                }
            }
            if let Some((tau, before)) = pending_filtration.take() {
                if before == d_ids {
                    shrink_deadline = Some(tau + 2);
                }
            }
        }
        previous_d = Some(d_ids.clone());

        let before = options.instrument.then(|| Snapshot::take(&inst, &state));
        let t_before = state.t.clone();
        let n_set = compute_n_within(&inst, &state, &state.t);
        let mut alpha = None;
        let mut stepped = None;
        let mut filtrated = false;
        let mut optimal = false;
        let kind = if let Some(path) = find_tight_path(&inst, &state, &n_set) {
            augment_on_path(&inst, &mut state, &path);
            IterationKind::Augment
        } else if let Some((node, _)) = find_extension(&inst, &state) {
            state.t[node] = true;
            IterationKind::Extend
        } else {
            let level = &state.delta / consts.filtration_divisor(kappa);
            let quiet = inst
                .non_sink_nodes()
                .filter(|&i| !state.t[i])
                .all(|i| (inst.demand(i) / &state.labels[i]).abs() < level);
            if quiet {
                violations.extend(filtration(&inst, &mut state)?);
                filtrated = true;
            }
            let dropped: Vec<NodeId> = inst
                .nodes()
                .filter(|&i| state.t0[i])
                .filter(|&i| state.excess_below(&inst, i, &Constants::mid(inst.degree(i))))
                .collect();
            let low_in_t = inst
                .nodes()
                .filter(|&i| state.t[i])
                .any(|i| state.excess_below(&inst, i, &Constants::lo(inst.degree(i))));
            if dropped.is_empty() && !low_in_t {
                match elementary_step(&inst, &mut state, options.instrument)? {
                    StepOutcome::Stepped(info) => {
                        alpha = Some(info.alpha.clone());
                        stepped = Some(info);
                        IterationKind::Step
                    }
                    StepOutcome::OptimalReached => {
                        optimal = true;
                        IterationKind::Optimal
                    }
                }
            } else {
                if !dropped.is_empty() {
                    for i in dropped {
                        state.t0[i] = false;
                    }
                    state.t = state.t0.clone();
                }
                IterationKind::Skip
            }
        };
        let class = classify(&t_before, &state.t);
        if let Some(info) = &stepped {
            violations.extend(info.violations.iter().cloned());
        }
        if let Some(before) = &before {
            if !optimal {
                common_checks(&inst, &state, before, class, stepped.as_ref(), &mut violations);
                if previous_neutral && class == IterationClass::Neutral {
                    violations.push("two neutral iterations in a row".into());
                }
            }
            if let Some(deadline) = shrink_deadline {
                if class == IterationClass::Shrinking {
                    shrink_deadline = None;
                } else if iteration >= deadline {
                    violations.push("no shrinking iteration within two iterations after a filtration".into());
                    shrink_deadline = None;
                }
            }
        }
        previous_neutral = class == IterationClass::Neutral;

        let mut contractions = 0;
        if !optimal {
            while let Some(&a) = abundant_arcs(&inst, &state, &consts).first() {
                let zeroed = crate::views::make_conservative(&inst, &state.flow, &state.labels);
                let ratios_before: Vec<Option<Rational>> = inst
                    .nodes()
                    .map(|i| (!state.delta.is_zero()).then(|| (inst.demand(i) / &state.labels[i]).abs() / &state.delta))
                    .collect();
                let c = contract(&inst, &zeroed, &state.labels, a)?;
                stats.contracted_arcs.push(arc_origin[a]);
                let rec = &c.record;
                let old_delta = state.delta.clone();
                state = ScalingState::new(c.flow, c.labels, &old_delta * int(CONTRACTION_FACTOR));
                kappa += 1;
                contractions += 1;
                let mut origin_nodes = vec![0; c.instance.node_count()];
                for v in rec.before.nodes().filter(|&v| v != rec.removed) {
                    origin_nodes[rec.node_map[v]] = node_origin[v];
                }
                arc_origin = rec.kept_from.iter().map(|&old| arc_origin[old]).collect();
                if options.instrument {
                    if !is_conservative(&c.instance, &state.flow, &state.labels) {
                        violations.push("labels are not conservative after contraction".into());
                    }
                    for i in c.instance.non_sink_nodes() {
                        let cap = Constants::mid(c.instance.degree(i)) * &state.delta;
                        if state.relabeled_excess(&c.instance, i) >= cap {
                            violations.push(format!("node {i} keeps too much excess after contraction"));
                        }
                    }
                    for v in rec.before.nodes().filter(|&v| v != rec.tail && v != rec.head) {
                        let w = rec.node_map[v];
                        if let Some(prev) = &ratios_before[v] {
                            let now = (c.instance.demand(w) / &state.labels[w]).abs() / &state.delta;
                            if now * int(CONTRACTION_FACTOR) != *prev {
                                violations.push(format!("|b^mu|/Δ of node {w} did not drop by exactly 16"));
                            }
                        }
                    }
                }
                // the contracted ends are exempt from the D monotonicity check
                if let Some(prev) = previous_d.as_mut() {
                    let exempt = [node_origin[rec.tail], node_origin[rec.head]];
                    prev.retain(|id| !exempt.contains(id));
                }
                node_origin = origin_nodes;
                inst = c.instance;
                records.push(c.record);
                if inst.node_count() <= 1 {
                    break;
                }
            }
        }
        if contractions > 0 {
            previous_neutral = false;
            shrink_deadline = None;
        } else if filtrated && options.instrument {
            if class == IterationClass::Shrinking {
                shrink_deadline = None;
            } else {
                pending_filtration = Some((iteration, d_ids.clone()));
            }
        }

        let d_size = demand_set(&inst, &state, &consts, kappa).iter().filter(|&&x| x).count();
        let record = TraceRecord {
            iteration,
            kind,
            class,
            delta: state.delta.clone(),
            psi: potential_psi(&inst, &state),
            kappa,
            d_size,
            node_count: inst.node_count(),
            alpha,
            filtration: filtrated,
            contractions,
            violations,
        };
        stats.absorb(&record);
        hook(&record);
        if optimal {
            stats.termination = Termination::StepOptimal;
            break;
        }
        if records.is_empty() && stop(&state.flow) {
            return Ok(Run::Stopped(state.flow));
        }
        if kind == IterationKind::Step && inst.node_count() > 1 {
            if let Some(flow) = clearing_tight_flow(&inst, &state.labels)? {
                state.flow = flow;
                stats.termination = Termination::EarlyTight;
                break;
            }
        }
    }

    let labels = if inst.node_count() <= 1 { Labeling::ones(1) } else { state.labels.clone() };
    if inst.node_count() > 1 && !crate::views::is_conservative(&inst, &state.flow, &labels) {
        return Err(SolveError::Internal("stopping pair is not conservative".into()));
    }
    if inst.node_count() > 1 && inst.non_sink_nodes().any(|i| !excess(&inst, &state.flow, i).is_zero()) {
        return Err(SolveError::Internal("stopping pair leaves excess on the contracted instance".into()));
    }
    let (flow, labels) = expand_to_original(original, &records, labels)?;
    finish(original, flow, labels, stats).map(|s| Run::Finished(Box::new(s)))
}

/// Lifts the final labels through every contraction, newest first, and routes
/// an optimal flow on the original instance.
pub fn expand_to_original(
    original: &UncapInstance,
    records: &[ContractionRecord],
    labels: Labeling,
) -> Result<(Flow, Labeling), SolveError> {
    let mut labels = labels;
    for record in records.iter().rev() {
        labels = reverse_expand(record, &labels)?;
    }
    let flow = tight_flow(original, &vec![true; original.node_count()], &labels)?;
    match optimality_residual_check(original, &flow, &labels)? {
        ResidualCheck::Optimal => Ok((flow, labels)),
        ResidualCheck::Witness(i) => {
            Err(SolveError::Internal(format!("node {i} keeps excess after expanding to the original instance")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f1, f5};
    use crate::rational::ratio;

    fn triangle(g_ip: Rational, g_pq: Rational, b_p: Rational, b_q: Rational) -> UncapInstance {
        // nodes: i = 0, p = 1, q = 2, sink 3
        let arcs = vec![
            Arc::regular(0, 1, g_ip),
            Arc::regular(1, 2, g_pq),
            Arc::regular(0, 3, int(1)),
            Arc::regular(1, 3, int(1)),
            Arc::regular(2, 3, int(1)),
        ];
        // positive demands make the zero flow infeasible, so skip validation
        UncapInstance::assemble(4, 3, arcs, vec![int(0), b_p, b_q, int(0)], 8.into(), Flow::zero(5))
    }

    #[test]
    fn tail_merge_rewrites_gains_and_demands() {
        let inst = triangle(int(3), ratio(1, 2), int(4), int(1));
        // mu_q = gamma_pq mu_p makes arc 1 tight
        let mu = Labeling::from_values(vec![int(1), int(2), int(1), int(1)]);
        let c = contract(&inst, &Flow::zero(5), &mu, 1).unwrap();
        assert_eq!(c.record.case, ContractionCase::TailMerged);
        assert_eq!(c.instance.node_count(), 3);
        let q = c.record.node_map[2];
        let into_q = c.instance.arcs().iter().find(|a| a.tail == 0 && a.head == q).unwrap();
        assert_eq!(into_q.gain, ratio(3, 2));
        assert_eq!(c.instance.demand(q), &int(3));
        // p -> t becomes q -> t with gain 2, beating q's own unit arc
        let to_sink: Vec<_> = c.instance.arcs().iter().filter(|a| a.tail == q).collect();
        assert_eq!(to_sink.len(), 1);
        assert_eq!(to_sink[0].gain, int(2));
    }

    #[test]
    fn sink_tail_case_moves_demand_to_sink() {
        // arc t -> q with gain 1/2
        let arcs = vec![Arc::regular(1, 0, ratio(1, 2)), Arc::regular(0, 1, int(2))];
        let inst = UncapInstance::assemble(2, 1, arcs, vec![int(2), int(0)], 4.into(), Flow::zero(2));
        let mu = Labeling::from_values(vec![ratio(1, 2), int(1)]);
        let c = contract(&inst, &Flow::zero(2), &mu, 0).unwrap();
        assert_eq!(c.record.case, ContractionCase::HeadIntoSink);
        assert_eq!(c.instance.node_count(), 1);
        assert_eq!(c.instance.demand(0), &int(4));
        let lifted = reverse_expand(&c.record, &Labeling::ones(1)).unwrap();
        assert_eq!(lifted.values(), &[ratio(1, 2), int(1)]);
    }

    #[test]
    fn reverse_of_tail_merge_divides_by_gain() {
        let inst = triangle(int(3), ratio(1, 2), int(4), int(1));
        let mu = Labeling::from_values(vec![int(1), int(2), int(1), int(1)]);
        let c = contract(&inst, &Flow::zero(5), &mu, 1).unwrap();
        // a dual feasible labeling of the contracted instance with mu'_q = 3
        let mut values = c.labels.values().to_vec();
        values[c.record.node_map[2]] = int(3);
        values[c.record.node_map[0]] = int(5);
        let values = Labeling::from_values(values);
        assert_eq!(lift_labels(&c.record, &values)[1], int(6));
        // with mu_p = 6 the arc p -> t of gain 1 rises above one
        assert!(reverse_expand(&c.record, &values).is_err());
    }

    #[test]
    fn contract_and_reverse_on_f1() {
        let inst = f1();
        let mu = Labeling::from_values(vec![int(2), int(2), int(1)]);
        let flow = Flow::from_values(vec![int(2), int(2), int(0)]);
        let c = contract(&inst, &flow, &mu, 0).unwrap();
        assert_eq!(c.instance.node_count(), 2);
        assert_eq!(c.instance.arc_count(), 1);
        assert_eq!(c.instance.arc(0).gain, ratio(1, 2));
        assert_eq!(c.instance.demand(0), &int(-2));
        assert_eq!(c.flow.values(), &[int(2)]);
        let lifted = reverse_expand(&c.record, &c.labels).unwrap();
        assert_eq!(lifted, mu);
    }

    #[test]
    fn non_tight_arc_is_rejected() {
        let mu = Labeling::ones(3);
        assert!(contract(&f1(), &Flow::zero(3), &mu, 1).is_err());
    }

    #[test]
    fn gamma_ratio_conventions() {
        let inst = f5();
        let consts = Constants::for_instance(&inst);
        let mut state = ScalingState::new(Flow::zero(5), Labeling::ones(4), int(1));
        assert_eq!(gamma_quantity(&inst, &state, &consts, 1).ratio, None);
        state.delta = ratio(1, 32 * 5 * 4);
        assert_eq!(gamma_quantity(&inst, &state, &consts, 0).ratio, Some(int(1)));
    }

    #[test]
    fn abundant_boundary_is_inclusive() {
        let inst = f1();
        let consts = Constants::for_instance(&inst);
        let mut flow = Flow::zero(3);
        flow[0] = int(17 * 3);
        let state = ScalingState::new(flow, Labeling::ones(3), int(1));
        assert_eq!(abundant_arcs(&inst, &state, &consts), vec![0]);
        let state = ScalingState::new(Flow::zero(3), Labeling::ones(3), int(1));
        assert!(abundant_arcs(&inst, &state, &consts).is_empty());
    }

    #[test]
    fn filtration_with_everything_outside_is_a_tight_flow() {
        let inst = f5();
        let mut state = ScalingState::new(Flow::zero(5), Labeling::ones(4), int(1));
        let v = filtration(&inst, &mut state).unwrap();
        assert!(v.is_empty());
        let mut expected = Flow::zero(5);
        expected[2] = int(1);
        assert_eq!(state.flow, expected);
    }

    #[test]
    fn fixtures_match_the_weak_algorithm() {
        for inst in [f1(), f5(), crate::fixtures::single_arc()] {
            let weak = crate::scaling::continuous_scaling(&inst).unwrap();
            let strong = enhanced_continuous_scaling_with(&inst, &SolveOptions::instrumented(), &mut |_| {}).unwrap();
            assert_eq!(weak.value, strong.value);
            assert!(strong.stats.violations.is_empty(), "{:?}", strong.stats.violations);
        }
    }

    #[test]
    fn single_node_instance() {
        let inst = UncapInstance::new(1, 0, vec![], vec![int(0)], None, None).unwrap();
        let sol = enhanced_continuous_scaling(&inst).unwrap();
        assert_eq!(sol.labels, Labeling::ones(1));
        assert!(sol.flow.is_empty());
    }
}
