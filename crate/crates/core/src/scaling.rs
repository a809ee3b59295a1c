//! The weakly polynomial continuous scaling algorithm and the primitives it
//! shares with the enhanced variant.

use crate::certify::check_optimality_uncap;
use crate::constants::Constants;
use crate::error::SolveError;
use crate::graph::{Flow, Labeling, NodeId, UncapInstance};
use crate::init::initialize;
use crate::maxflow::{optimality_residual_check, tight_flow, ResidualCheck};
use crate::rational::{cmp_product, floor, Rational};
use crate::trace::{IterationClass, IterationKind, RunStats, Termination, TraceRecord};
use crate::views::{
    check_delta_feasible, excess, nontight_and_reserve, relabeled_excess, relabeled_gain, reverse_is_fat, surplus,
    Direction, ResidualArc,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Evaluate the invariant checks after every iteration.
    pub instrument: bool,
    pub max_iterations: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { instrument: false, max_iterations: 10_000_000 }
    }
}

impl SolveOptions {
    pub fn instrumented() -> Self {
        SolveOptions { instrument: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub flow: Flow,
    pub labels: Labeling,
    /// Excess at the sink.
    pub value: Rational,
    pub stats: RunStats,
}

/// Mutable state of a scaling run on one (possibly contracted) instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingState {
    pub flow: Flow,
    pub labels: Labeling,
    pub delta: Rational,
    pub t0: Vec<bool>,
    pub t: Vec<bool>,
}

impl ScalingState {
    pub fn new(flow: Flow, labels: Labeling, delta: Rational) -> Self {
        let n = labels.len();
        ScalingState { flow, labels, delta, t0: vec![false; n], t: vec![false; n] }
    }

    pub fn relabeled_excess(&self, inst: &UncapInstance, node: NodeId) -> Rational {
        relabeled_excess(inst, &self.flow, &self.labels, node)
    }

    /// Whether the relabeled excess of `node` is below `factor * Δ`.
    pub fn excess_below(&self, inst: &UncapInstance, node: NodeId, factor: &Rational) -> bool {
        let level = factor * &self.delta;
        cmp_product(&excess(inst, &self.flow, node), &level, &self.labels[node]).is_lt()
    }

    /// `beta_i = e_i / (Δ mu_i)`.
    pub fn beta(&self, inst: &UncapInstance, node: NodeId) -> Rational {
        self.relabeled_excess(inst, node) / &self.delta
    }
}

/// `{t}` plus every node whose relabeled excess is below `(d_i + 1) Δ`.
pub fn compute_n(inst: &UncapInstance, state: &ScalingState) -> Vec<bool> {
    compute_n_within(inst, state, &vec![true; inst.node_count()])
}

/// The part of N inside `scope`; the path search only looks inside T.
pub(crate) fn compute_n_within(inst: &UncapInstance, state: &ScalingState, scope: &[bool]) -> Vec<bool> {
    let mut set = vec![false; inst.node_count()];
    set[inst.sink()] = true;
    for i in inst.non_sink_nodes().filter(|&i| scope[i]) {
        if state.excess_below(inst, i, &Constants::lo(inst.degree(i))) {
            set[i] = true;
        }
    }
    set
}

fn tight_fat_arcs(inst: &UncapInstance, state: &ScalingState) -> Vec<ResidualArc> {
    let mut out = Vec::new();
    for a in 0..inst.arc_count() {
        let fwd = ResidualArc::forward(inst, a);
        if fwd.is_tight(&state.labels) {
            out.push(fwd);
            if reverse_is_fat(inst, &state.flow, &state.labels, a, &state.delta) {
                out.push(ResidualArc::reverse(inst, a));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightPath {
    pub from: NodeId,
    pub to: NodeId,
    pub steps: Vec<ResidualArc>,
}

/// Tight fat path inside T from a node of T0 to a node of N. Sources are tried
/// in index order and each search is breadth first.
pub fn find_tight_path(inst: &UncapInstance, state: &ScalingState, n_set: &[bool]) -> Option<TightPath> {
    if !(0..inst.node_count()).any(|i| n_set[i] && state.t[i]) {
        return None;
    }
    let arcs = tight_fat_arcs(inst, state);
    let mut adj = vec![Vec::new(); inst.node_count()];
    for (k, r) in arcs.iter().enumerate() {
        if state.t[r.from] && state.t[r.to] {
            adj[r.from].push(k);
        }
    }
    for p in (0..inst.node_count()).filter(|&p| state.t0[p]) {
        let mut pred: Vec<Option<usize>> = vec![None; inst.node_count()];
        let mut seen = vec![false; inst.node_count()];
        seen[p] = true;
        let mut queue = VecDeque::from([p]);
        while let Some(u) = queue.pop_front() {
            if n_set[u] {
                let mut steps = Vec::new();
                let mut v = u;
                while let Some(k) = pred[v] {
                    steps.push(arcs[k].clone());
                    v = arcs[k].from;
                }
                steps.reverse();
                return Some(TightPath { from: p, to: u, steps });
            }
            for &k in &adj[u] {
                let v = arcs[k].to;
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(k);
                    queue.push_back(v);
                }
            }
        }
    }
    None
}

/// Sends Δ relabeled units along the path, then drops the path's start from T0
/// if it fell below its keep level, and resets T to T0.
pub fn augment_on_path(inst: &UncapInstance, state: &mut ScalingState, path: &TightPath) {
    for step in &path.steps {
        let a = step.arc;
        let tail = inst.arc(a).tail;
        let amount = &state.delta * &state.labels[tail];
        match step.direction {
            Direction::Forward => state.flow[a] += amount,
            Direction::Reverse => state.flow[a] -= amount,
        }
    }
    let p = path.from;
    if state.excess_below(inst, p, &Constants::mid(inst.degree(p))) {
        state.t0[p] = false;
    }
    state.t = state.t0.clone();
}

/// First tight fat arc leaving T, in arc order with forward copies first.
pub fn find_extension(inst: &UncapInstance, state: &ScalingState) -> Option<(NodeId, ResidualArc)> {
    tight_fat_arcs(inst, state).into_iter().find(|r| state.t[r.from] && !state.t[r.to]).map(|r| (r.to, r))
}

/// Largest factor by which node `i` outside T tolerates the elementary step;
/// `None` stands for infinity.
pub fn delta_i(
    inst: &UncapInstance,
    state: &ScalingState,
    nontight: &[bool],
    i: NodeId,
) -> Result<Option<Rational>, SolveError> {
    let (mut r1, mut r2, mut r3, mut r4) = (Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero());
    for &a in inst.in_arcs(i) {
        let arc = inst.arc(a);
        let inflow = &arc.gain * &state.flow[a];
        if nontight[a] && !state.t[arc.tail] {
            r1 += inflow;
        } else {
            r2 += inflow;
        }
    }
    for &a in inst.out_arcs(i) {
        let head = inst.arc(a).head;
        if state.t[head] || nontight[a] {
            r3 += &state.flow[a];
        } else {
            r4 += &state.flow[a];
        }
    }
    let den = r2 - r4 - inst.demand(i);
    if den.is_negative() {
        return Err(SolveError::Internal(format!("elementary step denominator negative at node {i}")));
    }
    if den.is_zero() {
        return Ok(None);
    }
    let num = Constants::hi(inst.degree(i)) * &state.delta * &state.labels[i] + r3 - r1;
    let value = num / den;
    if value <= Rational::one() {
        return Err(SolveError::Internal(format!("elementary step factor at node {i} is not above one")));
    }
    Ok(Some(value))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepInfo {
    pub alpha: Rational,
    /// Whether α came from an arc leaving T rather than a node bound.
    pub from_arc: bool,
    pub entered: Vec<NodeId>,
    pub removed: Vec<NodeId>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Stepped(StepInfo),
    OptimalReached,
}

fn min_opt(current: Option<Rational>, candidate: Option<Rational>) -> Option<Rational> {
    match (current, candidate) {
        (None, c) => c,
        (c, None) => c,
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}

/// Scales labels in T up and Δ down by the largest admissible factor.
pub fn elementary_step(inst: &UncapInstance, state: &mut ScalingState, check: bool) -> Result<StepOutcome, SolveError> {
    let t = inst.sink();
    let (nontight, _) = nontight_and_reserve(inst, &state.flow, &state.labels);
    let mut alpha_nodes: Option<Rational> = None;
    for i in inst.non_sink_nodes().filter(|&i| !state.t[i]) {
        alpha_nodes = min_opt(alpha_nodes, delta_i(inst, state, &nontight, i)?);
    }
    let mut alpha_arcs: Option<Rational> = None;
    for (a, arc) in inst.arcs().iter().enumerate() {
        if state.t[arc.tail] && !state.t[arc.head] {
            let inv = relabeled_gain(inst, &state.labels, a).recip();
            alpha_arcs = min_opt(alpha_arcs, Some(inv));
        }
    }
    let Some(alpha) = min_opt(alpha_nodes.clone(), alpha_arcs.clone()) else {
        for &a in inst.out_arcs(t) {
            if nontight[a] {
                state.flow[a] = Rational::zero();
            }
        }
        return Ok(StepOutcome::OptimalReached);
    };
    let from_arc = alpha_arcs.as_ref() == Some(&alpha) && alpha_nodes.as_ref() != Some(&alpha);
    let t_before = state.t.clone();
    let excess_before: Vec<Rational> = if check { crate::views::excesses(inst, &state.flow) } else { Vec::new() };

    state.delta = &state.delta / &alpha;
    for i in inst.nodes().filter(|&i| t_before[i]) {
        state.labels[i] = &state.labels[i] * &alpha;
    }
    for (a, arc) in inst.arcs().iter().enumerate() {
        let inside_rest = !t_before[arc.tail] && !t_before[arc.head] && nontight[a];
        let into_t = !t_before[arc.tail] && t_before[arc.head];
        if inside_rest || into_t {
            state.flow[a] = &state.flow[a] / &alpha;
        }
    }

    let mut violations = Vec::new();
    let mut entered = Vec::new();
    for i in inst.non_sink_nodes().filter(|&i| !t_before[i]) {
        let level = Constants::hi(inst.degree(i)) * &state.delta;
        let e = state.relabeled_excess(inst, i);
        if check && e > level {
            violations.push(format!("node {i} exceeds the entry level after the step"));
        }
        if e == level {
            entered.push(i);
            state.t0[i] = true;
            state.t[i] = true;
        }
    }
    let removed: Vec<NodeId> = inst
        .nodes()
        .filter(|&i| state.t0[i])
        .filter(|&i| state.excess_below(inst, i, &Constants::mid(inst.degree(i))))
        .collect();
    if !removed.is_empty() {
        for &i in &removed {
            state.t0[i] = false;
        }
        state.t = state.t0.clone();
    }

    if check {
        for i in inst.nodes().filter(|&i| t_before[i] && i != t) {
            if excess(inst, &state.flow, i) > excess_before[i] {
                violations.push(format!("excess of node {i} in T grew during the step"));
            }
        }
        if from_arc {
            let tight_leaving = inst.arcs().iter().enumerate().any(|(a, arc)| {
                t_before[arc.tail] && !t_before[arc.head] && crate::views::is_tight(inst, &state.labels, a)
            });
            if !tight_leaving {
                violations.push("step limited by an arc but no tight arc leaves T".into());
            }
        }
        if !from_arc && entered.is_empty() {
            violations.push("step limited by a node but no node entered T0".into());
        }
    }
    Ok(StepOutcome::Stepped(StepInfo { alpha, from_arc, entered, removed, violations }))
}

/// `sum over T0 of floor(beta_i - (d_i + 1))`; zero when Δ is zero.
pub fn potential_psi(inst: &UncapInstance, state: &ScalingState) -> i64 {
    if state.delta.is_zero() {
        return 0;
    }
    inst.nodes().filter(|&i| state.t0[i]).map(|i| psi_term(inst, state, i)).sum()
}

pub(crate) fn psi_term(inst: &UncapInstance, state: &ScalingState, i: NodeId) -> i64 {
    let value = state.beta(inst, i) - Constants::lo(inst.degree(i));
    floor(&value).to_i64().unwrap_or(i64::MAX)
}

pub(crate) fn classify(before: &[bool], after: &[bool]) -> IterationClass {
    let lost = before.iter().zip(after).any(|(&b, &a)| b && !a);
    let gained = before.iter().zip(after).any(|(&b, &a)| !b && a);
    if lost {
        IterationClass::Shrinking
    } else if gained {
        IterationClass::Expanding
    } else {
        IterationClass::Neutral
    }
}

/// Snapshot of the quantities the invariant checks compare across an iteration.
pub(crate) struct Snapshot {
    pub t0: Vec<bool>,
    pub psi: i64,
    pub delta: Rational,
    pub labels: Labeling,
    pub betas: Vec<Rational>,
    /// `|b^mu_i| / Δ` per node.
    pub demand_ratios: Vec<Option<Rational>>,
}

impl Snapshot {
    pub fn take(inst: &UncapInstance, state: &ScalingState) -> Self {
        let positive = state.delta.is_positive();
        Snapshot {
            t0: state.t0.clone(),
            psi: potential_psi(inst, state),
            delta: state.delta.clone(),
            labels: state.labels.clone(),
            betas: if positive { inst.nodes().map(|i| state.beta(inst, i)).collect() } else { Vec::new() },
            demand_ratios: inst
                .nodes()
                .map(|i| positive.then(|| (inst.demand(i) / &state.labels[i]).abs() / &state.delta))
                .collect(),
        }
    }
}

/// Checks shared by both algorithms after an iteration that did not contract.
pub(crate) fn common_checks(
    inst: &UncapInstance,
    state: &ScalingState,
    before: &Snapshot,
    class: IterationClass,
    stepped: Option<&StepInfo>,
    violations: &mut Vec<String>,
) {
    if let Err(v) = check_delta_feasible(inst, &state.flow, &state.labels, &state.delta) {
        for item in v {
            violations.push(format!("pair is not Δ-feasible: {item}"));
        }
    }
    for i in inst.nodes().filter(|&i| state.t0[i]) {
        if state.excess_below(inst, i, &Constants::mid(inst.degree(i))) {
            violations.push(format!("node {i} of T0 is below its keep level"));
        }
        if !state.t[i] {
            violations.push(format!("node {i} is in T0 but not in T"));
        }
    }
    if state.delta > before.delta {
        violations.push("Δ increased".into());
    }
    for i in inst.nodes() {
        if state.labels[i] < before.labels[i] {
            violations.push(format!("label of node {i} decreased"));
        }
    }
    let psi = potential_psi(inst, state);
    let mut entering = 0i64;
    for i in inst.nodes().filter(|&i| state.t0[i] && !before.t0[i]) {
        let term = psi_term(inst, state, i);
        let expected = 3 * inst.degree(i) as i64 + 7;
        if term != expected {
            violations.push(format!("node {i} entered T0 adding {term} to the potential instead of {expected}"));
        }
        entering += term;
    }
    if class == IterationClass::Shrinking && psi - entering > before.psi - 1 {
        violations.push(format!("potential went from {} to {psi} in a shrinking iteration", before.psi));
    }
    if stepped.is_some() && psi - entering > before.psi {
        violations.push(format!("potential grew from {} to {psi} in an elementary step", before.psi));
    }
    if let Some(info) = stepped {
        let alpha_sq = &info.alpha * &info.alpha;
        for i in inst.non_sink_nodes() {
            let d = Rational::from_integer(inst.degree(i).into());
            let allowed = &alpha_sq * before.betas[i].clone().max(d);
            if state.beta(inst, i) > allowed {
                violations.push(format!("beta of node {i} grew beyond alpha^2 max(beta, d)"));
            }
        }
    }
    if state.delta.is_positive() {
        for i in inst.non_sink_nodes() {
            let now = (inst.demand(i) / &state.labels[i]).abs() / &state.delta;
            if let Some(prev) = &before.demand_ratios[i] {
                if now < *prev {
                    violations.push(format!("|b^mu|/Δ of node {i} decreased"));
                }
            }
        }
    }
}

/// Runs the weakly polynomial algorithm without instrumentation.
pub fn continuous_scaling(inst: &UncapInstance) -> Result<Solution, SolveError> {
    continuous_scaling_with(inst, &SolveOptions::default(), &mut |_| {})
}

pub fn continuous_scaling_with(
    inst: &UncapInstance,
    options: &SolveOptions,
    hook: &mut dyn FnMut(&TraceRecord),
) -> Result<Solution, SolveError> {
    let consts = Constants::for_instance(inst);
    let init = initialize(inst)?;
    let mut state = ScalingState::new(init.flow, init.labels, init.delta.clone());
    let mut stats = RunStats::new(init.delta, init.cancellations);
    let threshold = consts.termination_threshold();
    let mut previous_neutral = false;
    let mut optimal = false;
    let mut early = false;
    while state.delta >= threshold {
        if stats.iterations >= options.max_iterations {
            return Err(SolveError::IterationLimit(stats.iterations));
        }
        let before = options.instrument.then(|| Snapshot::take(inst, &state));
        let t_before = state.t.clone();
        let n_set = compute_n_within(inst, &state, &state.t);
        let mut alpha = None;
        let mut stepped = None;
        let kind = if let Some(path) = find_tight_path(inst, &state, &n_set) {
            augment_on_path(inst, &mut state, &path);
            IterationKind::Augment
        } else if let Some((node, _)) = find_extension(inst, &state) {
            state.t[node] = true;
            IterationKind::Extend
        } else {
            match elementary_step(inst, &mut state, options.instrument)? {
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
        };
        let class = classify(&t_before, &state.t);
        let mut violations = stepped.as_ref().map(|s| s.violations.clone()).unwrap_or_default();
        if let Some(before) = &before {
            if !optimal {
                common_checks(inst, &state, before, class, stepped.as_ref(), &mut violations);
                if previous_neutral && class == IterationClass::Neutral {
                    violations.push("two neutral iterations in a row".into());
                }
            }
        }
        previous_neutral = class == IterationClass::Neutral;
        let record = TraceRecord {
            iteration: stats.iterations + 1,
            kind,
            class,
            delta: state.delta.clone(),
            psi: potential_psi(inst, &state),
            kappa: 0,
            d_size: 0,
            node_count: inst.node_count(),
            alpha,
            filtration: false,
            contractions: 0,
            violations,
        };
        stats.absorb(&record);
        hook(&record);
        if optimal {
            break;
        }
        if kind == IterationKind::Step {
            if let Some(flow) = clearing_tight_flow(inst, &state.labels)? {
                state.flow = flow;
                early = true;
                break;
            }
        }
    }
    let (flow, labels) = if optimal {
        stats.termination = Termination::StepOptimal;
        (state.flow, state.labels)
    } else if early {
        stats.termination = Termination::EarlyTight;
        (state.flow, state.labels)
    } else {
        let flow = tight_flow(inst, &vec![true; inst.node_count()], &state.labels)?;
        match optimality_residual_check(inst, &flow, &state.labels)? {
            ResidualCheck::Optimal => {}
            ResidualCheck::Witness(i) => {
                return Err(SolveError::Internal(format!("node {i} keeps excess after the final tight flow")));
            }
        }
        (flow, state.labels)
    };
    finish(inst, flow, labels, stats)
}

/// Tight flow on every node under `labels`, kept only when it leaves no
/// excess anywhere off the sink.
pub(crate) fn clearing_tight_flow(inst: &UncapInstance, labels: &Labeling) -> Result<Option<Flow>, SolveError> {
    let flow = tight_flow(inst, &vec![true; inst.node_count()], labels)?;
    Ok(surplus(inst, &flow).is_zero().then_some(flow))
}

pub(crate) fn finish(
    inst: &UncapInstance,
    flow: Flow,
    labels: Labeling,
    stats: RunStats,
) -> Result<Solution, SolveError> {
    if let Err(v) = check_optimality_uncap(inst, &flow, &labels) {
        return Err(SolveError::Internal(format!("final pair fails the optimality certificate: {}", v[0])));
    }
    let value = excess(inst, &flow, inst.sink());
    Ok(Solution { flow, labels, value, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f1, f5};
    use crate::rational::{int, ratio};

    fn f5_start() -> (UncapInstance, ScalingState) {
        let inst = f5();
        let init = initialize(&inst).unwrap();
        (inst, ScalingState::new(init.flow, init.labels, init.delta))
    }

    #[test]
    fn n_set_after_f5_initialization() {
        let (inst, state) = f5_start();
        // e = (1, 0, 0) against thresholds (3, 4, 3) at Δ = 1
        assert_eq!(compute_n(&inst, &state), vec![true, true, true, true]);
        let mut rich = state.clone();
        rich.delta = ratio(1, 1000);
        assert_eq!(compute_n(&inst, &rich), vec![false, true, true, true]);
    }

    #[test]
    fn delta_i_on_f5() {
        let (inst, state) = f5_start();
        let (nontight, _) = nontight_and_reserve(&inst, &state.flow, &state.labels);
        assert_eq!(delta_i(&inst, &state, &nontight, 0).unwrap(), Some(int(16)));
        assert_eq!(delta_i(&inst, &state, &nontight, 1).unwrap(), None);
        assert_eq!(delta_i(&inst, &state, &nontight, 2).unwrap(), None);
    }

    #[test]
    fn first_f5_step_and_augmentation() {
        let (inst, mut state) = f5_start();
        let outcome = elementary_step(&inst, &mut state, true).unwrap();
        let StepOutcome::Stepped(info) = outcome else { panic!("expected a step") };
        assert_eq!(info.alpha, int(16));
        assert!(info.violations.is_empty());
        assert_eq!(state.delta, ratio(1, 16));
        assert_eq!(state.t0, vec![true, false, false, false]);
        assert_eq!(state.t, vec![true, false, false, false]);
        assert_eq!(potential_psi(&inst, &state), 13);

        let (node, _) = find_extension(&inst, &state).unwrap();
        assert_eq!(node, 1);
        state.t[1] = true;
        let n_set = compute_n(&inst, &state);
        let path = find_tight_path(&inst, &state, &n_set).unwrap();
        assert_eq!((path.from, path.to, path.steps.len(), path.steps[0].arc), (0, 1, 1, 0));
        augment_on_path(&inst, &mut state, &path);
        assert_eq!(state.flow[0], ratio(1, 16));
        let e = crate::views::excesses(&inst, &state.flow);
        assert_eq!(e[..3], [ratio(15, 16), ratio(1, 16), int(0)]);
        assert_eq!(state.t, state.t0);
    }

    #[test]
    fn no_path_when_n_and_t_are_disjoint() {
        let (inst, state) = f5_start();
        let n_set = compute_n(&inst, &state);
        assert!(find_tight_path(&inst, &state, &n_set).is_none());
    }

    #[test]
    fn psi_floor_of_one() {
        let (inst, mut state) = f5_start();
        state.t0[0] = true;
        state.t[0] = true;
        // d_0 = 2, beta_0 = 1 / Δ; Δ = 1/4 gives beta = 4 = d + 2
        state.delta = ratio(1, 4);
        assert_eq!(potential_psi(&inst, &state), 1);
        state.t0[0] = false;
        assert_eq!(potential_psi(&inst, &state), 0);
    }

    #[test]
    fn f1_short_circuits() {
        let sol = continuous_scaling(&f1()).unwrap();
        assert_eq!(sol.flow.values(), &[int(2), int(2), int(0)]);
        assert_eq!(sol.labels.values(), &[int(2), int(2), int(1)]);
        assert_eq!(sol.value, int(1));
        assert_eq!(sol.stats.iterations, 0);
    }

    #[test]
    fn f5_solves_with_clean_trace() {
        let mut records = Vec::new();
        let sol =
            continuous_scaling_with(&f5(), &SolveOptions::instrumented(), &mut |r| records.push(r.clone())).unwrap();
        assert!(sol.stats.violations.is_empty(), "{:?}", sol.stats.violations);
        assert_eq!(records.first().map(|r| r.alpha.clone()), Some(Some(int(16))));
        assert_eq!(sol.value, crate::certify::onaga_solve(&f5(), 1000).unwrap().value);
        assert_eq!(sol.value, ratio(5, 4));
    }

    #[test]
    fn zero_demand_instance_has_zero_value() {
        let sol = continuous_scaling(&crate::fixtures::single_arc()).unwrap();
        assert_eq!(sol.value, int(0));
        assert_eq!(sol.flow, Flow::zero(1));
    }
}
