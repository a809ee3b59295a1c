//! Cycle canceling, canonical labels and the first Δ-feasible pair.

use crate::error::SolveError;
use crate::gainpath::{best_gains_to, find_generating_cycle, path_gain, GainEdge};
use crate::graph::{Flow, Labeling, UncapInstance};
use crate::maxflow::tight_flow;
use crate::rational::{compare_roots, from_big, Rational};
use crate::views::{check_delta_feasible, relabeled_excess, residual_arcs, Direction, ResidualArc};
use num_traits::{One, Zero};
use std::cmp::Ordering;

const CANCELLATION_LIMIT: usize = 100_000;

fn gain_edges(arcs: &[ResidualArc]) -> Vec<GainEdge> {
    arcs.iter().map(|r| GainEdge { from: r.from, to: r.to, gain: r.gain.clone() }).collect()
}

/// Walk-based search for a residual cycle maximizing the geometric mean gain.
/// Returns residual arc indices of a cycle with gain above one, if any exists.
fn max_mean_gain_cycle(node_count: usize, arcs: &[ResidualArc]) -> Option<Vec<usize>> {
    let n = node_count;
    let mut walk: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n + 1];
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n + 1];
    walk[0] = vec![Some(Rational::one()); n];
    for k in 1..=n {
        for (r, arc) in arcs.iter().enumerate() {
            let Some(prev) = &walk[k - 1][arc.from] else { continue };
            let candidate = prev * &arc.gain;
            let better = match &walk[k][arc.to] {
                None => true,
                Some(current) => candidate > *current,
            };
            if better {
                walk[k][arc.to] = Some(candidate);
                pred[k][arc.to] = Some(r);
            }
        }
    }
    // best = (ratio, exponent, node) maximizing min_k (W_n / W_k)^(1/(n-k))
    let mut best: Option<(Rational, u32, usize)> = None;
    for v in 0..n {
        let Some(top) = &walk[n][v] else { continue };
        let mut worst: Option<(Rational, u32)> = None;
        for k in 0..n {
            let Some(low) = &walk[k][v] else { continue };
            let ratio = top / low;
            let exp = (n - k) as u32;
            let replace = match &worst {
                None => true,
                Some((r, p)) => compare_roots(&ratio, exp, r, *p) == Ordering::Less,
            };
            if replace {
                worst = Some((ratio, exp));
            }
        }
        if let Some((r, p)) = worst {
            let replace = match &best {
                None => true,
                Some((br, bp, _)) => compare_roots(&r, p, br, *bp) == Ordering::Greater,
            };
            if replace {
                best = Some((r, p, v));
            }
        }
    }
    let (ratio, _, v) = best?;
    if ratio <= Rational::one() {
        return None;
    }
    // Reconstruct the length-n walk ending at v and split off its cycles.
    let mut steps = Vec::with_capacity(n);
    let mut node = v;
    for k in (1..=n).rev() {
        let r = pred[k][node].expect("walk predecessor");
        steps.push(r);
        node = arcs[r].from;
    }
    steps.reverse();
    let edges = gain_edges(arcs);
    let mut chosen: Option<(Vec<usize>, Rational, u32)> = None;
    let mut stack: Vec<(usize, usize)> = Vec::new(); // (node, arc that left it)
    for &r in &steps {
        stack.push((arcs[r].from, r));
        let to = arcs[r].to;
        if let Some(pos) = stack.iter().position(|&(w, _)| w == to) {
            let cycle: Vec<usize> = stack[pos..].iter().map(|&(_, a)| a).collect();
            stack.truncate(pos);
            let gain = path_gain(&edges, &cycle);
            let len = cycle.len() as u32;
            let better = match &chosen {
                None => true,
                Some((_, g, l)) => compare_roots(&gain, len, g, *l) == Ordering::Greater,
            };
            if better {
                chosen = Some((cycle, gain, len));
            }
        }
    }
    match chosen {
        Some((cycle, gain, _)) if gain > Rational::one() => Some(cycle),
        _ => find_generating_cycle(n, &edges),
    }
}

/// Repeatedly pushes flow around a maximum mean gain residual cycle until a
/// reverse arc saturates, until no residual cycle has gain above one.
pub fn cancel_flow_generating_cycles(inst: &UncapInstance, initial: &Flow) -> Result<(Flow, usize), SolveError> {
    let mut flow = initial.clone();
    for count in 0..CANCELLATION_LIMIT {
        let arcs = residual_arcs(inst, &flow);
        let Some(cycle) = max_mean_gain_cycle(inst.node_count(), &arcs) else {
            return Ok((flow, count));
        };
        // amount entering each cycle arc per unit entering the first one
        let mut rates = Vec::with_capacity(cycle.len());
        let mut rate = Rational::one();
        for &r in &cycle {
            rates.push(rate.clone());
            rate *= &arcs[r].gain;
        }
        let mut push: Option<Rational> = None;
        for (&r, rate) in cycle.iter().zip(&rates) {
            if arcs[r].direction == Direction::Reverse {
                let arc = arcs[r].arc;
                let cap = &inst.arc(arc).gain * &flow[arc] / rate;
                push = Some(match push {
                    None => cap,
                    Some(p) => p.min(cap),
                });
            }
        }
        let Some(amount) = push else {
            return Err(SolveError::Unbounded);
        };
        for (&r, rate) in cycle.iter().zip(&rates) {
            let arc = arcs[r].arc;
            match arcs[r].direction {
                Direction::Forward => flow[arc] += &amount * rate,
                Direction::Reverse => {
                    let drop = &amount * rate / &inst.arc(arc).gain;
                    flow[arc] -= drop;
                }
            }
        }
    }
    Err(SolveError::Internal("cycle canceling did not terminate".into()))
}

/// `mu_i = 1 / (highest residual path gain from i to the sink)`.
pub fn highest_gain_labels(inst: &UncapInstance, flow: &Flow) -> Result<Labeling, SolveError> {
    let arcs = residual_arcs(inst, flow);
    let edges = gain_edges(&arcs);
    let best = best_gains_to(inst.node_count(), &edges, inst.sink())
        .map_err(|_| SolveError::Internal("residual graph has a generating cycle".into()))?;
    let mut values = Vec::with_capacity(inst.node_count());
    for (i, b) in best.into_iter().enumerate() {
        let b = b.ok_or_else(|| SolveError::Internal(format!("node {i} cannot reach the sink")))?;
        values.push(b.recip());
    }
    let labels = Labeling::from_values(values);
    for arc in &arcs {
        let g = arc.relabeled_gain(&labels);
        if g > Rational::one() {
            return Err(SolveError::Internal(format!("canonical labels leave residual arc {} above one", arc.arc)));
        }
    }
    for a in flow.support() {
        if !crate::views::is_tight(inst, &labels, a) {
            return Err(SolveError::Internal(format!("flow-carrying arc {a} is not tight")));
        }
    }
    Ok(labels)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Initialization {
    pub flow: Flow,
    pub labels: Labeling,
    pub delta: Rational,
    pub cancellations: usize,
}

/// Seeds the scaling loop with a Δ-feasible pair built from the instance's
/// initial flow.
pub fn initialize(inst: &UncapInstance) -> Result<Initialization, SolveError> {
    let (canceled, cancellations) = cancel_flow_generating_cycles(inst, inst.initial_flow())?;
    let labels = highest_gain_labels(inst, &canceled)?;
    let all = vec![true; inst.node_count()];
    let flow = tight_flow(inst, &all, &labels)?;
    let delta = inst
        .non_sink_nodes()
        .map(|i| relabeled_excess(inst, &flow, &labels, i))
        .max()
        .unwrap_or_else(Rational::zero)
        .max(Rational::zero());
    if let Err(v) = check_delta_feasible(inst, &flow, &labels, &delta) {
        return Err(SolveError::Internal(format!("initial pair is not feasible: {}", v[0])));
    }
    let b = from_big(inst.bound().clone());
    if delta > Rational::from_integer(inst.node_count().into()) * &b * &b {
        return Err(SolveError::Internal("initial scale exceeds n B^2".into()));
    }
    Ok(Initialization { flow, labels, delta, cancellations })
}
