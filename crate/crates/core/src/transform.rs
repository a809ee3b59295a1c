//! Capacitated instances: reduction to the uncapacitated form, boundedness,
//! and recovery of an optimal flow with possibly infinite labels.

use crate::certify::{check_optimality_std, describe};
use crate::decompose::generating_supply;
use crate::enhanced::enhanced_continuous_scaling;
use crate::error::SolveError;
use crate::gainpath::{bfs_path, find_generating_cycle, generating_closure, reaching, GainEdge};
use crate::graph::{
    encoding_bound, Arc, ArcId, ArcKind, Flow, InstanceError, Labeling, NodeId, StdInstance, UncapInstance,
};
use crate::rational::{from_big, Extended, Rational};
use crate::scaling::Solution;
use crate::views::{excess, residual_arcs};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A generating cycle and a path from one of its nodes to the sink, as arc ids
/// of the instance the check ran on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnboundedCertificate {
    pub cycle: Vec<ArcId>,
    pub path: Vec<ArcId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    Unbounded(UnboundedCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("recovered solution fails the optimality test: {0}")]
    Recovery(String),
}

fn edges_of(arcs: &[Arc]) -> Vec<GainEdge> {
    arcs.iter().map(|a| GainEdge { from: a.tail, to: a.head, gain: a.gain.clone() }).collect()
}

/// Looks for a generating cycle among the nodes that can reach the sink.
pub fn check_boundedness(node_count: usize, sink: NodeId, arcs: &[Arc]) -> Boundedness {
    let edges = edges_of(arcs);
    let mut target = vec![false; node_count];
    target[sink] = true;
    let live = reaching(node_count, &edges, &target);
    let ids: Vec<usize> = (0..edges.len()).filter(|&e| live[edges[e].from] && live[edges[e].to]).collect();
    let sub: Vec<GainEdge> = ids.iter().map(|&e| edges[e].clone()).collect();
    let Some(cycle) = find_generating_cycle(node_count, &sub) else { return Boundedness::Bounded };
    let cycle: Vec<ArcId> = cycle.into_iter().map(|k| ids[k]).collect();
    let mut on_cycle = vec![false; node_count];
    for &a in &cycle {
        on_cycle[arcs[a].tail] = true;
    }
    let path = bfs_path(node_count, &edges, &on_cycle, &target).expect("cycle nodes reach the sink");
    Boundedness::Unbounded(UnboundedCertificate { cycle, path })
}

/// Where a standard arc went in the uncapacitated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcImage {
    /// Uncapacitated arc copied as is.
    Copied(ArcId),
    /// Finite capacity replaced by a secondary node and the arcs from the tail
    /// and the head into it.
    Split { node: NodeId, tail_arc: ArcId, head_arc: ArcId },
    /// Tail is fed by a generating cycle: the arc runs saturated.
    Saturated,
    /// Head is fed by a generating cycle: the arc stays empty.
    Unused,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMap {
    pub original: StdInstance,
    /// Uncapacitated node of each standard node; `None` for nodes fed by
    /// generating cycles that cannot reach the sink.
    pub primary: Vec<Option<NodeId>>,
    pub arcs: Vec<ArcImage>,
    pub auxiliary: Vec<ArcId>,
    pub bound: BigInt,
    /// Generating cycles (standard arc ids) feeding the dropped nodes.
    pub cycles: Vec<Vec<ArcId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uncapacitated {
    pub instance: UncapInstance,
    pub map: TransformMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOutcome {
    Transformed(Box<Uncapacitated>),
    Unbounded(UnboundedCertificate),
}

fn std_edges(std: &StdInstance) -> Vec<GainEdge> {
    std.arcs().iter().map(|a| GainEdge { from: a.tail, to: a.head, gain: a.gain.clone() }).collect()
}

/// Replaces finite capacities by secondary nodes, checks boundedness, drops
/// the region fed by generating cycles that cannot reach the sink, and adds
/// auxiliary arcs. The initial flow routes each capacity through the head.
pub fn uncapacitate(std: &StdInstance) -> Result<TransformOutcome, TransformError> {
    let n = std.node_count();
    let t = std.sink();
    // only uncapacitated arcs can carry a path or cycle after splitting
    let infinite: Vec<ArcId> = (0..std.arcs().len()).filter(|&a| std.arcs()[a].capacity.is_infinite()).collect();
    let inf_arcs: Vec<Arc> = infinite
        .iter()
        .map(|&a| {
            let arc = &std.arcs()[a];
            Arc::regular(arc.tail, arc.head, arc.gain.clone())
        })
        .collect();
    if let Boundedness::Unbounded(cert) = check_boundedness(n, t, &inf_arcs) {
        return Ok(TransformOutcome::Unbounded(UnboundedCertificate {
            cycle: cert.cycle.into_iter().map(|k| infinite[k]).collect(),
            path: cert.path.into_iter().map(|k| infinite[k]).collect(),
        }));
    }
    let (fed, cycles) = generating_closure(n, &edges_of(&inf_arcs));
    let cycles: Vec<Vec<ArcId>> = cycles.into_iter().map(|c| c.into_iter().map(|k| infinite[k]).collect()).collect();

    let mut primary = vec![None; n];
    let mut count = 0;
    for v in 0..n {
        if !fed[v] {
            primary[v] = Some(count);
            count += 1;
        }
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut images = Vec::with_capacity(std.arcs().len());
    let mut demands = vec![Rational::zero(); count];
    let mut initial: Vec<Rational> = Vec::new();
    for arc in std.arcs() {
        let (Some(i), Some(j)) = (primary[arc.tail], primary[arc.head]) else {
            let image = if primary[arc.head].is_none() { ArcImage::Unused } else { ArcImage::Saturated };
            if image == ArcImage::Saturated {
                let u = arc.capacity.finite().expect("arcs leaving the fed region are capacitated");
                demands[primary[arc.head].expect("kept head")] -= &arc.gain * u;
            }
            images.push(image);
            continue;
        };
        match &arc.capacity {
            Extended::Infinite => {
                images.push(ArcImage::Copied(arcs.len()));
                arcs.push(Arc::regular(i, j, arc.gain.clone()));
                initial.push(Rational::zero());
            }
            Extended::Finite(u) => {
                let k = demands.len();
                let pushed = &arc.gain * u;
                demands.push(pushed.clone());
                demands[j] -= &pushed;
                let tail_arc = arcs.len();
                arcs.push(Arc::regular(i, k, arc.gain.clone()));
                initial.push(Rational::zero());
                arcs.push(Arc::regular(j, k, Rational::from_integer(1.into())));
                initial.push(pushed);
                images.push(ArcImage::Split { node: k, tail_arc, head_arc: tail_arc + 1 });
            }
        }
    }
    let total = demands.len();
    let sink = primary[t].expect("the sink is never fed by a cycle");
    let mut weights: Vec<&Rational> = std.arcs().iter().map(|a| &a.gain).collect();
    weights.extend(std.arcs().iter().filter_map(|a| a.capacity.finite()).filter(|u| !u.is_zero()));
    let values: Vec<&Rational> =
        demands.iter().enumerate().filter(|&(v, _)| v != sink).map(|(_, b)| b).chain(initial.iter()).collect();
    let bound = encoding_bound(&weights, &values, 2);
    let aux_gain = from_big(bound.clone()).recip();
    let mut has_sink_arc = vec![false; total];
    for arc in &arcs {
        if arc.head == sink {
            has_sink_arc[arc.tail] = true;
        }
    }
    let mut auxiliary = Vec::new();
    for v in (0..total).filter(|&v| v != sink && !has_sink_arc[v]) {
        auxiliary.push(arcs.len());
        arcs.push(Arc { tail: v, head: sink, gain: aux_gain.clone(), kind: ArcKind::Auxiliary });
        initial.push(Rational::zero());
    }
    let instance =
        UncapInstance::new(total, sink, arcs, demands, Some(bound.clone()), Some(Flow::from_values(initial)))?;
    let map = TransformMap { original: std.clone(), primary, arcs: images, auxiliary, bound, cycles };
    Ok(TransformOutcome::Transformed(Box::new(Uncapacitated { instance, map })))
}

/// Maps an optimal pair of the uncapacitated instance back to the standard
/// form and verifies the result with the capacitated optimality test.
pub fn recover_standard_solution(
    map: &TransformMap,
    inst: &UncapInstance,
    flow: &Flow,
    labels: &Labeling,
) -> Result<(Flow, Vec<Extended>), TransformError> {
    let std = &map.original;
    let n = std.node_count();
    let mut out = Flow::zero(std.arcs().len());
    let fed: Vec<bool> = map.primary.iter().map(|p| p.is_none()).collect();
    // the fed region must push out every saturated capacity
    let mut need = vec![Rational::zero(); n];
    for (a, image) in map.arcs.iter().enumerate() {
        let arc = &std.arcs()[a];
        match image {
            ArcImage::Copied(c) => out[a] = flow[*c].clone(),
            ArcImage::Split { head_arc, .. } => {
                // read the flow off the head side; whatever the secondary node
                // passes on through its auxiliary arc stays behind at the ends
                let u = arc.capacity.finite().expect("split arcs are capacitated");
                let x = u - &flow[*head_arc] / &arc.gain;
                out[a] = if x.is_negative() { Rational::zero() } else { x };
            }
            ArcImage::Saturated => {
                let u = arc.capacity.finite().expect("saturated arcs are capacitated").clone();
                need[arc.tail] += &u;
                out[a] = u;
            }
            ArcImage::Unused => {}
        }
    }
    if !map.cycles.is_empty() {
        let edges = std_edges(std);
        let usable = |e: usize| {
            let arc = &std.arcs()[e];
            arc.capacity.is_infinite() && fed[arc.tail] && fed[arc.head]
        };
        let targets: Vec<(NodeId, Rational)> = (0..n).filter(|&v| fed[v]).map(|v| (v, need[v].clone())).collect();
        let supply = generating_supply(n, &edges, &usable, &map.cycles, &targets)
            .ok_or_else(|| TransformError::Recovery("a fed node is not reachable from its cycles".into()))?;
        for (a, v) in supply.into_iter().enumerate() {
            if !v.is_zero() {
                out[a] += v;
            }
        }
    }
    // nodes whose label sits at the auxiliary level, and everything
    // residual-reachable from them, get an infinite label
    let level = from_big(map.bound.clone());
    let mut reached: Vec<bool> = inst.nodes().map(|v| labels[v] == level).collect();
    // auxiliary arcs have no counterpart in the standard instance
    let residual: Vec<_> =
        residual_arcs(inst, flow).into_iter().filter(|r| inst.arc(r.arc).kind == ArcKind::Regular).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &residual {
            if reached[r.from] && !reached[r.to] {
                reached[r.to] = true;
                changed = true;
            }
        }
    }
    let std_labels: Vec<Extended> = (0..n)
        .map(|v| match map.primary[v] {
            Some(p) if !reached[p] => Extended::Finite(labels[p].clone()),
            _ => Extended::Infinite,
        })
        .collect();
    check_optimality_std(std, &out, &std_labels).map_err(|v| TransformError::Recovery(describe(&v)))?;
    Ok((out, std_labels))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdSolution {
    pub flow: Flow,
    pub labels: Vec<Extended>,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StdOutcome {
    Optimal(StdSolution),
    Unbounded(UnboundedCertificate),
}

/// Transform, solve with the enhanced algorithm, and recover.
pub fn solve_standard(std: &StdInstance) -> Result<StdOutcome, TransformError> {
    solve_standard_with(std, enhanced_continuous_scaling)
}

/// Like [`solve_standard`] with a caller-chosen solver for the uncapacitated image.
pub fn solve_standard_with(
    std: &StdInstance,
    solver: impl FnOnce(&UncapInstance) -> Result<Solution, SolveError>,
) -> Result<StdOutcome, TransformError> {
    let transformed = match uncapacitate(std)? {
        TransformOutcome::Unbounded(cert) => return Ok(StdOutcome::Unbounded(cert)),
        TransformOutcome::Transformed(t) => t,
    };
    let inst = &transformed.instance;
    let solution = solver(inst)?;
    let (flow, labels) = recover_standard_solution(&transformed.map, inst, &solution.flow, &solution.labels)?;
    let value = std.objective(&flow);
    // flow arriving over auxiliary arcs is dropped by the recovery
    let mut expected = excess(inst, &solution.flow, inst.sink());
    for &a in &transformed.map.auxiliary {
        expected -= &inst.arc(a).gain * &solution.flow[a];
    }
    if value != expected {
        return Err(TransformError::Recovery(format!(
            "objective {value} differs from the sink excess {expected} without auxiliary arrivals"
        )));
    }
    if value.is_negative() {
        return Err(TransformError::Recovery("optimal objective is negative".into()));
    }
    Ok(StdOutcome::Optimal(StdSolution { flow, labels, value }))
}
