//! Decomposition of generalized flows into elementary flows, and the
//! cycle-plus-path constructions built from the same pieces.

use crate::gainpath::{find_absorbing_cycle, find_generating_cycle, find_unit_cycle, path_gain, GainEdge};
use crate::graph::NodeId;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// Path from a deficit node to an excess node.
    Path,
    /// Generating cycle plus a path to an excess node.
    Generating,
    /// Path from a deficit node into an absorbing cycle.
    Absorbing,
    /// Cycle of gain exactly one.
    UnitCycle,
    /// Generating cycle, connecting path and absorbing cycle.
    Bicycle,
}

/// One elementary flow: edge amounts plus the nodes where it is unbalanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowTerm {
    pub kind: TermKind,
    /// `(edge, amount)` with positive amounts, each edge at most once.
    pub amounts: Vec<(usize, Rational)>,
    /// Deficit node for path and absorbing terms.
    pub source: Option<NodeId>,
    /// Node receiving the term's surplus, for path and generating terms.
    pub target: Option<NodeId>,
}

impl FlowTerm {
    fn scaled(&self, factor: &Rational) -> FlowTerm {
        FlowTerm { amounts: self.amounts.iter().map(|(e, a)| (*e, a * factor)).collect(), ..self.clone() }
    }

    /// Net gain-weighted inflow the term leaves at `node`.
    pub fn net_at(&self, edges: &[GainEdge], node: NodeId) -> Rational {
        let mut total = Rational::zero();
        for (e, a) in &self.amounts {
            if edges[*e].to == node {
                total += &edges[*e].gain * a;
            }
            if edges[*e].from == node {
                total -= a;
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("expected {expected} edge values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {0} carries a negative amount")]
    NegativeAmount(usize),
    #[error("node {0} has more outflow than gain-weighted inflow")]
    Deficit(NodeId),
    #[error("decomposition invariant failed: {0}")]
    Internal(String),
}

/// Gain-weighted inflow minus outflow at every node.
pub fn net_flow(node_count: usize, edges: &[GainEdge], values: &[Rational]) -> Vec<Rational> {
    let mut net = vec![Rational::zero(); node_count];
    for (edge, v) in edges.iter().zip(values) {
        net[edge.to] += &edge.gain * v;
        net[edge.from] -= v;
    }
    net
}

/// Sum of the terms as an edge vector.
pub fn recompose(edge_count: usize, terms: &[FlowTerm]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); edge_count];
    for term in terms {
        for (e, a) in &term.amounts {
            out[*e] += a;
        }
    }
    out
}

/// Edge coefficients of a cycle flow entering its first edge with one unit.
fn cycle_unit(edges: &[GainEdge], cycle: &[usize], into: &mut Vec<(usize, Rational)>, scale: &Rational) {
    let mut carried = scale.clone();
    for &e in cycle {
        into.push((e, carried.clone()));
        carried *= &edges[e].gain;
    }
}

/// Rotates `cycle` so that it leaves `node` first.
fn rotate_to(edges: &[GainEdge], cycle: &[usize], node: NodeId) -> Vec<usize> {
    let pos = cycle.iter().position(|&e| edges[e].from == node).expect("node lies on the cycle");
    cycle[pos..].iter().chain(&cycle[..pos]).copied().collect()
}

fn merge(amounts: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (e, a) in amounts {
        match out.iter_mut().find(|(f, _)| *f == e) {
            Some((_, b)) => *b += a,
            None => out.push((e, a)),
        }
    }
    out
}

/// Generating cycle leaving `start` with one unit, followed by the path that
/// carries the generated surplus away; returns the term and the amount that
/// reaches the path's end.
pub fn generating_shape(
    edges: &[GainEdge],
    cycle: &[usize],
    start: NodeId,
    path: &[usize],
) -> (Vec<(usize, Rational)>, Rational) {
    let cycle = rotate_to(edges, cycle, start);
    let mut amounts = Vec::new();
    cycle_unit(edges, &cycle, &mut amounts, &Rational::one());
    let surplus = path_gain(edges, &cycle) - Rational::one();
    cycle_unit(edges, path, &mut amounts, &surplus);
    let delivered = surplus * path_gain(edges, path);
    (merge(amounts), delivered)
}

/// BFS over edges accepted by `usable` from the `sources` set; returns the
/// first reached node satisfying `goal` and the path to it.
fn bfs_to(
    node_count: usize,
    edges: &[GainEdge],
    sources: &[NodeId],
    usable: &dyn Fn(usize) -> bool,
    goal: &dyn Fn(NodeId) -> bool,
) -> (Option<(NodeId, Vec<usize>)>, Vec<bool>) {
    let mut adj = vec![Vec::new(); node_count];
    for (e, edge) in edges.iter().enumerate() {
        if usable(e) {
            adj[edge.from].push(e);
        }
    }
    let mut seen = vec![false; node_count];
    let mut pred: Vec<Option<usize>> = vec![None; node_count];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    let mut found = None;
    while let Some(u) = queue.pop_front() {
        if found.is_none() && goal(u) {
            let mut path = Vec::new();
            let mut v = u;
            while let Some(e) = pred[v] {
                path.push(e);
                v = edges[e].from;
            }
            path.reverse();
            found = Some((u, path));
        }
        for &e in &adj[u] {
            let v = edges[e].to;
            if !seen[v] {
                seen[v] = true;
                pred[v] = Some(e);
                queue.push_back(v);
            }
        }
    }
    (found, seen)
}

/// Edges accepted by `usable` with both ends inside `region`, and a finder
/// result mapped back to the original edge ids.
fn cycle_in_region(
    node_count: usize,
    edges: &[GainEdge],
    usable: &dyn Fn(usize) -> bool,
    region: &[bool],
    finder: fn(usize, &[GainEdge]) -> Option<Vec<usize>>,
) -> Option<Vec<usize>> {
    let ids: Vec<usize> =
        (0..edges.len()).filter(|&e| usable(e) && region[edges[e].from] && region[edges[e].to]).collect();
    let sub: Vec<GainEdge> = ids.iter().map(|&e| edges[e].clone()).collect();
    finder(node_count, &sub).map(|c| c.into_iter().map(|k| ids[k]).collect())
}

/// Splits `values` into elementary flows. Deficit nodes are allowed and give
/// rise to path and absorbing terms. The number of terms never exceeds the
/// number of edges carrying a positive amount.
pub fn decompose(node_count: usize, edges: &[GainEdge], values: &[Rational]) -> Result<Vec<FlowTerm>, DecomposeError> {
    if values.len() != edges.len() {
        return Err(DecomposeError::LengthMismatch { expected: edges.len(), found: values.len() });
    }
    if let Some(e) = values.iter().position(|v| v.is_negative()) {
        return Err(DecomposeError::NegativeAmount(e));
    }
    let mut rest = values.to_vec();
    let mut terms = Vec::new();
    let limit = 4 * (edges.len() + node_count) + 4;
    for _ in 0..limit {
        if rest.iter().all(|v| v.is_zero()) {
            let terms = reduce(edges, values, terms)?;
            return Ok(terms);
        }
        let net = net_flow(node_count, edges, &rest);
        let live = |e: usize| rest[e].is_positive();
        let (shape, kind, source, target, caps) = next_shape(node_count, edges, &net, &live)?;
        // largest multiple of the shape that fits under `rest` and the caps
        let mut amount: Option<Rational> = None;
        for (e, c) in &shape {
            let bound = &rest[*e] / c;
            amount = Some(match amount {
                Some(a) if a <= bound => a,
                _ => bound,
            });
        }
        for cap in caps {
            amount = Some(match amount {
                Some(a) if a <= cap => a,
                _ => cap,
            });
        }
        let amount = amount.ok_or_else(|| DecomposeError::Internal("empty elementary flow".into()))?;
        if !amount.is_positive() {
            return Err(DecomposeError::Internal("elementary flow with no room".into()));
        }
        let term = FlowTerm { kind, amounts: shape, source, target }.scaled(&amount);
        for (e, a) in &term.amounts {
            rest[*e] -= a;
        }
        terms.push(term);
    }
    Err(DecomposeError::Internal("decomposition did not finish".into()))
}

type Shape = (Vec<(usize, Rational)>, TermKind, Option<NodeId>, Option<NodeId>, Vec<Rational>);

/// Chooses the next elementary flow at unit scale, plus any extra caps on its
/// multiplier coming from node imbalances.
fn next_shape(
    node_count: usize,
    edges: &[GainEdge],
    net: &[Rational],
    live: &dyn Fn(usize) -> bool,
) -> Result<Shape, DecomposeError> {
    if let Some(s) = (0..node_count).find(|&v| net[v].is_negative()) {
        let (found, region) = bfs_to(node_count, edges, &[s], live, &|v| v != s && net[v].is_positive());
        if let Some((w, path)) = found {
            let mut amounts = Vec::new();
            cycle_unit(edges, &path, &mut amounts, &Rational::one());
            let gain = path_gain(edges, &path);
            let caps = vec![-&net[s], &net[w] / gain];
            return Ok((merge(amounts), TermKind::Path, Some(s), Some(w), caps));
        }
        if let Some(cycle) = cycle_in_region(node_count, edges, live, &region, find_absorbing_cycle) {
            let (amounts, _) = into_absorbing(node_count, edges, live, &[s], &cycle, None)?;
            return Ok((amounts, TermKind::Absorbing, Some(s), None, vec![-&net[s]]));
        }
        if let Some(cycle) = cycle_in_region(node_count, edges, live, &region, find_unit_cycle) {
            return Ok(unit_shape(edges, &cycle));
        }
        return Err(DecomposeError::Internal(format!("deficit at node {s} has nowhere to go")));
    }
    let ids: Vec<usize> = (0..edges.len()).filter(|&e| live(e)).collect();
    let sub: Vec<GainEdge> = ids.iter().map(|&e| edges[e].clone()).collect();
    if let Some(cycle) = find_generating_cycle(node_count, &sub) {
        let cycle: Vec<usize> = cycle.into_iter().map(|k| ids[k]).collect();
        let c = edges[cycle[0]].from;
        let (found, region) = bfs_to(node_count, edges, &[c], live, &|v| net[v].is_positive());
        if let Some((w, path)) = found {
            let (amounts, delivered) = generating_shape(edges, &cycle, c, &path);
            let term = FlowTerm { kind: TermKind::Generating, amounts: amounts.clone(), source: None, target: Some(w) };
            let at_w = term.net_at(edges, w);
            if at_w != delivered {
                return Err(DecomposeError::Internal("generating term is unbalanced".into()));
            }
            return Ok((amounts, TermKind::Generating, None, Some(w), vec![&net[w] / at_w]));
        }
        if let Some(absorbing) = cycle_in_region(node_count, edges, live, &region, find_absorbing_cycle) {
            let (amounts, _) = into_absorbing(node_count, edges, live, &[c], &absorbing, Some(&cycle))?;
            return Ok((amounts, TermKind::Bicycle, None, None, Vec::new()));
        }
        if let Some(unit) = cycle_in_region(node_count, edges, live, &region, find_unit_cycle) {
            return Ok(unit_shape(edges, &unit));
        }
        return Err(DecomposeError::Internal("generated flow has nowhere to go".into()));
    }
    match find_unit_cycle(node_count, &sub) {
        Some(cycle) => {
            let cycle: Vec<usize> = cycle.into_iter().map(|k| ids[k]).collect();
            Ok(unit_shape(edges, &cycle))
        }
        None => Err(DecomposeError::Internal("flow without deficits contains no cycle of gain at least one".into())),
    }
}

fn unit_shape(edges: &[GainEdge], cycle: &[usize]) -> Shape {
    let mut amounts = Vec::new();
    cycle_unit(edges, cycle, &mut amounts, &Rational::one());
    (merge(amounts), TermKind::UnitCycle, None, None, Vec::new())
}

/// One unit leaving `start` (or generated by `generating` at `start`), routed
/// into the absorbing cycle and consumed there.
fn into_absorbing(
    node_count: usize,
    edges: &[GainEdge],
    live: &dyn Fn(usize) -> bool,
    start: &[NodeId],
    absorbing: &[usize],
    generating: Option<&Vec<usize>>,
) -> Result<(Vec<(usize, Rational)>, Rational), DecomposeError> {
    let on_cycle: Vec<NodeId> = absorbing.iter().map(|&e| edges[e].from).collect();
    let (found, _) = bfs_to(node_count, edges, start, live, &|v| on_cycle.contains(&v));
    let (d, path) = found.ok_or_else(|| DecomposeError::Internal("absorbing cycle is unreachable".into()))?;
    let mut amounts = Vec::new();
    let sent = match generating {
        Some(cycle) => {
            let (shape, delivered) = generating_shape(edges, cycle, start[0], &path);
            amounts.extend(shape);
            delivered
        }
        None => {
            cycle_unit(edges, &path, &mut amounts, &Rational::one());
            path_gain(edges, &path)
        }
    };
    let rotated = rotate_to(edges, absorbing, d);
    let loss = Rational::one() - path_gain(edges, &rotated);
    cycle_unit(edges, &rotated, &mut amounts, &(&sent / loss));
    Ok((merge(amounts), sent))
}

/// Drops terms until their edge vectors are linearly independent, rescaling
/// the survivors so that the sum is unchanged.
fn reduce(edges: &[GainEdge], values: &[Rational], mut terms: Vec<FlowTerm>) -> Result<Vec<FlowTerm>, DecomposeError> {
    let support: Vec<usize> = (0..edges.len()).filter(|&e| values[e].is_positive()).collect();
    while terms.len() > support.len() {
        let Some(lambda) = dependency(&support, &terms) else { break };
        // shift weights along the dependency until one term vanishes
        let mut theta: Option<Rational> = None;
        for l in lambda.iter() {
            if l.is_positive() {
                let r = l.recip();
                theta = Some(match theta {
                    Some(t) if t <= r => t,
                    _ => r,
                });
            }
        }
        let theta = theta.ok_or_else(|| DecomposeError::Internal("dependency without positive weight".into()))?;
        let mut kept = Vec::new();
        for (term, l) in terms.iter().zip(&lambda) {
            let weight = Rational::one() - &theta * l;
            if weight.is_positive() {
                kept.push(term.scaled(&weight));
            }
        }
        terms = kept;
    }
    if recompose(edges.len(), &terms) != values {
        return Err(DecomposeError::Internal("terms do not add up to the input".into()));
    }
    Ok(terms)
}

/// Nonzero `lambda` with `sum lambda_k term_k = 0` and some positive entry.
fn dependency(support: &[usize], terms: &[FlowTerm]) -> Option<Vec<Rational>> {
    let rows = support.len();
    let cols = terms.len();
    let mut matrix = vec![vec![Rational::zero(); cols]; rows];
    for (k, term) in terms.iter().enumerate() {
        for (e, a) in &term.amounts {
            let r = support.iter().position(|s| s == e)?;
            matrix[r][k] = a.clone();
        }
    }
    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !matrix[i][c].is_zero()) else { continue };
        matrix.swap(r, p);
        let lead = matrix[r][c].clone();
        for x in matrix[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows {
            if i != r && !matrix[i][c].is_zero() {
                let factor = matrix[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &matrix[r][j];
                    matrix[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut lambda = vec![Rational::zero(); cols];
    lambda[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        lambda[pc] = -&matrix[row][free];
    }
    if !lambda.iter().any(|l| l.is_positive()) {
        for l in lambda.iter_mut() {
            *l = -l.clone();
        }
    }
    Some(lambda)
}

/// Decomposition of a flow that leaves no node in deficit.
pub fn decompose_flow_difference(
    node_count: usize,
    edges: &[GainEdge],
    values: &[Rational],
) -> Result<Vec<FlowTerm>, DecomposeError> {
    if values.len() != edges.len() {
        return Err(DecomposeError::LengthMismatch { expected: edges.len(), found: values.len() });
    }
    let net = net_flow(node_count, edges, values);
    if let Some(v) = net.iter().position(|x| x.is_negative()) {
        return Err(DecomposeError::Deficit(v));
    }
    decompose(node_count, edges, values)
}

/// Edge amounts delivering exactly `amount` to each target through generating
/// cycles; every other node stays balanced. `usable` picks the edges that may
/// be used and each target must be reachable from one of `cycles` through them.
pub fn generating_supply(
    node_count: usize,
    edges: &[GainEdge],
    usable: &dyn Fn(usize) -> bool,
    cycles: &[Vec<usize>],
    targets: &[(NodeId, Rational)],
) -> Option<Vec<Rational>> {
    let mut out = vec![Rational::zero(); edges.len()];
    let owner: Vec<Option<usize>> =
        (0..node_count).map(|v| cycles.iter().position(|c| c.iter().any(|&e| edges[e].from == v))).collect();
    let starts: Vec<NodeId> = (0..node_count).filter(|&v| owner[v].is_some()).collect();
    for (target, amount) in targets {
        if !amount.is_positive() {
            continue;
        }
        let (found, _) = bfs_to(node_count, edges, &starts, usable, &|v| v == *target);
        let (_, path) = found?;
        let start = path.first().map_or(*target, |&e| edges[e].from);
        let cycle = &cycles[owner[start]?];
        let (shape, delivered) = generating_shape(edges, cycle, start, &path);
        let scale = amount / delivered;
        for (e, a) in shape {
            out[e] += a * &scale;
        }
    }
    Some(out)
}
