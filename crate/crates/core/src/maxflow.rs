//! Exact maximum flow with lower and upper bounds, and the tight-network solve
//! that turns a labeling into a conservative flow.

use crate::graph::{Flow, Labeling, NodeId, UncapInstance};
use crate::rational::{from_big, Rational};
use crate::views::{excess, relabeled_demand, relabeled_excess, relabeled_gain, relabeled_surplus};
use num_traits::{One, Signed, Zero};
use std::collections::VecDeque;

/// Arc with bounds `lower <= x <= upper`; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl BoundedArc {
    pub fn new(tail: NodeId, head: NodeId, lower: Option<Rational>, upper: Option<Rational>) -> Self {
        BoundedArc { tail, head, lower, upper }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub source: NodeId,
    pub sink: NodeId,
    pub arcs: Vec<BoundedArc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowResult {
    pub flow: Vec<Rational>,
    pub value: Rational,
    /// Source side of a minimum cut.
    pub min_cut: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MaxFlowError {
    #[error("no flow satisfies the arc bounds")]
    Infeasible,
    #[error("the maximum flow value is unbounded")]
    Unbounded,
    #[error("malformed network: {0}")]
    Malformed(String),
}

struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<Option<Rational>>,
    flow: Vec<Rational>,
    blocked_nodes: Vec<bool>,
    blocked_edges: Vec<bool>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            flow: Vec::new(),
            blocked_nodes: vec![false; nodes],
            blocked_edges: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: Option<Rational>) -> usize {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.flow.push(Rational::zero());
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(Some(Rational::zero()));
        self.flow.push(Rational::zero());
        self.adj[v].push(e + 1);
        self.blocked_edges.extend([false, false]);
        e
    }

    /// Remaining capacity; `None` is infinite.
    fn residual(&self, e: usize) -> Option<Rational> {
        self.cap[e].as_ref().map(|c| c - &self.flow[e])
    }

    fn has_room(&self, e: usize) -> bool {
        match self.residual(e) {
            None => true,
            Some(r) => r.is_positive(),
        }
    }

    fn push(&mut self, e: usize, amount: &Rational) {
        self.flow[e] += amount;
        self.flow[e ^ 1] -= amount;
    }

    fn reachable(&self, from: usize) -> (Vec<bool>, Vec<Option<usize>>) {
        let mut seen = vec![false; self.adj.len()];
        let mut pred = vec![None; self.adj.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if seen[v] || self.blocked_nodes[v] || self.blocked_edges[e] || !self.has_room(e) {
                    continue;
                }
                seen[v] = true;
                pred[v] = Some(e);
                queue.push_back(v);
            }
        }
        (seen, pred)
    }

    /// Shortest augmenting paths until none remain; returns the amount sent.
    fn augment_all(&mut self, s: usize, t: usize) -> Result<Rational, MaxFlowError> {
        let mut total = Rational::zero();
        loop {
            let (seen, pred) = self.reachable(s);
            if !seen[t] {
                return Ok(total);
            }
            let mut path = Vec::new();
            let mut v = t;
            while v != s {
                let e = pred[v].expect("path back to source");
                path.push(e);
                v = self.to[e ^ 1];
            }
            let bottleneck = path.iter().filter_map(|&e| self.residual(e)).min();
            let Some(amount) = bottleneck else {
                return Err(MaxFlowError::Unbounded);
            };
            for &e in &path {
                self.push(e, &amount);
            }
            total += amount;
        }
    }
}

enum Repr {
    /// `x = base + flow(edge)`.
    Shifted { edge: usize, base: Rational },
    /// `x = base - flow(edge)` where the edge runs head to tail.
    Mirrored { edge: usize, base: Rational },
    /// `x = flow(fwd) - flow(back)`.
    Free { fwd: usize, back: usize },
}

/// Maximum `source -> sink` flow respecting every arc's bounds, computed exactly.
pub fn max_flow_bounded(net: &FlowNetwork) -> Result<MaxFlowResult, MaxFlowError> {
    let n = net.node_count;
    if net.source >= n || net.sink >= n || net.source == net.sink {
        return Err(MaxFlowError::Malformed("source and sink must be distinct nodes".into()));
    }
    let super_source = n;
    let super_sink = n + 1;
    let mut res = Residual::new(n + 2);
    let mut imbalance = vec![Rational::zero(); n];
    let mut reprs = Vec::with_capacity(net.arcs.len());
    for arc in &net.arcs {
        if arc.tail >= n || arc.head >= n {
            return Err(MaxFlowError::Malformed("arc endpoint out of range".into()));
        }
        let repr = match (&arc.lower, &arc.upper) {
            (Some(l), Some(u)) => {
                if l > u {
                    return Err(MaxFlowError::Malformed("lower bound exceeds upper bound".into()));
                }
                let edge = res.add_edge(arc.tail, arc.head, Some(u - l));
                Repr::Shifted { edge, base: l.clone() }
            }
            (Some(l), None) => {
                let edge = res.add_edge(arc.tail, arc.head, None);
                Repr::Shifted { edge, base: l.clone() }
            }
            (None, Some(u)) => {
                let edge = res.add_edge(arc.head, arc.tail, None);
                Repr::Mirrored { edge, base: u.clone() }
            }
            (None, None) => {
                let fwd = res.add_edge(arc.tail, arc.head, None);
                let back = res.add_edge(arc.head, arc.tail, None);
                Repr::Free { fwd, back }
            }
        };
        if let Repr::Shifted { base, .. } | Repr::Mirrored { base, .. } = &repr {
            imbalance[arc.head] += base;
            imbalance[arc.tail] -= base;
        }
        reprs.push(repr);
    }
    let mut required = Rational::zero();
    for (v, imb) in imbalance.iter().enumerate() {
        if imb.is_positive() {
            res.add_edge(super_source, v, Some(imb.clone()));
            required += imb;
        } else if imb.is_negative() {
            res.add_edge(v, super_sink, Some(-imb));
        }
    }
    // Source and sink are both unconstrained, so the feasible flow may carry
    // a value of either sign.
    let back_edge = res.add_edge(net.sink, net.source, None);
    let return_edge = res.add_edge(net.source, net.sink, None);
    let routed = res.augment_all(super_source, super_sink)?;
    if routed != required {
        return Err(MaxFlowError::Infeasible);
    }
    res.blocked_nodes[super_source] = true;
    res.blocked_nodes[super_sink] = true;
    res.blocked_edges[back_edge] = true;
    res.blocked_edges[back_edge ^ 1] = true;
    res.blocked_edges[return_edge] = true;
    res.blocked_edges[return_edge ^ 1] = true;
    res.augment_all(net.source, net.sink)?;
    let (cut, _) = res.reachable(net.source);

    let flow: Vec<Rational> = reprs
        .iter()
        .map(|r| match r {
            Repr::Shifted { edge, base } => base + &res.flow[*edge],
            Repr::Mirrored { edge, base } => base - &res.flow[*edge],
            Repr::Free { fwd, back } => &res.flow[*fwd] - &res.flow[*back],
        })
        .collect();
    let mut value = Rational::zero();
    for (a, arc) in net.arcs.iter().enumerate() {
        if arc.tail == net.source {
            value += &flow[a];
        }
        if arc.head == net.source {
            value -= &flow[a];
        }
    }
    Ok(MaxFlowResult { flow, value, min_cut: cut[..n].to_vec() })
}

/// Capacity of the cut with source side `side`; `None` when infinite.
pub fn cut_capacity(net: &FlowNetwork, side: &[bool]) -> Option<Rational> {
    let mut total = Rational::zero();
    for arc in &net.arcs {
        if side[arc.tail] && !side[arc.head] {
            total += arc.upper.as_ref()?;
        } else if !side[arc.tail] && side[arc.head] {
            total -= arc.lower.as_ref()?;
        }
    }
    Some(total)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TightFlowError {
    #[error("the tight network cannot route the demands")]
    Infeasible,
    #[error("the node set must contain the sink")]
    SinkOutside,
    #[error("arc {0} inside the node set has relabeled gain above one")]
    InfeasibleLabels(usize),
    #[error("tight flow guarantee violated: {0}")]
    Guarantee(String),
}

/// Maximum flow on the tight arcs inside `members`, fed by a source whose arcs
/// carry the relabeled demands; converted back to a flow on the instance.
pub fn tight_flow(inst: &UncapInstance, members: &[bool], labels: &Labeling) -> Result<Flow, TightFlowError> {
    let t = inst.sink();
    if !members[t] {
        return Err(TightFlowError::SinkOutside);
    }
    let n = inst.node_count();
    let source = n;
    let mut arcs = Vec::new();
    let mut used = Vec::new();
    for (a, arc) in inst.arcs().iter().enumerate() {
        if !(members[arc.tail] && members[arc.head]) {
            continue;
        }
        let g = relabeled_gain(inst, labels, a);
        if g > Rational::one() {
            return Err(TightFlowError::InfeasibleLabels(a));
        }
        if g.is_one() {
            arcs.push(BoundedArc::new(arc.tail, arc.head, Some(Rational::zero()), None));
            used.push(a);
        }
    }
    let mut max_demand = Rational::zero();
    for i in inst.non_sink_nodes().filter(|&i| members[i]) {
        let b = relabeled_demand(inst, labels, i);
        max_demand = max_demand.max(b.abs());
        arcs.push(BoundedArc::new(source, i, None, Some(-b)));
    }
    let net = FlowNetwork { node_count: n + 1, source, sink: t, arcs };
    let result = match max_flow_bounded(&net) {
        Ok(r) => r,
        Err(MaxFlowError::Infeasible) => return Err(TightFlowError::Infeasible),
        Err(e) => return Err(TightFlowError::Guarantee(e.to_string())),
    };
    let mut flow = Flow::zero(inst.arc_count());
    for (k, &a) in used.iter().enumerate() {
        flow[a] = &result.flow[k] * &labels[inst.arc(a).tail];
    }
    let bound = Rational::from_integer(n.into()) * max_demand;
    for i in inst.non_sink_nodes().filter(|&i| members[i]) {
        let e = relabeled_excess(inst, &flow, labels, i);
        if e.is_negative() {
            return Err(TightFlowError::Guarantee(format!("node {i} has negative excess")));
        }
        if e > bound {
            return Err(TightFlowError::Guarantee(format!("node {i} exceeds n times the largest relabeled demand")));
        }
    }
    Ok(flow)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualCheck {
    Optimal,
    /// A node still holding positive excess.
    Witness(NodeId),
}

/// For a tight flow on the whole node set: a relabeled surplus below `1/B^3`
/// forces the plain surplus to vanish.
pub fn optimality_residual_check(
    inst: &UncapInstance,
    flow: &Flow,
    labels: &Labeling,
) -> Result<ResidualCheck, TightFlowError> {
    let relabeled = relabeled_surplus(inst, flow, labels);
    let b = from_big(inst.bound().clone());
    let threshold = (&b * &b * &b).recip();
    let witness = inst.non_sink_nodes().find(|&i| excess(inst, flow, i).is_positive());
    match witness {
        None => Ok(ResidualCheck::Optimal),
        Some(_) if relabeled < threshold => {
            Err(TightFlowError::Guarantee("relabeled surplus is below 1/B^3 but the surplus is positive".into()))
        }
        Some(i) => Ok(ResidualCheck::Witness(i)),
    }
}
