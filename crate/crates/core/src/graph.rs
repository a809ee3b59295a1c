//! Instances, flows and labelings.

use crate::rational::{encoding_weight, from_big, lcm, Extended, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Index, IndexMut};

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Regular,
    /// An arc `i -> t` with gain `1/B`, added so that every node reaches the sink.
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub gain: Rational,
    pub kind: ArcKind,
}

impl Arc {
    pub fn regular(tail: NodeId, head: NodeId, gain: Rational) -> Self {
        Arc { tail, head, gain, kind: ArcKind::Regular }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("instance has no nodes")]
    Empty,
    #[error("node {0} is out of range")]
    NodeOutOfRange(NodeId),
    #[error("arc {0} is a loop")]
    Loop(ArcId),
    #[error("arc {0} has non-positive gain")]
    NonPositiveGain(ArcId),
    #[error("arc {0} has a negative capacity")]
    NegativeCapacity(ArcId),
    #[error("node {0} has no arc into the sink")]
    MissingSinkArc(NodeId),
    #[error("auxiliary arc {0} must enter the sink with gain 1/B")]
    BadAuxiliaryArc(ArcId),
    #[error("expected {expected} {what}, found {found}")]
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    #[error("encoding bound violated: {0}")]
    Encoding(String),
    #[error("initial flow is negative on arc {0}")]
    NegativeFlow(ArcId),
    #[error("initial flow leaves node {0} with negative excess")]
    InfeasibleInitialFlow(NodeId),
}

/// Arc-indexed nonnegative flow values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Flow(Vec<Rational>);

impl Flow {
    pub fn zero(arc_count: usize) -> Self {
        Flow(vec![Rational::zero(); arc_count])
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        Flow(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.0.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(a, _)| a)
    }
}

impl Index<ArcId> for Flow {
    type Output = Rational;
    fn index(&self, arc: ArcId) -> &Rational {
        &self.0[arc]
    }
}

impl IndexMut<ArcId> for Flow {
    fn index_mut(&mut self, arc: ArcId) -> &mut Rational {
        &mut self.0[arc]
    }
}

/// Node-indexed positive multipliers with the sink fixed at one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling(Vec<Rational>);

impl Labeling {
    pub fn ones(node_count: usize) -> Self {
        Labeling(vec![Rational::one(); node_count])
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        Labeling(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Index<NodeId> for Labeling {
    type Output = Rational;
    fn index(&self, node: NodeId) -> &Rational {
        &self.0[node]
    }
}

impl IndexMut<NodeId> for Labeling {
    fn index_mut(&mut self, node: NodeId) -> &mut Rational {
        &mut self.0[node]
    }
}

/// Uncapacitated generalized flow instance: maximize the sink excess subject to
/// nonnegative excess elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncapInstance {
    node_count: usize,
    sink: NodeId,
    arcs: Vec<Arc>,
    demands: Vec<Rational>,
    bound: BigInt,
    initial_flow: Flow,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl UncapInstance {
    /// Validates every structural and encoding requirement. When `bound` is `None`
    /// the smallest admissible encoding bound is computed from the data.
    pub fn new(
        node_count: usize,
        sink: NodeId,
        arcs: Vec<Arc>,
        demands: Vec<Rational>,
        bound: Option<BigInt>,
        initial_flow: Option<Flow>,
    ) -> Result<Self, InstanceError> {
        if node_count == 0 {
            return Err(InstanceError::Empty);
        }
        if sink >= node_count {
            return Err(InstanceError::NodeOutOfRange(sink));
        }
        if demands.len() != node_count {
            return Err(InstanceError::LengthMismatch { what: "demands", expected: node_count, found: demands.len() });
        }
        for (id, arc) in arcs.iter().enumerate() {
            for end in [arc.tail, arc.head] {
                if end >= node_count {
                    return Err(InstanceError::NodeOutOfRange(end));
                }
            }
            if arc.tail == arc.head {
                return Err(InstanceError::Loop(id));
            }
            if !arc.gain.is_positive() {
                return Err(InstanceError::NonPositiveGain(id));
            }
        }
        let initial_flow = initial_flow.unwrap_or_else(|| Flow::zero(arcs.len()));
        if initial_flow.len() != arcs.len() {
            return Err(InstanceError::LengthMismatch {
                what: "initial flow values",
                expected: arcs.len(),
                found: initial_flow.len(),
            });
        }
        let bound = match bound {
            Some(b) => b,
            None => match arcs.iter().find(|a| a.kind == ArcKind::Auxiliary) {
                Some(aux) if aux.gain.recip().is_integer() => aux.gain.recip().to_integer(),
                Some(_) => return Err(InstanceError::Encoding("auxiliary gain is not 1/B for an integer B".into())),
                None => minimal_bound(&arcs, &demands, &initial_flow, sink),
            },
        };
        let inst = Self::assemble(node_count, sink, arcs, demands, bound, initial_flow);
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance without validation; used for derived instances whose
    /// encoding no longer matches the original bound.
    pub(crate) fn assemble(
        node_count: usize,
        sink: NodeId,
        arcs: Vec<Arc>,
        demands: Vec<Rational>,
        bound: BigInt,
        initial_flow: Flow,
    ) -> Self {
        let mut out_arcs = vec![Vec::new(); node_count];
        let mut in_arcs = vec![Vec::new(); node_count];
        for (id, arc) in arcs.iter().enumerate() {
            out_arcs[arc.tail].push(id);
            in_arcs[arc.head].push(id);
        }
        UncapInstance { node_count, sink, arcs, demands, bound, initial_flow, out_arcs, in_arcs }
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let t = self.sink;
        for i in 0..self.node_count {
            if i != t && !self.out_arcs[i].iter().any(|&a| self.arcs[a].head == t) {
                return Err(InstanceError::MissingSinkArc(i));
            }
        }
        if !self.bound.is_positive() {
            return Err(InstanceError::Encoding("bound must be positive".into()));
        }
        let bound = from_big(self.bound.clone());
        let aux_gain = bound.recip();
        let mut product = BigInt::one();
        for (id, arc) in self.arcs.iter().enumerate() {
            match arc.kind {
                ArcKind::Auxiliary => {
                    if arc.head != t || arc.gain != aux_gain {
                        return Err(InstanceError::BadAuxiliaryArc(id));
                    }
                }
                ArcKind::Regular => product *= encoding_weight(&arc.gain),
            }
        }
        if !self.bound.is_multiple_of(&product) {
            return Err(InstanceError::Encoding(format!(
                "bound {} is not a multiple of the gain product {}",
                self.bound, product
            )));
        }
        let on_grid = |v: &Rational| (v * &bound).is_integer() && v.abs() <= bound;
        for (i, b) in self.demands.iter().enumerate() {
            if i != t && !on_grid(b) {
                return Err(InstanceError::Encoding(format!("demand of node {i} is off the 1/B grid or exceeds B")));
            }
        }
        for (a, v) in self.initial_flow.values().iter().enumerate() {
            if v.is_negative() {
                return Err(InstanceError::NegativeFlow(a));
            }
            if !on_grid(v) {
                return Err(InstanceError::Encoding(format!(
                    "initial flow on arc {a} is off the 1/B grid or exceeds B"
                )));
            }
        }
        for i in 0..self.node_count {
            if i != t && crate::views::excess(self, &self.initial_flow, i).is_negative() {
                return Err(InstanceError::InfeasibleInitialFlow(i));
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn demands(&self) -> &[Rational] {
        &self.demands
    }

    pub fn demand(&self, node: NodeId) -> &Rational {
        &self.demands[node]
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn initial_flow(&self) -> &Flow {
        &self.initial_flow
    }

    pub fn out_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.out_arcs[node]
    }

    pub fn in_arcs(&self, node: NodeId) -> &[ArcId] {
        &self.in_arcs[node]
    }

    /// Number of arcs incident to `node`, counting parallel copies.
    pub fn degree(&self, node: NodeId) -> usize {
        self.out_arcs[node].len() + self.in_arcs[node].len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count
    }

    /// Nodes other than the sink.
    pub fn non_sink_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count).filter(move |&i| i != self.sink)
    }

    pub fn with_initial_flow(&self, flow: Flow) -> Result<Self, InstanceError> {
        let inst = Self::assemble(
            self.node_count,
            self.sink,
            self.arcs.clone(),
            self.demands.clone(),
            self.bound.clone(),
            flow,
        );
        inst.validate()?;
        Ok(inst)
    }
}

/// Smallest bound satisfying the encoding contract for the given regular data.
pub fn minimal_bound(arcs: &[Arc], demands: &[Rational], flow: &Flow, sink: NodeId) -> BigInt {
    let gains: Vec<&Rational> = arcs.iter().filter(|a| a.kind == ArcKind::Regular).map(|a| &a.gain).collect();
    let values: Vec<&Rational> =
        demands.iter().enumerate().filter(|&(i, _)| i != sink).map(|(_, b)| b).chain(flow.values().iter()).collect();
    encoding_bound(&gains, &values, 1)
}

/// `factor * product(num*den of gains)` times the lcm of value denominators, then
/// raised by an integer multiple until it dominates every value.
pub fn encoding_bound(gains: &[&Rational], values: &[&Rational], factor: u32) -> BigInt {
    let mut base = BigInt::from(factor);
    for g in gains {
        base *= encoding_weight(g);
    }
    let mut dens = BigInt::one();
    for v in values {
        dens = lcm(&dens, v.denom());
    }
    base = lcm(&base, &dens);
    let largest = values.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
    let base_r = from_big(base.clone());
    if largest <= base_r {
        return base;
    }
    let k = (largest / base_r).ceil().to_integer();
    base * k
}

/// Capacitated instance: maximize net gain-weighted inflow at the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdInstance {
    node_count: usize,
    sink: NodeId,
    arcs: Vec<StdArc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub gain: Rational,
    pub capacity: Extended,
}

impl StdInstance {
    pub fn new(node_count: usize, sink: NodeId, arcs: Vec<StdArc>) -> Result<Self, InstanceError> {
        if node_count == 0 {
            return Err(InstanceError::Empty);
        }
        if sink >= node_count {
            return Err(InstanceError::NodeOutOfRange(sink));
        }
        for (id, arc) in arcs.iter().enumerate() {
            for end in [arc.tail, arc.head] {
                if end >= node_count {
                    return Err(InstanceError::NodeOutOfRange(end));
                }
            }
            if arc.tail == arc.head {
                return Err(InstanceError::Loop(id));
            }
            if !arc.gain.is_positive() {
                return Err(InstanceError::NonPositiveGain(id));
            }
            if let Extended::Finite(u) = &arc.capacity {
                if u.is_negative() {
                    return Err(InstanceError::NegativeCapacity(id));
                }
            }
        }
        Ok(StdInstance { node_count, sink, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[StdArc] {
        &self.arcs
    }

    /// Excess `sum_in gamma f - sum_out f` (no demands in this form).
    pub fn excess(&self, flow: &Flow, node: NodeId) -> Rational {
        let mut total = Rational::zero();
        for (a, arc) in self.arcs.iter().enumerate() {
            if arc.head == node {
                total += &arc.gain * &flow[a];
            }
            if arc.tail == node {
                total -= &flow[a];
            }
        }
        total
    }

    /// Objective value: the sink excess.
    pub fn objective(&self, flow: &Flow) -> Rational {
        self.excess(flow, self.sink)
    }
}
