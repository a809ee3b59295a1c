//! Excesses, relabeled quantities, residual and fat graphs, and the
//! Δ-feasibility test.

use crate::graph::{ArcId, Flow, Labeling, NodeId, UncapInstance};
use crate::rational::{cmp_product, format_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub fn excess(inst: &UncapInstance, flow: &Flow, node: NodeId) -> Rational {
    // summed over a shared denominator and reduced once
    let mut sum = Unreduced::from(&-inst.demand(node));
    for &a in inst.in_arcs(node) {
        let (g, f) = (&inst.arc(a).gain, &flow[a]);
        if !f.is_zero() {
            sum.add(&(g.numer() * f.numer()), &(g.denom() * f.denom()));
        }
    }
    for &a in inst.out_arcs(node) {
        let f = &flow[a];
        if !f.is_zero() {
            sum.add(&-f.numer(), f.denom());
        }
    }
    sum.finish()
}

struct Unreduced {
    numer: BigInt,
    denom: BigInt,
}

impl Unreduced {
    fn from(value: &Rational) -> Self {
        Unreduced { numer: value.numer().clone(), denom: value.denom().clone() }
    }

    fn add(&mut self, numer: &BigInt, denom: &BigInt) {
        if *denom == self.denom {
            self.numer += numer;
        } else if (&self.denom % denom).is_zero() {
            self.numer += numer * (&self.denom / denom);
        } else {
            self.numer = &self.numer * denom + numer * &self.denom;
            self.denom *= denom;
        }
    }

    fn finish(self) -> Rational {
        Rational::new(self.numer, self.denom)
    }
}

pub fn excesses(inst: &UncapInstance, flow: &Flow) -> Vec<Rational> {
    inst.nodes().map(|i| excess(inst, flow, i)).collect()
}

/// Total excess over the non-sink nodes.
pub fn surplus(inst: &UncapInstance, flow: &Flow) -> Rational {
    inst.non_sink_nodes().map(|i| excess(inst, flow, i)).sum()
}

pub fn relabeled_gain(inst: &UncapInstance, labels: &Labeling, arc: ArcId) -> Rational {
    let a = inst.arc(arc);
    &a.gain * &labels[a.tail] / &labels[a.head]
}

pub fn relabeled_flow(inst: &UncapInstance, flow: &Flow, labels: &Labeling, arc: ArcId) -> Rational {
    &flow[arc] / &labels[inst.arc(arc).tail]
}

pub fn relabeled_demand(inst: &UncapInstance, labels: &Labeling, node: NodeId) -> Rational {
    inst.demand(node) / &labels[node]
}

pub fn relabeled_excess(inst: &UncapInstance, flow: &Flow, labels: &Labeling, node: NodeId) -> Rational {
    excess(inst, flow, node) / &labels[node]
}

pub fn is_tight(inst: &UncapInstance, labels: &Labeling, arc: ArcId) -> bool {
    let a = inst.arc(arc);
    cmp_product(&labels[a.head], &a.gain, &labels[a.tail]).is_eq()
}

/// All relabeled quantities at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabeledViews {
    pub gains: Vec<Rational>,
    pub flows: Vec<Rational>,
    pub demands: Vec<Rational>,
    pub excesses: Vec<Rational>,
}

pub fn relabeled_views(inst: &UncapInstance, flow: &Flow, labels: &Labeling) -> RelabeledViews {
    let arcs = 0..inst.arc_count();
    RelabeledViews {
        gains: arcs.clone().map(|a| relabeled_gain(inst, labels, a)).collect(),
        flows: arcs.map(|a| relabeled_flow(inst, flow, labels, a)).collect(),
        demands: inst.nodes().map(|i| relabeled_demand(inst, labels, i)).collect(),
        excesses: inst.nodes().map(|i| relabeled_excess(inst, flow, labels, i)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reverse,
}

/// An arc of the residual graph: either an original arc or the reverse of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualArc {
    pub arc: ArcId,
    pub direction: Direction,
    pub from: NodeId,
    pub to: NodeId,
    pub gain: Rational,
}

impl ResidualArc {
    pub fn forward(inst: &UncapInstance, arc: ArcId) -> Self {
        let a = inst.arc(arc);
        ResidualArc { arc, direction: Direction::Forward, from: a.tail, to: a.head, gain: a.gain.clone() }
    }

    pub fn reverse(inst: &UncapInstance, arc: ArcId) -> Self {
        let a = inst.arc(arc);
        ResidualArc { arc, direction: Direction::Reverse, from: a.head, to: a.tail, gain: a.gain.recip() }
    }

    /// Flow value on the residual arc: `f` forward, `-gamma f` in reverse.
    pub fn residual_value(&self, inst: &UncapInstance, flow: &Flow) -> Rational {
        match self.direction {
            Direction::Forward => flow[self.arc].clone(),
            Direction::Reverse => -(&inst.arc(self.arc).gain * &flow[self.arc]),
        }
    }

    pub fn relabeled_gain(&self, labels: &Labeling) -> Rational {
        &self.gain * &labels[self.from] / &labels[self.to]
    }

    pub fn is_tight(&self, labels: &Labeling) -> bool {
        cmp_product(&labels[self.to], &self.gain, &labels[self.from]).is_eq()
    }
}

/// Forward arcs plus the reverse of every arc carrying positive flow.
pub fn residual_arcs(inst: &UncapInstance, flow: &Flow) -> Vec<ResidualArc> {
    let mut out = Vec::with_capacity(inst.arc_count() * 2);
    for a in 0..inst.arc_count() {
        out.push(ResidualArc::forward(inst, a));
        if flow[a].is_positive() {
            out.push(ResidualArc::reverse(inst, a));
        }
    }
    out
}

/// Whether the reverse of `arc` belongs to the Δ-fat graph.
pub fn reverse_is_fat(inst: &UncapInstance, flow: &Flow, labels: &Labeling, arc: ArcId, delta: &Rational) -> bool {
    cmp_product(&flow[arc], delta, &labels[inst.arc(arc).tail]).is_gt()
}

/// Forward arcs plus reverse arcs whose relabeled flow strictly exceeds Δ.
pub fn delta_fat_arcs(inst: &UncapInstance, flow: &Flow, labels: &Labeling, delta: &Rational) -> Vec<ResidualArc> {
    let mut out = Vec::with_capacity(inst.arc_count() * 2);
    for a in 0..inst.arc_count() {
        out.push(ResidualArc::forward(inst, a));
        if reverse_is_fat(inst, flow, labels, a, delta) {
            out.push(ResidualArc::reverse(inst, a));
        }
    }
    out
}

/// Non-tight arcs and, per node, the gain-weighted inflow they carry.
pub fn nontight_and_reserve(inst: &UncapInstance, flow: &Flow, labels: &Labeling) -> (Vec<bool>, Vec<Rational>) {
    let mut nontight = vec![false; inst.arc_count()];
    let mut reserve = vec![Rational::zero(); inst.node_count()];
    for (a, arc) in inst.arcs().iter().enumerate() {
        if relabeled_gain(inst, labels, a) < Rational::one() {
            nontight[a] = true;
            reserve[arc.head] += &arc.gain * &flow[a];
        }
    }
    (nontight, reserve)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SinkLabel(Rational),
    NonPositiveLabel(NodeId),
    NegativeFlow(ArcId),
    FatArcGain { arc: ArcId, direction: Direction, gain: Rational },
    Reserve { node: NodeId, excess: Rational, reserve: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SinkLabel(v) => write!(f, "sink label is {} instead of 1", format_rational(v)),
            Violation::NonPositiveLabel(i) => write!(f, "label of node {i} is not positive"),
            Violation::NegativeFlow(a) => write!(f, "flow on arc {a} is negative"),
            Violation::FatArcGain { arc, direction, gain } => {
                write!(f, "{direction:?} arc {arc} in the fat graph has relabeled gain {}", format_rational(gain))
            }
            Violation::Reserve { node, excess, reserve } => write!(
                f,
                "node {node} has excess {} below its reserve {}",
                format_rational(excess),
                format_rational(reserve)
            ),
        }
    }
}

/// Checks the Δ-feasible pair conditions, reporting every violation found.
pub fn check_delta_feasible(
    inst: &UncapInstance,
    flow: &Flow,
    labels: &Labeling,
    delta: &Rational,
) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let t = inst.sink();
    if !labels[t].is_one() {
        violations.push(Violation::SinkLabel(labels[t].clone()));
    }
    for i in inst.nodes() {
        if !labels[i].is_positive() {
            violations.push(Violation::NonPositiveLabel(i));
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    for a in 0..inst.arc_count() {
        if flow[a].is_negative() {
            violations.push(Violation::NegativeFlow(a));
        }
    }
    for arc in delta_fat_arcs(inst, flow, labels, delta) {
        let gain = arc.relabeled_gain(labels);
        if gain > Rational::one() {
            violations.push(Violation::FatArcGain { arc: arc.arc, direction: arc.direction, gain });
        }
    }
    let (_, reserve) = nontight_and_reserve(inst, flow, labels);
    for i in inst.non_sink_nodes() {
        let e = excess(inst, flow, i);
        if e < reserve[i] {
            violations.push(Violation::Reserve { node: i, excess: e, reserve: reserve[i].clone() });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Direct test of conservativeness: dual feasible, tight on positive arcs and
/// nonnegative excess off the sink.
pub fn is_conservative(inst: &UncapInstance, flow: &Flow, labels: &Labeling) -> bool {
    if !labels[inst.sink()].is_one() || labels.values().iter().any(|m| !m.is_positive()) {
        return false;
    }
    for a in 0..inst.arc_count() {
        let g = relabeled_gain(inst, labels, a);
        if g > Rational::one() || flow[a].is_negative() || (flow[a].is_positive() && !g.is_one()) {
            return false;
        }
    }
    inst.non_sink_nodes().all(|i| !excess(inst, flow, i).is_negative())
}

/// Zeroes the flow on every non-tight arc.
pub fn make_conservative(inst: &UncapInstance, flow: &Flow, labels: &Labeling) -> Flow {
    let (nontight, _) = nontight_and_reserve(inst, flow, labels);
    let mut out = flow.clone();
    for (a, &drop) in nontight.iter().enumerate() {
        if drop {
            out[a] = Rational::zero();
        }
    }
    out
}

/// Relabeled surplus `sum_{i != t} e_i / mu_i`.
pub fn relabeled_surplus(inst: &UncapInstance, flow: &Flow, labels: &Labeling) -> Rational {
    inst.non_sink_nodes().map(|i| relabeled_excess(inst, flow, labels, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f1, f5};
    use crate::rational::{int, ratio};

    fn flow(values: &[(usize, i64)], m: usize) -> Flow {
        let mut f = Flow::zero(m);
        for &(a, v) in values {
            f[a] = int(v);
        }
        f
    }

    fn labels(values: &[i64]) -> Labeling {
        Labeling::from_values(values.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn excess_examples() {
        let inst = f1();
        assert_eq!(excess(&inst, &Flow::zero(3), 0), int(2));
        assert_eq!(excess(&inst, &flow(&[(0, 2), (1, 2)], 3), 1), int(0));
        let five = f5();
        assert_eq!(excess(&five, five.initial_flow(), 1), int(1));
    }

    #[test]
    fn surplus_examples() {
        let inst = f1();
        assert_eq!(surplus(&inst, &Flow::zero(3)), int(2));
        assert_eq!(surplus(&inst, &flow(&[(0, 2), (1, 2)], 3)), int(0));
        let five = f5();
        assert_eq!(surplus(&five, &flow(&[(2, 1)], 5)), int(1));
    }

    #[test]
    fn relabeled_gain_examples() {
        let inst = f1();
        let mu = labels(&[2, 2, 1]);
        assert_eq!(relabeled_gain(&inst, &mu, 1), int(1));
        assert_eq!(relabeled_gain(&inst, &mu, 2), ratio(1, 2));
        let ones = Labeling::ones(3);
        let f = flow(&[(0, 3)], 3);
        let views = relabeled_views(&inst, &f, &ones);
        assert_eq!(views.gains, inst.arcs().iter().map(|a| a.gain.clone()).collect::<Vec<_>>());
        assert_eq!(views.flows, f.values().to_vec());
    }

    #[test]
    fn residual_examples() {
        let inst = f1();
        assert_eq!(residual_arcs(&inst, &Flow::zero(3)).len(), 3);
        let res = residual_arcs(&inst, &flow(&[(0, 2)], 3));
        let rev: Vec<_> = res.iter().filter(|r| r.direction == Direction::Reverse).collect();
        assert_eq!(rev.len(), 1);
        assert_eq!((rev[0].from, rev[0].to, rev[0].gain.clone()), (1, 0, int(1)));

        let five = f5();
        let res = residual_arcs(&five, five.initial_flow());
        let rev: Vec<_> = res.iter().filter(|r| r.direction == Direction::Reverse).collect();
        assert_eq!(rev.len(), 1);
        assert_eq!((rev[0].from, rev[0].to, rev[0].gain.clone()), (1, 2, int(1)));
        assert_eq!(rev[0].residual_value(&five, five.initial_flow()), int(-1));
    }

    #[test]
    fn fat_graph_examples() {
        let inst = f1();
        let f = flow(&[(0, 2)], 3);
        let mu = labels(&[2, 2, 1]);
        assert_eq!(delta_fat_arcs(&inst, &f, &mu, &int(1000)).len(), 3);
        let fat = delta_fat_arcs(&inst, &f, &mu, &ratio(1, 2));
        assert_eq!(fat.len(), 4);
        assert_eq!((fat[1].from, fat[1].to), (1, 0));
        assert_eq!(delta_fat_arcs(&inst, &f, &mu, &int(0)).len(), residual_arcs(&inst, &f).len());
        // f^mu = 1 is not strictly above Δ = 1
        assert_eq!(delta_fat_arcs(&inst, &f, &mu, &int(1)).len(), 3);
    }

    #[test]
    fn reserve_examples() {
        let inst = f1();
        let mu = labels(&[2, 2, 1]);
        let (nontight, reserve) = nontight_and_reserve(&inst, &Flow::zero(3), &mu);
        assert_eq!(nontight, vec![false, false, true]);
        assert!(reserve.iter().all(|r| r.is_zero()));

        let five = f5();
        let (_, reserve) = nontight_and_reserve(&five, &flow(&[(3, 1)], 5), &Labeling::ones(4));
        assert_eq!(reserve[3], ratio(1, 4));

        let single = crate::fixtures::single_arc();
        let (nontight, reserve) = nontight_and_reserve(&single, &flow(&[(0, 1)], 1), &Labeling::ones(2));
        assert_eq!(nontight, vec![false]);
        assert!(reserve.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn delta_feasibility_examples() {
        let inst = f1();
        let mu = labels(&[2, 2, 1]);
        assert!(check_delta_feasible(&inst, &flow(&[(0, 2), (1, 2)], 3), &mu, &int(0)).is_ok());
        let err = check_delta_feasible(&inst, &flow(&[(2, 2)], 3), &mu, &ratio(1, 2)).unwrap_err();
        assert!(err.iter().any(|v| matches!(v, Violation::FatArcGain { arc: 2, direction: Direction::Reverse, .. })));
        let bad = labels(&[2, 2, 3]);
        let err = check_delta_feasible(&inst, &Flow::zero(3), &bad, &int(0)).unwrap_err();
        assert!(matches!(err[0], Violation::SinkLabel(_)));
    }

    #[test]
    fn make_conservative_examples() {
        let inst = f1();
        let mu = labels(&[2, 2, 1]);
        assert_eq!(make_conservative(&inst, &flow(&[(2, 2)], 3), &mu), Flow::zero(3));
        let f = flow(&[(0, 2), (1, 2)], 3);
        assert_eq!(make_conservative(&inst, &f, &mu), f);

        let five = f5();
        let f = flow(&[(0, 1), (3, 1), (4, 1)], 5);
        let out = make_conservative(&five, &f, &Labeling::ones(4));
        assert_eq!(out, flow(&[(0, 1)], 5));
    }
}
