//! Optimality certificates and a slow augmenting-path oracle.

use crate::error::SolveError;
use crate::graph::{ArcId, Flow, Labeling, NodeId, StdInstance, UncapInstance};
use crate::init::{cancel_flow_generating_cycles, highest_gain_labels};
use crate::rational::{Extended, Rational};
use crate::views::{excess, residual_arcs, Direction};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    LengthMismatch,
    SinkLabel,
    NonPositiveLabel(NodeId),
    NegativeFlow(ArcId),
    OverCapacity(ArcId),
    /// Relabeled gain above one on an arc that may still carry more flow.
    GainAboveOne(ArcId),
    /// Positive flow on an arc that is not tight.
    LooseFlow(ArcId),
    /// Saturated arc whose relabeled gain is below one.
    SaturatedBelowOne(ArcId),
    NegativeExcess(NodeId),
    PositiveExcess(NodeId),
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CertificateViolation::*;
        match self {
            LengthMismatch => write!(f, "flow or labeling has the wrong length"),
            SinkLabel => write!(f, "sink label is not one"),
            NonPositiveLabel(i) => write!(f, "label of node {i} is not positive"),
            NegativeFlow(a) => write!(f, "arc {a} carries negative flow"),
            OverCapacity(a) => write!(f, "arc {a} exceeds its capacity"),
            GainAboveOne(a) => write!(f, "arc {a} has relabeled gain above one"),
            LooseFlow(a) => write!(f, "arc {a} carries flow but is not tight"),
            SaturatedBelowOne(a) => write!(f, "saturated arc {a} has relabeled gain below one"),
            NegativeExcess(i) => write!(f, "node {i} has negative excess"),
            PositiveExcess(i) => write!(f, "node {i} has positive excess under a finite label"),
        }
    }
}

/// Exact primal-dual optimality test for the uncapacitated problem.
pub fn check_optimality_uncap(
    inst: &UncapInstance,
    flow: &Flow,
    labels: &Labeling,
) -> Result<(), Vec<CertificateViolation>> {
    use CertificateViolation::*;
    if flow.len() != inst.arc_count() || labels.len() != inst.node_count() {
        return Err(vec![LengthMismatch]);
    }
    let mut out = Vec::new();
    if !labels[inst.sink()].is_one() {
        out.push(SinkLabel);
    }
    for i in inst.nodes() {
        if !labels[i].is_positive() {
            out.push(NonPositiveLabel(i));
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    for (a, arc) in inst.arcs().iter().enumerate() {
        if flow[a].is_negative() {
            out.push(NegativeFlow(a));
        }
        match (&arc.gain * &labels[arc.tail]).cmp(&labels[arc.head]) {
            Ordering::Greater => out.push(GainAboveOne(a)),
            Ordering::Less if flow[a].is_positive() => out.push(LooseFlow(a)),
            _ => {}
        }
    }
    for i in inst.non_sink_nodes() {
        let e = excess(inst, flow, i);
        if !e.is_zero() {
            out.push(if e.is_negative() { NegativeExcess(i) } else { PositiveExcess(i) });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Optimality test for the capacitated form; labels may be infinite.
pub fn check_optimality_std(
    inst: &StdInstance,
    flow: &Flow,
    labels: &[Extended],
) -> Result<(), Vec<CertificateViolation>> {
    use CertificateViolation::*;
    if flow.len() != inst.arcs().len() || labels.len() != inst.node_count() {
        return Err(vec![LengthMismatch]);
    }
    let mut out = Vec::new();
    if labels[inst.sink()] != Extended::Finite(Rational::one()) {
        out.push(SinkLabel);
    }
    for (i, mu) in labels.iter().enumerate() {
        if let Extended::Finite(v) = mu {
            if !v.is_positive() {
                out.push(NonPositiveLabel(i));
            }
        }
    }
    for (a, arc) in inst.arcs().iter().enumerate() {
        let f = &flow[a];
        if f.is_negative() {
            out.push(NegativeFlow(a));
            continue;
        }
        let saturated = match &arc.capacity {
            Extended::Finite(u) => {
                if f > u {
                    out.push(OverCapacity(a));
                }
                f == u
            }
            Extended::Infinite => false,
        };
        let pushed = labels[arc.tail].scale(&arc.gain);
        let order = pushed.cmp(&labels[arc.head]);
        if !saturated && order == Ordering::Greater {
            out.push(GainAboveOne(a));
        }
        if f.is_positive() && order == Ordering::Less {
            out.push(if saturated { SaturatedBelowOne(a) } else { LooseFlow(a) });
        }
    }
    for i in 0..inst.node_count() {
        if i == inst.sink() {
            continue;
        }
        let e = inst.excess(flow, i);
        if e.is_negative() {
            out.push(NegativeExcess(i));
        } else if e.is_positive() && !labels[i].is_infinite() {
            out.push(PositiveExcess(i));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle stopped after {0} augmentations")]
    StepLimit(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub flow: Flow,
    pub labels: Labeling,
    pub value: Rational,
    pub steps: usize,
}

/// Highest-gain augmenting paths: cancel generating cycles, then repeatedly
/// push from an excess node to the sink along a tight residual path.
pub fn onaga_solve(inst: &UncapInstance, step_cap: usize) -> Result<OracleSolution, OracleError> {
    let (mut flow, _) = cancel_flow_generating_cycles(inst, inst.initial_flow())?;
    let t = inst.sink();
    let n = inst.node_count();
    for steps in 0..=step_cap {
        let labels = highest_gain_labels(inst, &flow)?;
        let excess_nodes: Vec<bool> = inst.nodes().map(|i| i != t && excess(inst, &flow, i).is_positive()).collect();
        if !excess_nodes.contains(&true) {
            let value = excess(inst, &flow, t);
            return Ok(OracleSolution { flow, labels, value, steps });
        }
        if steps == step_cap {
            break;
        }
        let arcs: Vec<_> = residual_arcs(inst, &flow).into_iter().filter(|r| r.is_tight(&labels)).collect();
        let mut adj = vec![Vec::new(); n];
        for (k, r) in arcs.iter().enumerate() {
            adj[r.from].push(k);
        }
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = excess_nodes.clone();
        let mut queue: VecDeque<NodeId> = inst.nodes().filter(|&i| excess_nodes[i]).collect();
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
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
        if !seen[t] {
            return Err(SolveError::Internal("no tight path from an excess node to the sink".into()).into());
        }
        let mut path = Vec::new();
        let mut v = t;
        while let Some(k) = pred[v] {
            path.push(k);
            v = arcs[k].from;
        }
        path.reverse();
        let start = v;
        // amount arriving at each path arc per unit leaving the start
        let mut rate = Rational::one();
        let mut amount = excess(inst, &flow, start);
        let mut rates = Vec::with_capacity(path.len());
        for &k in &path {
            rates.push(rate.clone());
            if arcs[k].direction == Direction::Reverse {
                let a = arcs[k].arc;
                amount = amount.min(&inst.arc(a).gain * &flow[a] / &rate);
            }
            rate *= &arcs[k].gain;
        }
        for (&k, rate) in path.iter().zip(&rates) {
            let a = arcs[k].arc;
            let moved = &amount * rate;
            match arcs[k].direction {
                Direction::Forward => flow[a] += moved,
                Direction::Reverse => flow[a] -= moved / &inst.arc(a).gain,
            }
        }
    }
    Err(OracleError::StepLimit(step_cap))
}

pub fn describe(violations: &[CertificateViolation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f1, f5, single_arc};
    use crate::rational::{int, ratio};

    fn f1_optimum() -> (Flow, Labeling) {
        (Flow::from_values(vec![int(2), int(2), int(0)]), Labeling::from_values(vec![int(2), int(2), int(1)]))
    }

    #[test]
    fn f1_optimum_certifies() {
        let (f, mu) = f1_optimum();
        assert_eq!(check_optimality_uncap(&f1(), &f, &mu), Ok(()));
    }

    #[test]
    fn unit_labels_are_loose_on_f1() {
        let (f, _) = f1_optimum();
        let err = check_optimality_uncap(&f1(), &f, &Labeling::ones(3)).unwrap_err();
        assert!(err.contains(&CertificateViolation::LooseFlow(1)));
    }

    #[test]
    fn zero_flow_leaves_excess() {
        let (_, mu) = f1_optimum();
        let err = check_optimality_uncap(&f1(), &Flow::zero(3), &mu).unwrap_err();
        assert_eq!(err, vec![CertificateViolation::PositiveExcess(0)]);
    }

    #[test]
    fn std_conditions() {
        let inst = crate::fixtures::f2();
        let f = Flow::from_values(vec![int(3), int(3)]);
        let mu = vec![Extended::Finite(ratio(1, 2)), Extended::Finite(int(1))];
        assert_eq!(check_optimality_std(&inst, &f, &mu), Ok(()));
        // saturated arc with relabeled gain below one
        let low = vec![Extended::Finite(ratio(1, 2)), Extended::Finite(int(1))];
        let g = Flow::from_values(vec![int(3), int(0)]);
        let err = check_optimality_std(&inst, &g, &low).unwrap_err();
        assert!(err.contains(&CertificateViolation::PositiveExcess(0)));
        let inf = vec![Extended::Infinite, Extended::Finite(int(1))];
        assert!(check_optimality_std(&inst, &g, &inf).is_err());
    }

    #[test]
    fn saturated_arc_below_one_is_rejected() {
        let inst = crate::fixtures::f2();
        let f = Flow::from_values(vec![int(3), int(3)]);
        let mu = vec![Extended::Finite(int(1)), Extended::Finite(int(1))];
        let err = check_optimality_std(&inst, &f, &mu).unwrap_err();
        assert!(err.contains(&CertificateViolation::GainAboveOne(1)));
        let mu = vec![Extended::Finite(int(4)), Extended::Finite(int(1))];
        let err = check_optimality_std(&inst, &f, &mu).unwrap_err();
        assert!(err.contains(&CertificateViolation::SaturatedBelowOne(0)));
    }

    #[test]
    fn infinite_label_releases_excess() {
        let inst = crate::fixtures::f2();
        let mut f = Flow::zero(2);
        f[0] = int(3);
        f[1] = int(1);
        // excess at node 0 is 2, allowed only under an infinite label
        let mu = vec![Extended::Infinite, Extended::Finite(int(1))];
        let err = check_optimality_std(&inst, &f, &mu).unwrap_err();
        assert!(err.contains(&CertificateViolation::GainAboveOne(1)));
        assert!(!err.iter().any(|v| matches!(v, CertificateViolation::PositiveExcess(_))));
    }

    #[test]
    fn oracle_on_fixtures() {
        let one = onaga_solve(&f1(), 1000).unwrap();
        assert_eq!(one.value, int(1));
        assert_eq!(check_optimality_uncap(&f1(), &one.flow, &one.labels), Ok(()));
        let five = onaga_solve(&f5(), 1000).unwrap();
        assert_eq!(check_optimality_uncap(&f5(), &five.flow, &five.labels), Ok(()));
        let zero = onaga_solve(&single_arc(), 10).unwrap();
        assert_eq!((zero.value, zero.steps), (int(0), 0));
    }
}
