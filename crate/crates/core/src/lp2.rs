//! Feasibility of `Ax = b, 0 <= x <= u` when every column of `A` has at most
//! two nonzeros, through a monotone gain network on two copies of the rows.

use crate::decompose::{decompose_flow_difference, generating_supply, net_flow, DecomposeError, TermKind};
use crate::enhanced::{enhanced_continuous_scaling_until, Run};
use crate::error::SolveError;
use crate::gainpath::{generating_closure, GainEdge};
use crate::graph::{encoding_bound, Arc, ArcKind, Flow, InstanceError, NodeId, UncapInstance};
use crate::rational::{from_big, Extended, Rational};
use crate::scaling::SolveOptions;
use crate::views::residual_arcs;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Lp2Error {
    #[error("column {0} has no nonzero entry")]
    ZeroColumn(usize),
    #[error("column {0} has more than two nonzero entries")]
    TooManyEntries(usize),
    #[error("column {0} uses row {1} twice")]
    RepeatedRow(usize, usize),
    #[error("column {0} refers to row {1}, but there are only {2} rows")]
    RowOutOfRange(usize, usize, usize),
    #[error("upper bound of column {0} is negative")]
    NegativeBound(usize),
    #[error("expected {expected} {what}, found {found}")]
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Columns hold `(row, coefficient)` pairs with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LP2Instance {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
    upper: Vec<Extended>,
}

impl LP2Instance {
    pub fn new(
        rows: usize,
        columns: Vec<Vec<(usize, Rational)>>,
        rhs: Vec<Rational>,
        upper: Vec<Extended>,
    ) -> Result<Self, Lp2Error> {
        if rhs.len() != rows {
            return Err(Lp2Error::LengthMismatch { what: "right-hand sides", expected: rows, found: rhs.len() });
        }
        if upper.len() != columns.len() {
            return Err(Lp2Error::LengthMismatch { what: "upper bounds", expected: columns.len(), found: upper.len() });
        }
        let mut columns = columns;
        for (j, col) in columns.iter_mut().enumerate() {
            col.retain(|(_, v)| !v.is_zero());
            match col.len() {
                0 => return Err(Lp2Error::ZeroColumn(j)),
                1 | 2 => {}
                _ => return Err(Lp2Error::TooManyEntries(j)),
            }
            for &(i, _) in col.iter() {
                if i >= rows {
                    return Err(Lp2Error::RowOutOfRange(j, i, rows));
                }
            }
            if col.len() == 2 && col[0].0 == col[1].0 {
                return Err(Lp2Error::RepeatedRow(j, col[0].0));
            }
            if upper[j].finite().is_some_and(|u| u.is_negative()) {
                return Err(Lp2Error::NegativeBound(j));
            }
        }
        Ok(LP2Instance { rows, columns, rhs, upper })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn upper(&self) -> &[Extended] {
        &self.upper
    }

    /// `Ax`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (col, v) in self.columns.iter().zip(x) {
            for (i, a) in col {
                out[*i] += a * v;
            }
        }
        out
    }

    /// Exact check of `Ax = b` and `0 <= x <= u`.
    pub fn check_solution(&self, x: &[Rational]) -> Result<(), String> {
        if x.len() != self.cols() {
            return Err(format!("expected {} values, found {}", self.cols(), x.len()));
        }
        for (j, v) in x.iter().enumerate() {
            if v.is_negative() || self.upper[j].finite().is_some_and(|u| v > u) {
                return Err(format!("x[{j}] = {v} is outside its bounds"));
            }
        }
        match self.apply(x).iter().zip(&self.rhs).position(|(l, r)| l != r) {
            Some(i) => Err(format!("row {i} is not satisfied")),
            None => Ok(()),
        }
    }

    /// Exact check of a Farkas certificate: `w >= 0`, `A_j y <= w_j` with
    /// `w_j = 0` for unbounded columns, and `b y - u w > 0`.
    pub fn check_certificate(&self, cert: &FarkasCertificate) -> Result<(), String> {
        if cert.y.len() != self.rows || cert.w.len() != self.cols() {
            return Err("certificate has the wrong shape".into());
        }
        let mut value: Rational = self.rhs.iter().zip(&cert.y).map(|(b, y)| b * y).sum();
        for (j, col) in self.columns.iter().enumerate() {
            let w = &cert.w[j];
            if w.is_negative() {
                return Err(format!("w[{j}] is negative"));
            }
            let ay: Rational = col.iter().map(|(i, a)| a * &cert.y[*i]).sum();
            match &self.upper[j] {
                Extended::Infinite if !w.is_zero() => return Err(format!("w[{j}] is nonzero on an unbounded column")),
                Extended::Infinite => {}
                Extended::Finite(u) => value -= u * w,
            }
            if ay > *w {
                return Err(format!("column {j} violates A_j y <= w_j"));
            }
        }
        if value.is_positive() {
            Ok(())
        } else {
            Err(format!("b y - u w = {value} is not positive"))
        }
    }
}

/// Infeasibility witness for an LP2 instance (see `LP2Instance::check_certificate`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub y: Vec<Rational>,
    pub w: Vec<Rational>,
}

/// Gain network constraints `sum_in gain*f - sum_out f (>=, =, <=) b`, `f >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainSystem {
    pub node_count: usize,
    pub arcs: Vec<GainEdge>,
    pub demands: Vec<Rational>,
}

impl GainSystem {
    /// Net gain-weighted inflow at every node.
    pub fn inflow(&self, flow: &[Rational]) -> Vec<Rational> {
        net_flow(self.node_count, &self.arcs, flow)
    }

    /// Certificate conditions shared by both relaxations: `y_i - gain*y_j >= 0`
    /// on every arc and `b y > 0`.
    pub fn certifies(&self, y: &[Rational]) -> bool {
        y.len() == self.node_count
            && self.arcs.iter().all(|a| !(&y[a.from] - &a.gain * &y[a.to]).is_negative())
            && self.demands.iter().zip(y).map(|(b, v)| b * v).sum::<Rational>().is_positive()
    }

    fn reversed(&self) -> GainSystem {
        GainSystem {
            node_count: self.node_count,
            arcs: self.arcs.iter().map(|a| GainEdge { from: a.to, to: a.from, gain: a.gain.recip() }).collect(),
            demands: self.demands.iter().map(|b| -b).collect(),
        }
    }
}

/// One network arc standing for a column, carrying `scale * x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnCopy {
    /// Arc from the copy's tail; for a bounded column it ends at `secondary`.
    pub arc: usize,
    pub tail: NodeId,
    pub head: NodeId,
    pub gain: Rational,
    pub scale: Rational,
    /// Secondary node and the arc from `head` into it, for bounded columns.
    pub secondary: Option<(NodeId, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneInstance {
    pub system: GainSystem,
    /// Rows map to nodes `i` (positive copy) and `rows + i` (negative copy).
    pub rows: usize,
    pub columns: Vec<Vec<ColumnCopy>>,
}

impl MonotoneInstance {
    /// Demands for right-hand side `b`; secondary nodes hold the capacities.
    fn demands_for(rows: usize, node_count: usize, b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); node_count];
        for (i, v) in b.iter().enumerate() {
            out[i] = v.clone();
            out[rows + i] = -v;
        }
        out
    }

    fn add_capacity_demands(&self, upper: &[Extended], demands: &mut [Rational]) {
        for (j, copies) in self.columns.iter().enumerate() {
            let Extended::Finite(u) = &upper[j] else { continue };
            for c in copies {
                let (k, _) = c.secondary.expect("bounded columns are split");
                let held = &c.gain * &c.scale * u;
                demands[c.head] -= &held;
                demands[k] += held;
            }
        }
    }

    /// Network flow representing `x`.
    pub fn image(&self, x: &[Rational], upper: &[Extended]) -> Vec<Rational> {
        let mut flow = vec![Rational::zero(); self.system.arcs.len()];
        for (j, copies) in self.columns.iter().enumerate() {
            for c in copies {
                let carried = &c.scale * &x[j];
                if let (Some((_, back)), Extended::Finite(u)) = (c.secondary, &upper[j]) {
                    flow[back] = &c.gain * (&c.scale * u - &carried);
                }
                flow[c.arc] = carried;
            }
        }
        flow
    }

    /// Averages the copies of every column.
    pub fn recover(&self, flow: &[Rational]) -> Vec<Rational> {
        self.columns
            .iter()
            .map(|copies| {
                let total: Rational = copies.iter().map(|c| &flow[c.arc] / &c.scale).sum();
                total / Rational::from_integer(copies.len().into())
            })
            .collect()
    }

    /// Row-space certificate from a certificate of the network system.
    pub fn certificate(&self, y: &[Rational]) -> FarkasCertificate {
        let rows = (0..self.rows).map(|i| &y[i] - &y[self.rows + i]).collect();
        let w = self
            .columns
            .iter()
            .map(|copies| {
                copies.iter().filter_map(|c| c.secondary.map(|(k, _)| &c.scale * &c.gain * (&y[c.head] - &y[k]))).sum()
            })
            .collect();
        FarkasCertificate { y: rows, w }
    }
}

/// Builds the two-copy network and checks it on a fixed assignment: the image
/// of `x` satisfies the network equations for `b = Ax` and recovers `x`.
pub fn to_monotone(lp: &LP2Instance) -> Result<MonotoneInstance, Lp2Error> {
    let n = lp.rows();
    let mut node_count = 2 * n;
    let mut arcs: Vec<GainEdge> = Vec::new();
    let mut columns = Vec::with_capacity(lp.cols());
    let plus = |i: usize| i;
    let minus = |i: usize| n + i;
    for (j, col) in lp.columns.iter().enumerate() {
        // (tail, head, gain, scale) per copy; scale is the flow per unit of x
        let shapes: Vec<(NodeId, NodeId, Rational, Rational)> = match col.as_slice() {
            [(i, a)] if a.is_positive() => vec![(minus(*i), plus(*i), Rational::one(), a.clone())],
            [(i, a)] => vec![(plus(*i), minus(*i), Rational::one(), -a)],
            [(i, a), (k, c)] => {
                let (pa, pc) = (a.abs(), c.abs());
                let up = pa.clone() / &pc;
                let down = pc.clone() / &pa;
                match (a.is_positive(), c.is_positive()) {
                    // +a at i, -c at k
                    (true, false) => vec![(plus(*k), plus(*i), up, pc.clone()), (minus(*i), minus(*k), down, pa)],
                    (false, true) => vec![(plus(*i), plus(*k), down, pa.clone()), (minus(*k), minus(*i), up, pc)],
                    (true, true) => vec![(minus(*k), plus(*i), up, pc.clone()), (minus(*i), plus(*k), down, pa)],
                    (false, false) => vec![(plus(*i), minus(*k), down, pa.clone()), (plus(*k), minus(*i), up, pc)],
                }
            }
            _ => unreachable!("columns are validated"),
        };
        let mut copies = Vec::with_capacity(shapes.len());
        for (tail, head, gain, scale) in shapes {
            let arc = arcs.len();
            if lp.upper[j].is_infinite() {
                arcs.push(GainEdge { from: tail, to: head, gain: gain.clone() });
                copies.push(ColumnCopy { arc, tail, head, gain, scale, secondary: None });
            } else {
                let k = node_count;
                node_count += 1;
                arcs.push(GainEdge { from: tail, to: k, gain: gain.clone() });
                arcs.push(GainEdge { from: head, to: k, gain: Rational::one() });
                copies.push(ColumnCopy { arc, tail, head, gain, scale, secondary: Some((k, arc + 1)) });
            }
        }
        columns.push(copies);
    }
    let mut mono = MonotoneInstance { system: GainSystem { node_count, arcs, demands: Vec::new() }, rows: n, columns };
    let mut demands = MonotoneInstance::demands_for(n, node_count, &lp.rhs);
    mono.add_capacity_demands(&lp.upper, &mut demands);
    mono.system.demands = demands;
    self_check(lp, &mono)?;
    Ok(mono)
}

fn self_check(lp: &LP2Instance, mono: &MonotoneInstance) -> Result<(), Lp2Error> {
    let x: Vec<Rational> = (0..lp.cols())
        .map(|j| match lp.upper[j].finite() {
            Some(u) => u / Rational::from_integer(2.into()),
            None => Rational::from_integer((j as i64 + 1).into()),
        })
        .collect();
    let b = lp.apply(&x);
    let mut demands = MonotoneInstance::demands_for(lp.rows, mono.system.node_count, &b);
    mono.add_capacity_demands(&lp.upper, &mut demands);
    let flow = mono.image(&x, &lp.upper);
    if flow.iter().any(|f| f.is_negative()) || mono.system.inflow(&flow) != demands {
        return Err(Lp2Error::Verification("network image of a test assignment breaks the network equations".into()));
    }
    if mono.recover(&flow) != x {
        return Err(Lp2Error::Verification("test assignment does not survive the round trip".into()));
    }
    Ok(())
}

/// Nodes reachable from a cycle whose gain product exceeds one.
pub fn reachable_from_gain_cycles(system: &GainSystem) -> Vec<bool> {
    generating_closure(system.node_count, &system.arcs).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relaxed {
    Feasible(Vec<Rational>),
    /// Node multipliers `y` with the sign of the relaxation.
    Infeasible(Vec<Rational>),
}

/// Decides `inflow >= b` by a maximum generalized flow from an artificial sink.
pub fn solve_lp2m_ge(system: &GainSystem) -> Result<Relaxed, Lp2Error> {
    let n = system.node_count;
    let (fed, cycles) = generating_closure(n, &system.arcs);
    let mut flow = vec![Rational::zero(); system.arcs.len()];
    let targets: Vec<(NodeId, Rational)> =
        (0..n).filter(|&v| fed[v] && system.demands[v].is_positive()).map(|v| (v, system.demands[v].clone())).collect();
    if !targets.is_empty() {
        let usable = |e: usize| fed[system.arcs[e].from] && fed[system.arcs[e].to];
        let supply = generating_supply(n, &system.arcs, &usable, &cycles, &targets)
            .ok_or_else(|| Lp2Error::Verification("cycle-fed node cannot be supplied".into()))?;
        for (f, s) in flow.iter_mut().zip(supply) {
            *f += s;
        }
    }
    let kept: Vec<NodeId> = (0..n).filter(|&v| !fed[v]).collect();
    if kept.iter().any(|&v| system.demands[v].is_positive()) {
        let mut index = vec![usize::MAX; n];
        for (p, &v) in kept.iter().enumerate() {
            index[v] = p;
        }
        let sink = kept.len();
        let mut arcs = Vec::new();
        let mut origin = Vec::new();
        for (e, a) in system.arcs.iter().enumerate() {
            if !fed[a.from] && !fed[a.to] {
                arcs.push(Arc::regular(index[a.from], index[a.to], a.gain.clone()));
                origin.push(e);
            }
        }
        let mut initial = vec![Rational::zero(); arcs.len()];
        let mut feeders = Vec::new();
        for &v in &kept {
            let b = &system.demands[v];
            if b.is_positive() {
                feeders.push((arcs.len(), v));
                arcs.push(Arc::regular(sink, index[v], Rational::one()));
                initial.push(b.clone());
            }
        }
        let mut demands: Vec<Rational> = kept.iter().map(|&v| system.demands[v].clone()).collect();
        demands.push(Rational::zero());
        let gains: Vec<&Rational> = arcs.iter().map(|a| &a.gain).collect();
        let values: Vec<&Rational> = demands.iter().chain(initial.iter()).collect();
        let bound = encoding_bound(&gains, &values, 2);
        let aux = from_big(bound.clone()).recip();
        for p in 0..kept.len() {
            arcs.push(Arc { tail: p, head: sink, gain: aux.clone(), kind: ArcKind::Auxiliary });
            initial.push(Rational::zero());
        }
        let inst = UncapInstance::new(
            kept.len() + 1,
            sink,
            arcs,
            demands,
            Some(bound.clone()),
            Some(Flow::from_values(initial)),
        )?;
        // any feasible flow that no longer uses the artificial feeders settles the question
        let mut unfed = |flow: &Flow| feeders.iter().all(|&(a, _)| flow[a].is_zero());
        let settled = match enhanced_continuous_scaling_until(&inst, &SolveOptions::default(), &mut |_| {}, &mut unfed)?
        {
            Run::Stopped(flow) => flow,
            Run::Finished(solution) => {
                if feeders.iter().any(|&(a, _)| solution.flow[a].is_positive()) {
                    let y = witness(&inst, &solution.flow, &solution.labels, &from_big(bound), &kept, n);
                    if !system.certifies(&y) || y.iter().any(|v| v.is_negative()) {
                        return Err(Lp2Error::Verification(
                            "extracted multipliers do not certify infeasibility".into(),
                        ));
                    }
                    return Ok(Relaxed::Infeasible(y));
                }
                solution.flow
            }
        };
        for (k, &e) in origin.iter().enumerate() {
            flow[e] = settled[k].clone();
        }
    }
    let inflow = system.inflow(&flow);
    if flow.iter().any(|f| f.is_negative()) || inflow.iter().zip(&system.demands).any(|(e, b)| e < b) {
        return Err(Lp2Error::Verification("relaxed flow misses a demand".into()));
    }
    Ok(Relaxed::Feasible(flow))
}

/// `y = 1/mu` on the nodes that neither sit at the auxiliary level nor are
/// reachable from such nodes in the residual graph; zero elsewhere.
fn witness(
    inst: &UncapInstance,
    flow: &Flow,
    labels: &crate::graph::Labeling,
    level: &Rational,
    kept: &[NodeId],
    node_count: usize,
) -> Vec<Rational> {
    let t = inst.sink();
    let mut reached: Vec<bool> = inst.nodes().map(|v| v != t && labels[v] == *level).collect();
    let residual: Vec<_> = residual_arcs(inst, flow).into_iter().filter(|r| r.from != t && r.to != t).collect();
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
    let mut y = vec![Rational::zero(); node_count];
    for (p, &v) in kept.iter().enumerate() {
        if !reached[p] {
            y[v] = labels[p].recip();
        }
    }
    y
}

/// Decides `inflow <= b` by reversing every arc.
pub fn solve_lp2m_le(system: &GainSystem) -> Result<Relaxed, Lp2Error> {
    let reversed = system.reversed();
    Ok(match solve_lp2m_ge(&reversed)? {
        Relaxed::Feasible(f) => Relaxed::Feasible(f.iter().zip(&reversed.arcs).map(|(v, a)| v * &a.gain).collect()),
        Relaxed::Infeasible(y) => Relaxed::Infeasible(y.into_iter().map(|v| -v).collect()),
    })
}

/// Moves `g` (inflow <= b) toward `f` (inflow >= b) by generating terms of
/// their difference until every node balances exactly.
pub fn combine_ge_le(system: &GainSystem, f: &[Rational], g: &[Rational]) -> Result<Vec<Rational>, Lp2Error> {
    let mut edges = Vec::with_capacity(system.arcs.len());
    let mut values = Vec::with_capacity(system.arcs.len());
    let mut forward = Vec::with_capacity(system.arcs.len());
    for (a, arc) in system.arcs.iter().enumerate() {
        if f[a] >= g[a] {
            edges.push(arc.clone());
            values.push(&f[a] - &g[a]);
            forward.push(true);
        } else {
            edges.push(GainEdge { from: arc.to, to: arc.from, gain: arc.gain.recip() });
            values.push(&arc.gain * (&g[a] - &f[a]));
            forward.push(false);
        }
    }
    let terms = decompose_flow_difference(system.node_count, &edges, &values)?;
    let mut out = g.to_vec();
    let mut missing: Vec<Rational> = system.inflow(g).iter().zip(&system.demands).map(|(e, b)| b - e).collect();
    for term in terms.iter().filter(|t| t.kind == TermKind::Generating) {
        let target = term.target.expect("generating terms have a target");
        if !missing[target].is_positive() {
            continue;
        }
        let delivered = term.net_at(&edges, target);
        let share = if delivered > missing[target] { &missing[target] / &delivered } else { Rational::one() };
        for (e, v) in &term.amounts {
            let v = v * &share;
            if forward[*e] {
                out[*e] += v;
            } else {
                out[*e] -= v / &system.arcs[*e].gain;
            }
        }
        missing[target] -= delivered * share;
    }
    if out.iter().any(|v| v.is_negative()) || system.inflow(&out) != system.demands {
        return Err(Lp2Error::Verification("combined flow does not balance every node".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lp2Outcome {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

/// Decides feasibility; the answer is verified exactly before it is returned.
pub fn solve_lp2(lp: &LP2Instance) -> Result<Lp2Outcome, Lp2Error> {
    let mono = to_monotone(lp)?;
    let infeasible = |y: Vec<Rational>| -> Result<Lp2Outcome, Lp2Error> {
        let cert = mono.certificate(&y);
        lp.check_certificate(&cert).map_err(Lp2Error::Verification)?;
        Ok(Lp2Outcome::Infeasible(cert))
    };
    let f = match solve_lp2m_ge(&mono.system)? {
        Relaxed::Feasible(f) => f,
        Relaxed::Infeasible(y) => return infeasible(y),
    };
    let g = match solve_lp2m_le(&mono.system)? {
        Relaxed::Feasible(g) => g,
        Relaxed::Infeasible(y) => return infeasible(y),
    };
    let exact = combine_ge_le(&mono.system, &f, &g)?;
    let x = mono.recover(&exact);
    lp.check_solution(&x).map_err(Lp2Error::Verification)?;
    Ok(Lp2Outcome::Feasible(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn inf() -> Extended {
        Extended::Infinite
    }

    fn two_by_two(upper: Extended) -> LP2Instance {
        // x1 - x2 = 0, x1 + x2 = 2
        LP2Instance::new(
            2,
            vec![vec![(0, int(1)), (1, int(1))], vec![(0, int(-1)), (1, int(1))]],
            vec![int(0), int(2)],
            vec![upper.clone(), upper],
        )
        .unwrap()
    }

    #[test]
    fn rejects_malformed_columns() {
        assert_eq!(LP2Instance::new(1, vec![vec![]], vec![int(0)], vec![inf()]), Err(Lp2Error::ZeroColumn(0)));
        assert_eq!(
            LP2Instance::new(1, vec![vec![(0, int(0))]], vec![int(0)], vec![inf()]),
            Err(Lp2Error::ZeroColumn(0))
        );
        assert_eq!(
            LP2Instance::new(2, vec![vec![(1, int(1)), (1, int(2))]], vec![int(0); 2], vec![inf()]),
            Err(Lp2Error::RepeatedRow(0, 1))
        );
        assert!(matches!(
            LP2Instance::new(3, vec![vec![(0, int(1)), (1, int(1)), (2, int(1))]], vec![int(0); 3], vec![inf()]),
            Err(Lp2Error::TooManyEntries(0))
        ));
    }

    #[test]
    fn monotone_layout_and_round_trip() {
        let lp = two_by_two(inf());
        let mono = to_monotone(&lp).unwrap();
        assert_eq!(mono.system.node_count, 4);
        assert_eq!(mono.system.arcs.len(), 4);
        assert_eq!(mono.system.demands, vec![int(0), int(2), int(0), int(-2)]);
        let x = vec![int(1), int(1)];
        let flow = mono.image(&x, lp.upper());
        assert_eq!(mono.system.inflow(&flow), mono.system.demands);
        assert_eq!(mono.recover(&flow), x);
    }

    #[test]
    fn single_entry_column_is_one_arc() {
        let lp = LP2Instance::new(1, vec![vec![(0, int(1))]], vec![int(0)], vec![inf()]).unwrap();
        let mono = to_monotone(&lp).unwrap();
        assert_eq!(mono.system.arcs, vec![GainEdge { from: 1, to: 0, gain: int(1) }]);
        assert_eq!(solve_lp2(&lp).unwrap(), Lp2Outcome::Feasible(vec![int(0)]));
    }

    #[test]
    fn empty_instance_is_feasible() {
        let lp = LP2Instance::new(0, vec![], vec![], vec![]).unwrap();
        assert_eq!(solve_lp2(&lp).unwrap(), Lp2Outcome::Feasible(vec![]));
    }

    #[test]
    fn gain_cycle_reachability() {
        let e = |from, to, gain| GainEdge { from, to, gain };
        let sys = |arcs| GainSystem { node_count: 4, arcs, demands: vec![int(0); 4] };
        assert_eq!(reachable_from_gain_cycles(&sys(vec![e(0, 1, int(1))])), vec![false; 4]);
        let z = reachable_from_gain_cycles(&sys(vec![e(0, 1, int(2)), e(1, 0, int(1)), e(1, 2, int(1))]));
        assert_eq!(z, vec![true, true, true, false]);
        let unit = reachable_from_gain_cycles(&sys(vec![e(0, 1, int(2)), e(1, 0, crate::rational::ratio(1, 2))]));
        assert_eq!(unit, vec![false; 4]);
    }

    #[test]
    fn relaxation_examples() {
        let lone = |b: i64| GainSystem { node_count: 1, arcs: vec![], demands: vec![int(b)] };
        assert_eq!(solve_lp2m_ge(&lone(-1)).unwrap(), Relaxed::Feasible(vec![]));
        assert_eq!(solve_lp2m_ge(&lone(1)).unwrap(), Relaxed::Infeasible(vec![int(1)]));
        // mirror images
        assert_eq!(solve_lp2m_le(&lone(1)).unwrap(), Relaxed::Feasible(vec![]));
        assert_eq!(solve_lp2m_le(&lone(-1)).unwrap(), Relaxed::Infeasible(vec![int(-1)]));
    }

    #[test]
    fn relaxations_on_a_lossy_chain() {
        // 0 -> 1 (gain 1/2), 1 -> 2 (gain 3); node 0 gives 2, node 2 takes 3
        let e = |from, to, gain| GainEdge { from, to, gain };
        let sys = GainSystem {
            node_count: 3,
            arcs: vec![e(0, 1, crate::rational::ratio(1, 2)), e(1, 2, int(3))],
            demands: vec![int(-2), int(0), int(3)],
        };
        let Relaxed::Feasible(f) = solve_lp2m_ge(&sys).unwrap() else { panic!("feasible") };
        let inflow = sys.inflow(&f);
        assert!(inflow.iter().zip(&sys.demands).all(|(e, b)| e >= b));
        let Relaxed::Feasible(g) = solve_lp2m_le(&sys).unwrap() else { panic!("feasible") };
        let exact = combine_ge_le(&sys, &f, &g).unwrap();
        assert_eq!(sys.inflow(&exact), sys.demands);
    }

    #[test]
    fn combine_keeps_an_exact_solution() {
        let e = |from, to, gain| GainEdge { from, to, gain };
        let sys = GainSystem { node_count: 2, arcs: vec![e(0, 1, int(2))], demands: vec![int(-1), int(2)] };
        let g = vec![int(1)];
        assert_eq!(combine_ge_le(&sys, &g, &g).unwrap(), g);
    }

    #[test]
    fn two_by_two_examples() {
        for upper in [inf(), Extended::Finite(int(2))] {
            let lp = two_by_two(upper);
            let Lp2Outcome::Feasible(x) = solve_lp2(&lp).unwrap() else { panic!("feasible") };
            assert_eq!(lp.apply(&x), lp.rhs());
        }
        let tight = two_by_two(Extended::Finite(crate::rational::ratio(1, 2)));
        let Lp2Outcome::Infeasible(cert) = solve_lp2(&tight).unwrap() else { panic!("infeasible") };
        assert!(tight.check_certificate(&cert).is_ok());
    }

    #[test]
    fn negative_sum_is_infeasible() {
        // x1 + x2 = -1
        let lp =
            LP2Instance::new(1, vec![vec![(0, int(1))], vec![(0, int(1))]], vec![int(-1)], vec![inf(), inf()]).unwrap();
        let Lp2Outcome::Infeasible(cert) = solve_lp2(&lp).unwrap() else { panic!("infeasible") };
        assert!(lp.check_certificate(&cert).is_ok());
        assert!(cert.y[0].is_negative());
    }
}
