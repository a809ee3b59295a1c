//! Line-oriented text formats for instances and solution reports.
//!
//! Node, column and row ids are 0-based. Arcs are named by their endpoints;
//! the k-th `init` or `flow` line for a pair goes to the k-th arc with that
//! pair, so parallel arcs stay addressable.

use crate::certify::{check_optimality_std, check_optimality_uncap, describe};
use crate::gainpath::{path_gain, GainEdge};
use crate::graph::{Arc, ArcKind, Flow, InstanceError, Labeling, NodeId, StdArc, StdInstance, UncapInstance};
use crate::lp2::{FarkasCertificate, LP2Instance};
use crate::rational::{format_rational, parse_extended, parse_rational, Extended, Rational};
use crate::transform::UnboundedCertificate;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based; 0 for problems with the instance as a whole.
    pub line: usize,
    pub reason: String,
}

fn fail<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, reason: reason.into() })
}

fn whole(err: InstanceError) -> ParseError {
    let reason = match err {
        InstanceError::MissingSinkArc(i) => {
            format!("node {i} has no arc into the sink; every non-sink node needs one")
        }
        other => other.to_string(),
    };
    ParseError { line: 0, reason }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Uncap(UncapInstance),
    Std(StdInstance),
    Lp2(LP2Instance),
}

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(k, raw)| Line { number: k + 1, words: raw.split('#').next().unwrap_or("").split_whitespace().collect() })
        .filter(|l| !l.words.is_empty())
        .collect()
}

impl Line<'_> {
    fn expect(&self, shape: &[&str]) -> Result<(), ParseError> {
        let ok = self.words.len() == shape.len()
            && shape.iter().zip(&self.words).all(|(want, got)| want.is_empty() || want == got);
        if ok {
            Ok(())
        } else {
            let pattern: Vec<&str> = shape.iter().map(|w| if w.is_empty() { "_" } else { w }).collect();
            fail(self.number, format!("expected `{}`", pattern.join(" ")))
        }
    }

    fn index(&self, k: usize) -> Result<usize, ParseError> {
        self.words[k].parse().or_else(|_| fail(self.number, format!("`{}` is not an index", self.words[k])))
    }

    fn rational(&self, k: usize) -> Result<Rational, ParseError> {
        parse_rational(self.words[k]).or_else(|e| fail(self.number, e.to_string()))
    }

    fn extended(&self, k: usize) -> Result<Extended, ParseError> {
        parse_extended(self.words[k]).or_else(|e| fail(self.number, e.to_string()))
    }
}

fn once<T>(slot: &mut Option<T>, value: T, line: &Line) -> Result<(), ParseError> {
    if slot.is_some() {
        return fail(line.number, format!("`{}` given twice", line.words[0]));
    }
    *slot = Some(value);
    Ok(())
}

fn required<T>(slot: Option<T>, what: &str) -> Result<T, ParseError> {
    slot.ok_or_else(|| ParseError { line: 0, reason: format!("missing `{what}`") })
}

/// Spreads `(tail, head, value)` entries over arcs by occurrence order.
pub fn assign_by_endpoints(
    endpoints: &[(NodeId, NodeId)],
    entries: &[(NodeId, NodeId, Rational)],
) -> Result<Vec<Rational>, String> {
    let mut out = vec![Rational::zero(); endpoints.len()];
    let mut used = vec![false; endpoints.len()];
    for (tail, head, value) in entries {
        let slot = (0..endpoints.len())
            .find(|&a| !used[a] && endpoints[a] == (*tail, *head))
            .ok_or_else(|| format!("no remaining arc {tail} -> {head}"))?;
        used[slot] = true;
        out[slot] = value.clone();
    }
    Ok(out)
}

/// Parses any of the three instance kinds, running the full validation.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let lines = lines(text);
    let Some(first) = lines.first() else { return fail(0, "empty input") };
    first.expect(&["problem", ""])?;
    let rest = &lines[1..];
    match first.words[1] {
        "uncap" => parse_uncap(rest).map(Instance::Uncap),
        "std" => parse_std(rest).map(Instance::Std),
        "lp2" => parse_lp2(rest).map(Instance::Lp2),
        other => fail(first.number, format!("unknown problem kind `{other}`")),
    }
}

fn check_node(line: &Line, id: usize, nodes: Option<usize>) -> Result<usize, ParseError> {
    let n = nodes.ok_or_else(|| ParseError { line: line.number, reason: "`nodes` must come first".into() })?;
    if id >= n {
        return fail(line.number, format!("node {id} is out of range"));
    }
    Ok(id)
}

fn parse_uncap(lines: &[Line]) -> Result<UncapInstance, ParseError> {
    let (mut nodes, mut sink, mut bound) = (None, None, None::<BigInt>);
    let mut demands: Vec<Option<Rational>> = Vec::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut inits: Vec<(NodeId, NodeId, Rational, usize)> = Vec::new();
    for line in lines {
        match line.words[0] {
            "nodes" => {
                line.expect(&["nodes", ""])?;
                once(&mut nodes, line.index(1)?, line)?;
                demands = vec![None; nodes.unwrap_or(0)];
            }
            "sink" => {
                line.expect(&["sink", ""])?;
                let t = check_node(line, line.index(1)?, nodes)?;
                once(&mut sink, t, line)?;
            }
            "bound" => {
                line.expect(&["bound", ""])?;
                let b: BigInt =
                    line.words[1].parse().or_else(|_| fail(line.number, "bound must be a positive integer"))?;
                once(&mut bound, b, line)?;
            }
            "node" => {
                line.expect(&["node", "", "demand", ""])?;
                let i = check_node(line, line.index(1)?, nodes)?;
                once(&mut demands[i], line.rational(3)?, line)?;
            }
            "arc" => {
                line.expect(&["arc", "", "", "gain", ""])?;
                let tail = check_node(line, line.index(1)?, nodes)?;
                let head = check_node(line, line.index(2)?, nodes)?;
                let gain = line.rational(4)?;
                if gain <= Rational::zero() {
                    return fail(line.number, "gains must be positive");
                }
                arcs.push(Arc::regular(tail, head, gain));
            }
            "auxiliary" => {
                line.expect(&["auxiliary", ""])?;
                let tail = check_node(line, line.index(1)?, nodes)?;
                let t =
                    sink.ok_or_else(|| ParseError { line: line.number, reason: "`sink` must come first".into() })?;
                // the gain is fixed once the bound is known
                arcs.push(Arc { tail, head: t, gain: Rational::one(), kind: ArcKind::Auxiliary });
            }
            "init" => {
                line.expect(&["init", "", "", ""])?;
                let tail = check_node(line, line.index(1)?, nodes)?;
                let head = check_node(line, line.index(2)?, nodes)?;
                inits.push((tail, head, line.rational(3)?, line.number));
            }
            other => return fail(line.number, format!("unknown directive `{other}`")),
        }
    }
    let n = required(nodes, "nodes")?;
    let t = required(sink, "sink")?;
    if arcs.iter().any(|a| a.kind == ArcKind::Auxiliary) {
        let b = bound.clone().ok_or_else(|| ParseError { line: 0, reason: "auxiliary arcs need `bound`".into() })?;
        if b <= BigInt::zero() {
            return fail(0, "bound must be a positive integer");
        }
        let gain = Rational::from_integer(b).recip();
        for arc in arcs.iter_mut().filter(|a| a.kind == ArcKind::Auxiliary) {
            arc.gain = gain.clone();
        }
    }
    let endpoints: Vec<(NodeId, NodeId)> = arcs.iter().map(|a| (a.tail, a.head)).collect();
    let mut initial = vec![Rational::zero(); arcs.len()];
    let mut used = vec![false; arcs.len()];
    for (tail, head, value, number) in inits {
        let Some(slot) = (0..arcs.len()).find(|&a| !used[a] && endpoints[a] == (tail, head)) else {
            return fail(number, format!("no remaining arc {tail} -> {head} for this initial flow"));
        };
        used[slot] = true;
        initial[slot] = value;
    }
    let demands = demands.into_iter().map(|d| d.unwrap_or_else(Rational::zero)).collect();
    UncapInstance::new(n, t, arcs, demands, bound, Some(Flow::from_values(initial))).map_err(whole)
}

fn parse_std(lines: &[Line]) -> Result<StdInstance, ParseError> {
    let (mut nodes, mut sink) = (None, None);
    let mut arcs = Vec::new();
    for line in lines {
        match line.words[0] {
            "nodes" => {
                line.expect(&["nodes", ""])?;
                once(&mut nodes, line.index(1)?, line)?;
            }
            "sink" => {
                line.expect(&["sink", ""])?;
                let t = check_node(line, line.index(1)?, nodes)?;
                once(&mut sink, t, line)?;
            }
            "arc" => {
                line.expect(&["arc", "", "", "gain", "", "cap", ""])?;
                let tail = check_node(line, line.index(1)?, nodes)?;
                let head = check_node(line, line.index(2)?, nodes)?;
                let gain = line.rational(4)?;
                if gain <= Rational::zero() {
                    return fail(line.number, "gains must be positive");
                }
                arcs.push(StdArc { tail, head, gain, capacity: line.extended(6)? });
            }
            other => return fail(line.number, format!("unknown directive `{other}`")),
        }
    }
    StdInstance::new(required(nodes, "nodes")?, required(sink, "sink")?, arcs).map_err(whole)
}

fn parse_lp2(lines: &[Line]) -> Result<LP2Instance, ParseError> {
    let mut shape: Option<(usize, usize)> = None;
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut rhs: Vec<Option<Rational>> = Vec::new();
    let mut upper: Vec<Option<Extended>> = Vec::new();
    let dims = |line: &Line, shape: Option<(usize, usize)>| {
        shape.ok_or_else(|| ParseError { line: line.number, reason: "`rows .. cols ..` must come first".into() })
    };
    for line in lines {
        match line.words[0] {
            "rows" => {
                line.expect(&["rows", "", "cols", ""])?;
                let (n, m) = (line.index(1)?, line.index(3)?);
                once(&mut shape, (n, m), line)?;
                columns = vec![Vec::new(); m];
                rhs = vec![None; n];
                upper = vec![None; m];
            }
            "entry" => {
                line.expect(&["entry", "", "", ""])?;
                let (n, m) = dims(line, shape)?;
                let (j, i) = (line.index(1)?, line.index(2)?);
                if j >= m || i >= n {
                    return fail(line.number, "entry is outside the matrix");
                }
                if columns[j].iter().any(|(r, _)| *r == i) {
                    return fail(line.number, format!("entry ({j}, {i}) given twice"));
                }
                if columns[j].len() == 2 {
                    return fail(line.number, format!("column {j} already has two entries"));
                }
                columns[j].push((i, line.rational(3)?));
            }
            "rhs" => {
                line.expect(&["rhs", "", ""])?;
                let (n, _) = dims(line, shape)?;
                let i = line.index(1)?;
                if i >= n {
                    return fail(line.number, format!("row {i} is out of range"));
                }
                once(&mut rhs[i], line.rational(2)?, line)?;
            }
            "ub" => {
                line.expect(&["ub", "", ""])?;
                let (_, m) = dims(line, shape)?;
                let j = line.index(1)?;
                if j >= m {
                    return fail(line.number, format!("column {j} is out of range"));
                }
                once(&mut upper[j], line.extended(2)?, line)?;
            }
            other => return fail(line.number, format!("unknown directive `{other}`")),
        }
    }
    let (n, _) = required(shape, "rows .. cols ..")?;
    let rhs = rhs.into_iter().map(|v| v.unwrap_or_else(Rational::zero)).collect();
    let upper = upper.into_iter().map(|v| v.unwrap_or(Extended::Infinite)).collect();
    LP2Instance::new(n, columns, rhs, upper).map_err(|e| ParseError { line: 0, reason: e.to_string() })
}

/// Values per arc as `(kind tail head value)` lines, writing zeros only where
/// a later parallel arc needs the slot.
fn arc_values(out: &mut String, kind: &str, endpoints: &[(NodeId, NodeId)], values: &[Rational], all: bool) {
    let mut written = vec![false; endpoints.len()];
    for a in 0..endpoints.len() {
        if !all && values[a].is_zero() {
            continue;
        }
        for b in 0..=a {
            if !written[b] && endpoints[b] == endpoints[a] {
                written[b] = true;
                let (i, j) = endpoints[b];
                let _ = writeln!(out, "{kind} {i} {j} {}", format_rational(&values[b]));
            }
        }
    }
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    match instance {
        Instance::Uncap(inst) => {
            let _ = writeln!(
                out,
                "problem uncap\nnodes {}\nsink {}\nbound {}",
                inst.node_count(),
                inst.sink(),
                inst.bound()
            );
            for (i, b) in inst.demands().iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let _ = writeln!(out, "node {i} demand {}", format_rational(b));
            }
            for arc in inst.arcs() {
                let _ = match arc.kind {
                    ArcKind::Regular => {
                        writeln!(out, "arc {} {} gain {}", arc.tail, arc.head, format_rational(&arc.gain))
                    }
                    ArcKind::Auxiliary => writeln!(out, "auxiliary {}", arc.tail),
                };
            }
            let endpoints: Vec<_> = inst.arcs().iter().map(|a| (a.tail, a.head)).collect();
            arc_values(&mut out, "init", &endpoints, inst.initial_flow().values(), false);
        }
        Instance::Std(inst) => {
            let _ = writeln!(out, "problem std\nnodes {}\nsink {}", inst.node_count(), inst.sink());
            for arc in inst.arcs() {
                let _ = writeln!(
                    out,
                    "arc {} {} gain {} cap {}",
                    arc.tail,
                    arc.head,
                    format_rational(&arc.gain),
                    arc.capacity
                );
            }
        }
        Instance::Lp2(lp) => {
            let _ = writeln!(out, "problem lp2\nrows {} cols {}", lp.rows(), lp.cols());
            for j in 0..lp.cols() {
                for (i, a) in lp.column(j) {
                    let _ = writeln!(out, "entry {j} {i} {}", format_rational(a));
                }
            }
            for (i, b) in lp.rhs().iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let _ = writeln!(out, "rhs {i} {}", format_rational(b));
            }
            for (j, u) in lp.upper().iter().enumerate().filter(|(_, u)| !u.is_infinite()) {
                let _ = writeln!(out, "ub {j} {u}");
            }
        }
    }
    out
}

/// What a solve produced, in a form that can be written out and checked later.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Optimal { value: Rational, flow: Vec<(NodeId, NodeId, Rational)>, labels: Vec<(NodeId, Extended)> },
    Unbounded { cycle: Vec<(NodeId, NodeId)>, path: Vec<(NodeId, NodeId)> },
    Feasible { x: Vec<Rational> },
    Infeasible { y: Vec<Rational>, w: Vec<Rational> },
}

impl Report {
    pub fn optimal_uncap(inst: &UncapInstance, flow: &Flow, labels: &Labeling, value: &Rational) -> Self {
        Report::Optimal {
            value: value.clone(),
            flow: inst.arcs().iter().zip(flow.values()).map(|(a, f)| (a.tail, a.head, f.clone())).collect(),
            labels: labels.values().iter().cloned().map(Extended::Finite).enumerate().collect(),
        }
    }

    pub fn optimal_std(inst: &StdInstance, flow: &Flow, labels: &[Extended], value: &Rational) -> Self {
        Report::Optimal {
            value: value.clone(),
            flow: inst.arcs().iter().zip(flow.values()).map(|(a, f)| (a.tail, a.head, f.clone())).collect(),
            labels: labels.iter().cloned().enumerate().collect(),
        }
    }

    pub fn unbounded_std(inst: &StdInstance, cert: &UnboundedCertificate) -> Self {
        let ends: Vec<_> = inst.arcs().iter().map(|a| (a.tail, a.head)).collect();
        Self::unbounded(&ends, cert)
    }

    pub fn unbounded_uncap(inst: &UncapInstance, cert: &UnboundedCertificate) -> Self {
        let ends: Vec<_> = inst.arcs().iter().map(|a| (a.tail, a.head)).collect();
        Self::unbounded(&ends, cert)
    }

    fn unbounded(ends: &[(NodeId, NodeId)], cert: &UnboundedCertificate) -> Self {
        let pick = |ids: &[usize]| ids.iter().map(|&a| ends[a]).collect();
        Report::Unbounded { cycle: pick(&cert.cycle), path: pick(&cert.path) }
    }

    pub fn infeasible(cert: &FarkasCertificate) -> Self {
        Report::Infeasible { y: cert.y.clone(), w: cert.w.clone() }
    }
}

pub fn write_report(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Optimal { value, flow, labels } => {
            let _ = writeln!(out, "status optimal\nvalue {}", format_rational(value));
            for (i, j, f) in flow {
                let _ = writeln!(out, "flow {i} {j} {}", format_rational(f));
            }
            for (i, mu) in labels {
                let _ = writeln!(out, "label {i} {mu}");
            }
        }
        Report::Unbounded { cycle, path } => {
            out.push_str("status unbounded\n");
            for (i, j) in cycle {
                let _ = writeln!(out, "cycle {i} {j}");
            }
            for (i, j) in path {
                let _ = writeln!(out, "path {i} {j}");
            }
        }
        Report::Feasible { x } => {
            out.push_str("status feasible\n");
            for (j, v) in x.iter().enumerate() {
                let _ = writeln!(out, "x {j} {}", format_rational(v));
            }
        }
        Report::Infeasible { y, w } => {
            out.push_str("status infeasible\n");
            for (i, v) in y.iter().enumerate() {
                let _ = writeln!(out, "y {i} {}", format_rational(v));
            }
            for (j, v) in w.iter().enumerate() {
                let _ = writeln!(out, "w {j} {}", format_rational(v));
            }
        }
    }
    out
}

fn dense(entries: Vec<(usize, Rational)>, line: usize) -> Result<Vec<Rational>, ParseError> {
    let len = entries.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
    let mut out: Vec<Option<Rational>> = vec![None; len];
    for (k, v) in entries {
        if out[k].replace(v).is_some() {
            return fail(line, format!("index {k} given twice"));
        }
    }
    Ok(out.into_iter().map(|v| v.unwrap_or_else(Rational::zero)).collect())
}

pub fn parse_report(text: &str) -> Result<Report, ParseError> {
    let lines = lines(text);
    let Some(first) = lines.first() else { return fail(0, "empty input") };
    first.expect(&["status", ""])?;
    let status = first.words[1];
    let (mut value, mut flow, mut labels) = (None, Vec::new(), Vec::new());
    let (mut cycle, mut path) = (Vec::new(), Vec::new());
    let (mut x, mut y, mut w) = (Vec::new(), Vec::new(), Vec::new());
    let last = lines.last().map_or(0, |l| l.number);
    for line in &lines[1..] {
        let allowed = match status {
            "optimal" => &["value", "flow", "label"][..],
            "unbounded" => &["cycle", "path"][..],
            "feasible" => &["x"][..],
            "infeasible" => &["y", "w"][..],
            other => return fail(first.number, format!("unknown status `{other}`")),
        };
        if !allowed.contains(&line.words[0]) {
            return fail(line.number, format!("`{}` does not belong to a `{status}` report", line.words[0]));
        }
        match line.words[0] {
            "value" => {
                line.expect(&["value", ""])?;
                once(&mut value, line.rational(1)?, line)?;
            }
            "flow" => {
                line.expect(&["flow", "", "", ""])?;
                flow.push((line.index(1)?, line.index(2)?, line.rational(3)?));
            }
            "label" => {
                line.expect(&["label", "", ""])?;
                labels.push((line.index(1)?, line.extended(2)?));
            }
            "cycle" | "path" => {
                line.expect(&[line.words[0], "", ""])?;
                let pair = (line.index(1)?, line.index(2)?);
                if line.words[0] == "cycle" {
                    cycle.push(pair);
                } else {
                    path.push(pair);
                }
            }
            kind => {
                line.expect(&[kind, "", ""])?;
                let entry = (line.index(1)?, line.rational(2)?);
                match kind {
                    "x" => x.push(entry),
                    "y" => y.push(entry),
                    _ => w.push(entry),
                }
            }
        }
    }
    Ok(match status {
        "optimal" => Report::Optimal { value: required(value, "value")?, flow, labels },
        "unbounded" => Report::Unbounded { cycle, path },
        "feasible" => Report::Feasible { x: dense(x, last)? },
        _ => Report::Infeasible { y: dense(y, last)?, w: dense(w, last)? },
    })
}

fn dense_labels(node_count: usize, labels: &[(NodeId, Extended)]) -> Result<Vec<Extended>, String> {
    let mut out: Vec<Option<Extended>> = vec![None; node_count];
    for (i, mu) in labels {
        let slot = out.get_mut(*i).ok_or_else(|| format!("label for unknown node {i}"))?;
        if slot.replace(mu.clone()).is_some() {
            return Err(format!("node {i} has two labels"));
        }
    }
    out.into_iter().enumerate().map(|(i, mu)| mu.ok_or_else(|| format!("node {i} has no label"))).collect()
}

fn padded(values: &[Rational], len: usize, what: &str) -> Result<Vec<Rational>, String> {
    if values.len() > len {
        return Err(format!("too many {what} entries"));
    }
    let mut out = values.to_vec();
    out.resize(len, Rational::zero());
    Ok(out)
}

/// Verifies a report against its instance with the exact certificate checks.
pub fn check_report(instance: &Instance, report: &Report) -> Result<(), String> {
    match (instance, report) {
        (Instance::Uncap(inst), Report::Optimal { value, flow, labels }) => {
            let endpoints: Vec<_> = inst.arcs().iter().map(|a| (a.tail, a.head)).collect();
            let flow = Flow::from_values(assign_by_endpoints(&endpoints, flow)?);
            let mut finite = Vec::new();
            for mu in dense_labels(inst.node_count(), labels)? {
                finite.push(mu.finite().cloned().ok_or("uncapacitated labels must be finite")?);
            }
            check_optimality_uncap(inst, &flow, &Labeling::from_values(finite)).map_err(|v| describe(&v))?;
            let e_t = crate::views::excess(inst, &flow, inst.sink());
            if e_t != *value {
                return Err(format!("reported value {value} differs from the sink excess {e_t}"));
            }
            Ok(())
        }
        (Instance::Std(inst), Report::Optimal { value, flow, labels }) => {
            let endpoints: Vec<_> = inst.arcs().iter().map(|a| (a.tail, a.head)).collect();
            let flow = Flow::from_values(assign_by_endpoints(&endpoints, flow)?);
            let labels = dense_labels(inst.node_count(), labels)?;
            check_optimality_std(inst, &flow, &labels).map_err(|v| describe(&v))?;
            if inst.objective(&flow) != *value {
                return Err(format!("reported value {value} differs from the objective"));
            }
            Ok(())
        }
        (Instance::Std(inst), Report::Unbounded { cycle, path }) => {
            let open: Vec<_> = inst
                .arcs()
                .iter()
                .filter(|a| a.capacity.is_infinite())
                .map(|a| GainEdge { from: a.tail, to: a.head, gain: a.gain.clone() })
                .collect();
            check_unbounded(&open, inst.sink(), cycle, path)
        }
        (Instance::Uncap(inst), Report::Unbounded { cycle, path }) => {
            let open: Vec<_> = inst
                .arcs()
                .iter()
                .filter(|a| a.kind == ArcKind::Regular)
                .map(|a| GainEdge { from: a.tail, to: a.head, gain: a.gain.clone() })
                .collect();
            check_unbounded(&open, inst.sink(), cycle, path)
        }
        (Instance::Lp2(lp), Report::Feasible { x }) => lp.check_solution(&padded(x, lp.cols(), "x")?),
        (Instance::Lp2(lp), Report::Infeasible { y, w }) => {
            lp.check_certificate(&FarkasCertificate { y: padded(y, lp.rows(), "y")?, w: padded(w, lp.cols(), "w")? })
        }
        _ => Err("report kind does not match the instance".into()),
    }
}

/// A closed walk over `open` arcs with gain above one, plus a walk from one
/// of its nodes to the sink. Parallel arcs resolve to the best gain.
fn check_unbounded(
    open: &[GainEdge],
    sink: NodeId,
    cycle: &[(NodeId, NodeId)],
    path: &[(NodeId, NodeId)],
) -> Result<(), String> {
    let best = |&(i, j): &(NodeId, NodeId)| -> Result<GainEdge, String> {
        open.iter()
            .filter(|e| e.from == i && e.to == j)
            .map(|e| e.gain.clone())
            .max()
            .map(|gain| GainEdge { from: i, to: j, gain })
            .ok_or_else(|| format!("no uncapacitated arc {i} -> {j}"))
    };
    let cycle: Vec<GainEdge> = cycle.iter().map(best).collect::<Result<_, _>>()?;
    let path: Vec<GainEdge> = path.iter().map(best).collect::<Result<_, _>>()?;
    let Some(first) = cycle.first() else { return Err("empty cycle".into()) };
    let chained = |walk: &[GainEdge]| walk.windows(2).all(|p| p[0].to == p[1].from);
    if !chained(&cycle) || cycle.last().map(|e| e.to) != Some(first.from) {
        return Err("cycle arcs do not form a closed walk".into());
    }
    if path_gain(&cycle, &(0..cycle.len()).collect::<Vec<_>>()) <= Rational::one() {
        return Err("cycle gain is not above one".into());
    }
    let start = path.first().map_or(sink, |e| e.from);
    if !chained(&path) || path.last().map_or(sink, |e| e.to) != sink {
        return Err("path does not end at the sink".into());
    }
    if !cycle.iter().any(|e| e.from == start) {
        return Err("path does not start on the cycle".into());
    }
    Ok(())
}
