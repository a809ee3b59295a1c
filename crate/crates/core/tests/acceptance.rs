//! Acceptance criteria for the solver suite. Runs without the libtest harness
//! so every criterion prints one PASS or FAIL line; exits nonzero on failure.

use gflow_core::certify::{check_optimality_std, check_optimality_uncap, describe, onaga_solve};
use gflow_core::decompose::{decompose_flow_difference, net_flow, recompose};
use gflow_core::enhanced::enhanced_continuous_scaling_with;
use gflow_core::error::SolveError;
use gflow_core::format::{check_report, Instance, Report};
use gflow_core::gainpath::GainEdge;
use gflow_core::generate::{random_lp2, random_std, random_uncap, GenParams};
use gflow_core::graph::{Arc, Labeling, UncapInstance};
use gflow_core::lp2::{solve_lp2, LP2Instance, Lp2Outcome};
use gflow_core::maxflow::{tight_flow, TightFlowError};
use gflow_core::rational::{int, log2_approx, ratio, Extended, Rational};
use gflow_core::scaling::{continuous_scaling, continuous_scaling_with, Solution, SolveOptions};
use gflow_core::trace::{IterationClass, IterationKind, TraceRecord};
use gflow_core::transform::{recover_standard_solution, solve_standard, uncapacitate, StdOutcome, TransformOutcome};
use gflow_core::views::{excess, is_tight, relabeled_demand, relabeled_excess};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::{Duration, Instant};

const CERTIFICATE_SEEDS: u64 = 500;
const TIME_LIMIT: Duration = Duration::from_secs(2);
const ORACLE_INSTANCES: usize = 200;
const ORACLE_STEPS: usize = 100_000;
const STD_INSTANCES: u64 = 200;
const LP2_INSTANCES: u64 = 300;
const FM_MAX_COLUMNS: usize = 6;
const TIGHT_FLOW_CALLS: usize = 500;
const DECOMPOSITION_FLOWS: u64 = 500;

type Outcome = Result<String, String>;

struct Run {
    solution: Solution,
    records: Vec<TraceRecord>,
    elapsed: Duration,
}

struct Case {
    instance: UncapInstance,
    weak: Result<Run, String>,
    strong: Result<Run, String>,
}

type Solver = fn(&UncapInstance, &SolveOptions, &mut dyn FnMut(&TraceRecord)) -> Result<Solution, SolveError>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn traced(inst: &UncapInstance, solver: Solver) -> Result<Run, String> {
    let mut records = Vec::new();
    let start = Instant::now();
    let solution =
        solver(inst, &SolveOptions::instrumented(), &mut |r| records.push(r.clone())).map_err(|e| e.to_string())?;
    Ok(Run { solution, records, elapsed: start.elapsed() })
}

fn certificate_corpus() -> Vec<Case> {
    (0..CERTIFICATE_SEEDS)
        .map(|seed| {
            let nodes = 2 + (seed % 7) as usize;
            let arcs = nodes + (seed / 7 % (25 - nodes as u64)) as usize;
            let instance = random_uncap(GenParams { nodes, arcs, bits: 4, seed });
            let weak = traced(&instance, continuous_scaling_with);
            let strong = traced(&instance, enhanced_continuous_scaling_with);
            Case { instance, weak, strong }
        })
        .collect()
}

fn certificates(corpus: &[Case]) -> Outcome {
    let mut slowest = Duration::ZERO;
    for (seed, case) in corpus.iter().enumerate() {
        let inst = &case.instance;
        if inst.node_count() > 8 || inst.arc_count() > 24 {
            return Err(format!("seed {seed}: instance exceeds 8 nodes or 24 arcs"));
        }
        for (name, run) in [("weak", &case.weak), ("strong", &case.strong)] {
            let run = run.as_ref().map_err(|e| format!("seed {seed} {name}: {e}"))?;
            check_optimality_uncap(inst, &run.solution.flow, &run.solution.labels)
                .map_err(|v| format!("seed {seed} {name}: {}", describe(&v)))?;
            slowest = slowest.max(run.elapsed);
        }
        let time = case.weak.as_ref().unwrap().elapsed + case.strong.as_ref().unwrap().elapsed;
        if time > TIME_LIMIT {
            return Err(format!("seed {seed}: both solvers together took {time:?}, limit {TIME_LIMIT:?}"));
        }
    }
    Ok(format!("{} instances, both solvers certified, slowest single run {slowest:.2?}", corpus.len()))
}

fn oracle_agreement() -> Outcome {
    let (mut agreed, mut skipped, mut seed) = (0, 0, 0u64);
    while agreed < ORACLE_INSTANCES {
        if seed > 10 * ORACLE_INSTANCES as u64 {
            return Err(format!("only {agreed} instances where the oracle finished"));
        }
        let nodes = 2 + (seed % 5) as usize;
        let inst = random_uncap(GenParams { nodes, arcs: nodes + (seed % 9) as usize, bits: 4, seed: 10_000 + seed });
        seed += 1;
        let Ok(oracle) = onaga_solve(&inst, ORACLE_STEPS) else {
            skipped += 1;
            continue;
        };
        let weak = continuous_scaling(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let strong =
            gflow_core::enhanced::enhanced_continuous_scaling(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        if weak.value != oracle.value || strong.value != oracle.value {
            return Err(format!(
                "instance {seed}: oracle {} weak {} strong {}",
                oracle.value, weak.value, strong.value
            ));
        }
        agreed += 1;
    }
    Ok(format!("{agreed} instances agree exactly, {skipped} skipped for oracle step limit"))
}

fn invariants(corpus: &[Case]) -> Outcome {
    let mut records = 0;
    for (seed, case) in corpus.iter().enumerate() {
        for (name, run) in [("weak", &case.weak), ("strong", &case.strong)] {
            let run = run.as_ref().map_err(|e| format!("seed {seed} {name}: {e}"))?;
            if let Some(v) = run.solution.stats.violations.first() {
                return Err(format!("seed {seed} {name}: {v}"));
            }
            for r in &run.records {
                if let Some(v) = r.violations.first() {
                    return Err(format!("seed {seed} {name} iteration {}: {v}", r.iteration));
                }
            }
            records += run.records.len();
        }
        // recheck the weak run's potential and Δ straight from the trace; a
        // step may only grow Ψ through the 3d+7 terms of nodes joining T0,
        // while other terms can drop in the same step
        let entry_total: i64 = case.instance.non_sink_nodes().map(|i| 3 * case.instance.degree(i) as i64 + 7).sum();
        let weak = &case.weak.as_ref().unwrap().records;
        for pair in weak.windows(2) {
            let (before, after) = (&pair[0], &pair[1]);
            if after.delta > before.delta {
                return Err(format!("seed {seed}: Δ grew at iteration {}", after.iteration));
            }
            if after.kind == IterationKind::Step {
                if after.psi - before.psi > entry_total {
                    return Err(format!("seed {seed}: Ψ grew in elementary step {}", after.iteration));
                }
            } else if after.class == IterationClass::Shrinking && after.psi > before.psi - 1 {
                return Err(format!("seed {seed}: Ψ did not drop in shrinking iteration {}", after.iteration));
            }
        }
    }
    Ok(format!("{records} iteration records, zero violations"))
}

fn iteration_bounds(corpus: &[Case]) -> Outcome {
    let (mut worst_weak, mut worst_strong) = (0f64, 0f64);
    for (seed, case) in corpus.iter().enumerate() {
        let (n, m) = (case.instance.node_count() as f64, case.instance.arc_count() as f64);
        let weak = &case.weak.as_ref().map_err(|e| e.clone())?.solution.stats;
        if !weak.initial_delta.is_zero() {
            let log = if weak.final_delta.is_zero() {
                return Err(format!("seed {seed}: final Δ is zero"));
            } else {
                log2_approx(&(&weak.initial_delta / &weak.final_delta)).max(0.0)
            };
            let total = 26.0 * m * n * log;
            let shrinking = 13.0 * m * log;
            if weak.iterations as f64 > total || weak.shrinking as f64 > shrinking {
                return Err(format!(
                    "seed {seed}: weak ran {} iterations ({} shrinking), bounds {total:.0} and {shrinking:.0}",
                    weak.iterations, weak.shrinking
                ));
            }
            if total > 0.0 {
                worst_weak = worst_weak.max(weak.iterations as f64 / total);
            }
        }
        let strong = &case.strong.as_ref().map_err(|e| e.clone())?.solution.stats;
        let shrinking = 195.0 * n * n * m;
        let total = 2.0 * n * (strong.shrinking as f64 + 1.0);
        if strong.shrinking as f64 > shrinking || strong.iterations as f64 > total {
            return Err(format!(
                "seed {seed}: strong ran {} iterations ({} shrinking), bounds {total:.0} and {shrinking:.0}",
                strong.iterations, strong.shrinking
            ));
        }
        worst_strong = worst_strong.max(strong.iterations as f64 / total);
    }
    Ok(format!("largest fraction of the bound used: weak {worst_weak:.3}, strong {worst_strong:.3}"))
}

fn contractions(corpus: &[Case]) -> Outcome {
    let (mut runs, mut arcs) = (0, 0);
    for (seed, case) in corpus.iter().enumerate() {
        let run = case.strong.as_ref().map_err(|e| e.clone())?;
        let contracted = &run.solution.stats.contracted_arcs;
        if contracted.is_empty() {
            continue;
        }
        runs += 1;
        arcs += contracted.len();
        for &a in contracted {
            if !is_tight(&case.instance, &run.solution.labels, a) {
                return Err(format!("seed {seed}: contracted arc {a} is not tight under the final labels"));
            }
        }
        check_optimality_uncap(&case.instance, &run.solution.flow, &run.solution.labels)
            .map_err(|v| format!("seed {seed}: {}", describe(&v)))?;
    }
    if runs == 0 {
        return Err("no run contracted an arc, nothing was tested".into());
    }
    Ok(format!("{runs} runs contracted {arcs} arcs, all tight and certified"))
}

fn transform_round_trip() -> Outcome {
    let (mut optimal, mut unbounded) = (0, 0);
    for seed in 0..STD_INSTANCES {
        let nodes = 2 + (seed % 5) as usize;
        let arcs = 1 + (seed / 5 % 15) as usize;
        let std = random_std(GenParams { nodes, arcs, bits: 4, seed: 20_000 + seed });
        if std.node_count() > 6 || std.arcs().len() > 15 {
            return Err(format!("seed {seed}: instance too large"));
        }
        match solve_standard(&std).map_err(|e| format!("seed {seed}: {e}"))? {
            StdOutcome::Optimal(sol) => {
                check_optimality_std(&std, &sol.flow, &sol.labels)
                    .map_err(|v| format!("seed {seed}: {}", describe(&v)))?;
                let TransformOutcome::Transformed(t) = uncapacitate(&std).map_err(|e| e.to_string())? else {
                    return Err(format!("seed {seed}: solved but the transform reports unbounded"));
                };
                // an independent solve of the image with the other algorithm
                let weak = continuous_scaling(&t.instance).map_err(|e| format!("seed {seed}: {e}"))?;
                let aux: Rational = t.map.auxiliary.iter().map(|&a| &t.instance.arc(a).gain * &weak.flow[a]).sum();
                let (flow, labels) = recover_standard_solution(&t.map, &t.instance, &weak.flow, &weak.labels)
                    .map_err(|e| format!("seed {seed}: {e}"))?;
                check_optimality_std(&std, &flow, &labels).map_err(|v| format!("seed {seed}: {}", describe(&v)))?;
                let e_t = excess(&t.instance, &weak.flow, t.instance.sink());
                if std.objective(&flow) != &e_t - &aux {
                    return Err(format!("seed {seed}: objective differs from the image's sink excess"));
                }
                if sol.value != std.objective(&flow) {
                    return Err(format!("seed {seed}: algorithms disagree, {} vs {}", sol.value, std.objective(&flow)));
                }
                optimal += 1;
            }
            StdOutcome::Unbounded(cert) => {
                check_report(&Instance::Std(std.clone()), &Report::unbounded_std(&std, &cert))
                    .map_err(|e| format!("seed {seed}: bad unbounded certificate: {e}"))?;
                unbounded += 1;
            }
        }
    }
    Ok(format!("{optimal} optimal and {unbounded} unbounded, all certified"))
}

/// Exhaustive feasibility test for Ax = b, 0 <= x <= u by eliminating one
/// variable at a time; equalities are used for substitution when possible.
fn fourier_motzkin(lp: &LP2Instance) -> bool {
    #[derive(Clone)]
    struct Row {
        a: Vec<Rational>,
        c: Rational,
        eq: bool,
    }
    let m = lp.cols();
    let mut rows: Vec<Row> = Vec::new();
    for i in 0..lp.rows() {
        let mut a = vec![Rational::zero(); m];
        for (j, slot) in a.iter_mut().enumerate() {
            if let Some((_, v)) = lp.column(j).iter().find(|(r, _)| *r == i) {
                *slot = v.clone();
            }
        }
        rows.push(Row { a, c: lp.rhs()[i].clone(), eq: true });
    }
    for j in 0..m {
        let mut a = vec![Rational::zero(); m];
        a[j] = -Rational::one();
        rows.push(Row { a: a.clone(), c: Rational::zero(), eq: false });
        if let Extended::Finite(u) = &lp.upper()[j] {
            a[j] = Rational::one();
            rows.push(Row { a, c: u.clone(), eq: false });
        }
    }
    let combine = |p: &Row, fp: &Rational, q: &Row, fq: &Rational| Row {
        a: p.a.iter().zip(&q.a).map(|(x, y)| x * fp + y * fq).collect(),
        c: &p.c * fp + &q.c * fq,
        eq: p.eq && q.eq,
    };
    for k in 0..m {
        if let Some(pos) = rows.iter().position(|r| r.eq && !r.a[k].is_zero()) {
            let pivot = rows.swap_remove(pos);
            for r in rows.iter_mut().filter(|r| !r.a[k].is_zero()) {
                let f = -(&r.a[k] / &pivot.a[k]);
                *r = Row { eq: r.eq, ..combine(r, &Rational::one(), &pivot, &f) };
            }
        } else {
            let (with, without): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.a[k].is_zero());
            rows = without;
            let (pos, neg): (Vec<&Row>, Vec<&Row>) = with.iter().partition(|r| r.a[k].is_positive());
            for p in &pos {
                for q in &neg {
                    rows.push(combine(p, &q.a[k].abs(), q, &p.a[k]));
                }
            }
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for mut r in rows {
            if r.a.iter().all(Zero::is_zero) {
                let ok = if r.eq { r.c.is_zero() } else { !r.c.is_negative() };
                if !ok {
                    return false;
                }
                continue;
            }
            let scale = r.a.iter().find(|v| !v.is_zero()).unwrap().abs();
            r.a.iter_mut().for_each(|v| *v /= &scale);
            r.c /= &scale;
            if seen.insert((r.a.clone(), r.c.clone(), r.eq)) {
                kept.push(r);
            }
        }
        rows = kept;
    }
    true
}

fn lp2_soundness() -> Outcome {
    let (mut feasible, mut infeasible, mut compared) = (0, 0, 0);
    for seed in 0..LP2_INSTANCES {
        let rows = 1 + (seed % 6) as usize;
        let cols = 1 + (seed / 6 % 10) as usize;
        let lp = random_lp2(GenParams { nodes: rows, arcs: cols, bits: 3, seed: 30_000 + seed });
        let outcome = solve_lp2(&lp).map_err(|e| format!("seed {seed}: {e}"))?;
        let said_feasible = match &outcome {
            Lp2Outcome::Feasible(x) => {
                lp.check_solution(x).map_err(|e| format!("seed {seed}: {e}"))?;
                feasible += 1;
                true
            }
            Lp2Outcome::Infeasible(cert) => {
                lp.check_certificate(cert).map_err(|e| format!("seed {seed}: {e}"))?;
                infeasible += 1;
                false
            }
        };
        if lp.cols() <= FM_MAX_COLUMNS {
            if fourier_motzkin(&lp) != said_feasible {
                return Err(format!("seed {seed}: elimination disagrees with the solver"));
            }
            compared += 1;
        }
    }
    Ok(format!("{feasible} feasible and {infeasible} infeasible, all verified; {compared} matched by elimination"))
}

/// Instance built around chosen labels: every node has a tight path to the
/// sink and every arc has relabeled gain at most one.
fn labelled_instance(rng: &mut ChaCha8Rng) -> (UncapInstance, Labeling) {
    let n = rng.gen_range(2..=7);
    let t = n - 1;
    let mu: Vec<Rational> = (0..n)
        .map(|i| if i == t { Rational::one() } else { ratio(rng.gen_range(1..=8), rng.gen_range(1..=8)) })
        .collect();
    let mut arcs = Vec::new();
    let gain = |rng: &mut ChaCha8Rng, i: usize, j: usize| {
        let g = &mu[j] / &mu[i];
        if rng.gen_bool(0.5) {
            g
        } else {
            g * ratio(rng.gen_range(1..=3), 4)
        }
    };
    for i in 0..t {
        let next = rng.gen_range(i + 1..n);
        arcs.push(Arc::regular(i, next, &mu[next] / &mu[i]));
        if next != t {
            let g = gain(rng, i, t);
            arcs.push(Arc::regular(i, t, g));
        }
    }
    for _ in 0..rng.gen_range(0..2 * n) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j && i != t {
            let g = gain(rng, i, j);
            arcs.push(Arc::regular(i, j, g));
        }
    }
    let demands = (0..n)
        .map(|i| if i == t { Rational::zero() } else { -ratio(rng.gen_range(0..=9), rng.gen_range(1..=4)) })
        .collect();
    let inst = UncapInstance::new(n, t, arcs, demands, None, None).expect("valid by construction");
    (inst, Labeling::from_values(mu))
}

fn tight_flow_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(40_000);
    let (mut calls, mut infeasible, mut seed) = (0, 0, 0u64);
    let check = |inst: &UncapInstance, members: &[bool], labels: &Labeling| -> Result<bool, String> {
        match tight_flow(inst, members, labels) {
            Ok(flow) => {
                let biggest = inst
                    .non_sink_nodes()
                    .filter(|&i| members[i])
                    .map(|i| relabeled_demand(inst, labels, i).abs())
                    .max()
                    .unwrap_or_else(Rational::zero);
                let bound = int(inst.node_count() as i64) * biggest;
                for i in inst.non_sink_nodes().filter(|&i| members[i]) {
                    let e = relabeled_excess(inst, &flow, labels, i);
                    if e.is_negative() || e > bound {
                        return Err(format!("node {i} has relabeled excess {e}, bound {bound}"));
                    }
                }
                Ok(true)
            }
            Err(TightFlowError::Infeasible) => Ok(false),
            Err(e) => Err(e.to_string()),
        }
    };
    while calls < TIGHT_FLOW_CALLS {
        // alternate between optimal labels of generated instances and
        // hand-built labelled instances restricted to random node sets
        let (inst, labels, members) = if calls % 2 == 0 {
            let nodes = 2 + (seed % 6) as usize;
            let inst = random_uncap(GenParams { nodes, arcs: 2 * nodes, bits: 4, seed: 50_000 + seed });
            seed += 1;
            let sol = continuous_scaling(&inst).map_err(|e| e.to_string())?;
            let all = vec![true; inst.node_count()];
            (inst, sol.labels, all)
        } else {
            let (inst, labels) = labelled_instance(&mut rng);
            let t = inst.sink();
            let members: Vec<bool> = (0..inst.node_count()).map(|i| i == t || rng.gen_bool(0.7)).collect();
            (inst, labels, members)
        };
        if check(&inst, &members, &labels)? {
            calls += 1;
        } else {
            infeasible += 1;
        }
    }
    Ok(format!("{calls} feasible calls within the bound, {infeasible} infeasible calls, no false guarantee failures"))
}

/// Deficit-free flow assembled from generating cycles with tails, unit cycles
/// and bicycles over a small node pool, so pieces overlap.
struct FlowBuilder {
    n: usize,
    edges: Vec<GainEdge>,
    values: Vec<Rational>,
}

impl FlowBuilder {
    /// Reuses an existing edge half the time unless the gain is forced.
    fn edge(&mut self, rng: &mut ChaCha8Rng, from: usize, to: usize, forced: Option<Rational>) -> usize {
        if forced.is_none() && rng.gen_bool(0.5) {
            if let Some(e) = self.edges.iter().position(|e| e.from == from && e.to == to) {
                return e;
            }
        }
        let gain = forced.unwrap_or_else(|| ratio(rng.gen_range(1..=6), rng.gen_range(1..=6)));
        self.edges.push(GainEdge { from, to, gain });
        self.values.push(Rational::zero());
        self.edges.len() - 1
    }

    /// Distinct nodes starting at `start`, at most `len` steps long.
    fn walk(&self, rng: &mut ChaCha8Rng, start: usize) -> Vec<usize> {
        let len = rng.gen_range(1..self.n);
        let mut nodes = vec![start];
        while nodes.len() <= len {
            let v = rng.gen_range(0..self.n);
            if !nodes.contains(&v) {
                nodes.push(v);
            }
        }
        nodes
    }

    /// Edges of a cycle through `nodes` whose gain is exactly `target`.
    fn cycle(&mut self, rng: &mut ChaCha8Rng, nodes: &[usize], target: Rational) -> Vec<usize> {
        let mut ids = Vec::new();
        let mut g = Rational::one();
        for w in nodes.windows(2) {
            let e = self.edge(rng, w[0], w[1], None);
            g *= &self.edges[e].gain;
            ids.push(e);
        }
        ids.push(self.edge(rng, *nodes.last().unwrap(), nodes[0], Some(target / g)));
        ids
    }

    /// Sends `amount` along `ids`, scaling by each gain; returns what arrives.
    fn push(&mut self, ids: &[usize], amount: Rational) -> Rational {
        let mut carried = amount;
        for &e in ids {
            self.values[e] += &carried;
            carried = &carried * &self.edges[e].gain;
        }
        carried
    }
}

fn deficit_free_flow(rng: &mut ChaCha8Rng) -> (usize, Vec<GainEdge>, Vec<Rational>) {
    let n = rng.gen_range(2..=6);
    let mut b = FlowBuilder { n, edges: Vec::new(), values: Vec::new() };
    for _ in 0..rng.gen_range(1..=3) {
        let start = rng.gen_range(0..n);
        let ring = b.walk(rng, start);
        // 0: generating cycle with a tail, 1: unit cycle, 2: bicycle
        let shape = rng.gen_range(0..3);
        let gain = if shape == 1 { Rational::one() } else { ratio(rng.gen_range(5..=9), 4) };
        let ids = b.cycle(rng, &ring, gain);
        let amount = ratio(rng.gen_range(1..=5), rng.gen_range(1..=3));
        let surplus = b.push(&ids, amount.clone()) - amount;
        if shape == 1 {
            continue;
        }
        let tail_nodes = b.walk(rng, start);
        let tail: Vec<usize> = tail_nodes.windows(2).map(|w| b.edge(rng, w[0], w[1], None)).collect();
        let sent = b.push(&tail, surplus * ratio(rng.gen_range(1..=4), 4));
        let end = *tail_nodes.last().unwrap();
        if shape == 2 && end != start {
            // circulate y with y (1 - loss) = sent, consuming everything at `end`
            let ring = b.walk(rng, end);
            let loss = ratio(rng.gen_range(1..=3), 4);
            let ids = b.cycle(rng, &ring, loss.clone());
            b.push(&ids, sent / (Rational::one() - loss));
        }
    }
    (n, b.edges, b.values)
}

fn decomposition_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(60_000);
    let (mut terms_total, mut nonzero) = (0, 0);
    for k in 0..DECOMPOSITION_FLOWS {
        let (n, edges, values) = deficit_free_flow(&mut rng);
        if let Some(v) = net_flow(n, &edges, &values).iter().position(|x| x.is_negative()) {
            return Err(format!("flow {k}: generator left node {v} in deficit"));
        }
        let terms = decompose_flow_difference(n, &edges, &values).map_err(|e| format!("flow {k}: {e}"))?;
        if recompose(edges.len(), &terms) != values {
            return Err(format!("flow {k}: recomposition differs from the flow"));
        }
        let support = values.iter().filter(|v| !v.is_zero()).count();
        if terms.len() > support {
            return Err(format!("flow {k}: {} terms for a support of {support}", terms.len()));
        }
        terms_total += terms.len();
        if support > 0 {
            nonzero += 1;
        }
    }
    Ok(format!("{DECOMPOSITION_FLOWS} flows ({nonzero} nonzero) recomposed exactly into {terms_total} terms"))
}

fn main() {
    let started = Instant::now();
    let corpus = certificate_corpus();
    let criteria: Vec<Criterion> = vec![
        ("certificate correctness", Box::new(|| certificates(&corpus))),
        ("oracle equivalence", Box::new(oracle_agreement)),
        ("trace invariants", Box::new(|| invariants(&corpus))),
        ("iteration bounds", Box::new(|| iteration_bounds(&corpus))),
        ("contraction soundness", Box::new(|| contractions(&corpus))),
        ("transform round trip", Box::new(transform_round_trip)),
        ("LP2 decision soundness", Box::new(lp2_soundness)),
        ("tight flow contract", Box::new(tight_flow_contract)),
        ("decomposition identity", Box::new(decomposition_identity)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance finished in {:.1?}, {failed} failed", started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
