//! Per-iteration records emitted by the scaling loops.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationKind {
    /// Δ units pushed along a tight path from T0 into N.
    Augment,
    /// One node added to T across a tight fat arc.
    Extend,
    /// Labels in T scaled up and Δ scaled down.
    Step,
    /// The elementary step was skipped after a filtration or a T0 cleanup.
    Skip,
    /// The elementary step found the current pair optimal.
    Optimal,
}

impl IterationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IterationKind::Augment => "augment",
            IterationKind::Extend => "extend",
            IterationKind::Step => "step",
            IterationKind::Skip => "skip",
            IterationKind::Optimal => "optimal",
        }
    }
}

/// Comparison of T at the start of an iteration with T at the start of the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationClass {
    Shrinking,
    Expanding,
    Neutral,
}

impl IterationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IterationClass::Shrinking => "shrinking",
            IterationClass::Expanding => "expanding",
            IterationClass::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub iteration: u64,
    pub kind: IterationKind,
    pub class: IterationClass,
    /// Δ at the end of the iteration.
    pub delta: Rational,
    pub psi: i64,
    pub kappa: u32,
    pub d_size: usize,
    pub node_count: usize,
    pub alpha: Option<Rational>,
    pub filtration: bool,
    pub contractions: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Δ dropped below the termination threshold.
    Threshold,
    /// The elementary step certified optimality directly.
    StepOptimal,
    /// Contractions reduced the instance to the sink alone.
    SingleNode,
    /// A tight flow on all nodes cleared every excess before Δ hit the threshold.
    EarlyTight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub iterations: u64,
    pub shrinking: u64,
    pub expanding: u64,
    pub neutral: u64,
    pub augmentations: u64,
    pub extensions: u64,
    pub elementary_steps: u64,
    pub filtrations: u64,
    pub cycle_cancellations: usize,
    /// Original arc ids of contracted arcs, in contraction order.
    pub contracted_arcs: Vec<usize>,
    pub initial_delta: Rational,
    pub final_delta: Rational,
    pub termination: Termination,
    /// Every invariant violation seen, prefixed with its iteration.
    pub violations: Vec<String>,
}

impl RunStats {
    pub(crate) fn new(initial_delta: Rational, cycle_cancellations: usize) -> Self {
        RunStats {
            iterations: 0,
            shrinking: 0,
            expanding: 0,
            neutral: 0,
            augmentations: 0,
            extensions: 0,
            elementary_steps: 0,
            filtrations: 0,
            cycle_cancellations,
            contracted_arcs: Vec::new(),
            final_delta: initial_delta.clone(),
            initial_delta,
            termination: Termination::Threshold,
            violations: Vec::new(),
        }
    }

    pub(crate) fn absorb(&mut self, record: &TraceRecord) {
        self.iterations += 1;
        match record.class {
            IterationClass::Shrinking => self.shrinking += 1,
            IterationClass::Expanding => self.expanding += 1,
            IterationClass::Neutral => self.neutral += 1,
        }
        match record.kind {
            IterationKind::Augment => self.augmentations += 1,
            IterationKind::Extend => self.extensions += 1,
            IterationKind::Step => self.elementary_steps += 1,
            IterationKind::Skip | IterationKind::Optimal => {}
        }
        if record.filtration {
            self.filtrations += 1;
        }
        self.final_delta = record.delta.clone();
        for v in &record.violations {
            self.violations.push(format!("iteration {}: {v}", record.iteration));
        }
    }
}
