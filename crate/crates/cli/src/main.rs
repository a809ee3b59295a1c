use clap::{Parser, Subcommand, ValueEnum};
use gflow_core::enhanced::enhanced_continuous_scaling_with;
use gflow_core::error::SolveError;
use gflow_core::format::{check_report, parse_instance, parse_report, write_instance, write_report, Instance, Report};
use gflow_core::generate::{random_lp2, random_std, random_uncap, GenParams};
use gflow_core::graph::UncapInstance;
use gflow_core::lp2::{solve_lp2, Lp2Outcome};
use gflow_core::rational::{format_rational, to_f64};
use gflow_core::scaling::{continuous_scaling_with, Solution, SolveOptions};
use gflow_core::trace::TraceRecord;
use gflow_core::transform::{
    check_boundedness, solve_standard_with, uncapacitate, Boundedness, StdOutcome, TransformError, TransformOutcome,
};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gflow", version, about = "Exact generalized flow and two-per-column LP solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an uncapacitated or standard-form instance.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Strong)]
        algorithm: Algorithm,
        /// Write one JSON record per iteration to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Verify the answer before printing it.
        #[arg(long)]
        check: bool,
    },
    /// Decide feasibility of an LP with at most two nonzeros per column.
    Lp2 {
        file: PathBuf,
        /// Print the Farkas certificate when infeasible.
        #[arg(long)]
        certificate: bool,
    },
    /// Rewrite a standard-form instance as an uncapacitated one.
    Transform {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a random instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        bits: u32,
        /// Defaults to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a solution file against an instance.
    Check { instance: PathBuf, solution: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Weak,
    Strong,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Uncap,
    Std,
    Lp2,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("solution rejected: {0}")]
    Rejected(String),
}

impl From<SolveError> for CliError {
    fn from(err: SolveError) -> Self {
        CliError::Internal(err.to_string())
    }
}

impl From<TransformError> for CliError {
    fn from(err: TransformError) -> Self {
        match err {
            TransformError::Instance(e) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Solved = 0,
    Infeasible = 1,
    Unbounded = 2,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn trace_line(record: &TraceRecord) -> String {
    serde_json::json!({
        "iter": record.iteration,
        "kind": record.kind.as_str(),
        "class": record.class.as_str(),
        "delta": format_rational(&record.delta),
        "delta_approx": to_f64(&record.delta),
        "psi": record.psi,
        "kappa": record.kappa,
        "D_size": record.d_size,
        "nodes": record.node_count,
        "contractions": record.contractions,
        "violations": record.violations,
    })
    .to_string()
}

struct Tracer {
    out: Option<std::io::BufWriter<std::fs::File>>,
    error: Option<std::io::Error>,
}

impl Tracer {
    fn open(path: Option<&Path>) -> Result<Self, CliError> {
        let out = match path {
            Some(p) => Some(std::io::BufWriter::new(
                std::fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            )),
            None => None,
        };
        Ok(Tracer { out, error: None })
    }

    fn record(&mut self, record: &TraceRecord) {
        if let (Some(out), None) = (self.out.as_mut(), self.error.as_ref()) {
            if let Err(e) = writeln!(out, "{}", trace_line(record)) {
                self.error = Some(e);
            }
        }
    }

    fn finish(self) -> Result<(), CliError> {
        let flushed = match self.out {
            Some(mut out) => out.flush(),
            None => Ok(()),
        };
        match self.error.map_or(flushed, Err) {
            Ok(()) => Ok(()),
            Err(e) => Err(CliError::Input(format!("trace: {e}"))),
        }
    }
}

fn run_uncap(
    inst: &UncapInstance,
    algorithm: Algorithm,
    options: &SolveOptions,
    tracer: &mut Tracer,
) -> Result<Solution, SolveError> {
    let mut hook = |r: &TraceRecord| tracer.record(r);
    match algorithm {
        Algorithm::Weak => continuous_scaling_with(inst, options, &mut hook),
        Algorithm::Strong => enhanced_continuous_scaling_with(inst, options, &mut hook),
    }
}

fn run_solve(file: &Path, algorithm: Algorithm, trace: Option<&Path>, check: bool) -> Result<Status, CliError> {
    let instance = load(file)?;
    let options = if trace.is_some() { SolveOptions::instrumented() } else { SolveOptions::default() };
    let mut tracer = Tracer::open(trace)?;
    let (report, status) = match &instance {
        Instance::Uncap(inst) => match check_boundedness(inst.node_count(), inst.sink(), inst.arcs()) {
            Boundedness::Unbounded(cert) => (Report::unbounded_uncap(inst, &cert), Status::Unbounded),
            Boundedness::Bounded => {
                let sol = run_uncap(inst, algorithm, &options, &mut tracer)?;
                (Report::optimal_uncap(inst, &sol.flow, &sol.labels, &sol.value), Status::Solved)
            }
        },
        Instance::Std(inst) => match solve_standard_with(inst, |u| run_uncap(u, algorithm, &options, &mut tracer))? {
            StdOutcome::Optimal(sol) => (Report::optimal_std(inst, &sol.flow, &sol.labels, &sol.value), Status::Solved),
            StdOutcome::Unbounded(cert) => (Report::unbounded_std(inst, &cert), Status::Unbounded),
        },
        Instance::Lp2(_) => return Err(CliError::Input("LP2 instances are solved with `gflow lp2`".into())),
    };
    tracer.finish()?;
    if check {
        check_report(&instance, &report)
            .map_err(|e| CliError::Internal(format!("solver output failed its check: {e}")))?;
    }
    print!("{}", write_report(&report));
    Ok(status)
}

fn run_lp2(file: &Path, certificate: bool) -> Result<Status, CliError> {
    let Instance::Lp2(lp) = load(file)? else {
        return Err(CliError::Input("expected `problem lp2`".into()));
    };
    let outcome = solve_lp2(&lp).map_err(|e| CliError::Internal(e.to_string()))?;
    let (report, status) = match outcome {
        Lp2Outcome::Feasible(x) => (Report::Feasible { x }, Status::Solved),
        Lp2Outcome::Infeasible(cert) => (Report::infeasible(&cert), Status::Infeasible),
    };
    let instance = Instance::Lp2(lp);
    check_report(&instance, &report).map_err(|e| CliError::Internal(format!("solver output failed its check: {e}")))?;
    match (&report, certificate) {
        (Report::Infeasible { .. }, false) => println!("status infeasible"),
        _ => print!("{}", write_report(&report)),
    }
    Ok(status)
}

fn run_transform(file: &Path, output: &Path) -> Result<Status, CliError> {
    let Instance::Std(inst) = load(file)? else {
        return Err(CliError::Input("expected `problem std`".into()));
    };
    match uncapacitate(&inst)? {
        TransformOutcome::Transformed(t) => {
            write(output, &write_instance(&Instance::Uncap(t.instance)))?;
            Ok(Status::Solved)
        }
        TransformOutcome::Unbounded(cert) => {
            print!("{}", write_report(&Report::unbounded_std(&inst, &cert)));
            Ok(Status::Unbounded)
        }
    }
}

fn run_gen(kind: Kind, params: GenParams, output: Option<&Path>) -> Result<Status, CliError> {
    if params.nodes < 2 || params.bits == 0 || params.bits > 30 {
        return Err(CliError::Input("need --nodes >= 2 and --bits in 1..=30".into()));
    }
    let instance = match kind {
        Kind::Uncap => Instance::Uncap(random_uncap(params)),
        Kind::Std => Instance::Std(random_std(params)),
        Kind::Lp2 => Instance::Lp2(random_lp2(params)),
    };
    let text = write_instance(&instance);
    match output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Status::Solved)
}

fn run_check(instance: &Path, solution: &Path) -> Result<Status, CliError> {
    let inst = load(instance)?;
    let report = parse_report(&read(solution)?).map_err(|e| CliError::Input(format!("{}: {e}", solution.display())))?;
    check_report(&inst, &report).map_err(CliError::Rejected)?;
    println!("ok");
    Ok(Status::Solved)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { file, algorithm, trace, check } => run_solve(&file, algorithm, trace.as_deref(), check),
        Command::Lp2 { file, certificate } => run_lp2(&file, certificate),
        Command::Transform { file, output } => run_transform(&file, &output),
        Command::Gen { kind, nodes, arcs, seed, bits, output } => {
            run_gen(kind, GenParams { nodes, arcs, bits, seed }, output.as_deref())
        }
        Command::Check { instance, solution } => run_check(&instance, &solution),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(err) => {
            eprintln!("gflow: {err}");
            ExitCode::from(match err {
                CliError::Rejected(_) => 1,
                CliError::Input(_) => 3,
                CliError::Internal(_) => 4,
            })
        }
    }
}
