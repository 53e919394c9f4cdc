//! Batch front door: parse boundaried-graph files, run a kernelization
//! pipeline, verify gluing equivalence, or solve a small instance exactly.
//!
//! Exit codes: 0 success, 1 equivalence counterexample found, 2 invalid
//! solution or arguments, 3 parse error, 4 budget exceeded.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bkernel::cutcover::CoverMode;
use bkernel::dtmwc::kernelize_dtmwc;
use bkernel::io::{parse_bkg, parse_vertex_list, serialize_bkg};
use bkernel::oct::kernelize_oct;
use bkernel::oracle::{
    check_gluing_equivalence, solve_exact, AnnotationPolicy, PartnerFamilySpec, ProblemSpec,
};
use bkernel::report::REPORT_SCHEMA;
use bkernel::smwc::kernelize_smwc;
use bkernel::vc_oct::kernelize_vc_oct;
use bkernel::{Error, VertexId};

#[derive(Parser)]
#[command(
    name = "bkernel",
    version,
    about = "Boundaried kernelization: reduce, verify, and solve instances that stay gluable"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an instance; writes the kernel and a JSON report
    Kernelize(KernelizeArgs),
    /// Check that two instances are gluing-equivalent at a given offset
    VerifyEquivalence(VerifyArgs),
    /// Solve a small instance exactly and print value and witness
    SolveExact(SolveArgs),
}

#[derive(Copy, Clone, ValueEnum)]
enum Problem {
    Smwc,
    Dtmwc,
    Oct,
    VcOct,
}

#[derive(Copy, Clone, ValueEnum)]
enum CoverModeArg {
    /// cover cuts by querying a minimum-cut oracle over subset pairs
    Oracle,
    /// cover cuts through a randomized gammoid representation
    Matroid,
}

impl From<CoverModeArg> for CoverMode {
    fn from(m: CoverModeArg) -> Self {
        match m {
            CoverModeArg::Oracle => CoverMode::Oracle,
            CoverModeArg::Matroid => CoverMode::Matroid,
        }
    }
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// deletion budget (required for smwc, ignored otherwise)
    #[arg(long)]
    s: Option<u32>,
    /// input instance file
    #[arg(long)]
    input: PathBuf,
    /// file with one auxiliary-solution vertex id per line
    #[arg(long, conflicts_with = "auto_solution")]
    solution: Option<PathBuf>,
    /// compute the auxiliary solution exactly (small instances only)
    #[arg(long)]
    auto_solution: bool,
    /// random seed; equal seeds give byte-identical outputs
    #[arg(long)]
    seed: u64,
    /// reduced-instance path (default: <input>.kernel.bkg)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report path (default: <input>.report.json)
    #[arg(long)]
    report: Option<PathBuf>,
    /// how cut covers are computed (dtmwc always uses its matroid route)
    #[arg(long, value_enum, default_value_t = CoverModeArg::Oracle)]
    cover_mode: CoverModeArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// deletion budget (required for smwc, ignored otherwise)
    #[arg(long)]
    s: Option<u32>,
    /// instance before reduction
    #[arg(long)]
    before: PathBuf,
    /// instance after reduction
    #[arg(long)]
    after: PathBuf,
    /// claimed offset: OPT(before ⊕ H) = OPT(after ⊕ H) + delta
    #[arg(long, default_value_t = 0)]
    delta: i64,
    /// partner vertices beyond the boundary
    #[arg(long, default_value_t = 2)]
    glue_extra: usize,
    /// sample this many partners instead of exhausting them
    #[arg(long, conflicts_with = "exhaustive")]
    samples: Option<usize>,
    /// exhaust the whole partner family (the default)
    #[arg(long)]
    exhaustive: bool,
    /// let partners declare boundary vertices as terminals (adversarial
    /// family; the default policy is the one each problem's kernel targets)
    #[arg(long)]
    terminals_anywhere: bool,
    /// seed for sampled partner generation
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// deletion budget (required for smwc, ignored otherwise)
    #[arg(long)]
    s: Option<u32>,
    /// input instance file
    #[arg(long)]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Kernelize(args) => cmd_kernelize(args),
        Command::VerifyEquivalence(args) => cmd_verify_equivalence(args),
        Command::SolveExact(args) => cmd_solve_exact(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => 3,
                Error::Budget(_) => 4,
                _ => 2,
            })
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Error> {
    std::fs::write(path, content)
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

fn problem_spec(problem: Problem, s: Option<u32>) -> Result<ProblemSpec, Error> {
    Ok(match problem {
        Problem::Smwc => {
            let s = s.ok_or_else(|| {
                Error::Parameter("smwc needs the deletion budget flag --s".into())
            })?;
            ProblemSpec::SMultiwayCut { s }
        }
        Problem::Dtmwc => ProblemSpec::DeletableTerminalMultiwayCut,
        Problem::Oct => ProblemSpec::OddCycleTransversal,
        Problem::VcOct => ProblemSpec::VertexCover,
    })
}

/// The problem whose exact solution parameterizes the pipeline: the
/// vertex-cover pipeline consumes an odd cycle transversal, every other
/// pipeline consumes a solution of its own problem.
fn auxiliary_problem(problem: Problem, s: Option<u32>) -> Result<ProblemSpec, Error> {
    match problem {
        Problem::VcOct => Ok(ProblemSpec::OddCycleTransversal),
        other => problem_spec(other, s),
    }
}

fn cmd_kernelize(args: KernelizeArgs) -> Result<ExitCode, Error> {
    let abg = parse_bkg(&read_file(&args.input)?)?;
    let solution: BTreeSet<VertexId> = if let Some(path) = &args.solution {
        parse_vertex_list(&read_file(path)?)?
    } else if args.auto_solution {
        solve_exact(auxiliary_problem(args.problem, args.s)?, &abg)?.witness
    } else {
        return Err(Error::Parameter(
            "provide --solution <file> or --auto-solution".into(),
        ));
    };
    let mode = CoverMode::from(args.cover_mode);
    let result = match args.problem {
        Problem::Smwc => {
            let s = args.s.ok_or_else(|| {
                Error::Parameter("smwc needs the deletion budget flag --s".into())
            })?;
            kernelize_smwc(&abg, s, &solution, mode, args.seed)?
        }
        Problem::Dtmwc => kernelize_dtmwc(&abg, &solution, args.seed)?,
        Problem::Oct => kernelize_oct(&abg, &solution, mode, args.seed)?,
        Problem::VcOct => kernelize_vc_oct(&abg, &solution, mode, args.seed)?,
    };
    let out = args
        .out
        .unwrap_or_else(|| with_suffix(&args.input, ".kernel.bkg"));
    let report = args
        .report
        .unwrap_or_else(|| with_suffix(&args.input, ".report.json"));
    write_file(&out, &serialize_bkg(&result.reduced))?;
    write_file(&report, &(result.report_json() + "\n"))?;
    println!(
        "kernelized {} -> {} vertices (from {}), delta {}, kernel {}, report {}",
        args.input.display(),
        result.reduced.graph.order(),
        abg.graph.order(),
        result.delta,
        out.display(),
        report.display(),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_equivalence(args: VerifyArgs) -> Result<ExitCode, Error> {
    let before = parse_bkg(&read_file(&args.before)?)?;
    let after = parse_bkg(&read_file(&args.after)?)?;
    let problem = problem_spec(args.problem, args.s)?;
    let mut family = match args.samples {
        Some(n) => PartnerFamilySpec::sampled(problem, args.glue_extra, n, args.seed),
        None => PartnerFamilySpec::exhaustive(problem, args.glue_extra),
    };
    if args.terminals_anywhere {
        family.policy = AnnotationPolicy::TerminalsAnywhere;
    }
    let report = check_gluing_equivalence(problem, &before, &after, args.delta, &family)?;
    match report.counterexample {
        None => {
            println!(
                "equivalent at delta {}: {} partners checked",
                args.delta, report.partners_checked
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(ce) => {
            let witness_path = with_suffix(&args.after, ".counterexample.bkg");
            let serialized = serialize_bkg(&ce.partner);
            write_file(&witness_path, &serialized)?;
            println!(
                "counterexample: OPT(before ⊕ H) = {}, OPT(after ⊕ H) + delta = {} + {}, \
                 partner written to {}",
                opt_str(ce.before_value),
                opt_str(ce.after_value),
                args.delta,
                witness_path.display(),
            );
            print!("{serialized}");
            Ok(ExitCode::from(1))
        }
    }
}

fn opt_str(v: Option<u64>) -> String {
    v.map_or_else(|| "infeasible".to_string(), |x| x.to_string())
}

fn cmd_solve_exact(args: SolveArgs) -> Result<ExitCode, Error> {
    let abg = parse_bkg(&read_file(&args.input)?)?;
    let problem = problem_spec(args.problem, args.s)?;
    let solution = solve_exact(problem, &abg)?;
    let payload = serde_json::json!({
        "schema": REPORT_SCHEMA,
        "problem": problem.name(),
        "value": solution.value,
        "witness": solution.witness,
    });
    println!("{payload}");
    Ok(ExitCode::SUCCESS)
}
