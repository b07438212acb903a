use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eucseq::io::{parse_compact, parse_cycle, parse_cycle_list, parse_problem};
use eucseq::*;
use serde_json::{json, Value};

/// Minimal-variance cyclic sequencing.
///
/// Cycles on the command line use one character per item: each character is
/// the first character of a symbol label. Without --labels the alphabet is the
/// set of distinct characters in ascending order, so `01101101` is a cycle over
/// symbols `0` and `1`. Alphabets whose labels share a first character need JSON
/// files: problems as {"symbols": [...], "multiplicities": [...]}, cycles as
/// {"problem": {...}, "sequence": [...]}.
#[derive(Debug, Parser)]
#[command(name = "eucseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the Euclidean construction on a binary problem
    Esa(EsaArgs),
    /// Mean, variance and moments of a cycle
    Moments(MomentsArgs),
    /// Optimality verdict for a binary cycle (JSON)
    Verify(CycleArgs),
    /// Exhaustive minimum over all cycles of a small binary problem (JSON)
    Exact(ExactArgs),
    /// Lower bound on the sum of squared distances and on the variance
    Bound(ProblemArgs),
    /// Compare evenness metrics over a list of cycles
    Compare(CompareArgs),
    /// Write the integer program in LP format
    ExportMiqp(ExportArgs),
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Comma-separated symbol labels, first label first
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct EsaArgs {
    #[arg(long)]
    m1: usize,
    #[arg(long)]
    m2: usize,
    /// Comma-separated labels for the two symbols
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    labels: Vec<String>,
    /// Print the iteration table
    #[arg(long)]
    trace: bool,
    /// Print the cycle as a rhythm: pulses `x`, rests `.`
    #[arg(long)]
    rhythm: bool,
    /// Label rendered as the pulse (default: the more abundant symbol)
    #[arg(long)]
    pulse: Option<String>,
    /// Rotate the cycle to its lexicographically least rotation
    #[arg(long)]
    canonical: bool,
    /// Emit the trace as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CycleArgs {
    /// Compact cycle string, or path to a cycle JSON file
    #[arg(long)]
    cycle: String,
    #[command(flatten)]
    labels: LabelArgs,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    cycle: CycleArgs,
    /// Also report the raw and central moments of this order
    #[arg(short = 'p', long = "order")]
    order: Option<u32>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long)]
    m1: usize,
    #[arg(long)]
    m2: usize,
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    labels: Vec<String>,
    /// Largest N to enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the enumeration
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Print a table of all optima after the JSON
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Path to a problem JSON file
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
    Json,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    problem: PathBuf,
    /// JSON array of compact strings or label arrays
    #[arg(long, required_unless_present = "sweep")]
    cycles: Option<PathBuf>,
    /// Compare every distinct cycle up to rotation instead of a list
    #[arg(long, conflicts_with = "cycles")]
    sweep: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    problem: PathBuf,
    /// Output path (default: standard output)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_problem(path: &Path) -> anyhow::Result<Arc<SequencingProblem>> {
    Ok(Arc::new(parse_problem(&read(path)?)?))
}

fn load_cycle(args: &CycleArgs) -> anyhow::Result<Cycle> {
    let labels = args.labels.labels.as_deref();
    let path = Path::new(&args.cycle);
    if path.is_file() {
        Ok(parse_cycle(&read(path)?, labels)?)
    } else {
        Ok(parse_compact(&args.cycle, labels)?)
    }
}

fn exact_json(r: &ExactRational) -> Value {
    json!({ "exact": r.to_string(), "decimal": r.to_f64() })
}

fn binary_problem(labels: &[String], m1: usize, m2: usize) -> anyhow::Result<Arc<SequencingProblem>> {
    if labels.len() != 2 {
        bail!("expected two labels, got {}", labels.len());
    }
    Ok(Arc::new(SequencingProblem::binary(&labels[0], &labels[1], m1, m2)?))
}

fn run_esa(args: &EsaArgs) -> anyhow::Result<String> {
    let problem = binary_problem(&args.labels, args.m1, args.m2)?;
    let trace = esa_solve(problem.clone())?;
    let cycle = if args.canonical { trace.result.canonical() } else { trace.result.clone() };

    if args.json {
        let mut value = serde_json::to_value(trace.to_json())?;
        value["sequence"] = json!(cycle.labels());
        return Ok(serde_json::to_string_pretty(&value)? + "\n");
    }
    let mut out = String::new();
    if args.trace {
        out.push_str(&trace.render_table());
    }
    let line = if args.rhythm {
        let pulse = match &args.pulse {
            Some(label) => problem.index_of(label).ok_or_else(|| Error::UnknownSymbol(label.clone()))?,
            None => trace.major_symbol,
        };
        cycle.positions().iter().map(|&k| if k == pulse { 'x' } else { '.' }).collect()
    } else {
        cycle.display_string()
    };
    out.push_str(&line);
    out.push('\n');
    Ok(out)
}

fn run_moments(args: &MomentsArgs) -> anyhow::Result<String> {
    let cycle = load_cycle(&args.cycle)?;
    let problem = cycle.problem();
    let mut value = json!({
        "cycle": cycle.display_string(),
        "N": problem.total(),
        "n": problem.alphabet_size(),
        "distances": cycle.distances().deltas,
        "mean": exact_json(&mean(&cycle)),
        "variance": exact_json(&variance(&cycle)),
        "second_moment": exact_json(&raw_moment(&cycle, 2)?),
    });
    if let Some(p) = args.order {
        value["order"] = json!(p);
        value["raw_moment"] = exact_json(&raw_moment(&cycle, p)?);
        value["central_moment"] = exact_json(&central_moment(&cycle, p)?);
    }
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn run_verify(args: &CycleArgs) -> anyhow::Result<String> {
    let cycle = load_cycle(args)?;
    Ok(serde_json::to_string_pretty(&verify_optimal(&cycle)?)? + "\n")
}

fn run_exact(args: &ExactArgs) -> anyhow::Result<String> {
    let problem = binary_problem(&args.labels, args.m1, args.m2)?;
    let result = exact_min_parallel(problem.clone(), args.cap, args.workers)?;
    let mut out = serde_json::to_string_pretty(&result)? + "\n";
    if args.table {
        out.push_str(&compare_report(&problem, &result.witnesses)?.to_table());
    }
    Ok(out)
}

fn run_bound(args: &ProblemArgs) -> anyhow::Result<String> {
    let problem = load_problem(&args.problem)?;
    let lb = lower_bound(&problem);
    let lb_var = lower_bound_variance(&problem);
    let display = if lb_var.is_negative() { 0.0 } else { lb_var.to_f64() };
    let value = json!({
        "problem": &*problem,
        "lower_bound": lb.to_string(),
        "lower_bound_decimal": lb.to_f64(),
        "variance_lower_bound": lb_var.to_string(),
        "variance_lower_bound_display": display,
    });
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn run_compare(args: &CompareArgs) -> anyhow::Result<String> {
    let problem = load_problem(&args.problem)?;
    let report = if args.sweep {
        sweep(problem, args.cap)?
    } else {
        let path = args.cycles.as_ref().expect("clap requires --cycles without --sweep");
        let cycles = parse_cycle_list(&read(path)?, &problem)?;
        compare_report(&problem, &cycles)?
    };
    Ok(match args.format {
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "cycle_string": r.cycle_string,
                        "variance": exact_json(&r.variance),
                        "pulse_variances": r.pulse_variances.iter().map(exact_json).collect::<Vec<_>>(),
                        "optimal": r.optimal,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "problem": report.problem, "rows": rows }))? + "\n"
        }
    })
}

fn run_export(args: &ExportArgs) -> anyhow::Result<String> {
    let problem = load_problem(&args.problem)?;
    let text = build_model(&problem)?.to_lp();
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    match &cli.command {
        Command::Esa(a) => run_esa(a),
        Command::Moments(a) => run_moments(a),
        Command::Verify(a) => run_verify(a),
        Command::Exact(a) => run_exact(a),
        Command::Bound(a) => run_bound(a),
        Command::Compare(a) => run_compare(a),
        Command::ExportMiqp(a) => run_export(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::CapExceeded { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
