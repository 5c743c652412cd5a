use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weft_bench::{gen_scenario_sized, gen_trace, run_bench, Config, Scenario, TraceKind, TraceSpec};
use weft_core::alloc_probe::CountingAllocator;
use weft_core::compiler::MonitorBuilder;
use weft_core::io::open_source;
use weft_core::oracle::{differential_check, CheckConfig};
use weft_core::syntax::parse_spec_file;
use weft_core::{run_monitor, CompiledMonitor, RunStats, TimeModel, TraceFormat};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (trace format v1)");

#[derive(Parser, Debug)]
#[command(name = "weft", version = VERSION, about = "Shared-DAG monitor for past-time metric temporal logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile a specification file and print the shared schedule.
    Compile {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Discrete)]
        time_model: Model,
    },
    /// Monitor a trace and write one verdict stream per property.
    Run(RunArgs),
    /// Compare the engine against the reference semantics on random cases.
    Check(CheckArgs),
    /// Time a generated scenario under one configuration.
    Bench(BenchArgs),
    /// Write a synthetic trace.
    GenTrace(GenTraceArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    trace: PathBuf,
    #[arg(long, value_enum)]
    format: Format,
    #[arg(long, value_enum)]
    time_model: Model,
    /// Verdict destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print record counts and arena occupancy to standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 5)]
    max_depth: usize,
    #[arg(long, default_value_t = 8)]
    max_bound: u64,
    #[arg(long, default_value_t = 64)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    predicates: usize,
    /// Skip the dense replay of each case.
    #[arg(long)]
    discrete_only: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 100_000)]
    steps: u64,
    #[arg(long, value_enum, default_value_t = Mode::Multi)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Bin)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Model::Discrete)]
    time_model: Model,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report destination; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    runs: usize,
    /// Number of properties; the scenario's default when absent.
    #[arg(long)]
    properties: Option<usize>,
    /// Trace kind; uniform in discrete mode and dense in dense mode by default.
    #[arg(long, value_enum)]
    trace_kind: Option<Kind>,
    /// Probability of true (uniform) or mean segment length (dense).
    #[arg(long)]
    density: Option<f64>,
}

#[derive(Args, Debug)]
struct GenTraceArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Probability of true (uniform) or mean segment length (dense).
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Model::Discrete)]
    time_model: Model,
    /// Destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Discrete,
    Dense,
}

impl From<Model> for TimeModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Discrete => TimeModel::Discrete,
            Model::Dense => TimeModel::Dense,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Bin,
}

impl From<Format> for TraceFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => TraceFormat::Json,
            Format::Bin => TraceFormat::Binary,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Sequential,
    And,
    Multi,
}

impl From<Mode> for Config {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Sequential => Config::Sequential,
            Mode::And => Config::And,
            Mode::Multi => Config::Multi,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Uniform,
    Adversarial,
    Dense,
}

impl From<Kind> for TraceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Uniform => TraceKind::Uniform,
            Kind::Adversarial => TraceKind::Adversarial,
            Kind::Dense => TraceKind::Dense,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Data(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Data(m) => m,
        }
    }
}

fn data<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Data(format!("{context}: {e}"))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(data(path.display()))
}

fn load_monitor(path: &Path, model: TimeModel) -> Result<CompiledMonitor, Failure> {
    let text = read_text(path)?;
    let entries = parse_spec_file(&text).map_err(|e| {
        Failure::Parse(format!(
            "{}: line {}, column {}: {}",
            path.display(),
            e.line,
            e.column,
            e.kind
        ))
    })?;
    let mut builder = MonitorBuilder::new();
    for entry in &entries {
        builder
            .register_property(&entry.formula)
            .map_err(|e| Failure::Parse(format!("{}: line {}: {e}", path.display(), entry.line)))?;
    }
    builder
        .finalize(model)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(data(p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn compile(spec: &Path, model: Model) -> Result<(), Failure> {
    let monitor = load_monitor(spec, model.into())?;
    let mut out = sink(None)?;
    out.write_all(monitor.dump().as_bytes())
        .and_then(|()| out.flush())
        .map_err(data("stdout"))
}

fn print_stats(stats: &RunStats) {
    eprintln!("records: {}", stats.records);
    eprintln!("steps: {}", stats.steps);
    eprintln!("unknown keys: {}", stats.unknown_keys);
    eprintln!("high_water: {}", stats.high_water);
    eprintln!("capacity: {}", stats.capacity);
    eprintln!("alloc_counter: {}", stats.alloc_counter);
}

fn run(args: &RunArgs) -> Result<(), Failure> {
    let model = args.time_model.into();
    let monitor = load_monitor(&args.spec, model)?;
    let input = File::open(&args.trace).map_err(data(args.trace.display()))?;
    let mut src = open_source(BufReader::new(input), args.format.into(), &monitor.predicates, model)
        .map_err(data(args.trace.display()))?;
    let out = sink(args.out.as_deref())?;
    let stats = run_monitor(&monitor, &mut *src, out).map_err(data(args.trace.display()))?;
    if stats.unknown_keys > 0 {
        eprintln!("warning: {} trace keys matched no predicate and were ignored", stats.unknown_keys);
    }
    if args.stats {
        print_stats(&stats);
    }
    Ok(())
}

fn check(args: &CheckArgs) -> Result<(), Failure> {
    let cfg = CheckConfig {
        seed: args.seed,
        cases: args.cases,
        max_depth: args.max_depth,
        max_bound: args.max_bound,
        max_len: args.max_len,
        predicates: args.predicates,
        dense: !args.discrete_only,
    };
    if cfg.predicates == 0 || cfg.max_len == 0 || cfg.max_depth == 0 {
        return Err(Failure::Usage(
            "--predicates, --max-len and --max-depth must be positive".into(),
        ));
    }
    match differential_check(&cfg) {
        Ok(report) => {
            println!("ok: {} cases, {} steps, no disagreement", report.cases, report.steps);
            Ok(())
        }
        Err(cex) => {
            println!("counterexample in case {} ({} mode)", cex.case, cex.mode);
            println!("formula: {}", cex.formula);
            println!("step: {}", cex.step);
            println!("expected: {}", cex.expected as u8);
            println!("engine: {}", cex.got as u8);
            println!("trace:");
            print!("{}", cex.trace_csv);
            Err(Failure::Data("engine and reference semantics disagree".into()))
        }
    }
}

fn bench(args: &BenchArgs) -> Result<(), Failure> {
    let scenario: Scenario = args.scenario.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let model: TimeModel = args.time_model.into();
    let kind = args.trace_kind.map(TraceKind::from).unwrap_or(match model {
        TimeModel::Discrete => TraceKind::Uniform,
        TimeModel::Dense => TraceKind::Dense,
    });
    let mut spec = TraceSpec::new(kind, args.steps, args.seed).time_model(model);
    if let Some(d) = args.density {
        spec = spec.density(d);
    }
    let trace = gen_trace(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let count = args.properties.unwrap_or(scenario.default_count());
    let props = gen_scenario_sized(scenario, count, args.seed);
    let report = run_bench(scenario.name(), &props, &trace, args.format.into(), args.mode.into(), args.runs)
        .map_err(|e| match e {
            weft_bench::BenchError::NoRuns => Failure::Usage(e.to_string()),
            other => Failure::Data(other.to_string()),
        })?;
    eprintln!(
        "{} {} {}: {} records, median {:.4}s, compression {:.3}",
        report.scenario, report.config, report.time_model, report.records, report.wall_seconds, report.compression_ratio
    );
    let mut out = sink(args.report.as_deref())?;
    writeln!(out, "{}", report.to_json())
        .and_then(|()| out.flush())
        .map_err(data("report"))
}

fn gen_trace_cmd(args: &GenTraceArgs) -> Result<(), Failure> {
    let mut spec = TraceSpec::new(args.kind.into(), args.steps, args.seed).time_model(args.time_model.into());
    if let Some(d) = args.density {
        spec = spec.density(d);
    }
    let trace = gen_trace(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let out = sink(args.out.as_deref())?;
    trace
        .write(out, args.format.into())
        .map(drop)
        .map_err(data("trace output"))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compile { spec, time_model } => compile(&spec, time_model),
        Command::Run(args) => run(&args),
        Command::Check(args) => check(&args),
        Command::Bench(args) => bench(&args),
        Command::GenTrace(args) => gen_trace_cmd(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("weft: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
