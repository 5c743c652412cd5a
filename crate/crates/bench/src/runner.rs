//! Timed evaluation of a property set under the three monitor configurations.

use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use weft_core::intervals::intersect;
use weft_core::io::open_source;
use weft_core::{
    feed, CompileError, CompiledMonitor, Formula, Interval, RunError, RunStats, StepOutput, TraceData,
    TraceFormat,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Config {
    /// One monitor per property; the trace is decoded again for each.
    Sequential,
    /// A single property conjoining all of them.
    And,
    /// One shared monitor, one pass.
    Multi,
}

impl Config {
    pub const ALL: [Config; 3] = [Config::Sequential, Config::And, Config::Multi];

    pub fn name(self) -> &'static str {
        match self {
            Config::Sequential => "sequential",
            Config::And => "and",
            Config::Multi => "multi",
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown configuration `{0}`")]
pub struct UnknownConfig(pub String);

impl FromStr for Config {
    type Err = UnknownConfig;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Config::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownConfig(s.to_owned()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("at least one timed run is required")]
    NoRuns,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub scenario: String,
    pub config: String,
    pub time_model: String,
    pub format: String,
    pub properties: usize,
    /// Records read per pass over the trace.
    pub records: u64,
    /// Evaluation steps per pass (segments in dense mode).
    pub steps: u64,
    /// Sum of the node counts of the properties compiled one by one.
    pub independent_nodes: usize,
    /// Node count of the shared monitor.
    pub shared_nodes: usize,
    pub compression_ratio: f64,
    /// Nodes evaluated per step by this configuration, summed over its monitors.
    pub monitor_nodes: usize,
    /// Median wall time of the timed runs.
    pub wall_seconds: f64,
    pub wall_samples: Vec<f64>,
    /// Per-property verdict checksums; empty for the conjunction configuration.
    pub checksums: Vec<String>,
    /// Checksum of the conjunction of all properties, when one pass sees them all.
    pub conjunction_checksum: Option<String>,
    /// Summed over the configuration's monitors.
    pub high_water: usize,
    pub arena_capacity: usize,
    pub alloc_counter: u64,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Streaming 64-bit FNV-1a.
#[derive(Clone, Copy, Debug)]
pub struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

fn hex(h: &Fnv) -> String {
    format!("{:016x}", h.finish())
}

/// Accumulates verdict checksums for one pass.
struct Digest {
    per_property: Vec<Fnv>,
    conjunction: Fnv,
    scratch: Vec<Interval>,
    spare: Vec<Interval>,
}

impl Digest {
    fn new(properties: usize) -> Self {
        Digest {
            per_property: vec![Fnv::default(); properties],
            conjunction: Fnv::default(),
            scratch: Vec::with_capacity(64),
            spare: Vec::with_capacity(64),
        }
    }

    fn absorb(&mut self, step: StepOutput<'_>) {
        match step {
            StepOutput::Discrete { verdicts, .. } => {
                for (h, &v) in self.per_property.iter_mut().zip(verdicts) {
                    h.write_u8(v as u8);
                }
                self.conjunction.write_u8(verdicts.iter().all(|&v| v) as u8);
            }
            StepOutput::Dense { verdicts, .. } => {
                for (k, h) in self.per_property.iter_mut().enumerate() {
                    for iv in verdicts.get(k) {
                        h.write_u64(iv.begin);
                        h.write_u64(iv.end);
                    }
                }
                self.scratch.clear();
                self.scratch.extend_from_slice(verdicts.get(0));
                for k in 1..verdicts.len() {
                    self.spare.clear();
                    self.spare
                        .extend(intersect(self.scratch.iter().copied(), verdicts.get(k).iter().copied()));
                    std::mem::swap(&mut self.scratch, &mut self.spare);
                }
                for iv in &self.scratch {
                    self.conjunction.write_u64(iv.begin);
                    self.conjunction.write_u64(iv.end);
                }
            }
        }
    }
}

struct Pass {
    stats: RunStats,
    digest: Digest,
}

fn one_pass(monitor: &CompiledMonitor, bytes: &[u8], format: TraceFormat) -> Result<Pass, RunError> {
    let mut digest = Digest::new(monitor.property_count());
    let mut src = open_source(bytes, format, &monitor.predicates, monitor.time_model)?;
    let stats = feed(monitor, &mut *src, |step| {
        digest.absorb(step);
        Ok(())
    })?;
    Ok(Pass { stats, digest })
}

/// The left-folded conjunction of `formulas`.
pub fn conjoin(formulas: &[Formula]) -> Formula {
    let mut it = formulas.iter().cloned();
    let first = it.next().expect("at least one property");
    it.fold(first, Formula::and)
}

fn median(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

/// Evaluates `properties` over `trace` under `config`, `runs` times, and
/// reports the median wall time. Only decoding and evaluation are timed;
/// the trace is serialized in `format` beforehand and compilation happens
/// outside the clock.
pub fn run_bench<S: AsRef<str>>(
    scenario: &str,
    properties: &[S],
    trace: &TraceData,
    format: TraceFormat,
    config: Config,
    runs: usize,
) -> Result<BenchReport, BenchError> {
    if runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let model = trace.mode;
    let shared = CompiledMonitor::from_texts(properties, model)?;
    let monitors: Vec<CompiledMonitor> = match config {
        Config::Multi => vec![shared.clone()],
        Config::And => vec![CompiledMonitor::from_formulas(&[conjoin(&shared.formulas)], model)?],
        Config::Sequential => shared
            .formulas
            .iter()
            .map(|f| CompiledMonitor::from_formulas(std::slice::from_ref(f), model))
            .collect::<Result<_, _>>()?,
    };
    let bytes = trace.encode(format);

    let mut samples = Vec::with_capacity(runs);
    let mut passes = Vec::new();
    for _ in 0..runs {
        passes.clear();
        let start = Instant::now();
        for m in &monitors {
            passes.push(one_pass(m, &bytes, format)?);
        }
        samples.push(secs(start.elapsed()));
    }

    let first = &passes[0].stats;
    let (checksums, conjunction_checksum) = match config {
        Config::Sequential => (passes.iter().map(|p| hex(&p.digest.per_property[0])).collect(), None),
        Config::And => (Vec::new(), Some(hex(&passes[0].digest.per_property[0]))),
        Config::Multi => {
            let d = &passes[0].digest;
            (d.per_property.iter().map(hex).collect(), Some(hex(&d.conjunction)))
        }
    };
    Ok(BenchReport {
        scenario: scenario.to_owned(),
        config: config.name().to_owned(),
        time_model: model.to_string(),
        format: format.to_string(),
        properties: shared.property_count(),
        records: first.records,
        steps: first.steps,
        independent_nodes: shared.independent_total(),
        shared_nodes: shared.node_count(),
        compression_ratio: shared.compression_ratio(),
        monitor_nodes: monitors.iter().map(CompiledMonitor::node_count).sum(),
        wall_seconds: median(&samples),
        wall_samples: samples,
        checksums,
        conjunction_checksum,
        high_water: passes.iter().map(|p| p.stats.high_water).sum(),
        arena_capacity: passes.iter().map(|p| p.stats.capacity).sum(),
        alloc_counter: passes.iter().map(|p| p.stats.alloc_counter).sum(),
    })
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

/// Whether two reports measured the same scenario over the same trace.
pub fn same_run(a: &BenchReport, b: &BenchReport) -> bool {
    a.scenario == b.scenario && a.time_model == b.time_model && a.records == b.records
}
