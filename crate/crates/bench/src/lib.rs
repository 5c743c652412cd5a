//! Benchmark workloads for weft: property sets with known sharing,
//! synthetic traces, and a timed runner comparing one shared monitor with
//! per-property monitors and a single conjoined property.

pub mod runner;
pub mod scenarios;
pub mod traces;

pub use runner::{conjoin, run_bench, BenchError, BenchReport, Config};
pub use scenarios::{gen_scenario, gen_scenario_sized, Scenario};
pub use traces::{gen_trace, TraceKind, TraceSpec};
