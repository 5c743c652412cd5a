//! Shared-DAG runtime monitoring for past-time metric temporal logic.
//!
//! Properties are parsed ([`syntax`]), interned into one deduplicated
//! schedule ([`compiler`]), and evaluated step by step ([`engine`]) out of a
//! fixed double-buffered arena ([`arena`]) of interval sets ([`intervals`]).
//! [`oracle`] is the slow reference semantics every result is checked
//! against; [`io`] reads traces and writes verdicts.

pub mod alloc_probe;
pub mod arena;
pub mod compiler;
pub mod engine;
pub mod intervals;
pub mod io;
pub mod oracle;
pub mod random;
pub mod syntax;

pub use arena::{ArenaError, DoubleBufferedArena, SetHandle};
pub use compiler::{CompileError, CompiledMonitor, MonitorBuilder, NodeRecord, TimeModel};
pub use engine::{DenseVerdicts, EngineError, EvalSession, StepInput, Verdict};
pub use intervals::{Interval, INFINITY};
pub use io::{feed, run_monitor, RunError, RunStats, StepOutput, TraceData, TraceError, TraceFormat};
pub use oracle::{oracle_eval, oracle_eval_all, Trace};
pub use syntax::{parse_spec, Formula, Kind, ParseError, PredicateTable, Time, TimeBound};

#[cfg(test)]
#[global_allocator]
static ALLOC: alloc_probe::CountingAllocator = alloc_probe::CountingAllocator;
