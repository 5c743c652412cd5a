//! Reference semantics evaluated clause by clause, and a randomized
//! differential check of the engine against it.
//!
//! Everything here is deliberately naive: each temporal clause quantifies
//! over past instants explicitly. Dense traces are defined by expanding
//! segments into unit steps.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::compiler::{MonitorBuilder, TimeModel};
use crate::engine::EvalSession;
use crate::intervals::Interval;
use crate::random::{random_formula, random_runs, FormulaConfig};
use crate::syntax::{Formula, PredicateTable, Time, TimeBound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("step {t} outside trace of length {len}")]
    OutOfRange { t: usize, len: usize },
    #[error("predicate `{0}` missing from trace")]
    UnknownPredicate(String),
    #[error("columns differ in length")]
    Ragged,
}

/// A finite discrete trace stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub predicates: PredicateTable,
    pub columns: Vec<Vec<bool>>,
}

impl Trace {
    pub fn new(predicates: PredicateTable, columns: Vec<Vec<bool>>) -> Result<Self, OracleError> {
        if columns.len() != predicates.len() || columns.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(OracleError::Ragged);
        }
        Ok(Trace { predicates, columns })
    }

    /// Builds from `(name, "0110…")` pairs.
    pub fn from_strs(cols: &[(&str, &str)]) -> Result<Self, OracleError> {
        let table = PredicateTable::from_names(cols.iter().map(|c| c.0));
        let columns = cols
            .iter()
            .map(|c| c.1.chars().map(|ch| ch == '1').collect())
            .collect();
        Trace::new(table, columns)
    }

    pub fn len(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, name: &str) -> Option<&[bool]> {
        self.predicates.position(name).map(|i| self.columns[i].as_slice())
    }

    pub fn row(&self, t: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c[t]).collect()
    }

    /// `time,<names…>` header followed by one 0/1 row per step.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("time");
        for n in self.predicates.names() {
            let _ = write!(s, ",{n}");
        }
        s.push('\n');
        for t in 0..self.len() {
            let _ = write!(s, "{t}");
            for c in &self.columns {
                let _ = write!(s, ",{}", u8::from(c[t]));
            }
            s.push('\n');
        }
        s
    }
}

/// Truth of `f` at every step of `w`.
pub fn oracle_eval_all(f: &Formula, w: &Trace) -> Result<Vec<bool>, OracleError> {
    let n = w.len();
    Ok(match f {
        Formula::False => vec![false; n],
        Formula::Atom(name) => w
            .column(name)
            .ok_or_else(|| OracleError::UnknownPredicate(name.clone()))?
            .to_vec(),
        Formula::Not(x) => oracle_eval_all(x, w)?.into_iter().map(|v| !v).collect(),
        Formula::And(l, r) => zip(oracle_eval_all(l, w)?, oracle_eval_all(r, w)?, |a, b| a && b),
        Formula::Or(l, r) => zip(oracle_eval_all(l, w)?, oracle_eval_all(r, w)?, |a, b| a || b),
        Formula::Implies(l, r) => zip(oracle_eval_all(l, w)?, oracle_eval_all(r, w)?, |a, b| !a || b),
        Formula::Previous(x) => {
            let x = oracle_eval_all(x, w)?;
            (0..n).map(|t| t > 0 && x[t - 1]).collect()
        }
        Formula::Since(l, r, b) => since(&oracle_eval_all(l, w)?, &oracle_eval_all(r, w)?, *b),
        Formula::Once(x, b) => since(&vec![true; n], &oracle_eval_all(x, w)?, *b),
        Formula::Historically(x, b) => {
            let neg: Vec<bool> = oracle_eval_all(x, w)?.into_iter().map(|v| !v).collect();
            since(&vec![true; n], &neg, *b).into_iter().map(|v| !v).collect()
        }
    })
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Exists `t' < t` with `y(t')`, `x` on all of `(t', t)`, and
/// `t - b <= t' < t - a`.
fn since(x: &[bool], y: &[bool], bound: TimeBound) -> Vec<bool> {
    (0..x.len() as u64)
        .map(|t| {
            // walk t' downwards; `held` says x covers (t', t)
            let mut held = true;
            for tp in (0..t).rev() {
                let in_window = tp + bound.lower < t && bound.upper.is_none_or(|b| t <= tp + b);
                if held && in_window && y[tp as usize] {
                    return true;
                }
                held = held && x[tp as usize];
                if !held {
                    return false;
                }
            }
            false
        })
        .collect()
}

pub fn oracle_eval(f: &Formula, w: &Trace, t: usize) -> Result<bool, OracleError> {
    if t >= w.len() {
        return Err(OracleError::OutOfRange { t, len: w.len() });
    }
    Ok(oracle_eval_all(f, w)?[t])
}

/// Run-length encodes a Boolean stream starting at `origin`.
pub fn run_length(bits: &[bool], origin: Time) -> Vec<Interval> {
    let mut out: Vec<Interval> = Vec::new();
    for (i, &b) in bits.iter().enumerate() {
        if !b {
            continue;
        }
        let t = origin + i as Time;
        match out.last_mut() {
            Some(last) if last.end == t => last.end = t + 1,
            _ => out.push(Interval::point(t)),
        }
    }
    out
}

/// Unit-step expansion of `(end, values)` segments that start at `origin`.
pub fn expand_segments(
    predicates: &PredicateTable,
    origin: Time,
    segments: &[(Time, Vec<bool>)],
) -> Trace {
    let mut columns = vec![Vec::new(); predicates.len()];
    let mut start = origin;
    for (end, values) in segments {
        for (c, &v) in columns.iter_mut().zip(values) {
            c.extend(std::iter::repeat_n(v, (end - start) as usize));
        }
        start = *end;
    }
    Trace {
        predicates: predicates.clone(),
        columns,
    }
}

/// Dense truth of `f` as intervals, defined through unit-step expansion.
pub fn oracle_dense(
    f: &Formula,
    predicates: &PredicateTable,
    origin: Time,
    segments: &[(Time, Vec<bool>)],
) -> Result<Vec<Interval>, OracleError> {
    let w = expand_segments(predicates, origin, segments);
    Ok(run_length(&oracle_eval_all(f, &w)?, origin))
}

/// Parameters of a randomized engine-versus-oracle run.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_depth: usize,
    pub max_bound: Time,
    pub max_len: usize,
    pub predicates: usize,
    /// Also replay each trace as random dense segments.
    pub dense: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            cases: 1000,
            max_depth: 5,
            max_bound: 8,
            max_len: 64,
            predicates: 3,
            dense: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub cases: usize,
    pub steps: usize,
}

/// First disagreement found, in reproducible form.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("case {case} ({mode}): `{formula}` at step {step}: oracle {expected}, engine {got}\n{trace_csv}")]
pub struct Counterexample {
    pub case: usize,
    pub mode: TimeModel,
    pub formula: String,
    pub trace_csv: String,
    pub step: usize,
    pub expected: bool,
    pub got: bool,
}

fn predicate_names(n: usize) -> Vec<String> {
    let base = ["p", "q", "r", "s", "u", "v"];
    (0..n)
        .map(|i| base.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string()))
        .collect()
}

/// Splits `0..len` into random consecutive segment ends.
fn random_cuts(rng: &mut ChaCha8Rng, w: &Trace) -> Vec<usize> {
    let mut ends = Vec::new();
    let mut t = 0;
    while t < w.len() {
        t += rng.random_range(1..=12.min(w.len() - t));
        ends.push(t);
    }
    ends
}

/// Compares the engine with the oracle on `cfg.cases` random instances.
pub fn differential_check(cfg: &CheckConfig) -> Result<CheckReport, Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names = predicate_names(cfg.predicates.max(1));
    let fcfg = FormulaConfig {
        max_depth: cfg.max_depth,
        max_bound: cfg.max_bound,
        atoms: names.clone(),
    };
    let table = PredicateTable::from_names(names.iter().cloned());
    let mut steps = 0;
    for case in 0..cfg.cases {
        let f = random_formula(&mut rng, &fcfg);
        let len = rng.random_range(1..=cfg.max_len.max(1));
        let flip = rng.random_range(0.05..0.7);
        let w = Trace::new(table.clone(), random_runs(&mut rng, names.len(), len, flip))
            .expect("uniform columns");
        let expected = oracle_eval_all(&f, &w).expect("atoms come from the table");
        let cex = |mode, step: usize, got: bool| Counterexample {
            case,
            mode,
            formula: f.to_string(),
            trace_csv: w.to_csv(),
            step,
            expected: expected[step],
            got,
        };

        let mut b = MonitorBuilder::with_predicates(table.clone());
        b.register_property(&f).expect("fresh builder");
        let m = b.finalize(TimeModel::Discrete).expect("one property");
        let mut s = EvalSession::new(&m);
        for t in 0..len {
            let got = s.update_discrete(t as Time, &w.row(t)).expect("well-formed step")[0];
            if got != expected[t] {
                return Err(cex(TimeModel::Discrete, t, got));
            }
        }
        steps += len;

        if cfg.dense {
            let mut b = MonitorBuilder::with_predicates(table.clone());
            b.register_property(&f).expect("fresh builder");
            let m = b.finalize(TimeModel::Dense).expect("one property");
            let mut s = EvalSession::new(&m);
            let mut got = vec![false; len];
            let mut cur = 0;
            for end in random_cuts(&mut rng, &w) {
                // a segment must carry constant values; cut further where they change
                while cur < end {
                    let row = w.row(cur);
                    let mut stop = cur + 1;
                    while stop < end && w.row(stop) == row {
                        stop += 1;
                    }
                    let v = s.update_dense(stop as Time, &row).expect("well-formed segment");
                    for iv in v.get(0) {
                        for t in iv.begin..iv.end {
                            got[t as usize] = true;
                        }
                    }
                    cur = stop;
                }
            }
            if let Some(t) = (0..len).find(|&t| got[t] != expected[t]) {
                return Err(cex(TimeModel::Dense, t, got[t]));
            }
        }
    }
    Ok(CheckReport {
        cases: cfg.cases,
        steps,
    })
}
