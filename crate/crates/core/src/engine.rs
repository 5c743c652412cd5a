//! Single-pass evaluation of a compiled schedule.
//!
//! Each step walks the schedule once in order. Boolean results of the
//! discrete model live in a per-node scalar lane; every temporal node keeps
//! its history as an interval set in the arena, written fresh each step from
//! the copy in the previous buffer.
//!
//! A temporal node's stored set is always ready for the *next* step. For
//! `since[a:b]` it holds the origins: past instants where the right operand
//! held and the left operand has held ever since. The node is true at `t`
//! when some origin lies in `[t-b, t-a)`.
//!
//! Dense segments are evaluated with the same rules lifted to interval sets,
//! which is exactly the unit-step evaluation run-length encoded.

use thiserror::Error;

use crate::alloc_probe;
use crate::arena::{ArenaError, DoubleBufferedArena, SetHandle};
use crate::compiler::{CompiledMonitor, NodeRecord, TimeModel};
use crate::intervals::{
    self, clip, complement, intersects, mark, shift, trim, union, Interval, SetWriter,
};
use crate::syntax::{Kind, Time, TimeBound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("monitor compiled for {found} time, operation needs {expected}")]
    WrongTimeModel { expected: TimeModel, found: TimeModel },
    #[error("time {got} does not advance past {previous}")]
    TimeRegression { previous: Time, got: Time },
    #[error("expected step {expected}, got {got}")]
    UnexpectedTime { expected: Time, got: Time },
    #[error("expected {expected} predicate values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("property index {index} out of range for {count} properties")]
    PropertyIndex { index: usize, count: usize },
    #[error("no step consumed")]
    NoStep,
    #[error("origin must be set before the first segment")]
    OriginAfterStart,
    #[error("node {node} ({kind}) at step {step}: {source}")]
    Arena {
        node: usize,
        kind: Kind,
        step: u64,
        source: ArenaError,
    },
}

/// One discrete step of input.
#[derive(Clone, Copy, Debug)]
pub struct StepInput<'a> {
    pub time: Time,
    pub values: &'a [bool],
}

/// The latest output of one property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict<'a> {
    Discrete(bool),
    Dense(&'a [Interval]),
}

/// Per-property output sets of the last dense segment.
pub struct DenseVerdicts<'s> {
    arena: &'s DoubleBufferedArena,
    handles: &'s [SetHandle],
    roots: &'s [usize],
}

impl std::fmt::Debug for DenseVerdicts<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl<'s> DenseVerdicts<'s> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, k: usize) -> &'s [Interval] {
        self.arena
            .read(self.handles[self.roots[k]])
            .expect("root outputs are one swap old")
    }

    pub fn iter(&self) -> impl Iterator<Item = &'s [Interval]> + '_ {
        (0..self.len()).map(|k| self.get(k))
    }
}

/// Evaluation state of one monitor over one trace.
pub struct EvalSession<'m> {
    monitor: &'m CompiledMonitor,
    arena: DoubleBufferedArena,
    state: Vec<SetHandle>,
    output: Vec<SetHandle>,
    scalar: Vec<bool>,
    verdicts: Vec<bool>,
    now: Time,
    steps: u64,
    evaluations: u64,
    live: Vec<u32>,
}

fn lookup_window(t: Time, bound: TimeBound) -> (Time, Time) {
    let lo = bound.upper.map_or(0, |b| t.saturating_sub(b));
    (lo, t.saturating_sub(bound.lower))
}

/// First instant still relevant to outputs at `next` and later.
fn horizon(next: Time, bound: TimeBound) -> Time {
    bound.upper.map_or(0, |b| next.saturating_sub(b))
}

/// Writes `set` trimmed for the next step; without an upper bound only the
/// earliest origin matters, so the set collapses to one interval.
fn store<I>(w: &mut SetWriter<'_>, set: I, next: Time, bound: TimeBound) -> Result<(), ArenaError>
where
    I: Iterator<Item = Interval>,
{
    let mut live = trim(set, horizon(next, bound));
    if bound.upper.is_none() {
        if let Some(first) = live.next() {
            w.push(Interval::from(first.begin))?;
        }
        return Ok(());
    }
    Ok(w.extend(live)?)
}

impl<'m> EvalSession<'m> {
    pub fn new(monitor: &'m CompiledMonitor) -> Self {
        let n = monitor.schedule.len();
        EvalSession {
            monitor,
            arena: DoubleBufferedArena::new(monitor.arena_capacity),
            state: vec![SetHandle::EMPTY; n],
            output: vec![SetHandle::EMPTY; n],
            scalar: vec![false; n],
            verdicts: vec![false; monitor.roots.len()],
            now: 0,
            steps: 0,
            evaluations: 0,
            live: vec![0; n],
        }
    }

    pub fn monitor(&self) -> &'m CompiledMonitor {
        self.monitor
    }

    pub fn arena(&self) -> &DoubleBufferedArena {
        &self.arena
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Node evaluations performed so far; one per record per step.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Start of the next step or segment.
    pub fn now(&self) -> Time {
        self.now
    }

    /// Largest stored set seen per schedule record.
    pub fn live_markings(&self) -> &[u32] {
        &self.live
    }

    /// Current stored set of a temporal record.
    pub fn state_of(&self, node: usize) -> &[Interval] {
        self.arena.read(self.state[node]).unwrap_or(&[])
    }

    /// Places the first dense segment at `t` instead of 0.
    pub fn set_origin(&mut self, t: Time) -> Result<(), EngineError> {
        if self.steps > 0 {
            return Err(EngineError::OriginAfterStart);
        }
        self.now = t;
        Ok(())
    }

    fn check_values(&self, values: &[bool]) -> Result<(), EngineError> {
        let expected = self.monitor.predicates.len();
        if values.len() != expected {
            return Err(EngineError::ValueCount {
                expected,
                got: values.len(),
            });
        }
        Ok(())
    }

    fn expect_model(&self, expected: TimeModel) -> Result<(), EngineError> {
        if self.monitor.time_model != expected {
            return Err(EngineError::WrongTimeModel {
                expected,
                found: self.monitor.time_model,
            });
        }
        Ok(())
    }

    pub fn update(&mut self, input: StepInput<'_>) -> Result<&[bool], EngineError> {
        self.update_discrete(input.time, input.values)
    }

    /// Consumes step `time`, which must be 0 first and then consecutive.
    pub fn update_discrete(&mut self, time: Time, values: &[bool]) -> Result<&[bool], EngineError> {
        self.expect_model(TimeModel::Discrete)?;
        self.check_values(values)?;
        if time != self.now {
            return Err(if self.steps > 0 && time < self.now {
                EngineError::TimeRegression {
                    previous: self.now - 1,
                    got: time,
                }
            } else {
                EngineError::UnexpectedTime {
                    expected: self.now,
                    got: time,
                }
            });
        }
        let before = alloc_probe::thread_allocations();
        self.step_discrete(time, values)?;
        for (v, &r) in self.verdicts.iter_mut().zip(&self.monitor.roots) {
            *v = self.scalar[r];
        }
        self.arena.swap();
        self.now = time + 1;
        self.steps += 1;
        self.arena
            .record_allocations(alloc_probe::thread_allocations() - before);
        Ok(&self.verdicts)
    }

    fn fail(&self, node: usize, source: ArenaError) -> EngineError {
        EngineError::Arena {
            node,
            kind: self.monitor.schedule[node].kind,
            step: self.steps,
            source,
        }
    }

    fn step_discrete(&mut self, t: Time, values: &[bool]) -> Result<(), EngineError> {
        let monitor = self.monitor;
        for (i, r) in monitor.schedule.iter().enumerate() {
            self.evaluations += 1;
            let x = r.left.is_some_and(|c| self.scalar[c as usize]);
            let y = r.right.is_some_and(|c| self.scalar[c as usize]);
            let out = match r.kind {
                Kind::False => false,
                Kind::Atom => values[r.predicate.expect("atom has a predicate") as usize],
                Kind::Not => !x,
                Kind::And => x && y,
                Kind::Or => x || y,
                Kind::Previous => {
                    let out = !self.state[i].is_empty();
                    self.state[i] = if x {
                        self.arena
                            .write(&[Interval::point(t)])
                            .map_err(|e| self.fail(i, e))?
                    } else {
                        SetHandle::EMPTY
                    };
                    out
                }
                Kind::Since => self.temporal_discrete(i, r, t, x, y, false)?,
                Kind::Once => self.temporal_discrete(i, r, t, true, x, false)?,
                Kind::Historically => self.temporal_discrete(i, r, t, true, !x, true)?,
            };
            self.scalar[i] = out;
        }
        Ok(())
    }

    /// Since-style update: `hold` keeps old origins, `fresh` adds `t`.
    /// With `negate` the origins are violations and the output flips.
    fn temporal_discrete(
        &mut self,
        i: usize,
        r: &NodeRecord,
        t: Time,
        hold: bool,
        fresh: bool,
        negate: bool,
    ) -> Result<bool, EngineError> {
        let prev = self.state[i];
        let bound = r.bound;
        let (lo, hi) = lookup_window(t, bound);
        let mut hit = false;
        let h = self
            .arena
            .write_with(r.state_slots as usize, |rd, w| {
                let m = rd.read(prev)?;
                hit = intersects(m, lo, hi);
                let keep = if hold { m } else { &[] };
                let add = fresh.then(|| Interval::point(t));
                if bound.upper.is_none() {
                    return store(w, union(keep.iter().copied(), add), t + 1, bound);
                }
                let from = horizon(t + 1, bound);
                let live = &keep[keep.partition_point(|iv| iv.end <= from)..];
                // From step t+1 on, an origin at or before `ready` stays inside
                // every window that any older origin is inside.
                let ready = t.checked_sub(bound.lower);
                if fresh && ready == Some(t) {
                    return Ok(w.push(Interval::point(t))?);
                }
                let split = ready.map_or(0, |c| live.partition_point(|iv| iv.begin <= c));
                if let (Some(c), Some(last)) = (ready, split.checked_sub(1).map(|i| live[i])) {
                    let newest = (last.end - 1).min(c);
                    w.push(Interval::point(newest))?;
                    if newest < last.end - 1 {
                        w.push(Interval::new(c + 1, last.end))?;
                    }
                }
                w.extend_canonical(&live[split..])?;
                if let Some(iv) = add {
                    w.push(iv)?;
                }
                Ok(())
            })
            .map_err(|e| self.fail(i, e))?;
        self.state[i] = h;
        self.live[i] = self.live[i].max(h.len);
        Ok(hit != negate)
    }

    /// Consumes the segment `[now, segment_end)` on which `values` hold.
    pub fn update_dense(
        &mut self,
        segment_end: Time,
        values: &[bool],
    ) -> Result<DenseVerdicts<'_>, EngineError> {
        self.expect_model(TimeModel::Dense)?;
        self.check_values(values)?;
        if segment_end <= self.now {
            return Err(EngineError::TimeRegression {
                previous: self.now,
                got: segment_end,
            });
        }
        let before = alloc_probe::thread_allocations();
        let window = Interval::new(self.now, segment_end);
        for i in 0..self.monitor.schedule.len() {
            self.evaluations += 1;
            self.eval_dense(i, window, values)
                .map_err(|e| self.fail(i, e))?;
        }
        self.arena.swap();
        self.now = segment_end;
        self.steps += 1;
        self.arena
            .record_allocations(alloc_probe::thread_allocations() - before);
        Ok(self.dense_verdicts())
    }

    fn dense_verdicts(&self) -> DenseVerdicts<'_> {
        DenseVerdicts {
            arena: &self.arena,
            handles: &self.output,
            roots: &self.monitor.roots,
        }
    }

    fn eval_dense(&mut self, i: usize, win: Interval, values: &[bool]) -> Result<(), ArenaError> {
        let monitor = self.monitor;
        let r = &monitor.schedule[i];
        let xh = r.left.map_or(SetHandle::EMPTY, |c| self.output[c as usize]);
        let yh = r.right.map_or(SetHandle::EMPTY, |c| self.output[c as usize]);
        let sh = self.state[i];
        let limit = r.output_slots as usize;
        let bound = r.bound;
        let (s, e) = (win.begin, win.end);

        let out = match r.kind {
            Kind::False => SetHandle::EMPTY,
            Kind::Atom => {
                if values[r.predicate.expect("atom has a predicate") as usize] {
                    self.arena.write(&[win])?
                } else {
                    SetHandle::EMPTY
                }
            }
            Kind::Not => self.arena.write_with(limit, |rd, w| {
                Ok(w.extend(complement(rd.read(xh)?.iter().copied(), win))?)
            })?,
            Kind::And => self.arena.write_with(limit, |rd, w| {
                let (x, y) = (rd.read(xh)?, rd.read(yh)?);
                Ok(w.extend(intervals::intersect(x.iter().copied(), y.iter().copied()))?)
            })?,
            Kind::Or => self.arena.write_with(limit, |rd, w| {
                let (x, y) = (rd.read(xh)?, rd.read(yh)?);
                Ok(w.extend(union(x.iter().copied(), y.iter().copied()))?)
            })?,
            Kind::Previous => {
                let held = !sh.is_empty();
                let out = self.arena.write_with(limit, |rd, w| {
                    let x = rd.read(xh)?;
                    let first = held.then(|| Interval::point(s));
                    let rest = shift(clip(x.iter().copied(), Interval::new(s, e - 1)), 1);
                    Ok(w.extend(union(first, rest))?)
                })?;
                let last = intervals::contains(self.arena.read(xh)?, e - 1);
                self.state[i] = if last {
                    self.arena.write(&[Interval::point(e - 1)])?
                } else {
                    SetHandle::EMPTY
                };
                out
            }
            Kind::Once => {
                let out = self.arena.write_with(limit, |rd, w| {
                    let (m, y) = (rd.read(sh)?, rd.read(xh)?);
                    let origins = union(m.iter().copied(), y.iter().copied());
                    Ok(w.extend(clip(mark(origins, bound), win))?)
                })?;
                self.state[i] = self.arena.write_with(r.state_slots as usize, |rd, w| {
                    let (m, y) = (rd.read(sh)?, rd.read(xh)?);
                    store(w, union(m.iter().copied(), y.iter().copied()), e, bound)
                })?;
                out
            }
            Kind::Historically => {
                let out = self.arena.write_with(limit, |rd, w| {
                    let (v, y) = (rd.read(sh)?, rd.read(xh)?);
                    let violations = union(v.iter().copied(), complement(y.iter().copied(), win));
                    let bad = clip(mark(violations, bound), win);
                    Ok(w.extend(complement(bad, win))?)
                })?;
                self.state[i] = self.arena.write_with(r.state_slots as usize, |rd, w| {
                    let (v, y) = (rd.read(sh)?, rd.read(xh)?);
                    let violations = union(v.iter().copied(), complement(y.iter().copied(), win));
                    store(w, violations, e, bound)
                })?;
                out
            }
            Kind::Since => {
                let mut floor = None;
                let out = self.arena.write_with(limit, |rd, w| {
                    let (m, x, y) = (rd.read(sh)?, rd.read(xh)?, rd.read(yh)?);
                    floor = since_segment(m, x, y, win, bound, w)?;
                    Ok(())
                })?;
                self.state[i] = self.arena.write_with(r.state_slots as usize, |rd, w| {
                    let (m, y) = (rd.read(sh)?, rd.read(yh)?);
                    match floor {
                        None => store(w, union(m.iter().copied(), y.iter().copied()), e, bound),
                        Some(f) => store(w, trim(from_floor(y, f), f), e, bound),
                    }
                })?;
                out
            }
        };
        self.output[i] = out;
        if r.kind.is_temporal() {
            self.live[i] = self.live[i].max(self.state[i].len);
        }
        Ok(())
    }

    /// Latest verdict of property `k`.
    pub fn verdict_for(&self, k: usize) -> Result<Verdict<'_>, EngineError> {
        let count = self.monitor.roots.len();
        if k >= count {
            return Err(EngineError::PropertyIndex { index: k, count });
        }
        if self.steps == 0 {
            return Err(EngineError::NoStep);
        }
        Ok(match self.monitor.time_model {
            TimeModel::Discrete => Verdict::Discrete(self.verdicts[k]),
            TimeModel::Dense => Verdict::Dense(self.dense_verdicts().get(k)),
        })
    }

    /// Verdicts of the last discrete step.
    pub fn verdicts(&self) -> &[bool] {
        &self.verdicts
    }
}

fn from_floor(y: &[Interval], floor: Time) -> impl Iterator<Item = Interval> + '_ {
    let k = y.partition_point(|iv| iv.end <= floor);
    y[k..].iter().copied()
}

/// Output of `x since y` over one segment.
///
/// Stretches where `x` holds split the segment into epochs. In the first,
/// origins are the stored set plus new `y` points; after each gap `[c,d)`
/// in `x` only `y` points from `d-1` on survive. Inside a gap only the
/// instant just before can witness, which needs a zero lower bound.
///
/// Returns the floor of the final epoch, or `None` when `x` never failed.
fn since_segment(
    m: &[Interval],
    x: &[Interval],
    y: &[Interval],
    win: Interval,
    bound: TimeBound,
    w: &mut SetWriter<'_>,
) -> Result<Option<Time>, ArenaError> {
    let adjacent = bound.lower == 0 && bound.upper.is_none_or(|b| b >= 1);
    let mut start = win.begin;
    let mut floor: Option<Time> = None;
    for gap in complement(x.iter().copied(), win) {
        let epoch = Interval::new(start, gap.begin + 1);
        match floor {
            None => w.extend(clip(
                mark(union(m.iter().copied(), y.iter().copied()), bound),
                epoch,
            ))?,
            Some(f) => w.extend(clip(mark(trim(from_floor(y, f), f), bound), epoch))?,
        }
        if adjacent {
            let inside = clip(y.iter().copied(), Interval::new(gap.begin, gap.end - 1));
            w.extend(shift(inside, 1))?;
        }
        start = gap.end;
        floor = Some(gap.end - 1);
    }
    if start < win.end {
        let epoch = Interval::new(start, win.end);
        match floor {
            None => w.extend(clip(
                mark(union(m.iter().copied(), y.iter().copied()), bound),
                epoch,
            ))?,
            Some(f) => w.extend(clip(mark(trim(from_floor(y, f), f), bound), epoch))?,
        }
    }
    Ok(floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::CompiledMonitor;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn run(text: &str, columns: &[(&str, &str)]) -> Vec<bool> {
        let mut b = crate::compiler::MonitorBuilder::with_predicates(
            crate::syntax::PredicateTable::from_names(columns.iter().map(|c| c.0)),
        );
        b.register_text(text).unwrap();
        let m = b.finalize(TimeModel::Discrete).unwrap();
        let cols: Vec<Vec<bool>> = columns.iter().map(|c| bits(c.1)).collect();
        let len = cols.first().map_or(0, Vec::len);
        let mut s = EvalSession::new(&m);
        let mut out = Vec::new();
        let mut row = vec![false; cols.len()];
        for t in 0..len {
            for (v, c) in row.iter_mut().zip(&cols) {
                *v = c[t];
            }
            out.push(s.update_discrete(t as Time, &row).unwrap()[0]);
        }
        out
    }

    #[test]
    fn since_example() {
        assert_eq!(
            run("p since q", &[("p", "1101"), ("q", "0100")]),
            bits("0010")
        );
    }

    #[test]
    fn false_is_always_false() {
        assert_eq!(run("false", &[("p", "1011")]), bits("0000"));
    }

    #[test]
    fn once_two_three() {
        assert_eq!(run("once[2:3] q", &[("q", "1000000")]), bits("0001000"));
    }

    #[test]
    fn historically_strict_past() {
        // p(2) = 0 is first seen at t = 3
        assert_eq!(run("historically(p)", &[("p", "1101")]), bits("1110"));
    }

    #[test]
    fn previous_and_true() {
        assert_eq!(run("pre p", &[("p", "101")]), bits("010"));
        assert_eq!(run("true", &[("p", "000")]), bits("111"));
    }

    #[test]
    fn point_bound_is_never_true() {
        assert_eq!(run("once[3:3] q", &[("q", "11111111")]), bits("00000000"));
    }

    #[test]
    fn unbounded_lower() {
        assert_eq!(run("once[2:] q", &[("q", "01000000")]), bits("00001111"));
    }

    #[test]
    fn discrete_time_errors() {
        let m = CompiledMonitor::from_texts(&["p"], TimeModel::Discrete).unwrap();
        let mut s = EvalSession::new(&m);
        assert_eq!(
            s.update_discrete(1, &[true]).unwrap_err(),
            EngineError::UnexpectedTime { expected: 0, got: 1 }
        );
        s.update_discrete(0, &[true]).unwrap();
        s.update_discrete(1, &[true]).unwrap();
        assert_eq!(
            s.update_discrete(1, &[true]).unwrap_err(),
            EngineError::TimeRegression { previous: 1, got: 1 }
        );
        assert_eq!(
            s.update_discrete(3, &[true]).unwrap_err(),
            EngineError::UnexpectedTime { expected: 2, got: 3 }
        );
        assert_eq!(
            s.update_discrete(2, &[true, false]).unwrap_err(),
            EngineError::ValueCount { expected: 1, got: 2 }
        );
        assert!(matches!(
            s.update_dense(5, &[true]),
            Err(EngineError::WrongTimeModel { .. })
        ));
    }

    #[test]
    fn verdict_for_projection() {
        let m = CompiledMonitor::from_texts(&["p", "!p"], TimeModel::Discrete).unwrap();
        let mut s = EvalSession::new(&m);
        assert_eq!(s.verdict_for(0).unwrap_err(), EngineError::NoStep);
        let v = s.update_discrete(0, &[true]).unwrap().to_vec();
        assert_eq!(s.verdict_for(0).unwrap(), Verdict::Discrete(v[0]));
        assert_eq!(s.verdict_for(1).unwrap(), Verdict::Discrete(v[1]));
        assert_eq!(
            s.verdict_for(2).unwrap_err(),
            EngineError::PropertyIndex { index: 2, count: 2 }
        );
    }

    #[test]
    fn single_pass_per_step() {
        let m = CompiledMonitor::from_texts(
            &["historically[2:4](pre(r) && (p since[1:3] q))", "once q"],
            TimeModel::Discrete,
        )
        .unwrap();
        let mut s = EvalSession::new(&m);
        for t in 0..10 {
            s.update_discrete(t, &[t % 2 == 0, t % 3 == 0, true]).unwrap();
            assert_eq!(s.evaluations(), (t + 1) * m.node_count() as u64);
        }
    }

    #[test]
    fn dense_once_over_constant_segment() {
        let m = CompiledMonitor::from_texts(&["once[0:10](p && q)"], TimeModel::Dense).unwrap();
        let mut s = EvalSession::new(&m);
        let v = s.update_dense(10, &[true, true]).unwrap();
        assert_eq!(v.get(0), [Interval::new(1, 10)]);
    }

    #[test]
    fn dense_errors_and_atoms() {
        let m = CompiledMonitor::from_texts(&["p"], TimeModel::Dense).unwrap();
        let mut s = EvalSession::new(&m);
        assert_eq!(s.update_dense(5, &[false]).unwrap().get(0), []);
        assert_eq!(
            s.update_dense(5, &[true]).unwrap_err(),
            EngineError::TimeRegression { previous: 5, got: 5 }
        );
        assert_eq!(s.update_dense(7, &[true]).unwrap().get(0), [Interval::new(5, 7)]);
        assert_eq!(s.set_origin(3), Err(EngineError::OriginAfterStart));
    }

    #[test]
    fn dense_origin_shifts_first_segment() {
        let m = CompiledMonitor::from_texts(&["p"], TimeModel::Dense).unwrap();
        let mut s = EvalSession::new(&m);
        s.set_origin(100).unwrap();
        assert_eq!(s.update_dense(105, &[true]).unwrap().get(0), [Interval::new(100, 105)]);
    }

    #[test]
    fn overflow_names_node_and_step() {
        let mut m = CompiledMonitor::from_texts(&["once[4:6] p"], TimeModel::Discrete).unwrap();
        m.schedule[1].state_slots = 1;
        m.arena_capacity = 2;
        let mut s = EvalSession::new(&m);
        let mut failure = None;
        for t in 0..8 {
            if let Err(e) = s.update_discrete(t, &[t % 2 == 0]) {
                failure = Some(e);
                break;
            }
        }
        match failure {
            Some(EngineError::Arena { node: 1, kind: Kind::Once, step: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn superseded_origins_are_dropped() {
        let m = CompiledMonitor::from_texts(&["once[0:50] p", "once[2:50] p"], TimeModel::Discrete).unwrap();
        let mut s = EvalSession::new(&m);
        for t in 0..100 {
            s.update_discrete(t, &[t % 2 == 0]).unwrap();
        }
        assert_eq!(s.live_markings()[1..], [1, 2]);
        assert_eq!(s.state_of(1), [Interval::point(98)]);
        assert_eq!(s.state_of(2), [Interval::point(96), Interval::point(98)]);
    }

    #[test]
    fn once_window_stays_trimmed() {
        let m = CompiledMonitor::from_texts(&["once[1:5] p"], TimeModel::Discrete).unwrap();
        let mut s = EvalSession::new(&m);
        for t in 0..200 {
            s.update_discrete(t, &[t % 3 != 1]).unwrap();
            let st = s.state_of(1);
            assert!(st.iter().all(|iv| iv.begin + 5 >= t + 1), "t={t} {st:?}");
        }
    }
}
