//! Canonical interval sets over the `u64` timeline.
//!
//! A set is a slice of half-open [`Interval`]s sorted by `begin`, pairwise
//! disjoint and never touching (`end_i < begin_{i+1}`). All combinators are
//! lazy iterators over such slices; [`SetWriter`] materializes a stream into
//! caller-provided slots. Nothing here allocates.

use std::fmt;

use thiserror::Error;

use crate::syntax::{Time, TimeBound};

/// Sentinel end of an interval that extends forever.
pub const INFINITY: Time = Time::MAX;

/// The half-open range `[begin, end)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Interval {
    pub begin: Time,
    pub end: Time,
}

impl Interval {
    pub const EMPTY: Interval = Interval { begin: 0, end: 0 };

    pub const fn new(begin: Time, end: Time) -> Self {
        Interval { begin, end }
    }

    /// `[t, t+1)`.
    pub const fn point(t: Time) -> Self {
        Interval {
            begin: t,
            end: t.saturating_add(1),
        }
    }

    pub const fn from(begin: Time) -> Self {
        Interval {
            begin,
            end: INFINITY,
        }
    }

    pub const fn is_empty(&self) -> bool {
        self.begin >= self.end
    }

    pub const fn contains(&self, t: Time) -> bool {
        self.begin <= t && t < self.end
    }

    pub const fn is_unbounded(&self) -> bool {
        self.end == INFINITY
    }

    pub const fn len(&self) -> Time {
        self.end.saturating_sub(self.begin)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval::new(self.begin.max(other.begin), self.end.min(other.end))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.end == INFINITY {
            write!(f, "[{},inf)", self.begin)
        } else {
            write!(f, "[{},{})", self.begin, self.end)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A read-only canonical set.
pub type IntervalSetView<'a> = &'a [Interval];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("interval writer overflow: capacity {capacity} exhausted")]
pub struct CapacityOverflow {
    pub capacity: usize,
}

/// Checks sortedness, non-emptiness, disjointness and non-adjacency.
pub fn is_canonical(set: &[Interval]) -> bool {
    set.iter().all(|iv| !iv.is_empty()) && set.windows(2).all(|w| w[0].end < w[1].begin)
}

/// Membership by binary search.
pub fn contains(set: &[Interval], t: Time) -> bool {
    let i = set.partition_point(|iv| iv.end <= t);
    set.get(i).is_some_and(|iv| iv.begin <= t)
}

/// Whether any point of `[lo, hi)` lies in `set`.
pub fn intersects(set: &[Interval], lo: Time, hi: Time) -> bool {
    if lo >= hi {
        return false;
    }
    let i = set.partition_point(|iv| iv.end <= lo);
    set.get(i).is_some_and(|iv| iv.begin < hi)
}

/// Smallest interval covering the whole set.
pub fn hull(set: &[Interval]) -> Option<Interval> {
    Some(Interval::new(set.first()?.begin, set.last()?.end))
}

/// Appends intervals into a fixed slot slice, coalescing on the fly.
///
/// Pushes must arrive sorted by `begin`; overlapping or touching intervals are
/// merged into the last written slot, empty ones are dropped.
pub struct SetWriter<'a> {
    slots: &'a mut [Interval],
    len: usize,
}

impl<'a> SetWriter<'a> {
    pub fn new(slots: &'a mut [Interval]) -> Self {
        SetWriter { slots, len: 0 }
    }

    pub fn push(&mut self, iv: Interval) -> Result<(), CapacityOverflow> {
        if iv.is_empty() {
            return Ok(());
        }
        if let Some(last) = self.len.checked_sub(1).map(|i| &mut self.slots[i]) {
            debug_assert!(iv.begin >= last.begin, "unsorted push");
            if iv.begin <= last.end {
                last.end = last.end.max(iv.end);
                return Ok(());
            }
        }
        let capacity = self.slots.len();
        let slot = self
            .slots
            .get_mut(self.len)
            .ok_or(CapacityOverflow { capacity })?;
        *slot = iv;
        self.len += 1;
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Interval>>(&mut self, it: I) -> Result<(), CapacityOverflow> {
        for iv in it {
            self.push(iv)?;
        }
        Ok(())
    }

    /// Appends a canonical set with a bulk copy; only its first interval
    /// can merge with what was written before.
    pub fn extend_canonical(&mut self, set: &[Interval]) -> Result<(), CapacityOverflow> {
        let Some((&first, rest)) = set.split_first() else {
            return Ok(());
        };
        self.push(first)?;
        let capacity = self.slots.len();
        let dst = self
            .slots
            .get_mut(self.len..self.len + rest.len())
            .ok_or(CapacityOverflow { capacity })?;
        dst.copy_from_slice(rest);
        self.len += rest.len();
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.slots[..self.len]
    }

    pub fn into_slice(self) -> &'a [Interval] {
        &self.slots[..self.len]
    }
}

/// Merges a begin-sorted stream whose neighbours may overlap or touch.
#[derive(Clone)]
pub struct Coalesce<I: Iterator<Item = Interval>> {
    inner: std::iter::Peekable<I>,
}

impl<I: Iterator<Item = Interval>> Coalesce<I> {
    pub fn new(inner: I) -> Self {
        Coalesce {
            inner: inner.peekable(),
        }
    }
}

impl<I: Iterator<Item = Interval>> Iterator for Coalesce<I> {
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        let mut cur = loop {
            let iv = self.inner.next()?;
            if !iv.is_empty() {
                break iv;
            }
        };
        while let Some(nx) = self.inner.peek() {
            if nx.is_empty() {
                self.inner.next();
            } else if nx.begin <= cur.end {
                cur.end = cur.end.max(nx.end);
                self.inner.next();
            } else {
                break;
            }
        }
        Some(cur)
    }
}

/// Sorted merge of two streams, still possibly overlapping.
#[derive(Clone)]
pub struct MergeSorted<A: Iterator<Item = Interval>, B: Iterator<Item = Interval>> {
    a: std::iter::Peekable<A>,
    b: std::iter::Peekable<B>,
}

impl<A, B> Iterator for MergeSorted<A, B>
where
    A: Iterator<Item = Interval>,
    B: Iterator<Item = Interval>,
{
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        match (self.a.peek(), self.b.peek()) {
            (Some(x), Some(y)) => {
                if x.begin <= y.begin {
                    self.a.next()
                } else {
                    self.b.next()
                }
            }
            (Some(_), None) => self.a.next(),
            (None, _) => self.b.next(),
        }
    }
}

pub type Union<A, B> = Coalesce<MergeSorted<A, B>>;

/// Lazy canonical union.
pub fn union<A, B>(a: A, b: B) -> Union<A::IntoIter, B::IntoIter>
where
    A: IntoIterator<Item = Interval>,
    B: IntoIterator<Item = Interval>,
{
    Coalesce::new(MergeSorted {
        a: a.into_iter().peekable(),
        b: b.into_iter().peekable(),
    })
}

/// Lazy intersection of two canonical streams.
#[derive(Clone)]
pub struct Intersect<A: Iterator<Item = Interval>, B: Iterator<Item = Interval>> {
    a: std::iter::Peekable<A>,
    b: std::iter::Peekable<B>,
}

pub fn intersect<A, B>(a: A, b: B) -> Intersect<A::IntoIter, B::IntoIter>
where
    A: IntoIterator<Item = Interval>,
    B: IntoIterator<Item = Interval>,
{
    Intersect {
        a: a.into_iter().peekable(),
        b: b.into_iter().peekable(),
    }
}

impl<A, B> Iterator for Intersect<A, B>
where
    A: Iterator<Item = Interval>,
    B: Iterator<Item = Interval>,
{
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        loop {
            let x = *self.a.peek()?;
            let y = *self.b.peek()?;
            let meet = x.intersect(&y);
            if x.end <= y.end {
                self.a.next();
            } else {
                self.b.next();
            }
            if !meet.is_empty() {
                return Some(meet);
            }
        }
    }
}

/// Lazy complement of a canonical stream within a window.
#[derive(Clone)]
pub struct Complement<I: Iterator<Item = Interval>> {
    inner: I,
    cursor: Time,
    hi: Time,
    done: bool,
}

pub fn complement<I: IntoIterator<Item = Interval>>(a: I, window: Interval) -> Complement<I::IntoIter> {
    Complement {
        inner: a.into_iter(),
        cursor: window.begin,
        hi: window.end,
        done: window.is_empty(),
    }
}

impl<I: Iterator<Item = Interval>> Iterator for Complement<I> {
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        if self.done {
            return None;
        }
        for iv in self.inner.by_ref() {
            if iv.end <= self.cursor {
                continue;
            }
            if iv.begin >= self.hi {
                break;
            }
            let gap = Interval::new(self.cursor, iv.begin.min(self.hi));
            self.cursor = iv.end;
            if self.cursor >= self.hi {
                self.done = true;
            }
            if !gap.is_empty() {
                return Some(gap);
            }
            if self.done {
                return None;
            }
        }
        self.done = true;
        let tail = Interval::new(self.cursor, self.hi);
        (!tail.is_empty()).then_some(tail)
    }
}

/// Maps each origin `[s,e)` to the times it witnesses under `bound`.
#[derive(Clone)]
pub struct MarkRaw<I: Iterator<Item = Interval>> {
    inner: I,
    bound: TimeBound,
}

impl<I: Iterator<Item = Interval>> Iterator for MarkRaw<I> {
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        for iv in self.inner.by_ref() {
            let out = mark_one(iv, self.bound);
            if !out.is_empty() {
                return Some(out);
            }
        }
        None
    }
}

/// `[s+a+1, e+b)` with saturation; an unbounded upper reaches `INFINITY`.
/// Each origin `o` witnesses `[o+a+1, o+b+1)`, so `a == b` witnesses nothing.
pub fn mark_one(iv: Interval, bound: TimeBound) -> Interval {
    if bound.upper == Some(bound.lower) {
        return Interval::EMPTY;
    }
    let begin = iv.begin.saturating_add(bound.lower).saturating_add(1);
    let end = match bound.upper {
        None => INFINITY,
        Some(b) => iv.end.saturating_add(b),
    };
    Interval::new(begin, end)
}

pub type Mark<I> = Coalesce<MarkRaw<I>>;

pub fn mark<I: IntoIterator<Item = Interval>>(origins: I, bound: TimeBound) -> Mark<I::IntoIter> {
    Coalesce::new(MarkRaw {
        inner: origins.into_iter(),
        bound,
    })
}

/// Restricts a canonical stream to `window`.
#[derive(Clone)]
pub struct Clip<I: Iterator<Item = Interval>> {
    inner: I,
    window: Interval,
}

pub fn clip<I: IntoIterator<Item = Interval>>(a: I, window: Interval) -> Clip<I::IntoIter> {
    Clip {
        inner: a.into_iter(),
        window,
    }
}

impl<I: Iterator<Item = Interval>> Iterator for Clip<I> {
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        for iv in self.inner.by_ref() {
            if iv.begin >= self.window.end {
                return None;
            }
            let c = iv.intersect(&self.window);
            if !c.is_empty() {
                return Some(c);
            }
        }
        None
    }
}

/// Translates every interval forward; `INFINITY` stays put.
#[derive(Clone)]
pub struct Shift<I: Iterator<Item = Interval>> {
    inner: I,
    by: Time,
}

pub fn shift<I: IntoIterator<Item = Interval>>(a: I, by: Time) -> Shift<I::IntoIter> {
    Shift {
        inner: a.into_iter(),
        by,
    }
}

impl<I: Iterator<Item = Interval>> Iterator for Shift<I> {
    type Item = Interval;

    fn next(&mut self) -> Option<Interval> {
        loop {
            let iv = self.inner.next()?;
            let end = if iv.end == INFINITY {
                INFINITY
            } else {
                iv.end.saturating_add(self.by)
            };
            let out = Interval::new(iv.begin.saturating_add(self.by), end);
            if !out.is_empty() {
                return Some(out);
            }
        }
    }
}

/// Drops everything before `t`.
pub fn trim<I: IntoIterator<Item = Interval>>(a: I, t: Time) -> Clip<I::IntoIter> {
    clip(a, Interval::from(t))
}

pub fn union_into<'w>(
    a: &[Interval],
    b: &[Interval],
    out: &'w mut SetWriter<'_>,
) -> Result<&'w [Interval], CapacityOverflow> {
    out.extend(union(a.iter().copied(), b.iter().copied()))?;
    Ok(out.as_slice())
}

pub fn intersect_into<'w>(
    a: &[Interval],
    b: &[Interval],
    out: &'w mut SetWriter<'_>,
) -> Result<&'w [Interval], CapacityOverflow> {
    out.extend(intersect(a.iter().copied(), b.iter().copied()))?;
    Ok(out.as_slice())
}

pub fn complement_into<'w>(
    a: &[Interval],
    window: Interval,
    out: &'w mut SetWriter<'_>,
) -> Result<&'w [Interval], CapacityOverflow> {
    out.extend(complement(a.iter().copied(), window))?;
    Ok(out.as_slice())
}

pub fn mark_into<'w>(
    origins: &[Interval],
    bound: TimeBound,
    out: &'w mut SetWriter<'_>,
) -> Result<&'w [Interval], CapacityOverflow> {
    out.extend(mark(origins.iter().copied(), bound))?;
    Ok(out.as_slice())
}

pub fn trim_before<'w>(
    a: &[Interval],
    t: Time,
    out: &'w mut SetWriter<'_>,
) -> Result<&'w [Interval], CapacityOverflow> {
    out.extend(trim(a.iter().copied(), t))?;
    Ok(out.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(b: Time, e: Time) -> Interval {
        Interval::new(b, e)
    }

    fn run<F>(cap: usize, f: F) -> Vec<Interval>
    where
        F: for<'w, 's> FnOnce(&'w mut SetWriter<'s>) -> Result<&'w [Interval], CapacityOverflow>,
    {
        let mut slots = vec![Interval::EMPTY; cap];
        let mut w = SetWriter::new(&mut slots);
        let out = f(&mut w).unwrap().to_vec();
        assert!(is_canonical(&out), "{out:?}");
        out
    }

    #[test]
    fn union_examples() {
        assert_eq!(run(2, |w| union_into(&[iv(1, 3)], &[iv(3, 5)], w)), [iv(1, 5)]);
        assert_eq!(run(1, |w| union_into(&[], &[iv(0, 2)], w)), [iv(0, 2)]);
        assert_eq!(
            run(3, |w| union_into(&[iv(0, 2), iv(6, 8)], &[iv(1, 7)], w)),
            [iv(0, 8)]
        );
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(run(2, |w| intersect_into(&[iv(0, 5)], &[iv(3, 9)], w)), [iv(3, 5)]);
        assert_eq!(run(1, |w| intersect_into(&[iv(0, 5)], &[], w)), []);
        assert_eq!(
            run(3, |w| intersect_into(&[iv(0, 2), iv(4, 6)], &[iv(1, 5)], w)),
            [iv(1, 2), iv(4, 5)]
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            run(2, |w| complement_into(&[iv(2, 4)], iv(0, 6), w)),
            [iv(0, 2), iv(4, 6)]
        );
        assert_eq!(run(1, |w| complement_into(&[], iv(0, 6), w)), [iv(0, 6)]);
        assert_eq!(run(2, |w| complement_into(&[iv(0, 6)], iv(0, 6), w)), []);
        assert_eq!(
            run(2, |w| complement_into(&[iv(0, 1), iv(9, 12)], iv(3, 10), w)),
            [iv(3, 9)]
        );
        assert_eq!(
            run(2, |w| complement_into(&[iv(0, 1)], iv(0, INFINITY), w)),
            [Interval::from(1)]
        );
    }

    #[test]
    fn mark_examples() {
        assert_eq!(
            run(1, |w| mark_into(&[iv(0, 1)], TimeBound::bounded(2, 3), w)),
            [iv(3, 4)]
        );
        assert_eq!(
            run(1, |w| mark_into(&[iv(0, 1)], TimeBound::bounded(0, 10), w)),
            [iv(1, 11)]
        );
        assert_eq!(run(1, |w| mark_into(&[], TimeBound::bounded(0, 10), w)), []);
        assert_eq!(
            run(1, |w| mark_into(&[iv(4, 6)], TimeBound::from_lower(2), w)),
            [Interval::from(7)]
        );
        // a point bound witnesses nothing under the strict-past reading
        assert_eq!(
            run(1, |w| mark_into(&[iv(0, 1), iv(3, 4)], TimeBound::bounded(5, 5), w)),
            []
        );
        assert_eq!(
            run(1, |w| mark_into(&[iv(61, 63)], TimeBound::bounded(0, 0), w)),
            []
        );
    }

    #[test]
    fn mark_coalesces_overlaps() {
        assert_eq!(
            run(2, |w| mark_into(&[iv(0, 1), iv(3, 4)], TimeBound::bounded(0, 4), w)),
            [iv(1, 8)]
        );
    }

    #[test]
    fn mark_saturates() {
        let top = INFINITY - 2;
        assert_eq!(
            run(1, |w| mark_into(&[iv(top, top + 1)], TimeBound::bounded(5, 9), w)),
            []
        );
        assert_eq!(
            run(1, |w| mark_into(&[iv(top - 5, top - 4)], TimeBound::bounded(0, 9), w)),
            [iv(top - 4, INFINITY)]
        );
    }

    #[test]
    fn trim_examples() {
        assert_eq!(run(1, |w| trim_before(&[iv(0, 5)], 3, w)), [iv(3, 5)]);
        assert_eq!(run(1, |w| trim_before(&[iv(0, 2)], 3, w)), []);
        assert_eq!(run(2, |w| trim_before(&[iv(0, 2), iv(4, 6)], 2, w)), [iv(4, 6)]);
    }

    #[test]
    fn writer_reports_overflow() {
        let mut slots = [Interval::EMPTY; 1];
        let mut w = SetWriter::new(&mut slots);
        w.push(iv(0, 1)).unwrap();
        w.push(iv(1, 2)).unwrap();
        assert_eq!(w.push(iv(5, 6)), Err(CapacityOverflow { capacity: 1 }));
        assert_eq!(w.as_slice(), [iv(0, 2)]);
    }

    #[test]
    fn shift_keeps_infinity() {
        let v: Vec<_> = shift([iv(0, 2), Interval::from(5)], 3).collect();
        assert_eq!(v, [iv(3, 5), Interval::from(8)]);
    }

    #[test]
    fn lookup_helpers() {
        let s = [iv(1, 3), iv(5, 6)];
        assert!(!contains(&s, 0));
        assert!(contains(&s, 2));
        assert!(!contains(&s, 3));
        assert!(contains(&s, 5));
        assert!(intersects(&s, 3, 6));
        assert!(!intersects(&s, 3, 5));
        assert!(!intersects(&s, 4, 4));
        assert_eq!(hull(&s), Some(iv(1, 6)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const SPAN: Time = 64;

        fn set() -> impl Strategy<Value = Vec<Interval>> {
            proptest::collection::vec(any::<bool>(), SPAN as usize).prop_map(|bits| from_bits(&bits))
        }

        fn from_bits(bits: &[bool]) -> Vec<Interval> {
            let mut out: Vec<Interval> = Vec::new();
            for (t, &b) in bits.iter().enumerate() {
                if !b {
                    continue;
                }
                let t = t as Time;
                match out.last_mut() {
                    Some(last) if last.end == t => last.end = t + 1,
                    _ => out.push(Interval::point(t)),
                }
            }
            out
        }

        fn bits(set: &[Interval], span: Time) -> Vec<bool> {
            (0..span).map(|t| set.iter().any(|iv| iv.contains(t))).collect()
        }

        fn collect<I: Iterator<Item = Interval>>(it: I, cap: usize) -> Vec<Interval> {
            let mut slots = vec![Interval::EMPTY; cap];
            let mut w = SetWriter::new(&mut slots);
            w.extend(it).unwrap();
            w.as_slice().to_vec()
        }

        proptest! {
            #[test]
            fn union_pointwise(a in set(), b in set()) {
                let out = collect(union(a.iter().copied(), b.iter().copied()), a.len() + b.len());
                prop_assert!(is_canonical(&out));
                let (ba, bb, bo) = (bits(&a, SPAN), bits(&b, SPAN), bits(&out, SPAN));
                for t in 0..SPAN as usize {
                    prop_assert_eq!(bo[t], ba[t] || bb[t]);
                }
            }

            #[test]
            fn intersect_pointwise(a in set(), b in set()) {
                let out = collect(intersect(a.iter().copied(), b.iter().copied()), a.len() + b.len());
                prop_assert!(is_canonical(&out));
                let (ba, bb, bo) = (bits(&a, SPAN), bits(&b, SPAN), bits(&out, SPAN));
                for t in 0..SPAN as usize {
                    prop_assert_eq!(bo[t], ba[t] && bb[t]);
                }
            }

            #[test]
            fn complement_pointwise(a in set(), lo in 0..SPAN, len in 0..SPAN) {
                let hi = (lo + len).min(SPAN);
                let out = collect(complement(a.iter().copied(), Interval::new(lo, hi)), a.len() + 1);
                prop_assert!(is_canonical(&out));
                let (ba, bo) = (bits(&a, SPAN), bits(&out, SPAN));
                for t in 0..SPAN {
                    let inside = lo <= t && t < hi;
                    prop_assert_eq!(bo[t as usize], inside && !ba[t as usize]);
                }
            }

            #[test]
            fn mark_pointwise(a in set(), lower in 0..8u64, width in 0..8u64, open in any::<bool>()) {
                let bound = if open { TimeBound::from_lower(lower) } else { TimeBound::bounded(lower, lower + width) };
                let out = collect(mark(a.iter().copied(), bound), a.len());
                prop_assert!(is_canonical(&out));
                let ba = bits(&a, SPAN);
                let horizon = 2 * SPAN;
                let bo = bits(&out, horizon);
                for t in 0..horizon {
                    let expected = (0..SPAN).any(|o| {
                        ba[o as usize]
                            && o + bound.lower < t
                            && bound.upper.is_none_or(|b| t <= o + b)
                    });
                    prop_assert_eq!(bo[t as usize], expected, "t={}", t);
                }
            }

            #[test]
            fn trim_pointwise(a in set(), cut in 0..SPAN + 2) {
                let out = collect(trim(a.iter().copied(), cut), a.len());
                prop_assert!(is_canonical(&out));
                let (ba, bo) = (bits(&a, SPAN), bits(&out, SPAN));
                for t in 0..SPAN {
                    prop_assert_eq!(bo[t as usize], t >= cut && ba[t as usize]);
                }
            }

            #[test]
            fn shift_then_clip_pointwise(a in set(), by in 0..8u64, lo in 0..SPAN, hi in 0..SPAN) {
                let out = collect(clip(shift(a.iter().copied(), by), Interval::new(lo, hi)), a.len());
                prop_assert!(is_canonical(&out));
                let ba = bits(&a, SPAN);
                let bo = bits(&out, SPAN + 8);
                for t in 0..SPAN + 8 {
                    let src = t.checked_sub(by).filter(|&s| s < SPAN).is_some_and(|s| ba[s as usize]);
                    prop_assert_eq!(bo[t as usize], src && lo <= t && t < hi);
                }
            }

            #[test]
            fn membership_helpers_agree(a in set(), t in 0..SPAN, len in 0..8u64) {
                let ba = bits(&a, SPAN + 8);
                prop_assert_eq!(contains(&a, t), ba[t as usize]);
                let any = (t..t + len).any(|u| ba[u as usize]);
                prop_assert_eq!(intersects(&a, t, t + len), any);
            }
        }
    }
}
