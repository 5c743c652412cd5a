//! Synthetic traces over the predicates `p`, `q`, `r`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use weft_core::{Time, TimeModel, TraceData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceKind {
    /// Independent Bernoulli draws per predicate and step.
    Uniform,
    /// Every predicate alternates 1, 0, 1, … from step 0.
    Adversarial,
    /// Piecewise-constant runs with geometric segment lengths.
    Dense,
}

impl TraceKind {
    pub fn name(self) -> &'static str {
        match self {
            TraceKind::Uniform => "uniform",
            TraceKind::Adversarial => "adversarial",
            TraceKind::Dense => "dense",
        }
    }
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown trace kind `{0}`")]
pub struct UnknownTraceKind(pub String);

impl FromStr for TraceKind {
    type Err = UnknownTraceKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [TraceKind::Uniform, TraceKind::Adversarial, TraceKind::Dense]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownTraceKind(s.to_owned()))
    }
}

#[derive(Clone, Debug)]
pub struct TraceSpec {
    pub kind: TraceKind,
    /// Step count, or the time horizon of a dense trace.
    pub steps: u64,
    pub seed: u64,
    /// Probability of `true` for `uniform`; expected segment length for `dense`.
    pub density: f64,
    pub time_model: TimeModel,
    pub names: Vec<String>,
}

impl TraceSpec {
    pub fn new(kind: TraceKind, steps: u64, seed: u64) -> Self {
        TraceSpec {
            kind,
            steps,
            seed,
            density: match kind {
                TraceKind::Dense => 100.0,
                _ => 0.5,
            },
            time_model: TimeModel::Discrete,
            names: ["p", "q", "r"].map(String::from).to_vec(),
        }
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn time_model(mut self, model: TimeModel) -> Self {
        self.time_model = model;
        self
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TraceSpecError {
    #[error("density {0} must lie in [0, 1] for uniform traces")]
    Probability(f64),
    #[error("density {0} must be at least 1 for dense traces")]
    SegmentLength(f64),
    #[error("a trace needs at least one step")]
    Empty,
}

/// Generates the trace described by `spec`.
///
/// Discrete traces carry one record per step. Dense traces carry one record
/// per segment boundary plus a closing record at `steps`; for `uniform` and
/// `adversarial` kinds every segment has unit length.
pub fn gen_trace(spec: &TraceSpec) -> Result<TraceData, TraceSpecError> {
    if spec.steps == 0 {
        return Err(TraceSpecError::Empty);
    }
    let width = spec.names.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = TraceData::new(spec.names.clone(), spec.time_model);
    let mut row = vec![false; width];
    match spec.kind {
        TraceKind::Uniform | TraceKind::Adversarial => {
            if spec.kind == TraceKind::Uniform && !(0.0..=1.0).contains(&spec.density) {
                return Err(TraceSpecError::Probability(spec.density));
            }
            for t in 0..spec.steps {
                match spec.kind {
                    TraceKind::Uniform => row.iter_mut().for_each(|v| *v = rng.random_bool(spec.density)),
                    _ => row.fill(t % 2 == 0),
                }
                out.push(t, &row);
            }
        }
        TraceKind::Dense => {
            if !(spec.density >= 1.0) {
                return Err(TraceSpecError::SegmentLength(spec.density));
            }
            let gaps = Geometric::new(1.0 / spec.density).expect("probability in (0, 1]");
            let mut t: Time = 0;
            row.iter_mut().for_each(|v| *v = rng.random_bool(0.5));
            while t < spec.steps {
                let len = 1 + gaps.sample(&mut rng);
                let end = t.saturating_add(len).min(spec.steps);
                match spec.time_model {
                    TimeModel::Discrete => (t..end).for_each(|u| out.push(u, &row)),
                    TimeModel::Dense => out.push(t, &row),
                }
                t = end;
                let before = row.clone();
                row.iter_mut().for_each(|v| *v = rng.random_bool(0.5));
                if row == before && width > 0 {
                    let i = rng.random_range(0..width);
                    row[i] = !row[i];
                }
            }
        }
    }
    if spec.time_model == TimeModel::Dense {
        out.push(spec.steps, &row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use weft_core::TraceFormat;

    fn column(trace: &TraceData, i: usize) -> Vec<bool> {
        (0..trace.len()).map(|r| trace.row(r)[i]).collect()
    }

    #[test]
    fn adversarial_alternates() {
        let t = gen_trace(&TraceSpec::new(TraceKind::Adversarial, 6, 0)).unwrap();
        let q = column(&t, 1);
        assert_eq!(q, [true, false, true, false, true, false]);
        assert_eq!(t.times, [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn uniform_is_reproducible() {
        let spec = TraceSpec::new(TraceKind::Uniform, 500, 42);
        let a = gen_trace(&spec).unwrap().encode(TraceFormat::Binary);
        let b = gen_trace(&spec).unwrap().encode(TraceFormat::Binary);
        assert_eq!(a, b);
        let c = gen_trace(&TraceSpec::new(TraceKind::Uniform, 500, 43)).unwrap();
        assert_ne!(a, c.encode(TraceFormat::Binary));
    }

    #[test]
    fn uniform_density_is_a_probability() {
        let t = gen_trace(&TraceSpec::new(TraceKind::Uniform, 20_000, 1).density(0.2)).unwrap();
        let ones = t.values.iter().filter(|&&v| v).count() as f64 / t.values.len() as f64;
        assert!((ones - 0.2).abs() < 0.02, "{ones}");
        assert!(gen_trace(&TraceSpec::new(TraceKind::Uniform, 5, 1).density(1.5)).is_err());
    }

    #[test]
    fn dense_segments_average_the_density() {
        let spec = TraceSpec::new(TraceKind::Dense, 1_000_000, 3)
            .density(100.0)
            .time_model(TimeModel::Dense);
        let t = gen_trace(&spec).unwrap();
        let segments = (t.len() - 1) as f64;
        assert!((segments - 10_000.0).abs() <= 1_000.0, "{segments}");
        assert_eq!(*t.times.last().unwrap(), 1_000_000);
        assert_eq!(t.times[0], 0);
        for w in 1..t.len() - 1 {
            assert_ne!(t.row(w), t.row(w - 1), "boundary {w} changes nothing");
        }
    }

    #[test]
    fn dense_kind_expands_in_discrete_mode() {
        let base = TraceSpec::new(TraceKind::Dense, 2_000, 5).density(7.0);
        let discrete = gen_trace(&base).unwrap();
        let dense = gen_trace(&base.clone().time_model(TimeModel::Dense)).unwrap();
        assert_eq!(discrete.len(), 2_000);
        let mut seg = 0;
        for t in 0..2_000u64 {
            while dense.times[seg + 1] <= t {
                seg += 1;
            }
            assert_eq!(discrete.row(t as usize), dense.row(seg));
        }
    }

    #[test]
    fn unit_segments_close_at_the_horizon() {
        let spec = TraceSpec::new(TraceKind::Uniform, 10, 0).time_model(TimeModel::Dense);
        let t = gen_trace(&spec).unwrap();
        assert_eq!(t.len(), 11);
        assert_eq!(t.times.last(), Some(&10));
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            gen_trace(&TraceSpec::new(TraceKind::Dense, 10, 0).density(0.5)),
            Err(TraceSpecError::SegmentLength(0.5))
        );
        assert_eq!(gen_trace(&TraceSpec::new(TraceKind::Uniform, 0, 0)), Err(TraceSpecError::Empty));
    }
}
