//! Seeded generators for formulas and traces used by differential checks.

use rand::Rng;

use crate::syntax::{Formula, Time, TimeBound};

#[derive(Clone, Debug)]
pub struct FormulaConfig {
    /// Maximum tree depth; a lone atom has depth 1.
    pub max_depth: usize,
    /// Largest finite bound value.
    pub max_bound: Time,
    pub atoms: Vec<String>,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig {
            max_depth: 5,
            max_bound: 8,
            atoms: ["p", "q", "r"].map(String::from).to_vec(),
        }
    }
}

pub fn random_bound<R: Rng + ?Sized>(rng: &mut R, max_bound: Time) -> TimeBound {
    match rng.random_range(0..10) {
        0..=1 => TimeBound::UNTIMED,
        2 => TimeBound::from_lower(rng.random_range(0..=max_bound)),
        _ => {
            let a = rng.random_range(0..=max_bound);
            let b = rng.random_range(a..=max_bound);
            TimeBound::bounded(a, b)
        }
    }
}

/// A normalized-kind formula (no implication) of depth at most `max_depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, cfg: &FormulaConfig) -> Formula {
    gen(rng, cfg, cfg.max_depth.max(1))
}

fn gen<R: Rng + ?Sized>(rng: &mut R, cfg: &FormulaConfig, depth: usize) -> Formula {
    let leaf = |rng: &mut R| {
        if rng.random_range(0..12) == 0 {
            Formula::False
        } else {
            Formula::atom(cfg.atoms[rng.random_range(0..cfg.atoms.len())].clone())
        }
    };
    if depth <= 1 || rng.random_range(0..4) == 0 {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.random_range(0..8) {
        0 => Formula::not(gen(rng, cfg, d)),
        1 => Formula::and(gen(rng, cfg, d), gen(rng, cfg, d)),
        2 => Formula::or(gen(rng, cfg, d), gen(rng, cfg, d)),
        3 => Formula::previous(gen(rng, cfg, d)),
        4 | 5 => {
            let b = random_bound(rng, cfg.max_bound);
            Formula::since(gen(rng, cfg, d), gen(rng, cfg, d), b)
        }
        6 => Formula::once(gen(rng, cfg, d), random_bound(rng, cfg.max_bound)),
        _ => Formula::historically(gen(rng, cfg, d), random_bound(rng, cfg.max_bound)),
    }
}

/// `width` Bernoulli columns of `len` steps each, true with probability `density`.
pub fn random_columns<R: Rng + ?Sized>(rng: &mut R, width: usize, len: usize, density: f64) -> Vec<Vec<bool>> {
    (0..width)
        .map(|_| (0..len).map(|_| rng.random_bool(density)).collect())
        .collect()
}

/// Columns that start random and flip with probability `flip` per step.
pub fn random_runs<R: Rng + ?Sized>(rng: &mut R, width: usize, len: usize, flip: f64) -> Vec<Vec<bool>> {
    (0..width)
        .map(|_| {
            let mut v = rng.random_bool(0.5);
            (0..len)
                .map(|_| {
                    let out = v;
                    v ^= rng.random_bool(flip);
                    out
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_depth_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = FormulaConfig {
            max_depth: 4,
            max_bound: 3,
            ..FormulaConfig::default()
        };
        for _ in 0..500 {
            let f = random_formula(&mut rng, &cfg);
            assert!(f.depth() <= 4);
            assert!(f.is_normalized());
        }
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let cfg = FormulaConfig::default();
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(11), &cfg);
        let b = random_formula(&mut ChaCha8Rng::seed_from_u64(11), &cfg);
        assert_eq!(a, b);
        let c1 = random_columns(&mut ChaCha8Rng::seed_from_u64(3), 2, 40, 0.5);
        let c2 = random_columns(&mut ChaCha8Rng::seed_from_u64(3), 2, 40, 0.5);
        assert_eq!(c1, c2);
    }
}
