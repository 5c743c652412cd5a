//! Property sets with known amounts of structural sharing.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Size of each of the four sharing scenarios.
pub const DEFAULT_PROPERTIES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Ten properties around one shared core, differing in one small bound.
    BestCaseShared,
    /// Each property extends the previous disjunction chain by one atom.
    NestedBest,
    /// One template, every temporal bound distinct.
    WorstUnique,
    /// Conjunction chains of growing length with a distinct `once` bound at every level.
    NestedWorst,
    /// Point-bound `once` properties, the worst case for marking fragmentation.
    AdversarialAlternating,
    /// Absence, response, recurrence and invariance patterns at three time scales.
    Timescales,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::BestCaseShared,
        Scenario::NestedBest,
        Scenario::WorstUnique,
        Scenario::NestedWorst,
        Scenario::AdversarialAlternating,
        Scenario::Timescales,
    ];

    /// The four sharing scenarios.
    pub const SHARING: [Scenario; 4] = [
        Scenario::BestCaseShared,
        Scenario::NestedBest,
        Scenario::WorstUnique,
        Scenario::NestedWorst,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::BestCaseShared => "best-case-shared",
            Scenario::NestedBest => "nested-best",
            Scenario::WorstUnique => "worst-unique",
            Scenario::NestedWorst => "nested-worst",
            Scenario::AdversarialAlternating => "adversarial-alternating",
            Scenario::Timescales => "timescales",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Scenario::AdversarialAlternating => 3,
            Scenario::Timescales => 12,
            _ => DEFAULT_PROPERTIES,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown scenario `{0}`")]
pub struct UnknownScenario(pub String);

impl FromStr for Scenario {
    type Err = UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownScenario(s.to_owned()))
    }
}

/// The shared core of every `best-case-shared` property.
pub const SHARED_CORE: &str = "historically(once[0:10] q -> (!p since r))";

/// `scenario` at its default size.
pub fn gen_scenario(scenario: Scenario, seed: u64) -> Vec<String> {
    gen_scenario_sized(scenario, scenario.default_count(), seed)
}

/// Property texts for `scenario`; the result depends only on the arguments.
/// The seed permutes the distinct bounds of the two worst-case sets and is
/// ignored by the others.
pub fn gen_scenario_sized(scenario: Scenario, count: usize, seed: u64) -> Vec<String> {
    match scenario {
        Scenario::BestCaseShared => (1..=count)
            .map(|k| format!("({SHARED_CORE} || once[0:{k}] p)"))
            .collect(),
        Scenario::NestedBest => nested_best(count),
        Scenario::WorstUnique => worst_unique(count, seed),
        Scenario::NestedWorst => nested_worst(count, seed),
        Scenario::AdversarialAlternating => (0..count)
            .map(|j| {
                let b = (4u64 << j) - 1;
                format!("once[{b}:{b}] q")
            })
            .collect(),
        Scenario::Timescales => timescales().into_iter().take(count).collect(),
    }
}

const CYCLE: [&str; 3] = ["p", "q", "r"];

/// The `k`-th disjunction chain, 1-based: `(p || q)`, then one more atom per level.
pub fn disjunction_chain(k: usize) -> String {
    let mut chain = "(p || q)".to_owned();
    for level in 2..=k {
        chain = format!("({chain} || {})", CYCLE[level % 3]);
    }
    chain
}

fn nested_best(count: usize) -> Vec<String> {
    (1..=count)
        .map(|k| format!("historically{}", disjunction_chain(k)))
        .collect()
}

fn distinct_bounds(n: usize, seed: u64) -> Vec<u64> {
    let mut pool: Vec<u64> = (1..=2 * n as u64).collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pool.truncate(n);
    pool
}

fn worst_unique(count: usize, seed: u64) -> Vec<String> {
    let b = distinct_bounds(3 * count, seed);
    (0..count)
        .map(|k| {
            let (h, o, s) = (b[3 * k], b[3 * k + 1], b[3 * k + 2]);
            format!("historically[0:{h}](once[0:{o}] p -> (!q since[0:{s}] r))")
        })
        .collect()
}

/// Property `k` (1-based) nests `k` levels: the innermost term is `(p && q)`,
/// and each level wraps the previous one as `(once[0:b] prev && s)`.
fn nested_worst(count: usize, seed: u64) -> Vec<String> {
    let b = distinct_bounds(count * (count + 1) / 2, seed);
    let mut next = b.into_iter();
    (1..=count)
        .map(|k| {
            let mut chain = "(p && q)".to_owned();
            for level in 1..=k {
                let bound = next.next().expect("enough bounds");
                chain = format!("(once[0:{bound}] {chain} && {})", CYCLE[(level + 1) % 3]);
            }
            chain
        })
        .collect()
}

/// Twelve soak-test properties: four patterns at scales 10, 100 and 1000.
pub fn timescales() -> Vec<String> {
    [10u64, 100, 1000]
        .into_iter()
        .flat_map(|s| {
            let ago = s - 1;
            [
                format!("once[0:{s}] q -> historically[0:{s}] !p"),
                format!("historically(r -> (p since[0:{s}] q))"),
                format!("historically(once[{ago}:{s}] true -> once[0:{s}] p)"),
                format!("historically(once[{ago}:{s}] p -> once[0:{s}] q)"),
            ]
        })
        .collect()
}
