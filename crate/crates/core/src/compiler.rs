//! Hash-consed compilation of many properties into one shared schedule.
//!
//! Every subformula is interned into a [`NodeDatabase`] keyed by a structural
//! hash; an equal node that already exists is reused. Finalizing the builder
//! lays the nodes out in interning order, which is already topological, and
//! reserves arena slots for each one.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::syntax::{normalize, parse_spec, Formula, Kind, ParseError, PredicateTable, TimeBound};

pub type NodeId = u32;

const NONE_ID: u32 = u32::MAX;
const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Structural description of one node, children given by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeDesc {
    pub kind: Kind,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
    pub bound: Option<TimeBound>,
    pub name: Option<String>,
}

impl NodeDesc {
    pub fn leaf_false() -> Self {
        NodeDesc {
            kind: Kind::False,
            left: None,
            right: None,
            bound: None,
            name: None,
        }
    }

    pub fn atom(name: impl Into<String>) -> Self {
        NodeDesc {
            name: Some(name.into()),
            kind: Kind::Atom,
            ..Self::leaf_false()
        }
    }

    pub fn unary(kind: Kind, child: NodeId) -> Self {
        NodeDesc {
            kind,
            left: Some(child),
            ..Self::leaf_false()
        }
    }

    pub fn binary(kind: Kind, left: NodeId, right: NodeId) -> Self {
        NodeDesc {
            kind,
            left: Some(left),
            right: Some(right),
            ..Self::leaf_false()
        }
    }

    pub fn with_bound(mut self, bound: TimeBound) -> Self {
        self.bound = Some(bound);
        self
    }

    /// Orders the operands of commutative kinds by id.
    pub fn canonical(mut self) -> Self {
        if self.kind.is_commutative() {
            if let (Some(l), Some(r)) = (self.left, self.right) {
                if r < l {
                    self.left = Some(r);
                    self.right = Some(l);
                }
            }
        }
        self
    }

    /// Byte image hashed by [`structural_hash`].
    pub fn encode(&self, out: &mut Vec<u8>) {
        out.push(self.kind.tag());
        out.extend_from_slice(&self.left.unwrap_or(NONE_ID).to_le_bytes());
        out.extend_from_slice(&self.right.unwrap_or(NONE_ID).to_le_bytes());
        if let Some(b) = self.bound {
            out.extend_from_slice(&b.lower.to_le_bytes());
            out.extend_from_slice(&b.upper_or_max().to_le_bytes());
        }
        if let Some(name) = &self.name {
            out.extend_from_slice(name.as_bytes());
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// FNV-1a over the canonical encoding of `d`.
pub fn structural_hash(d: &NodeDesc) -> u64 {
    let mut buf = Vec::with_capacity(32);
    d.clone().canonical().encode(&mut buf);
    fnv1a(&buf)
}

/// Content-addressable store of interned nodes.
pub struct NodeDatabase {
    by_hash: HashMap<u64, Vec<NodeId>>,
    nodes: Vec<NodeDesc>,
    hasher: fn(&NodeDesc) -> u64,
}

impl Default for NodeDatabase {
    fn default() -> Self {
        Self::new()
    }
}

impl NodeDatabase {
    pub fn new() -> Self {
        Self::with_hasher(structural_hash)
    }

    /// A database keyed by a custom hash, e.g. a constant to force collisions.
    pub fn with_hasher(hasher: fn(&NodeDesc) -> u64) -> Self {
        NodeDatabase {
            by_hash: HashMap::new(),
            nodes: Vec::new(),
            hasher,
        }
    }

    pub fn intern(&mut self, d: NodeDesc) -> NodeId {
        let d = d.canonical();
        debug_assert!(
            [d.left, d.right]
                .into_iter()
                .flatten()
                .all(|c| (c as usize) < self.nodes.len()),
            "children must be interned first"
        );
        let h = (self.hasher)(&d);
        let bucket = self.by_hash.entry(h).or_default();
        if let Some(&id) = bucket.iter().find(|&&id| self.nodes[id as usize] == d) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        bucket.push(id);
        self.nodes.push(d);
        id
    }

    pub fn get(&self, id: NodeId) -> &NodeDesc {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[NodeDesc] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of distinct hash keys in use.
    pub fn bucket_count(&self) -> usize {
        self.by_hash.len()
    }

    /// Interns a normalized formula bottom-up and returns its root id.
    pub fn intern_formula(&mut self, f: &Formula) -> NodeId {
        let bounded = |kind, child, b| NodeDesc::unary(kind, child).with_bound(b);
        let d = match f {
            Formula::False => NodeDesc::leaf_false(),
            Formula::Atom(name) => NodeDesc::atom(name.as_str()),
            Formula::Not(x) => NodeDesc::unary(Kind::Not, self.intern_formula(x)),
            Formula::Previous(x) => NodeDesc::unary(Kind::Previous, self.intern_formula(x)),
            Formula::And(l, r) => {
                let (l, r) = (self.intern_formula(l), self.intern_formula(r));
                NodeDesc::binary(Kind::And, l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.intern_formula(l), self.intern_formula(r));
                NodeDesc::binary(Kind::Or, l, r)
            }
            Formula::Implies(..) => return self.intern_formula(&normalize(f.clone())),
            Formula::Since(l, r, b) => {
                let (l, r) = (self.intern_formula(l), self.intern_formula(r));
                NodeDesc::binary(Kind::Since, l, r).with_bound(*b)
            }
            Formula::Once(x, b) => bounded(Kind::Once, self.intern_formula(x), *b),
            Formula::Historically(x, b) => bounded(Kind::Historically, self.intern_formula(x), *b),
        };
        self.intern(d)
    }
}

/// Free-function form of [`NodeDatabase::intern`].
pub fn intern(db: &mut NodeDatabase, d: NodeDesc) -> NodeId {
    db.intern(d)
}

/// Node count of `f` compiled on its own (repeats inside `f` still shared).
pub fn independent_node_count(f: &Formula) -> usize {
    let mut db = NodeDatabase::new();
    db.intern_formula(&normalize(f.clone()));
    db.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimeModel {
    Discrete,
    Dense,
}

impl fmt::Display for TimeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeModel::Discrete => "discrete",
            TimeModel::Dense => "dense",
        })
    }
}

/// One entry of the execution schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord {
    pub kind: Kind,
    /// Input position of an atom.
    pub predicate: Option<u32>,
    pub left: Option<u32>,
    pub right: Option<u32>,
    /// `UNTIMED` for kinds without a bound.
    pub bound: TimeBound,
    pub state_slots: u32,
    pub output_slots: u32,
}

impl NodeRecord {
    pub fn children(&self) -> impl Iterator<Item = u32> {
        self.left.into_iter().chain(self.right)
    }
}

/// Persistent-state slots of one node.
pub fn state_slots(kind: Kind, bound: TimeBound) -> u32 {
    if !kind.has_bound() || bound.is_untimed() {
        return 1;
    }
    match bound.upper {
        Some(b) => u32::try_from(b.div_ceil(2) + 1).unwrap_or(u32::MAX),
        None => 1,
    }
}

/// Output slots of one node in dense mode, given its children's.
pub fn dense_output_slots(kind: Kind, state: u32, left: u32, right: u32) -> u32 {
    let sum = |xs: &[u32]| xs.iter().fold(0u32, |a, &x| a.saturating_add(x));
    match kind {
        Kind::False => 0,
        Kind::Atom => 1,
        Kind::Not | Kind::Previous => sum(&[left, 1]),
        Kind::And | Kind::Or => sum(&[left, right]),
        Kind::Once => sum(&[state, left]),
        Kind::Historically => sum(&[state, left, 2]),
        Kind::Since => sum(&[state, left, left, right, right, 4]),
    }
}

/// Slots needed per buffer: the sum of every record's reservations.
pub fn buffer_capacity(schedule: &[NodeRecord]) -> usize {
    schedule
        .iter()
        .map(|r| r.state_slots as usize + r.output_slots as usize)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("monitor already finalized")]
    Finalized,
    #[error("no properties registered")]
    NoProperties,
    #[error("schedule record {index} reads a child that is not evaluated before it")]
    Topology { index: usize },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

/// Incremental registration of properties into one shared DAG.
#[derive(Default)]
pub struct MonitorBuilder {
    db: NodeDatabase,
    roots: Vec<NodeId>,
    independent: Vec<usize>,
    formulas: Vec<Formula>,
    predicates: PredicateTable,
    finalized: bool,
}

impl MonitorBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Uses a fixed input order; atoms not listed are appended.
    pub fn with_predicates(predicates: PredicateTable) -> Self {
        MonitorBuilder {
            predicates,
            ..Self::default()
        }
    }

    /// Interns `f` and returns its 0-based property index.
    pub fn register_property(&mut self, f: &Formula) -> Result<usize, CompileError> {
        if self.finalized {
            return Err(CompileError::Finalized);
        }
        let f = normalize(f.clone());
        self.predicates.register_formula(&f);
        let root = self.db.intern_formula(&f);
        self.roots.push(root);
        self.independent.push(independent_node_count(&f));
        self.formulas.push(f);
        Ok(self.roots.len() - 1)
    }

    pub fn register_text(&mut self, text: &str) -> Result<usize, CompileError> {
        let f = parse_spec(text)?;
        self.register_property(&f)
    }

    pub fn node_count(&self) -> usize {
        self.db.len()
    }

    pub fn database(&self) -> &NodeDatabase {
        &self.db
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn finalize(&mut self, time_model: TimeModel) -> Result<CompiledMonitor, CompileError> {
        if self.finalized {
            return Err(CompileError::Finalized);
        }
        if self.roots.is_empty() {
            return Err(CompileError::NoProperties);
        }
        self.finalized = true;
        let mut schedule: Vec<NodeRecord> = Vec::with_capacity(self.db.len());
        for d in self.db.nodes() {
            let bound = d.bound.unwrap_or(TimeBound::UNTIMED);
            let state = state_slots(d.kind, bound);
            let out_of = |c: Option<NodeId>| c.map_or(0, |c| schedule[c as usize].output_slots);
            let output = match time_model {
                TimeModel::Discrete => 0,
                TimeModel::Dense => dense_output_slots(d.kind, state, out_of(d.left), out_of(d.right)),
            };
            schedule.push(NodeRecord {
                kind: d.kind,
                predicate: d
                    .name
                    .as_deref()
                    .map(|n| self.predicates.position(n).expect("atom registered") as u32),
                left: d.left,
                right: d.right,
                bound,
                state_slots: state,
                output_slots: output,
            });
        }
        verify_topology(&schedule)?;
        let arena_capacity = buffer_capacity(&schedule);
        Ok(CompiledMonitor {
            schedule,
            roots: self.roots.iter().map(|&r| r as usize).collect(),
            predicates: self.predicates.clone(),
            time_model,
            arena_capacity,
            independent_counts: self.independent.clone(),
            formulas: self.formulas.clone(),
        })
    }
}

/// Checks that every record's children precede it.
pub fn verify_topology(schedule: &[NodeRecord]) -> Result<(), CompileError> {
    for (i, r) in schedule.iter().enumerate() {
        if r.children().any(|c| c as usize >= i) {
            return Err(CompileError::Topology { index: i });
        }
    }
    Ok(())
}

/// The immutable compiled artifact shared by evaluation sessions.
#[derive(Clone, Debug)]
pub struct CompiledMonitor {
    pub schedule: Vec<NodeRecord>,
    pub roots: Vec<usize>,
    pub predicates: PredicateTable,
    pub time_model: TimeModel,
    pub arena_capacity: usize,
    pub independent_counts: Vec<usize>,
    pub formulas: Vec<Formula>,
}

impl CompiledMonitor {
    /// Compiles every text as one property, in order.
    pub fn from_texts<S: AsRef<str>>(texts: &[S], time_model: TimeModel) -> Result<Self, CompileError> {
        let mut b = MonitorBuilder::new();
        for t in texts {
            b.register_text(t.as_ref())?;
        }
        b.finalize(time_model)
    }

    pub fn from_formulas(formulas: &[Formula], time_model: TimeModel) -> Result<Self, CompileError> {
        let mut b = MonitorBuilder::new();
        for f in formulas {
            b.register_property(f)?;
        }
        b.finalize(time_model)
    }

    pub fn node_count(&self) -> usize {
        self.schedule.len()
    }

    pub fn property_count(&self) -> usize {
        self.roots.len()
    }

    pub fn independent_total(&self) -> usize {
        self.independent_counts.iter().sum()
    }

    /// Independent node total divided by shared node count.
    pub fn compression_ratio(&self) -> f64 {
        self.independent_total() as f64 / self.node_count() as f64
    }

    /// Human-readable statistics and schedule listing.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "time model: {}", self.time_model);
        let _ = writeln!(s, "properties: {}", self.property_count());
        let _ = writeln!(s, "predicates: {}", self.predicates.names().join(" "));
        let _ = writeln!(s, "nodes: {}", self.node_count());
        for (k, (n, root)) in self.independent_counts.iter().zip(&self.roots).enumerate() {
            let _ = writeln!(s, "property {}: root {root}, independent nodes {n}", k + 1);
        }
        let _ = writeln!(s, "independent total: {}", self.independent_total());
        let _ = writeln!(s, "compression ratio: {:.3}", self.compression_ratio());
        let _ = writeln!(s, "arena capacity: {}", self.arena_capacity);
        let _ = writeln!(s, "schedule:");
        for (i, r) in self.schedule.iter().enumerate() {
            let children: Vec<String> = r.children().map(|c| c.to_string()).collect();
            let mut line = format!("{i:>5}  {:<12} [{}]", r.kind.name(), children.join(", "));
            if let Some(p) = r.predicate {
                let _ = write!(line, " {}", self.predicates.name(p as usize));
            }
            if r.kind.has_bound() {
                let _ = write!(line, " {}", r.bound);
            }
            let _ = write!(line, "  slots {}+{}", r.state_slots, r.output_slots);
            let _ = writeln!(s, "{line}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_spec;

    fn p(text: &str) -> Formula {
        parse_spec(text).unwrap()
    }

    #[test]
    fn commutative_hash_ignores_order() {
        assert_eq!(
            structural_hash(&NodeDesc::binary(Kind::And, 3, 7)),
            structural_hash(&NodeDesc::binary(Kind::And, 7, 3))
        );
    }

    #[test]
    fn since_keeps_operand_order() {
        let b = TimeBound::bounded(0, 5);
        let x = NodeDesc::binary(Kind::Since, 3, 7).with_bound(b);
        let y = NodeDesc::binary(Kind::Since, 7, 3).with_bound(b);
        assert_ne!(structural_hash(&x), structural_hash(&y));
    }

    #[test]
    fn bounds_participate_in_hash() {
        let x = NodeDesc::unary(Kind::Once, 3).with_bound(TimeBound::bounded(0, 1));
        let y = NodeDesc::unary(Kind::Once, 3).with_bound(TimeBound::bounded(0, 2));
        let z = NodeDesc::unary(Kind::Once, 3).with_bound(TimeBound::from_lower(0));
        assert_ne!(structural_hash(&x), structural_hash(&y));
        assert_ne!(structural_hash(&x), structural_hash(&z));
    }

    #[test]
    fn fnv_reference_vectors() {
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn five_nodes_rather_than_eight() {
        let mut db = NodeDatabase::new();
        let p1 = db.intern(NodeDesc::atom("p"));
        let q1 = db.intern(NodeDesc::atom("q"));
        let a1 = db.intern(NodeDesc::binary(Kind::And, p1, q1));
        db.intern(NodeDesc::unary(Kind::Once, a1).with_bound(TimeBound::bounded(0, 10)));
        let p2 = db.intern(NodeDesc::atom("p"));
        let q2 = db.intern(NodeDesc::atom("q"));
        let a2 = db.intern(NodeDesc::binary(Kind::And, q2, p2));
        db.intern(NodeDesc::unary(Kind::Historically, a2).with_bound(TimeBound::UNTIMED));
        assert_eq!(db.len(), 5);
    }

    #[test]
    fn interning_is_idempotent() {
        let mut db = NodeDatabase::new();
        let a = db.intern(NodeDesc::atom("p"));
        let b = db.intern(NodeDesc::atom("p"));
        assert_eq!((a, db.len()), (b, 1));
    }

    #[test]
    fn kind_participates() {
        let mut db = NodeDatabase::new();
        let p = db.intern(NodeDesc::atom("p"));
        let q = db.intern(NodeDesc::atom("q"));
        let a = db.intern(NodeDesc::binary(Kind::And, p, q));
        let o = db.intern(NodeDesc::binary(Kind::Or, p, q));
        assert_ne!(a, o);
    }

    #[test]
    fn collisions_are_resolved_by_equality() {
        let mut db = NodeDatabase::with_hasher(|_| 42);
        let p = db.intern(NodeDesc::atom("p"));
        let q = db.intern(NodeDesc::atom("q"));
        let b = TimeBound::bounded(0, 5);
        let s1 = db.intern(NodeDesc::binary(Kind::Since, p, q).with_bound(b));
        let s2 = db.intern(NodeDesc::binary(Kind::Since, q, p).with_bound(b));
        let s3 = db.intern(NodeDesc::binary(Kind::Since, p, q).with_bound(b));
        assert_ne!(s1, s2);
        assert_eq!(s1, s3);
        assert_eq!(db.len(), 4);
        assert_eq!(db.bucket_count(), 1);
    }

    #[test]
    fn shared_roots_of_two_properties() {
        let mut b = MonitorBuilder::new();
        b.register_text("once[0:10](p && q)").unwrap();
        b.register_text("historically(p && q)").unwrap();
        assert_eq!(b.roots(), [3, 4]);
        assert_eq!(b.node_count(), 5);
        let m = b.finalize(TimeModel::Discrete).unwrap();
        assert_eq!(m.node_count(), 5);
        for (i, r) in m.schedule.iter().enumerate() {
            assert!(r.children().all(|c| (c as usize) < i));
        }
    }

    #[test]
    fn same_text_twice_shares_root() {
        let mut b = MonitorBuilder::new();
        b.register_text("p since q").unwrap();
        b.register_text("p since q").unwrap();
        assert_eq!(b.roots()[0], b.roots()[1]);
        assert_eq!(b.node_count(), 3);
    }

    #[test]
    fn commuted_conjunctions_share() {
        let m = CompiledMonitor::from_texts(&["p && q", "q && p"], TimeModel::Discrete).unwrap();
        assert_eq!(m.node_count(), 3);
        assert_eq!(m.roots[0], m.roots[1]);
    }

    #[test]
    fn smallest_monitor() {
        let m = CompiledMonitor::from_texts(&["p"], TimeModel::Discrete).unwrap();
        assert_eq!(m.schedule.len(), 1);
        assert_eq!(m.schedule[0].kind, Kind::Atom);
        assert_eq!(m.schedule[0].predicate, Some(0));
        assert_eq!(m.roots, [0]);
        assert_eq!(m.arena_capacity, 1);
    }

    #[test]
    fn seven_node_schedule() {
        let m = CompiledMonitor::from_texts(
            &["historically[2:4](pre(r) && (p since[1:3] q))"],
            TimeModel::Discrete,
        )
        .unwrap();
        assert_eq!(m.node_count(), 7);
        let mut kinds: Vec<Kind> = m.schedule.iter().map(|r| r.kind).collect();
        kinds.sort();
        assert_eq!(
            kinds,
            [
                Kind::Atom,
                Kind::Atom,
                Kind::Atom,
                Kind::And,
                Kind::Previous,
                Kind::Since,
                Kind::Historically
            ]
        );
        assert_eq!(m.roots, [6]);
    }

    #[test]
    fn registration_after_finalize_fails() {
        let mut b = MonitorBuilder::new();
        b.register_text("p").unwrap();
        b.finalize(TimeModel::Discrete).unwrap();
        assert_eq!(b.register_text("q"), Err(CompileError::Finalized));
    }

    #[test]
    fn finalize_needs_a_property() {
        assert_eq!(
            MonitorBuilder::new().finalize(TimeModel::Discrete).unwrap_err(),
            CompileError::NoProperties
        );
    }

    #[test]
    fn slot_reservations() {
        assert_eq!(state_slots(Kind::Once, TimeBound::bounded(7, 7)), 5);
        assert_eq!(state_slots(Kind::Atom, TimeBound::UNTIMED), 1);
        assert_eq!(state_slots(Kind::Once, TimeBound::from_lower(3)), 1);
        assert_eq!(state_slots(Kind::Since, TimeBound::UNTIMED), 1);
        assert_eq!(state_slots(Kind::Historically, TimeBound::bounded(0, 10)), 6);
        assert_eq!(state_slots(Kind::Since, TimeBound::bounded(0, 0)), 1);
    }

    #[test]
    fn capacity_matches_schedule() {
        for model in [TimeModel::Discrete, TimeModel::Dense] {
            let m = CompiledMonitor::from_texts(&["once[7:7] q", "p since[0:4] q"], model).unwrap();
            assert_eq!(m.arena_capacity, buffer_capacity(&m.schedule));
        }
        let m = CompiledMonitor::from_texts(&["once[7:7] q"], TimeModel::Discrete).unwrap();
        assert_eq!(m.arena_capacity, 1 + 5);
    }

    #[test]
    fn corrupt_schedule_is_rejected() {
        let mut m = CompiledMonitor::from_texts(&["p && q"], TimeModel::Discrete).unwrap();
        m.schedule.swap(0, 2);
        assert_eq!(verify_topology(&m.schedule), Err(CompileError::Topology { index: 0 }));
    }

    #[test]
    fn internal_repeats_are_shared_in_independent_counts() {
        assert_eq!(independent_node_count(&p("p && p")), 2);
        assert_eq!(independent_node_count(&p("a -> b")), 4);
        assert_eq!(independent_node_count(&p("true")), 2);
    }

    #[test]
    fn dump_lists_every_record() {
        let m = CompiledMonitor::from_texts(&["once[0:3] p", "p"], TimeModel::Discrete).unwrap();
        let d = m.dump();
        assert!(d.contains("nodes: 2"));
        assert!(d.contains("once"));
        assert!(d.contains("[0:3]"));
        assert_eq!(d.lines().filter(|l| l.starts_with("    ")).count(), 2);
    }

    mod props {
        use super::*;
        use crate::random::{random_formula, FormulaConfig};
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        fn formulas() -> impl Strategy<Value = Vec<Formula>> {
            (any::<u64>(), 1usize..6).prop_map(|(seed, n)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let cfg = FormulaConfig {
                    max_depth: 4,
                    max_bound: 6,
                    atoms: vec!["p".into(), "q".into(), "r".into()],
                };
                (0..n).map(|_| random_formula(&mut rng, &cfg)).collect()
            })
        }

        proptest! {
            #[test]
            fn shared_never_exceeds_independent(fs in formulas()) {
                let m = CompiledMonitor::from_formulas(&fs, TimeModel::Discrete).unwrap();
                prop_assert!(m.node_count() <= m.independent_total());
                prop_assert!(verify_topology(&m.schedule).is_ok());
                prop_assert!(m.roots.iter().all(|&r| r < m.node_count()));
                prop_assert_eq!(m.roots.len(), fs.len());
            }

            #[test]
            fn no_duplicate_nodes(fs in formulas()) {
                let mut b = MonitorBuilder::new();
                for f in &fs {
                    b.register_property(f).unwrap();
                }
                let nodes = b.database().nodes();
                for i in 0..nodes.len() {
                    for j in 0..i {
                        prop_assert_ne!(&nodes[i], &nodes[j]);
                    }
                }
            }

            #[test]
            fn colliding_hasher_builds_same_dag(fs in formulas()) {
                let mut real = NodeDatabase::new();
                let mut bad = NodeDatabase::with_hasher(|d| d.kind.tag() as u64);
                for f in &fs {
                    prop_assert_eq!(real.intern_formula(f), bad.intern_formula(f));
                }
                prop_assert_eq!(real.nodes(), bad.nodes());
            }
        }
    }
}
