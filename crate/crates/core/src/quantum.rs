//! Quantum-charged learners: the signature-based crossing learner for
//! independent sets, its generalization to sets with known edges, and the
//! full divide-merge edge-finding pipeline.
//!
//! Every quantum group-testing call is answered exactly from ground truth
//! while its query cost is charged through the configured [`CostModel`];
//! classical OR queries are spent only by the within-part learner.

use std::collections::BTreeSet;

use rand::Rng;

use crate::cgt::{CgtInstance, CostModel};
use crate::classical::{learn_all_edges_classical, KnownEdges};
use crate::graph::{Edge, Vertex};
use crate::oracle::OrOracle;
use crate::partition::{greedy_color, random_equitable_partition};
use crate::rng::{mix, seeded_rng};

/// Knobs shared by the quantum learners.
#[derive(Clone, Copy, Debug)]
pub struct LearnOpts {
    pub model: CostModel,
    /// Multiplier on the signature test count `60 * d * ln n`. The default 1
    /// runs the published constant; scaling experiments may shrink it.
    pub const_scale: f64,
}

impl LearnOpts {
    pub fn new(model: CostModel) -> Self {
        LearnOpts {
            model,
            const_scale: 1.0,
        }
    }
}

impl Default for LearnOpts {
    fn default() -> Self {
        LearnOpts::new(CostModel::default())
    }
}

/// Fixed-width bit vector, one bit per signature test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    bits: Vec<u64>,
}

impl Signature {
    fn zero(n_tests: usize) -> Self {
        Signature {
            bits: vec![0; n_tests.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    /// `supp(self) ⊆ supp(other)`.
    pub fn is_subset_of(&self, other: &Signature) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.iter().map(|w| w.count_ones()).sum()
    }
}

/// The indicator vectors of one signature-sampling run.
///
/// For test sets `T_1..T_N` drawn from the B side, `chi_b(b)` records the
/// tests containing `b` and `chi_a(a)` the tests whose sampled neighborhood
/// contains `a`. Adjacency is inferred from support containment.
#[derive(Clone, Debug)]
pub struct SignatureMatrix {
    pub n_tests: usize,
    /// The sampled test sets, in order.
    pub tests: Vec<Vec<Vertex>>,
    /// `|N(T_i) ∩ A'|` per test, as charged to the cost model.
    pub test_support_sizes: Vec<u32>,
    a_vertices: Vec<Vertex>,
    b_vertices: Vec<Vertex>,
    chi_a: Vec<Signature>,
    chi_b: Vec<Signature>,
}

impl SignatureMatrix {
    fn new(n_tests: usize, mut a_vertices: Vec<Vertex>, mut b_vertices: Vec<Vertex>) -> Self {
        a_vertices.sort_unstable();
        b_vertices.sort_unstable();
        let chi_a = vec![Signature::zero(n_tests); a_vertices.len()];
        let chi_b = vec![Signature::zero(n_tests); b_vertices.len()];
        SignatureMatrix {
            n_tests,
            tests: Vec::with_capacity(n_tests),
            test_support_sizes: Vec::with_capacity(n_tests),
            a_vertices,
            b_vertices,
            chi_a,
            chi_b,
        }
    }

    fn record_test(&mut self, index: usize, test: Vec<Vertex>, support: &[Vertex]) {
        for &b in &test {
            let pos = self.b_vertices.binary_search(&b).expect("test ⊆ B'");
            self.chi_b[pos].set(index);
        }
        for &a in support {
            let pos = self.a_vertices.binary_search(&a).expect("support ⊆ A'");
            self.chi_a[pos].set(index);
        }
        self.test_support_sizes.push(support.len() as u32);
        self.tests.push(test);
    }

    pub fn a_vertices(&self) -> &[Vertex] {
        &self.a_vertices
    }

    pub fn b_vertices(&self) -> &[Vertex] {
        &self.b_vertices
    }

    pub fn chi_a(&self, a: Vertex) -> Option<&Signature> {
        self.a_vertices
            .binary_search(&a)
            .ok()
            .map(|i| &self.chi_a[i])
    }

    pub fn chi_b(&self, b: Vertex) -> Option<&Signature> {
        self.b_vertices
            .binary_search(&b)
            .ok()
            .map(|i| &self.chi_b[i])
    }

    /// All pairs `(a, b)` with `supp chi(b) ⊆ supp chi(a)`.
    pub fn infer_edges(&self) -> BTreeSet<Edge> {
        let mut edges = BTreeSet::new();
        for (ai, &a) in self.a_vertices.iter().enumerate() {
            for (bi, &b) in self.b_vertices.iter().enumerate() {
                if self.chi_b[bi].is_subset_of(&self.chi_a[ai]) {
                    edges.insert(Edge::new(a, b));
                }
            }
        }
        edges
    }
}

/// Restricts two disjoint independent sets to their non-isolated vertices
/// (those with a crossing neighbor), via two quantum group-testing calls.
///
/// Charges `cost(|A'|) + cost(|B'|)`.
pub fn find_nonisolated(
    a_side: &[Vertex],
    b_side: &[Vertex],
    oracle: &mut OrOracle,
    model: &CostModel,
) -> (Vec<Vertex>, Vec<Vertex>) {
    let a_hot = CgtInstance::new(a_side.to_vec(), b_side.to_vec()).solve_quantum(oracle, model);
    let b_hot = CgtInstance::new(b_side.to_vec(), a_side.to_vec()).solve_quantum(oracle, model);
    (a_hot, b_hot)
}

/// Result of one signature-based crossing run. `signatures` is `None` when
/// the pre-step found one side empty and sampling was skipped.
#[derive(Clone, Debug)]
pub struct CrossingOutcome {
    pub edges: BTreeSet<Edge>,
    pub signatures: Option<SignatureMatrix>,
}

/// Learns the crossing edges between two disjoint independent sets of a
/// graph with maximum degree at most `d`.
///
/// After restricting to non-isolated vertices, samples
/// `N = ceil(60 * const_scale * d * ln n)` test sets from B' with inclusion
/// probability `1/(3d)`, learns each `N(T_i) ∩ A'` with the charged quantum
/// solver, and outputs every pair whose signatures satisfy support
/// containment. Never misses a true crossing edge; spurious pairs survive
/// only with probability `o(n^-4)`.
pub fn learn_bipartite_crossings(
    a_side: &[Vertex],
    b_side: &[Vertex],
    d: u32,
    oracle: &mut OrOracle,
    opts: &LearnOpts,
    seed: u64,
) -> CrossingOutcome {
    let (a_hot, b_hot) = find_nonisolated(a_side, b_side, oracle, &opts.model);
    if a_hot.is_empty() || b_hot.is_empty() {
        return CrossingOutcome {
            edges: BTreeSet::new(),
            signatures: None,
        };
    }
    let d = d.max(1);
    let ln_n = f64::from(oracle.vertex_count()).ln();
    let n_tests = ((60.0 * opts.const_scale * f64::from(d) * ln_n).ceil() as usize).max(1);
    let p = 1.0 / (3.0 * f64::from(d));

    let mut rng = seeded_rng(seed);
    let mut matrix = SignatureMatrix::new(n_tests, a_hot, b_hot);
    for i in 0..n_tests {
        let test: Vec<Vertex> = matrix
            .b_vertices
            .iter()
            .copied()
            .filter(|_| rng.random_bool(p))
            .collect();
        let support = CgtInstance::new(matrix.a_vertices.clone(), test.clone())
            .solve_quantum(oracle, &opts.model);
        matrix.record_test(i, test, &support);
    }
    CrossingOutcome {
        edges: matrix.infer_edges(),
        signatures: Some(matrix),
    }
}

/// Result of a crossing run between two sets with known internal edges.
#[derive(Clone, Debug)]
pub struct GeneralOutcome {
    pub edges: BTreeSet<Edge>,
    pub classes_a: usize,
    pub classes_b: usize,
}

/// Learns the crossing edges between two disjoint sets whose internal edges
/// are already known.
///
/// Covers each side by independent classes (greedy coloring of the known
/// edges, no oracle queries) and runs the signature learner on every class
/// pair; the union, deduplicated, is the answer.
pub fn learn_crossings_general(
    a_known: &KnownEdges,
    b_known: &KnownEdges,
    d: u32,
    oracle: &mut OrOracle,
    opts: &LearnOpts,
    seed: u64,
) -> GeneralOutcome {
    let classes_a = greedy_color(&a_known.scope, &a_known.edges);
    let classes_b = greedy_color(&b_known.scope, &b_known.edges);
    let mut edges = BTreeSet::new();
    let mut call = 0u64;
    for ca in &classes_a.classes {
        for cb in &classes_b.classes {
            let outcome = learn_bipartite_crossings(ca, cb, d, oracle, opts, mix(seed, call));
            edges.extend(outcome.edges);
            call += 1;
        }
    }
    GeneralOutcome {
        edges,
        classes_a: classes_a.class_count(),
        classes_b: classes_b.class_count(),
    }
}

/// One merge round of the pipeline: `parts` sets enter, paired neighbors
/// merge, an odd last part carries over.
#[derive(Clone, Copy, Debug)]
pub struct Round {
    pub index: usize,
    pub parts: usize,
    /// Rough per-vertex landing probability `1/parts`.
    pub p: f64,
    /// Crossing-count audit threshold `k_i = 2 m p^2 ln n`.
    pub k_threshold: f64,
}

/// The halving schedule driving the merge phase.
#[derive(Clone, Debug)]
pub struct LevelSchedule {
    pub t1: usize,
    pub rounds: Vec<Round>,
}

impl LevelSchedule {
    pub fn new(t1: usize, m: u64, n: u32) -> Self {
        let ln_n = f64::from(n).ln();
        let mut rounds = Vec::new();
        let mut parts = t1;
        let mut index = 1;
        while parts > 1 {
            let p = 1.0 / parts as f64;
            rounds.push(Round {
                index,
                parts,
                p,
                k_threshold: 2.0 * m as f64 * p * p * ln_n,
            });
            parts = parts.div_ceil(2);
            index += 1;
        }
        LevelSchedule { t1, rounds }
    }
}

/// Per-phase counter deltas of one learner run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseCost {
    pub label: String,
    pub classical: u64,
    pub quantum: u64,
}

/// Concentration-audit events observed during one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditCounts {
    /// Initial parts whose learned internal edge count reached `ln n`.
    pub part_overflows: u32,
    /// Round pairs whose learned crossing count reached `k_i`.
    pub pair_overflows: u32,
    /// Class-pair covers that needed more than `ceil(ln n) + 1` colors.
    pub class_overruns: u32,
}

/// Everything a learner run produces besides oracle side effects.
#[derive(Clone, Debug)]
pub struct LearnOutcome {
    pub edges: BTreeSet<Edge>,
    pub phases: Vec<PhaseCost>,
    pub audit: AuditCounts,
    /// Set when the learned edge count differs from the promise `m`,
    /// signalling a statistical failure. No retry is attempted.
    pub edge_count_mismatch: bool,
    pub schedule: Option<LevelSchedule>,
}

/// Learns the full edge set of a graph promised to have `m` edges and
/// maximum degree at most `d`.
///
/// Partitions the vertices into `T_1 = floor(sqrt(m / (d + 1)))` parts,
/// learns each part classically, then repeatedly learns crossings between
/// paired parts and merges until one part remains. `T_1 <= 1` falls back to
/// the classical learner outright.
pub fn find_edges(
    oracle: &mut OrOracle,
    m: u64,
    d: u32,
    opts: &LearnOpts,
    seed: u64,
) -> LearnOutcome {
    let t1 = (m as f64 / (f64::from(d) + 1.0)).sqrt().floor() as usize;
    run_pipeline(oracle, m, d.max(1), t1, opts, seed)
}

/// The matching specialization: identical to [`find_edges`] with `d = 1`
/// except the initial part count is `floor(sqrt(m))`.
pub fn learn_matching(oracle: &mut OrOracle, m: u64, opts: &LearnOpts, seed: u64) -> LearnOutcome {
    let t1 = (m as f64).sqrt().floor() as usize;
    run_pipeline(oracle, m, 1, t1, opts, seed)
}

fn run_pipeline(
    oracle: &mut OrOracle,
    m: u64,
    d: u32,
    t1: usize,
    opts: &LearnOpts,
    seed: u64,
) -> LearnOutcome {
    let n = oracle.vertex_count();
    let all: Vec<Vertex> = (0..n).collect();
    let mut phases = Vec::new();
    let mut audit = AuditCounts::default();

    let t1 = t1.min(n as usize);
    if t1 <= 1 {
        let before = oracle.snapshot();
        let edges = learn_all_edges_classical(&all, oracle);
        let used = oracle.snapshot().since(before);
        phases.push(PhaseCost {
            label: "within_parts".into(),
            classical: used.classical,
            quantum: used.quantum,
        });
        let edge_count_mismatch = edges.len() as u64 != m;
        return LearnOutcome {
            edges,
            phases,
            audit,
            edge_count_mismatch,
            schedule: None,
        };
    }

    let schedule = LevelSchedule::new(t1, m, n);
    let ln_n = f64::from(n).ln();
    let class_target = ln_n.ceil() as usize + 1;

    let partition =
        random_equitable_partition(&all, t1, mix(seed, 0)).expect("t1 clamped to 1..=n");

    let before = oracle.snapshot();
    let mut parts: Vec<KnownEdges> = partition
        .parts
        .iter()
        .map(|part| {
            let mut scope = part.clone();
            scope.sort_unstable();
            let known = learn_all_edges_classical(&scope, oracle);
            if known.len() as f64 >= ln_n {
                audit.part_overflows += 1;
            }
            KnownEdges::new(scope, known)
        })
        .collect();
    let used = oracle.snapshot().since(before);
    phases.push(PhaseCost {
        label: "within_parts".into(),
        classical: used.classical,
        quantum: used.quantum,
    });

    let mut call_salt = 1u64;
    for round in &schedule.rounds {
        let before = oracle.snapshot();
        let mut next = Vec::with_capacity(round.parts.div_ceil(2));
        let mut it = parts.into_iter();
        loop {
            match (it.next(), it.next()) {
                (Some(a), Some(b)) => {
                    let outcome =
                        learn_crossings_general(&a, &b, d, oracle, opts, mix(seed, call_salt));
                    call_salt += 1;
                    if outcome.classes_a.max(outcome.classes_b) > class_target {
                        audit.class_overruns += 1;
                    }
                    if outcome.edges.len() as f64 >= round.k_threshold {
                        audit.pair_overflows += 1;
                    }
                    let mut scope = a.scope;
                    scope.extend_from_slice(&b.scope);
                    scope.sort_unstable();
                    let mut known = a.edges;
                    known.extend(b.edges);
                    known.extend(outcome.edges);
                    next.push(KnownEdges::new(scope, known));
                }
                (Some(last), None) => {
                    next.push(last);
                    break;
                }
                (None, _) => break,
            }
        }
        parts = next;
        let used = oracle.snapshot().since(before);
        phases.push(PhaseCost {
            label: format!("round_{}", round.index),
            classical: used.classical,
            quantum: used.quantum,
        });
    }

    debug_assert_eq!(parts.len(), 1);
    let edges = parts.pop().map(|p| p.edges).unwrap_or_default();
    let edge_count_mismatch = edges.len() as u64 != m;
    LearnOutcome {
        edges,
        phases,
        audit,
        edge_count_mismatch,
        schedule: Some(schedule),
    }
}
