//! Combinatorial group testing over a vertex ground set.
//!
//! The hidden string is "which ground-set vertices have a neighbor in the
//! context set"; its OR-membership predicate is realized by `or_query` on
//! `subset ∪ context`. Two solvers are provided: a real classical adaptive
//! one (branching binary search) and an idealized quantum one that reads the
//! answer from ground truth and charges a model-dependent query cost.

use std::str::FromStr;

use crate::graph::Vertex;
use crate::oracle::OrOracle;

/// Which published query-count bound the charged cost follows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CostKind {
    /// `ceil(scale * sqrt(k))` — the optimal adversary-method bound.
    Belovs,
    /// `ceil(scale * k * log2(k + 2))`.
    AmbainisMontanaro,
    /// `ceil(scale * sqrt(k) * log2(k + 2) * log2(log2(k + 4)))` — the
    /// explicit time-efficient construction.
    MontanaroShao,
}

impl CostKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CostKind::Belovs => "belovs",
            CostKind::AmbainisMontanaro => "ambainis_montanaro",
            CostKind::MontanaroShao => "montanaro_shao",
        }
    }
}

impl FromStr for CostKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "belovs" => Ok(CostKind::Belovs),
            "ambainis_montanaro" => Ok(CostKind::AmbainisMontanaro),
            "montanaro_shao" => Ok(CostKind::MontanaroShao),
            other => Err(format!(
                "unknown cost model {other:?} (expected belovs, ambainis_montanaro, or montanaro_shao)"
            )),
        }
    }
}

/// Maps a support size `k` to a charged quantum query count.
#[derive(Clone, Copy, Debug)]
pub struct CostModel {
    pub kind: CostKind,
    /// Positive multiplier applied before rounding up. Default 1.
    pub scale: f64,
}

impl CostModel {
    pub fn new(kind: CostKind) -> Self {
        CostModel { kind, scale: 1.0 }
    }

    /// Charged queries for learning a support of size `k`. Never below 1:
    /// even verifying emptiness takes a query.
    pub fn cost(&self, k: usize) -> u64 {
        let k = k as f64;
        let raw = match self.kind {
            CostKind::Belovs => self.scale * k.sqrt(),
            CostKind::AmbainisMontanaro => self.scale * k * (k + 2.0).log2(),
            CostKind::MontanaroShao => {
                self.scale * k.sqrt() * (k + 2.0).log2() * (k + 4.0).log2().log2()
            }
        };
        (raw.ceil() as u64).max(1)
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::new(CostKind::Belovs)
    }
}

/// A group-testing instance: find the ground-set vertices with a hidden
/// neighbor in `context`.
///
/// The membership predicate is monotone as long as `ground_set` and
/// `context` are independent sets of the hidden graph.
#[derive(Clone, Debug)]
pub struct CgtInstance {
    pub ground_set: Vec<Vertex>,
    pub context: Vec<Vertex>,
}

impl CgtInstance {
    pub fn new(ground_set: Vec<Vertex>, context: Vec<Vertex>) -> Self {
        CgtInstance {
            ground_set,
            context,
        }
    }

    /// Exact adaptive solver using real OR queries.
    ///
    /// One root query, then branching binary search that descends into every
    /// positive half; when the left half is negative the right half is
    /// recursed without a query. Total classical queries are at most
    /// `1 + 2k * ceil(log2 |ground_set|)` for `k` defectives.
    pub fn solve_classical(&self, oracle: &mut OrOracle) -> Vec<Vertex> {
        let mut found = Vec::new();
        if !oracle.or_query_union(&self.ground_set, &self.context) {
            return found;
        }
        self.descend(&self.ground_set, oracle, &mut found);
        found
    }

    /// `slice` is known to contain at least one defective.
    fn descend(&self, slice: &[Vertex], oracle: &mut OrOracle, found: &mut Vec<Vertex>) {
        if slice.len() == 1 {
            found.push(slice[0]);
            return;
        }
        let (left, right) = slice.split_at(slice.len() / 2);
        let left_positive = oracle.or_query_union(left, &self.context);
        if left_positive {
            self.descend(left, oracle, found);
            if oracle.or_query_union(right, &self.context) {
                self.descend(right, oracle, found);
            }
        } else {
            // The defective must be on the right; no query needed.
            self.descend(right, oracle, found);
        }
    }

    /// Idealized quantum solver: exact answer from the privileged channel,
    /// `model.cost(k)` charged to the quantum counter, zero classical queries.
    pub fn solve_quantum(&self, oracle: &mut OrOracle, model: &CostModel) -> Vec<Vertex> {
        let support = oracle.ground_truth_support(&self.ground_set, &self.context);
        oracle.charge_quantum(model.cost(support.len()));
        support
    }
}
