//! Classical OR-query learners: the within-part full-graph learner and the
//! bipartite independent-pair learner it builds on.
//!
//! Both are deterministic (no seed): recursion always splits the sorted
//! vertex slice at its midpoint, so reruns replay identically.

use std::collections::BTreeSet;

use crate::cgt::CgtInstance;
use crate::graph::{Edge, Vertex};
use crate::oracle::OrOracle;
use crate::partition::greedy_color;

/// An edge set known to be complete for a vertex scope: every hidden edge
/// with both ends in `scope` is present.
#[derive(Clone, Debug)]
pub struct KnownEdges {
    pub edges: BTreeSet<Edge>,
    pub scope: Vec<Vertex>,
}

impl KnownEdges {
    pub fn new(scope: Vec<Vertex>, edges: BTreeSet<Edge>) -> Self {
        KnownEdges { edges, scope }
    }
}

/// Learns exactly the crossing edges between two disjoint independent sets.
///
/// Two-level branching binary search: find the non-isolated vertices of
/// `a_side` (one group-testing instance with context `b_side`), then recover
/// each of their neighborhoods in `b_side`. Uses
/// `O((crossings + 1) * log n)` classical queries.
pub fn learn_bipartite_independent_classical(
    a_side: &[Vertex],
    b_side: &[Vertex],
    oracle: &mut OrOracle,
) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    let hot = CgtInstance::new(a_side.to_vec(), b_side.to_vec()).solve_classical(oracle);
    for a in hot {
        let neighbors = CgtInstance::new(b_side.to_vec(), vec![a]).solve_classical(oracle);
        for b in neighbors {
            edges.insert(Edge::new(a, b));
        }
    }
    edges
}

/// Learns exactly the hidden edges inside `s` with classical OR queries.
///
/// Divide and conquer: split the sorted slice at the midpoint, learn each
/// half recursively, then cover both halves by independent classes (greedy
/// coloring on the now-known internal edges) and learn every class-pair
/// crossing. A subset that answers 0 costs exactly one query.
pub fn learn_all_edges_classical(s: &[Vertex], oracle: &mut OrOracle) -> BTreeSet<Edge> {
    let mut scope = s.to_vec();
    scope.sort_unstable();
    scope.dedup();
    learn_sorted(&scope, oracle)
}

fn learn_sorted(s: &[Vertex], oracle: &mut OrOracle) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    if !oracle.or_query(s) {
        return edges;
    }
    if s.len() == 2 {
        edges.insert(Edge::new(s[0], s[1]));
        return edges;
    }
    let (s1, s2) = s.split_at(s.len() / 2);
    let e1 = learn_sorted(s1, oracle);
    let e2 = learn_sorted(s2, oracle);
    let classes1 = greedy_color(s1, &e1);
    let classes2 = greedy_color(s2, &e2);
    edges.extend(e1);
    edges.extend(e2);
    for c1 in &classes1.classes {
        for c2 in &classes2.classes {
            edges.extend(learn_bipartite_independent_classical(c1, c2, oracle));
        }
    }
    edges
}
