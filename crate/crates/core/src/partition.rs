//! Random equitable vertex partitions and greedy proper coloring.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use crate::graph::{Edge, GraphError, Vertex};
use crate::rng::seeded_rng;

/// A partition of a ground set into pairwise disjoint parts.
#[derive(Clone, Debug)]
pub struct Partition {
    /// Disjoint vertex sets; sizes differ by at most one when built equitably.
    pub parts: Vec<Vec<Vertex>>,
    /// Whether the union of the parts equals the ground set it was built from.
    pub covers: bool,
}

/// Uniform random equitable partition of `ground_set` into `t` labeled parts.
///
/// Shuffle-then-cut: part sizes are `ceil(|S|/t)` for the first `|S| mod t`
/// parts and `floor(|S|/t)` for the rest.
pub fn random_equitable_partition(
    ground_set: &[Vertex],
    t: usize,
    seed: u64,
) -> Result<Partition, GraphError> {
    if t == 0 || t > ground_set.len() {
        return Err(GraphError::Infeasible(format!(
            "part count {t} outside 1..={}",
            ground_set.len()
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut pool = ground_set.to_vec();
    pool.shuffle(&mut rng);
    let base = pool.len() / t;
    let extra = pool.len() % t;
    let mut parts = Vec::with_capacity(t);
    let mut at = 0;
    for j in 0..t {
        let size = base + usize::from(j < extra);
        parts.push(pool[at..at + size].to_vec());
        at += size;
    }
    Ok(Partition {
        parts,
        covers: true,
    })
}

/// Vertex sets that are each independent with respect to a known edge set.
#[derive(Clone, Debug)]
pub struct ColorClasses {
    pub classes: Vec<Vec<Vertex>>,
}

impl ColorClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Greedy proper coloring of `(vertices, known_edges)`.
///
/// Scans vertices in ascending id order, assigning the smallest color not
/// used by an already-colored neighbor, so it needs at most `max_degree + 1`
/// classes. Edges with an endpoint outside `vertices` are ignored.
pub fn greedy_color(vertices: &[Vertex], known_edges: &BTreeSet<Edge>) -> ColorClasses {
    let mut order = vertices.to_vec();
    order.sort_unstable();
    order.dedup();

    let index_of = |v: Vertex| order.binary_search(&v).ok();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for e in known_edges {
        if let (Some(i), Some(j)) = (index_of(e.a()), index_of(e.b())) {
            adj[i].push(j);
            adj[j].push(i);
        }
    }

    let mut color = vec![usize::MAX; order.len()];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut used = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        used.clear();
        used.resize(classes.len() + 1, false);
        for &j in &adj[i] {
            if color[j] != usize::MAX {
                used[color[j]] = true;
            }
        }
        let c = used.iter().position(|&taken| !taken).unwrap();
        color[i] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    if classes.is_empty() {
        classes.push(Vec::new());
    }
    ColorClasses { classes }
}
