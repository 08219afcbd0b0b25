//! Benchmark family generators for hidden graphs.
//!
//! Each generator is a deterministic function of its parameters and the seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::rng::seeded_rng;

/// Uniform random matching with exactly `m` edges on `n` vertices.
///
/// Draws a uniform 2m-subset of the vertices and pairs it uniformly.
pub fn gen_matching(n: u32, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if 2 * m > n as usize {
        return Err(GraphError::Infeasible(format!(
            "matching needs 2m <= n, got n={n}, m={m}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(&mut rng);
    ids.truncate(2 * m);
    let edges = ids.chunks_exact(2).map(|p| Edge::new(p[0], p[1]));
    Graph::new(n, edges)
}

/// Uniform random Hamiltonian cycle on `n >= 3` vertices.
pub fn gen_cycle(n: u32, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Infeasible(format!(
            "cycle needs n >= 3, got n={n}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let edges = (0..n as usize).map(|i| Edge::new(order[i], order[(i + 1) % n as usize]));
    Graph::new(n, edges)
}

/// Random graph with exactly `m` edges and maximum degree at most `d`,
/// built by rejection-sampled uniform edge insertion.
///
/// Fails with a diagnostic if `100 * m` attempts do not place all edges.
pub fn gen_bounded_degree(n: u32, m: usize, d: u32, seed: u64) -> Result<Graph, GraphError> {
    let max_edges = n as usize * (n as usize - 1) / 2;
    if m > max_edges || 2 * m > n as usize * d as usize {
        return Err(GraphError::Infeasible(format!(
            "need m <= n(n-1)/2 and 2m <= n*d, got n={n}, m={m}, d={d}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut edges = std::collections::BTreeSet::new();
    let mut degree = vec![0u32; n as usize];
    let budget = 100 * m as u64;
    let mut attempts = 0u64;
    while edges.len() < m {
        if attempts >= budget {
            return Err(GraphError::SamplerExhausted {
                placed: edges.len(),
                target: m,
                attempts,
            });
        }
        attempts += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || degree[u as usize] >= d || degree[v as usize] >= d {
            continue;
        }
        if edges.insert(Edge::new(u, v)) {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
    }
    Graph::new(n, edges)
}

/// Two disjoint cliques on `n/2` vertices each, plus every cross pair
/// independently with probability 1/2.
pub fn gen_clique_pair(n: u32, seed: u64) -> Result<Graph, GraphError> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(GraphError::Infeasible(format!(
            "clique pair needs even n >= 4, got n={n}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let half = n / 2;
    let mut edges = Vec::new();
    for block in [0..half, half..n] {
        let verts: Vec<Vertex> = block.collect();
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                edges.push(Edge::new(u, v));
            }
        }
    }
    for u in 0..half {
        for v in half..n {
            if rng.random_bool(0.5) {
                edges.push(Edge::new(u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Star with `m` edges: a random center joined to `m` random leaves.
pub fn gen_star(n: u32, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 || m > n as usize - 1 {
        return Err(GraphError::Infeasible(format!(
            "star needs m <= n - 1, got n={n}, m={m}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let center = rng.random_range(0..n);
    let mut others: Vec<Vertex> = (0..n).filter(|&v| v != center).collect();
    others.shuffle(&mut rng);
    let edges = others[..m].iter().map(|&leaf| Edge::new(center, leaf));
    Graph::new(n, edges)
}

/// Clique on a random `k`-subset; all other vertices stay isolated.
pub fn gen_clique(n: u32, k: u32, seed: u64) -> Result<Graph, GraphError> {
    if k > n {
        return Err(GraphError::Infeasible(format!(
            "clique needs k <= n, got n={n}, k={k}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(&mut rng);
    ids.truncate(k as usize);
    let mut edges = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            edges.push(Edge::new(u, v));
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn degrees(g: &Graph) -> Vec<usize> {
        g.vertices().map(|v| g.degree(v)).collect()
    }

    #[test]
    fn matching_shapes() {
        let g = gen_matching(4, 2, 11).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.d_max(), 1);
        assert!(degrees(&g).iter().all(|&d| d == 1));

        let empty = gen_matching(10, 0, 3).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.d_max(), 0);

        assert!(matches!(
            gen_matching(5, 3, 0),
            Err(GraphError::Infeasible(_))
        ));
    }

    /// All perfect matchings on {0..2k-1}, as sorted edge lists.
    fn enumerate_matchings(verts: &[Vertex]) -> Vec<BTreeSet<Edge>> {
        if verts.is_empty() {
            return vec![BTreeSet::new()];
        }
        let first = verts[0];
        let mut out = Vec::new();
        for i in 1..verts.len() {
            let partner = verts[i];
            let rest: Vec<Vertex> = verts[1..]
                .iter()
                .copied()
                .filter(|&v| v != partner)
                .collect();
            for mut sub in enumerate_matchings(&rest) {
                sub.insert(Edge::new(first, partner));
                out.push(sub);
            }
        }
        out
    }

    #[test]
    fn matching_is_uniform_over_perfect_matchings() {
        let all = enumerate_matchings(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(all.len(), 15);
        let mut counts = vec![0u32; 15];
        let trials = 10_000;
        for seed in 0..trials {
            let g = gen_matching(6, 3, seed).unwrap();
            let idx = all.iter().position(|m| m == g.edges()).unwrap();
            counts[idx] += 1;
        }
        let expected = trials as f64 / 15.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // df = 14, p = 0.001 cutoff is 36.12
        assert!(chi2 < 36.12, "chi2 = {chi2}, counts = {counts:?}");
    }

    #[test]
    fn cycle_shapes() {
        let tri = gen_cycle(3, 0).unwrap();
        assert_eq!(tri.edge_count(), 3);
        let five = gen_cycle(5, 9).unwrap();
        assert_eq!(five.edge_count(), 5);
        assert!(degrees(&five).iter().all(|&d| d == 2));
        assert!(matches!(gen_cycle(2, 0), Err(GraphError::Infeasible(_))));
    }

    #[test]
    fn cycle_is_uniform_over_labeled_cycles() {
        // (6-1)!/2 = 60 labeled 6-cycles, keyed by edge set.
        let mut seen: std::collections::HashMap<BTreeSet<Edge>, u32> = Default::default();
        let trials = 30_000;
        for seed in 0..trials {
            let g = gen_cycle(6, seed).unwrap();
            *seen.entry(g.edges().clone()).or_default() += 1;
        }
        assert_eq!(seen.len(), 60);
        let expected = trials as f64 / 60.0;
        let chi2: f64 = seen
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // df = 59, p = 0.001 cutoff is 98.75
        assert!(chi2 < 98.75, "chi2 = {chi2}");
    }

    #[test]
    fn bounded_degree_forced_cases() {
        let matching = gen_bounded_degree(8, 4, 1, 5).unwrap();
        assert_eq!(matching.edge_count(), 4);
        assert_eq!(matching.d_max(), 1);

        let k5 = gen_bounded_degree(5, 10, 4, 5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert!(degrees(&k5).iter().all(|&d| d == 4));

        assert!(matches!(
            gen_bounded_degree(10, 20, 1, 0),
            Err(GraphError::Infeasible(_))
        ));
    }

    #[test]
    fn bounded_degree_respects_cap_across_seeds() {
        for seed in 0..1_000 {
            let g = gen_bounded_degree(50, 60, 3, seed).unwrap();
            assert_eq!(g.edge_count(), 60);
            assert!(g.d_max() <= 3);
        }
    }

    #[test]
    fn clique_pair_shapes() {
        for seed in 0..20 {
            let g = gen_clique_pair(4, seed).unwrap();
            assert!(g.has_edge(0, 1));
            assert!(g.has_edge(2, 3));
            let g8 = gen_clique_pair(8, seed).unwrap();
            assert!(g8.edge_count() >= 12);
        }
        assert!(matches!(
            gen_clique_pair(5, 0),
            Err(GraphError::Infeasible(_))
        ));
    }

    #[test]
    fn clique_pair_cross_edges_mean_two() {
        // Cross count at n=4 is Binomial(4, 1/2); mean over 10k seeds ~ 2.
        let mut total = 0usize;
        let trials = 10_000;
        for seed in 0..trials {
            let g = gen_clique_pair(4, seed).unwrap();
            total += g.edge_count() - 2;
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - 2.0).abs() < 0.05, "mean = {mean}");
    }

    #[test]
    fn star_and_clique_shapes() {
        let star = gen_star(5, 4, 2).unwrap();
        assert_eq!(star.edge_count(), 4);
        assert_eq!(star.d_max(), 4);

        let single = gen_star(100, 1, 7).unwrap();
        assert_eq!(single.edge_count(), 1);

        let tri = gen_clique(10, 3, 4).unwrap();
        assert_eq!(tri.edge_count(), 3);
        assert_eq!(tri.d_max(), 2);

        assert!(matches!(gen_star(4, 4, 0), Err(GraphError::Infeasible(_))));
        assert!(matches!(
            gen_clique(3, 4, 0),
            Err(GraphError::Infeasible(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        for seed in [0, 1, 99] {
            assert_eq!(
                gen_matching(20, 7, seed).unwrap().edges(),
                gen_matching(20, 7, seed).unwrap().edges()
            );
            assert_eq!(
                gen_bounded_degree(30, 25, 3, seed).unwrap().edges(),
                gen_bounded_degree(30, 25, 3, seed).unwrap().edges()
            );
        }
    }
}
