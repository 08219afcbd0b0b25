//! The OR-query oracle over a hidden graph.
//!
//! This is the only sanctioned access path to the hidden edge set. Classical
//! OR queries and charged quantum queries are counted separately; every
//! classical query is appended to a replay log. The ground-truth channel is
//! crate-private and reserved for the idealized group-testing solver.

use std::io::{self, Write};

use crate::graph::{Graph, Vertex};
use crate::rng::mix;

/// Snapshot of the oracle's two cost counters.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Counters {
    pub classical: u64,
    pub quantum: u64,
}

impl Counters {
    /// Component-wise difference since `earlier`.
    pub fn since(&self, earlier: Counters) -> Counters {
        Counters {
            classical: self.classical - earlier.classical,
            quantum: self.quantum - earlier.quantum,
        }
    }
}

/// One replay-log entry: an order-independent digest of the queried set,
/// its size, and the answer. The full set is kept only when full-set
/// logging is switched on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRecord {
    pub digest: u64,
    pub size: u32,
    pub answer: bool,
    pub set: Option<Vec<Vertex>>,
}

/// OR-query oracle with dual cost accounting.
pub struct OrOracle {
    hidden: Graph,
    classical_count: u64,
    quantum_charged: u64,
    log: Vec<LogRecord>,
    log_enabled: bool,
    log_full_sets: bool,
    stamp: Vec<u64>,
    epoch: u64,
}

impl OrOracle {
    pub fn new(hidden: Graph) -> Self {
        let n = hidden.n() as usize;
        OrOracle {
            hidden,
            classical_count: 0,
            quantum_charged: 0,
            log: Vec::new(),
            log_enabled: true,
            log_full_sets: false,
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    pub fn vertex_count(&self) -> u32 {
        self.hidden.n()
    }

    /// Digest-only logging is the default; full-set logging is for debugging.
    pub fn set_logging(&mut self, enabled: bool, full_sets: bool) {
        self.log_enabled = enabled;
        self.log_full_sets = full_sets;
    }

    /// Answers whether some hidden edge has both ends in `s`.
    ///
    /// Counts exactly one classical query. Duplicate ids collapse: the query
    /// is the set of distinct elements.
    ///
    /// # Panics
    /// Panics on an out-of-range vertex id.
    pub fn or_query(&mut self, s: &[Vertex]) -> bool {
        self.or_query_union(s, &[])
    }

    /// `or_query` on the union of two disjoint slices, without materializing
    /// the union.
    pub fn or_query_union(&mut self, x: &[Vertex], y: &[Vertex]) -> bool {
        self.epoch += 1;
        let mut digest = 0u64;
        let mut size = 0u32;
        for &v in x.iter().chain(y) {
            assert!(
                v < self.hidden.n(),
                "query vertex {v} out of range for n={}",
                self.hidden.n()
            );
            if self.stamp[v as usize] != self.epoch {
                self.stamp[v as usize] = self.epoch;
                digest ^= element_digest(v);
                size += 1;
            }
        }
        let mut answer = false;
        'scan: for &v in x.iter().chain(y) {
            for &w in self.hidden.neighbors(v) {
                if self.stamp[w as usize] == self.epoch {
                    answer = true;
                    break 'scan;
                }
            }
        }
        self.classical_count += 1;
        if self.log_enabled {
            let set = if self.log_full_sets {
                let mut full: Vec<Vertex> = x.iter().chain(y).copied().collect();
                full.sort_unstable();
                full.dedup();
                Some(full)
            } else {
                None
            };
            self.log.push(LogRecord {
                digest,
                size,
                answer,
                set,
            });
        }
        answer
    }

    /// Adds `q` to the quantum-charged counter.
    pub fn charge_quantum(&mut self, q: u64) {
        self.quantum_charged += q;
    }

    /// Privileged channel for the idealized quantum group-testing solver:
    /// the members of `target` with at least one hidden neighbor in `probe`.
    ///
    /// Does not touch the classical counter; the caller charges quantum cost
    /// separately.
    ///
    /// # Panics
    /// Panics if the sets overlap or contain out-of-range ids.
    pub(crate) fn ground_truth_support(
        &mut self,
        target: &[Vertex],
        probe: &[Vertex],
    ) -> Vec<Vertex> {
        self.epoch += 1;
        for &v in probe {
            assert!(v < self.hidden.n(), "probe vertex {v} out of range");
            self.stamp[v as usize] = self.epoch;
        }
        let mut out = Vec::new();
        for &v in target {
            assert!(v < self.hidden.n(), "target vertex {v} out of range");
            assert!(
                self.stamp[v as usize] != self.epoch,
                "target and probe overlap at {v}"
            );
            if self
                .hidden
                .neighbors(v)
                .iter()
                .any(|&w| self.stamp[w as usize] == self.epoch)
            {
                out.push(v);
            }
        }
        out
    }

    /// Side-effect-free view of both counters.
    pub fn snapshot(&self) -> Counters {
        Counters {
            classical: self.classical_count,
            quantum: self.quantum_charged,
        }
    }

    /// Clears the replay log; counters are untouched.
    pub fn reset_log(&mut self) {
        self.log.clear();
    }

    pub fn log(&self) -> &[LogRecord] {
        &self.log
    }

    /// One record per line: `<seq> <set_digest> <set_size> <answer>`.
    pub fn export_log<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (seq, rec) in self.log.iter().enumerate() {
            writeln!(
                w,
                "{seq} {} {} {}",
                rec.digest,
                rec.size,
                u8::from(rec.answer)
            )?;
        }
        Ok(())
    }
}

fn element_digest(v: Vertex) -> u64 {
    mix(v as u64 + 1, 0x0f2a_9e1b_5ca6_d3e7)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_bounded_degree;
    use crate::graph::Edge;

    fn path3() -> Graph {
        Graph::new(3, [Edge::new(0, 1), Edge::new(1, 2)]).unwrap()
    }

    #[test]
    fn empty_set_spans_no_edge() {
        let mut o = OrOracle::new(path3());
        assert!(!o.or_query(&[]));
        assert_eq!(o.snapshot().classical, 1);
    }

    #[test]
    fn single_edge_detected() {
        let g = Graph::new(4, [Edge::new(1, 2)]).unwrap();
        let mut o = OrOracle::new(g);
        assert!(o.or_query(&[1, 2]));
        assert!(!o.or_query(&[0, 3]));
    }

    #[test]
    fn nonadjacent_pair_answers_zero() {
        let mut o = OrOracle::new(path3());
        assert!(!o.or_query(&[0, 2]));
        assert!(o.or_query(&[0, 1, 2]));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rejects_out_of_range_ids() {
        let mut o = OrOracle::new(path3());
        o.or_query(&[0, 9]);
    }

    #[test]
    fn or_query_matches_brute_force() {
        use rand::Rng;
        let mut rng = crate::rng::seeded_rng(0xbeef);
        for trial in 0..1_000u64 {
            let n = rng.random_range(2..40u32);
            let max_m = (n as usize * (n as usize - 1) / 2).min(2 * n as usize);
            let m = rng.random_range(0..=max_m);
            let g = match gen_bounded_degree(n, m, 4, trial) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let s: Vec<Vertex> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
            let brute = g
                .edges()
                .iter()
                .any(|e| s.contains(&e.a()) && s.contains(&e.b()));
            let mut o = OrOracle::new(g);
            assert_eq!(o.or_query(&s), brute);
        }
    }

    #[test]
    fn counters_are_independent_and_monotone() {
        let mut o = OrOracle::new(path3());
        assert_eq!(o.snapshot(), Counters::default());
        o.or_query(&[0, 1]);
        o.charge_quantum(5);
        o.or_query(&[1, 2]);
        o.charge_quantum(5);
        o.or_query(&[0]);
        let c = o.snapshot();
        assert_eq!(c.classical, 3);
        assert_eq!(c.quantum, 10);
        // Idempotent read.
        assert_eq!(o.snapshot(), c);
        o.charge_quantum(0);
        assert_eq!(o.snapshot(), c);
    }

    #[test]
    fn ground_truth_support_basics() {
        // Hidden matching a1-b1, a2-b2 as 0-2, 1-3.
        let g = Graph::new(4, [Edge::new(0, 2), Edge::new(1, 3)]).unwrap();
        let mut o = OrOracle::new(g);
        assert_eq!(o.ground_truth_support(&[0, 1], &[2]), vec![0]);
        assert_eq!(o.ground_truth_support(&[0, 1], &[]), Vec::<Vertex>::new());
        // No classical cost on the privileged channel.
        assert_eq!(o.snapshot().classical, 0);
    }

    #[test]
    #[should_panic(expected = "overlap")]
    fn ground_truth_support_rejects_overlap() {
        let mut o = OrOracle::new(path3());
        o.ground_truth_support(&[0, 1], &[1, 2]);
    }

    #[test]
    fn ground_truth_support_matches_brute_force() {
        for seed in 0..50u64 {
            let g = gen_bounded_degree(30, 25, 3, seed).unwrap();
            let target: Vec<Vertex> = (0..15).collect();
            let probe: Vec<Vertex> = (15..30).collect();
            let brute: Vec<Vertex> = target
                .iter()
                .copied()
                .filter(|&t| probe.iter().any(|&p| g.has_edge(t, p)))
                .collect();
            let mut o = OrOracle::new(g);
            assert_eq!(o.ground_truth_support(&target, &probe), brute);
        }
    }

    #[test]
    fn log_records_and_export() {
        let mut o = OrOracle::new(path3());
        o.or_query(&[0, 1]);
        o.or_query(&[0, 2]);
        assert_eq!(o.log().len(), 2);
        assert_eq!(o.log()[0].size, 2);
        assert!(o.log()[0].answer);
        assert!(!o.log()[1].answer);
        // Digest ignores order.
        let d1 = o.log()[0].digest;
        o.reset_log();
        o.or_query(&[1, 0]);
        assert_eq!(o.log()[0].digest, d1);

        let mut buf = Vec::new();
        o.export_log(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), format!("0 {d1} 2 1"));
    }

    #[test]
    fn full_set_logging_keeps_sorted_sets() {
        let mut o = OrOracle::new(path3());
        o.set_logging(true, true);
        o.or_query(&[2, 0]);
        assert_eq!(o.log()[0].set.as_deref(), Some(&[0, 2][..]));
    }
}
