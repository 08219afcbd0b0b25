//! Experiment orchestration: single trials, sweep grids, and empirical
//! audits of the concentration thresholds the divide-merge analysis leans on.
//!
//! Everything here is deterministic given the config: trial `t` of a point
//! runs with seed `seed_stream(base_seed, t)`, trials may execute in
//! parallel, and aggregation folds in trial order regardless of completion
//! order.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::cgt::{CostKind, CostModel};
use crate::classical::learn_all_edges_classical;
use crate::families::{
    gen_bounded_degree, gen_clique, gen_clique_pair, gen_cycle, gen_matching, gen_star,
};
use crate::graph::{Graph, GraphError, Vertex};
use crate::oracle::OrOracle;
use crate::quantum::{
    find_edges, learn_matching, AuditCounts, LearnOpts, LearnOutcome, LevelSchedule, PhaseCost,
};
use crate::rng::{mix, seed_stream};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

/// Hidden-graph families the harness can generate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Matching,
    Cycle,
    BoundedDegree,
    Star,
    Clique,
    CliquePair,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Matching => "matching",
            Family::Cycle => "cycle",
            Family::BoundedDegree => "bounded_degree",
            Family::Star => "star",
            Family::Clique => "clique",
            Family::CliquePair => "clique_pair",
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "matching" => Ok(Family::Matching),
            "cycle" => Ok(Family::Cycle),
            "bounded_degree" => Ok(Family::BoundedDegree),
            "star" => Ok(Family::Star),
            "clique" => Ok(Family::Clique),
            "clique_pair" => Ok(Family::CliquePair),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// Which learner a trial runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    FindEdges,
    LearnMatching,
    ClassicalOnly,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::FindEdges => "find_edges",
            Algorithm::LearnMatching => "learn_matching",
            Algorithm::ClassicalOnly => "classical_only",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "find_edges" => Ok(Algorithm::FindEdges),
            "learn_matching" => Ok(Algorithm::LearnMatching),
            "classical_only" => Ok(Algorithm::ClassicalOnly),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// One fully specified trial.
///
/// `m` doubles as the family's size parameter: edge count for matchings,
/// bounded-degree graphs, and stars; clique order for `clique`; ignored by
/// `cycle` (m = n) and `clique_pair`.
#[derive(Clone, Copy, Debug)]
pub struct TrialConfig {
    pub family: Family,
    pub n: u32,
    pub m: u64,
    pub d: u32,
    pub model: CostModel,
    pub const_scale: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
}

impl TrialConfig {
    pub fn generate_graph(&self) -> Result<Graph, GraphError> {
        match self.family {
            Family::Matching => gen_matching(self.n, self.m as usize, self.seed),
            Family::Cycle => gen_cycle(self.n, self.seed),
            Family::BoundedDegree => gen_bounded_degree(self.n, self.m as usize, self.d, self.seed),
            Family::Star => gen_star(self.n, self.m as usize, self.seed),
            Family::Clique => gen_clique(self.n, self.m as u32, self.seed),
            Family::CliquePair => gen_clique_pair(self.n, self.seed),
        }
    }

    /// Degree promise handed to the learner: the configured bound for
    /// bounded-degree instances, otherwise the generated graph's maximum.
    fn degree_promise(&self, graph: &Graph) -> u32 {
        match self.family {
            Family::BoundedDegree => self.d.max(graph.d_max()),
            _ => graph.d_max().max(1),
        }
    }
}

/// Everything one trial produced: the config echo plus the run outcome.
#[derive(Clone, Debug)]
pub struct TrialReport {
    pub config: TrialConfig,
    pub run: RunReport,
}

impl TrialReport {
    /// The deterministic key=value record. Wall time is excluded so reruns
    /// stay byte-identical; [`TrialReport::to_kv`] appends it.
    pub fn to_kv_canonical(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(out, "family={}", c.family.as_str());
        let _ = writeln!(out, "algorithm={}", c.algorithm.as_str());
        let _ = writeln!(out, "cost_model={}", c.model.kind.as_str());
        let _ = writeln!(out, "cost_scale={}", c.model.scale);
        let _ = writeln!(out, "const_scale={}", c.const_scale);
        let _ = writeln!(out, "n={}", c.n);
        let _ = writeln!(out, "m={}", c.m);
        let _ = writeln!(out, "d={}", c.d);
        let _ = writeln!(out, "seed={}", c.seed);
        out.push_str(&run_kv(&self.run));
        out
    }

    /// The canonical record plus the wall-time line.
    pub fn to_kv(&self) -> String {
        format!(
            "{}elapsed_ms={:.3}\n",
            self.to_kv_canonical(),
            self.run.elapsed_ms
        )
    }
}

#[cfg(not(target_arch = "wasm32"))]
fn now_ms() -> f64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64() * 1e3)
        .unwrap_or(0.0)
}

#[cfg(target_arch = "wasm32")]
fn now_ms() -> f64 {
    0.0
}

/// Outcome of running one learner against one hidden graph.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub exact: bool,
    pub learned_edges: usize,
    pub edge_count_mismatch: bool,
    pub classical_queries: u64,
    pub quantum_charged: u64,
    pub phases: Vec<PhaseCost>,
    pub audit: AuditCounts,
    pub elapsed_ms: f64,
}

/// Runs `algorithm` against a fresh oracle over `graph` (consumed: it
/// becomes the sealed hidden graph) with promises taken from the arguments,
/// and compares the answer to ground truth. `seed` feeds the learner
/// directly.
pub fn run_on_graph(
    graph: Graph,
    d_promise: u32,
    algorithm: Algorithm,
    model: CostModel,
    const_scale: f64,
    seed: u64,
) -> RunReport {
    let truth = graph.edges().clone();
    let m_actual = graph.edge_count() as u64;
    let n = graph.n();
    let opts = LearnOpts { model, const_scale };

    let mut oracle = OrOracle::new(graph);
    let start = now_ms();
    let outcome = match algorithm {
        Algorithm::FindEdges => find_edges(&mut oracle, m_actual, d_promise, &opts, seed),
        Algorithm::LearnMatching => learn_matching(&mut oracle, m_actual, &opts, seed),
        Algorithm::ClassicalOnly => {
            let before = oracle.snapshot();
            let all: Vec<Vertex> = (0..n).collect();
            let edges = learn_all_edges_classical(&all, &mut oracle);
            let used = oracle.snapshot().since(before);
            let edge_count_mismatch = edges.len() as u64 != m_actual;
            LearnOutcome {
                edges,
                phases: vec![PhaseCost {
                    label: "classical".into(),
                    classical: used.classical,
                    quantum: used.quantum,
                }],
                audit: AuditCounts::default(),
                edge_count_mismatch,
                schedule: None,
            }
        }
    };
    let elapsed_ms = now_ms() - start;

    let counters = oracle.snapshot();
    RunReport {
        exact: outcome.edges == truth,
        learned_edges: outcome.edges.len(),
        edge_count_mismatch: outcome.edge_count_mismatch,
        classical_queries: counters.classical,
        quantum_charged: counters.quantum,
        phases: outcome.phases,
        audit: outcome.audit,
        elapsed_ms,
    }
}

/// The run-result lines of the key=value record (everything except the
/// config echo and timing).
pub fn run_kv(run: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "exact={}", run.exact);
    let _ = writeln!(out, "learned_edges={}", run.learned_edges);
    let _ = writeln!(out, "edge_count_mismatch={}", run.edge_count_mismatch);
    let _ = writeln!(out, "classical_queries={}", run.classical_queries);
    let _ = writeln!(out, "quantum_charged={}", run.quantum_charged);
    for phase in &run.phases {
        let _ = writeln!(
            out,
            "phase_{}={},{}",
            phase.label, phase.classical, phase.quantum
        );
    }
    let _ = writeln!(out, "audit_part_overflows={}", run.audit.part_overflows);
    let _ = writeln!(out, "audit_pair_overflows={}", run.audit.pair_overflows);
    let _ = writeln!(out, "audit_class_overruns={}", run.audit.class_overruns);
    out
}

/// Generates the hidden graph, runs the configured learner against a fresh
/// oracle, and checks the result against ground truth.
pub fn run_trial(config: &TrialConfig) -> Result<TrialReport, HarnessError> {
    let graph = config.generate_graph()?;
    let d_promise = config.degree_promise(&graph);
    let learner_seed = mix(config.seed, 0x006c_6561_726e);
    let run = run_on_graph(
        graph,
        d_promise,
        config.algorithm,
        config.model,
        config.const_scale,
        learner_seed,
    );
    Ok(TrialReport {
        config: *config,
        run,
    })
}

/// Aggregated statistics for one grid point.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub point: TrialConfig,
    pub trials: u32,
    /// "ok", or the first error message for a flagged point.
    pub status: String,
    pub exact_rate: f64,
    pub classical_mean: f64,
    pub classical_median: u64,
    pub classical_max: u64,
    pub quantum_mean: f64,
    pub quantum_median: u64,
    pub quantum_max: u64,
    pub part_overflow_rate: f64,
    pub pair_overflow_rate: f64,
}

/// Runs all trials for one grid point; trial `t` uses
/// `seed_stream(point.seed, t)`.
pub fn run_point(point: &TrialConfig, trials: u32) -> Result<Vec<TrialReport>, HarnessError> {
    let configs: Vec<TrialConfig> = (0..trials)
        .map(|t| TrialConfig {
            seed: seed_stream(point.seed, u64::from(t)),
            ..*point
        })
        .collect();

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        configs.par_iter().map(run_trial).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        configs.iter().map(run_trial).collect()
    }
}

fn aggregate(point: &TrialConfig, trials: u32, reports: &[TrialReport]) -> SweepRow {
    let count = reports.len().max(1) as f64;
    let mut classical: Vec<u64> = reports.iter().map(|r| r.run.classical_queries).collect();
    let mut quantum: Vec<u64> = reports.iter().map(|r| r.run.quantum_charged).collect();
    classical.sort_unstable();
    quantum.sort_unstable();
    let median = |v: &[u64]| {
        if v.is_empty() {
            0
        } else {
            v[(v.len() - 1) / 2]
        }
    };
    SweepRow {
        point: *point,
        trials,
        status: "ok".into(),
        exact_rate: reports.iter().filter(|r| r.run.exact).count() as f64 / count,
        classical_mean: classical.iter().sum::<u64>() as f64 / count,
        classical_median: median(&classical),
        classical_max: classical.last().copied().unwrap_or(0),
        quantum_mean: quantum.iter().sum::<u64>() as f64 / count,
        quantum_median: median(&quantum),
        quantum_max: quantum.last().copied().unwrap_or(0),
        part_overflow_rate: reports
            .iter()
            .filter(|r| r.run.audit.part_overflows > 0)
            .count() as f64
            / count,
        pair_overflow_rate: reports
            .iter()
            .filter(|r| r.run.audit.pair_overflows > 0)
            .count() as f64
            / count,
    }
}

/// Runs every grid point, flagging infeasible ones without aborting the rest.
pub fn sweep(grid: &[TrialConfig], trials_per_point: u32) -> Vec<SweepRow> {
    grid.iter()
        .map(|point| match run_point(point, trials_per_point) {
            Ok(reports) => aggregate(point, trials_per_point, &reports),
            Err(err) => SweepRow {
                point: *point,
                trials: trials_per_point,
                status: format!("error: {err}"),
                exact_rate: 0.0,
                classical_mean: 0.0,
                classical_median: 0,
                classical_max: 0,
                quantum_mean: 0.0,
                quantum_median: 0,
                quantum_max: 0,
                part_overflow_rate: 0.0,
                pair_overflow_rate: 0.0,
            },
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "family,algorithm,cost_model,cost_scale,const_scale,n,m,d,\
base_seed,trials,status,exact_rate,classical_mean,classical_median,classical_max,quantum_mean,\
quantum_median,quantum_max,part_overflow_rate,pair_overflow_rate";

/// Renders sweep rows as CSV, byte-deterministic for a fixed grid.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let p = &r.point;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{:.4},{:.3},{},{},{:.3},{},{},{:.4},{:.4}",
            p.family.as_str(),
            p.algorithm.as_str(),
            p.model.kind.as_str(),
            p.model.scale,
            p.const_scale,
            p.n,
            p.m,
            p.d,
            p.seed,
            r.trials,
            r.status.replace(',', ";"),
            r.exact_rate,
            r.classical_mean,
            r.classical_median,
            r.classical_max,
            r.quantum_mean,
            r.quantum_median,
            r.quantum_max,
            r.part_overflow_rate,
            r.pair_overflow_rate,
        );
    }
    out
}

/// An experiment spec before grid expansion: scalar or per-point arrays.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub family: Family,
    pub algorithm: Algorithm,
    pub cost_model: CostKind,
    pub cost_scale: f64,
    pub const_scale: f64,
    pub base_seed: u64,
    pub trials_per_point: u32,
    pub n: Vec<u32>,
    pub m: Vec<u64>,
    pub d: Vec<u32>,
}

/// Zips the `n`/`m`/`d` arrays into grid points. Length-1 arrays broadcast;
/// all longer arrays must agree on length.
pub fn expand_grid(spec: &GridSpec) -> Result<Vec<TrialConfig>, HarnessError> {
    if spec.cost_scale <= 0.0 || spec.const_scale <= 0.0 {
        return Err(HarnessError::InvalidConfig(
            "cost_scale and const_scale must be positive".into(),
        ));
    }
    let lens = [spec.n.len(), spec.m.len(), spec.d.len()];
    if lens.contains(&0) {
        return Err(HarnessError::InvalidConfig(
            "n, m, d must each have at least one value".into(),
        ));
    }
    let points = lens.into_iter().max().unwrap();
    for len in lens {
        if len != 1 && len != points {
            return Err(HarnessError::InvalidConfig(format!(
                "array lengths must be 1 or {points}, got n:{} m:{} d:{}",
                spec.n.len(),
                spec.m.len(),
                spec.d.len()
            )));
        }
    }
    let pick = |i: usize, len: usize| if len == 1 { 0 } else { i };
    Ok((0..points)
        .map(|i| TrialConfig {
            family: spec.family,
            n: spec.n[pick(i, spec.n.len())],
            m: spec.m[pick(i, spec.m.len())],
            d: spec.d[pick(i, spec.d.len())],
            model: CostModel {
                kind: spec.cost_model,
                scale: spec.cost_scale,
            },
            const_scale: spec.const_scale,
            seed: spec.base_seed,
            algorithm: spec.algorithm,
        })
        .collect())
}

/// Smallest `m` at which the quantum-charged median drops below the
/// classical median, across two sweeps over the same grid (matched by row).
/// `None` when the charged count never wins within the grid.
pub fn speedup_crossover(quantum: &[SweepRow], classical: &[SweepRow]) -> Option<u64> {
    quantum
        .iter()
        .zip(classical)
        .filter(|(q, c)| {
            q.status == "ok" && c.status == "ok" && q.point.n == c.point.n && q.point.m == c.point.m
        })
        .find(|(q, c)| q.quantum_median < c.classical_median)
        .map(|(q, _)| q.point.m)
}

/// Parameters for a concentration audit (partition statistics only, no
/// learner involved).
#[derive(Clone, Copy, Debug)]
pub struct AuditConfig {
    pub family: Family,
    pub n: u32,
    pub m: u64,
    pub d: u32,
    pub seeds: u64,
}

/// Empirical overflow frequencies across seeds.
#[derive(Clone, Copy, Debug)]
pub struct AuditSummary {
    pub config: AuditConfig,
    pub t1: usize,
    /// Fraction of seeds where some initial part had at least `ln n`
    /// internal edges.
    pub part_overflow_rate: f64,
    /// Fraction of seeds where some round pair had at least
    /// `max(k_i, (d+1) ln n)` crossing edges.
    pub pair_overflow_rate: f64,
}

/// Measures how often a random equitable partition (and its merge rounds)
/// violates the edge-count thresholds the analysis assumes.
pub fn concentration_audit(cfg: &AuditConfig) -> Result<AuditSummary, HarnessError> {
    let d = match cfg.family {
        Family::Matching => 1,
        Family::BoundedDegree => cfg.d,
        other => {
            return Err(HarnessError::InvalidConfig(format!(
                "audit supports matching and bounded_degree, not {}",
                other.as_str()
            )));
        }
    };
    let t1 = match cfg.family {
        Family::Matching => (cfg.m as f64).sqrt().floor() as usize,
        _ => (cfg.m as f64 / (f64::from(d) + 1.0)).sqrt().floor() as usize,
    }
    .min(cfg.n as usize);
    let ln_n = f64::from(cfg.n).ln();
    let pair_floor = f64::from(d + 1) * ln_n;
    let schedule = LevelSchedule::new(t1.max(1), cfg.m, cfg.n);

    let mut part_violations = 0u64;
    let mut pair_violations = 0u64;
    for seed in 0..cfg.seeds {
        let graph = match cfg.family {
            Family::Matching => gen_matching(cfg.n, cfg.m as usize, seed)?,
            _ => gen_bounded_degree(cfg.n, cfg.m as usize, d, seed)?,
        };
        if t1 == 0 {
            continue;
        }
        let all: Vec<Vertex> = (0..cfg.n).collect();
        let partition = crate::partition::random_equitable_partition(&all, t1, mix(seed, 0))?;

        // part_of[v] = current part index during the merge simulation.
        let mut part_of = vec![0u32; cfg.n as usize];
        for (j, part) in partition.parts.iter().enumerate() {
            for &v in part {
                part_of[v as usize] = j as u32;
            }
        }

        let mut internal = vec![0u64; t1];
        for e in graph.edges() {
            let (pu, pv) = (part_of[e.a() as usize], part_of[e.b() as usize]);
            if pu == pv {
                internal[pu as usize] += 1;
            }
        }
        if internal.iter().any(|&c| c as f64 >= ln_n) {
            part_violations += 1;
        }

        let mut pair_hit = false;
        for round in &schedule.rounds {
            let pairs = round.parts / 2;
            let mut crossings = vec![0u64; pairs.max(1)];
            for e in graph.edges() {
                let (pu, pv) = (part_of[e.a() as usize], part_of[e.b() as usize]);
                if pu != pv && pu / 2 == pv / 2 && (pu / 2) < pairs as u32 {
                    crossings[(pu / 2) as usize] += 1;
                }
            }
            let threshold = round.k_threshold.max(pair_floor);
            if crossings.iter().any(|&c| c as f64 >= threshold) {
                pair_hit = true;
            }
            for p in part_of.iter_mut() {
                *p /= 2;
            }
        }
        if pair_hit {
            pair_violations += 1;
        }
    }

    let denom = cfg.seeds.max(1) as f64;
    Ok(AuditSummary {
        config: *cfg,
        t1,
        part_overflow_rate: part_violations as f64 / denom,
        pair_overflow_rate: pair_violations as f64 / denom,
    })
}

pub const AUDIT_CSV_HEADER: &str = "family,n,m,d,t1,seeds,part_overflow_rate,pair_overflow_rate";

pub fn audit_csv(summaries: &[AuditSummary]) -> String {
    let mut out = String::from(AUDIT_CSV_HEADER);
    out.push('\n');
    for s in summaries {
        let c = &s.config;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.4},{:.4}",
            c.family.as_str(),
            c.n,
            c.m,
            c.d,
            s.t1,
            c.seeds,
            s.part_overflow_rate,
            s.pair_overflow_rate,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching_point(n: u32, m: u64, seed: u64, algorithm: Algorithm) -> TrialConfig {
        TrialConfig {
            family: Family::Matching,
            n,
            m,
            d: 1,
            model: CostModel::default(),
            const_scale: 1.0,
            seed,
            algorithm,
        }
    }

    #[test]
    fn trial_is_deterministic_and_exact() {
        let cfg = matching_point(16, 4, 7, Algorithm::LearnMatching);
        let a = run_trial(&cfg).unwrap();
        let b = run_trial(&cfg).unwrap();
        assert!(a.run.exact);
        assert_eq!(a.to_kv_canonical(), b.to_kv_canonical());
        assert_eq!(a.run.classical_queries, b.run.classical_queries);
        assert_eq!(a.run.quantum_charged, b.run.quantum_charged);
    }

    #[test]
    fn classical_only_never_touches_quantum_counter() {
        let cfg = matching_point(16, 4, 7, Algorithm::ClassicalOnly);
        let report = run_trial(&cfg).unwrap();
        assert!(report.run.exact);
        assert_eq!(report.run.quantum_charged, 0);
    }

    #[test]
    fn phase_breakdown_sums_to_totals() {
        for algorithm in [
            Algorithm::LearnMatching,
            Algorithm::FindEdges,
            Algorithm::ClassicalOnly,
        ] {
            let cfg = matching_point(100, 25, 3, algorithm);
            let report = run_trial(&cfg).unwrap();
            let sum_c: u64 = report.run.phases.iter().map(|p| p.classical).sum();
            let sum_q: u64 = report.run.phases.iter().map(|p| p.quantum).sum();
            assert_eq!(sum_c, report.run.classical_queries);
            assert_eq!(sum_q, report.run.quantum_charged);
        }
    }

    #[test]
    fn kv_record_has_expected_shape() {
        let cfg = matching_point(16, 4, 0, Algorithm::LearnMatching);
        let report = run_trial(&cfg).unwrap();
        let kv = report.to_kv();
        assert!(kv.contains("family=matching\n"));
        assert!(kv.contains("exact=true\n"));
        assert!(kv.contains("elapsed_ms="));
        assert!(!report.to_kv_canonical().contains("elapsed_ms"));
    }

    #[test]
    fn single_point_sweep_matches_run_trial() {
        let point = matching_point(40, 9, 5, Algorithm::LearnMatching);
        let rows = sweep(&[point], 1);
        assert_eq!(rows.len(), 1);
        let direct = run_trial(&TrialConfig {
            seed: seed_stream(5, 0),
            ..point
        })
        .unwrap();
        assert_eq!(rows[0].classical_median, direct.run.classical_queries);
        assert_eq!(rows[0].quantum_median, direct.run.quantum_charged);
        assert_eq!(rows[0].exact_rate, 1.0);
        assert_eq!(rows[0].status, "ok");
    }

    #[test]
    fn sweep_aggregates_match_raw_reports() {
        let point = matching_point(64, 16, 0, Algorithm::LearnMatching);
        let trials = 12;
        let rows = sweep(&[point], trials);
        let raw = run_point(&point, trials).unwrap();
        assert_eq!(raw.len(), trials as usize);

        let mut quantum: Vec<u64> = raw.iter().map(|r| r.run.quantum_charged).collect();
        quantum.sort_unstable();
        assert_eq!(rows[0].quantum_median, quantum[(quantum.len() - 1) / 2]);
        assert_eq!(rows[0].quantum_max, *quantum.last().unwrap());
        let mean = quantum.iter().sum::<u64>() as f64 / trials as f64;
        assert!((rows[0].quantum_mean - mean).abs() < 1e-9);
        let exact = raw.iter().filter(|r| r.run.exact).count() as f64 / trials as f64;
        assert!((rows[0].exact_rate - exact).abs() < 1e-9);
    }

    #[test]
    fn infeasible_point_is_flagged_without_poisoning_others() {
        let good = matching_point(16, 4, 0, Algorithm::LearnMatching);
        let bad = matching_point(4, 40, 0, Algorithm::LearnMatching);
        let rows = sweep(&[good, bad, good], 2);
        assert_eq!(rows[0].status, "ok");
        assert!(rows[1].status.starts_with("error:"));
        assert_eq!(rows[2].status, "ok");
        assert_eq!(rows[0].exact_rate, 1.0);
    }

    #[test]
    fn sweep_csv_is_byte_deterministic() {
        let grid = [
            matching_point(32, 8, 0, Algorithm::LearnMatching),
            matching_point(64, 16, 0, Algorithm::ClassicalOnly),
        ];
        let a = sweep_csv(&sweep(&grid, 4));
        let b = sweep_csv(&sweep(&grid, 4));
        assert_eq!(a, b);
        assert!(a.starts_with(SWEEP_CSV_HEADER));
    }

    #[test]
    fn grid_expansion_zips_and_broadcasts() {
        let spec = GridSpec {
            family: Family::Matching,
            algorithm: Algorithm::LearnMatching,
            cost_model: CostKind::Belovs,
            cost_scale: 1.0,
            const_scale: 1.0,
            base_seed: 0,
            trials_per_point: 10,
            n: vec![256, 512, 1024],
            m: vec![64, 128, 256],
            d: vec![1],
        };
        let grid = expand_grid(&spec).unwrap();
        assert_eq!(grid.len(), 3);
        assert_eq!(grid[1].n, 512);
        assert_eq!(grid[1].m, 128);
        assert_eq!(grid[2].d, 1);

        let bad = GridSpec {
            m: vec![64, 128],
            ..spec
        };
        assert!(matches!(
            expand_grid(&bad),
            Err(HarnessError::InvalidConfig(_))
        ));
    }

    #[test]
    fn audit_single_part_cannot_violate() {
        let summary = concentration_audit(&AuditConfig {
            family: Family::Matching,
            n: 50,
            m: 1,
            d: 1,
            seeds: 50,
        })
        .unwrap();
        assert_eq!(summary.t1, 1);
        assert_eq!(summary.part_overflow_rate, 0.0);
        assert_eq!(summary.pair_overflow_rate, 0.0);
    }

    #[test]
    fn audit_rejects_unsupported_family() {
        let err = concentration_audit(&AuditConfig {
            family: Family::Cycle,
            n: 50,
            m: 50,
            d: 2,
            seeds: 1,
        });
        assert!(matches!(err, Err(HarnessError::InvalidConfig(_))));
    }

    #[test]
    fn crossover_reports_first_winning_point() {
        let mk = |m: u64, q: u64, c: u64| {
            let point = matching_point(4 * m as u32, m, 0, Algorithm::LearnMatching);
            let base = SweepRow {
                point,
                trials: 1,
                status: "ok".into(),
                exact_rate: 1.0,
                classical_mean: 0.0,
                classical_median: 0,
                classical_max: 0,
                quantum_mean: 0.0,
                quantum_median: 0,
                quantum_max: 0,
                part_overflow_rate: 0.0,
                pair_overflow_rate: 0.0,
            };
            (
                SweepRow {
                    quantum_median: q,
                    ..base.clone()
                },
                SweepRow {
                    classical_median: c,
                    ..base
                },
            )
        };
        let (q1, c1) = mk(64, 400, 100);
        let (q2, c2) = mk(256, 900, 800);
        let (q3, c3) = mk(1024, 2000, 3000);
        assert_eq!(
            speedup_crossover(&[q1.clone(), q2.clone(), q3], &[c1.clone(), c2, c3.clone()]),
            Some(1024)
        );
        assert_eq!(speedup_crossover(&[q1, q2], &[c1, c3]), None);
    }

    #[test]
    fn three_point_sweep_has_monotone_quantum_medians() {
        let grid: Vec<TrialConfig> = [(256u32, 64u64), (1024, 256), (4096, 1024)]
            .into_iter()
            .map(|(n, m)| matching_point(n, m, 0, Algorithm::LearnMatching))
            .collect();
        let rows = sweep(&grid, 5);
        assert!(rows[0].quantum_median <= rows[1].quantum_median);
        assert!(rows[1].quantum_median <= rows[2].quantum_median);
    }
}
