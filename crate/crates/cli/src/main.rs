//! `orq` — generate hidden graphs, run OR-query learners against them, and
//! drive sweeps, audits, and plots from the command line.
//!
//! Exit codes: 0 success, 2 invalid config, 3 infeasible instance,
//! 4 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orq::cgt::{CostKind, CostModel};
use orq::families;
use orq::graph::{Graph, GraphError};
use orq::harness::{
    audit_csv, concentration_audit, expand_grid, run_kv, run_on_graph, sweep, sweep_csv, Algorithm,
    AuditConfig, Family, GridSpec,
};

mod config;

const EXIT_INVALID_CONFIG: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "orq", about = "Hidden-graph learning with OR queries", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hidden graph and write it in the text format.
    Gen {
        /// matching | cycle | bounded_degree | star | clique | clique_pair
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Edge count (clique: member count; ignored by cycle, clique_pair).
        #[arg(long, default_value_t = 0)]
        m: u64,
        /// Degree cap, bounded_degree only.
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a learner against a graph file and write a key=value report.
    Learn {
        #[arg(long)]
        graph: PathBuf,
        /// find_edges | learn_matching | classical_only
        #[arg(long)]
        algorithm: Algorithm,
        /// belovs | ambainis_montanaro | montanaro_shao
        #[arg(long, default_value = "belovs")]
        cost_model: CostKind,
        #[arg(long, default_value_t = 1.0)]
        cost_scale: f64,
        #[arg(long, default_value_t = 1.0)]
        const_scale: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        report: PathBuf,
    },
    /// Run a sweep described by a TOML config and write CSV.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure partition concentration overflow rates and write CSV.
    Audit {
        /// matching | bounded_degree
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Log-log scatter + power-law fit from a CSV produced by `experiment`.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Maps an error chain onto the documented exit codes.
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(g) = cause.downcast_ref::<GraphError>() {
            return match g {
                GraphError::Infeasible(_) | GraphError::SamplerExhausted { .. } => EXIT_INFEASIBLE,
                GraphError::Io(_) => EXIT_IO,
                _ => EXIT_INVALID_CONFIG,
            };
        }
        if let Some(h) = cause.downcast_ref::<orq::harness::HarnessError>() {
            return match h {
                orq::harness::HarnessError::Graph(GraphError::Infeasible(_))
                | orq::harness::HarnessError::Graph(GraphError::SamplerExhausted { .. }) => {
                    EXIT_INFEASIBLE
                }
                orq::harness::HarnessError::Graph(GraphError::Io(_)) => EXIT_IO,
                _ => EXIT_INVALID_CONFIG,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_INVALID_CONFIG
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen {
            family,
            n,
            m,
            d,
            seed,
            out,
        } => {
            let graph = match family {
                Family::Matching => families::gen_matching(n, m as usize, seed)?,
                Family::Cycle => families::gen_cycle(n, seed)?,
                Family::BoundedDegree => families::gen_bounded_degree(n, m as usize, d, seed)?,
                Family::Star => families::gen_star(n, m as usize, seed)?,
                Family::Clique => families::gen_clique(n, m as u32, seed)?,
                Family::CliquePair => families::gen_clique_pair(n, seed)?,
            };
            graph.write_to_path(&out)?;
            println!(
                "wrote {} ({} vertices, {} edges, max degree {})",
                out.display(),
                graph.n(),
                graph.edge_count(),
                graph.d_max()
            );
            Ok(())
        }
        Command::Learn {
            graph,
            algorithm,
            cost_model,
            cost_scale,
            const_scale,
            seed,
            report,
        } => {
            if cost_scale <= 0.0 || const_scale <= 0.0 {
                anyhow::bail!("cost_scale and const_scale must be positive");
            }
            let parsed = Graph::read_from_path(&graph)?;
            let model = CostModel {
                kind: cost_model,
                scale: cost_scale,
            };
            let (n, m, d) = (
                parsed.graph.n(),
                parsed.graph.edge_count(),
                parsed.promised_d_max,
            );
            let run = run_on_graph(parsed.graph, d.max(1), algorithm, model, const_scale, seed);

            let mut record = String::new();
            let _ = writeln!(record, "graph={}", graph.display());
            let _ = writeln!(record, "algorithm={}", algorithm.as_str());
            let _ = writeln!(record, "cost_model={}", cost_model.as_str());
            let _ = writeln!(record, "cost_scale={cost_scale}");
            let _ = writeln!(record, "const_scale={const_scale}");
            let _ = writeln!(record, "n={n}");
            let _ = writeln!(record, "m={m}");
            let _ = writeln!(record, "d={d}");
            let _ = writeln!(record, "seed={seed}");
            record.push_str(&run_kv(&run));
            let _ = writeln!(record, "elapsed_ms={:.3}", run.elapsed_ms);
            write_text(&report, &record)?;
            println!(
                "learned {} edges (exact={}) with {} classical / {} charged quantum queries",
                run.learned_edges, run.exact, run.classical_queries, run.quantum_charged
            );
            Ok(())
        }
        Command::Experiment { config, out } => {
            let text = std::fs::read_to_string(&config)?;
            let spec: GridSpec = config::parse_experiment(&text)?;
            let trials = spec.trials_per_point;
            let grid = expand_grid(&spec)?;
            let rows = sweep(&grid, trials);
            write_text(&out, &sweep_csv(&rows))?;
            println!(
                "wrote {} ({} grid points, {trials} trials each)",
                out.display(),
                rows.len()
            );
            Ok(())
        }
        Command::Audit {
            family,
            n,
            m,
            d,
            seeds,
            out,
        } => {
            let summary = concentration_audit(&AuditConfig {
                family,
                n,
                m,
                d,
                seeds,
            })?;
            write_text(&out, &audit_csv(&[summary]))?;
            println!(
                "part overflow rate {:.4}, pair overflow rate {:.4} over {seeds} seeds",
                summary.part_overflow_rate, summary.pair_overflow_rate
            );
            Ok(())
        }
        Command::Plot { input, x, y, out } => {
            let (xs, ys) = read_columns(&input, &x, &y)?;
            let fit = orq::fit::fit_scaling(&xs, &ys)?;
            let cfg = orq::plot::PlotConfig {
                title: format!("{y} vs {x}"),
                x_label: x,
                y_label: y,
                ..Default::default()
            };
            write_text(
                &out,
                &orq::plot::scatter_loglog_svg(&xs, &ys, Some(&fit), &cfg),
            )?;
            println!(
                "slope={:.4} intercept={:.4} r2={:.4}",
                fit.slope, fit.intercept, fit.r_squared
            );
            Ok(())
        }
    }
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text)
        .map_err(|e| anyhow::Error::new(e).context(format!("writing {}", path.display())))
}

/// Pulls two numeric columns out of a CSV, skipping rows flagged non-ok.
fn read_columns(path: &Path, x: &str, y: &str) -> anyhow::Result<(Vec<f64>, Vec<f64>)> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| anyhow::Error::new(e).context(format!("reading {}", path.display())))?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| anyhow::anyhow!("column {name:?} not found in {}", path.display()))
    };
    let (xi, yi) = (find(x)?, find(y)?);
    let status = headers.iter().position(|h| h == "status");

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in reader.records() {
        let record = record?;
        if let Some(si) = status {
            if record.get(si) != Some("ok") {
                continue;
            }
        }
        let parse = |i: usize, name: &str| -> anyhow::Result<f64> {
            record
                .get(i)
                .ok_or_else(|| anyhow::anyhow!("short row in {}", path.display()))?
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("column {name:?} is not numeric"))
        };
        xs.push(parse(xi, x)?);
        ys.push(parse(yi, y)?);
    }
    Ok((xs, ys))
}
