//! Browser demo: run single learner trials, sweep the query-count scaling
//! curve, and draw the hidden graph against what the learner recovered —
//! all in-page via wasm-bindgen, no framework.
//!
//! The same functions compile natively so the workspace test suite covers
//! them without a wasm toolchain.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use orq::cgt::CostModel;
use orq::fit::fit_scaling;
use orq::harness::{run_trial, sweep, Algorithm, Family, TrialConfig};
use orq::plot::{scatter_loglog_svg, PlotConfig};
use orq::quantum::{find_edges, learn_matching, LearnOpts};
use orq::rng::mix;

fn into_js<T>(result: Result<T, String>) -> Result<T, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    family: &str,
    n: u32,
    m: u64,
    d: u32,
    algorithm: &str,
    cost_model: &str,
    const_scale: f64,
    seed: u64,
) -> Result<TrialConfig, String> {
    let family: Family = family.parse()?;
    let algorithm: Algorithm = algorithm.parse()?;
    Ok(TrialConfig {
        family,
        n,
        m,
        d,
        model: CostModel {
            kind: cost_model.parse()?,
            scale: 1.0,
        },
        const_scale,
        seed,
        algorithm,
    })
}

/// Runs one trial and returns the key=value report record.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn trial_report(
    family: &str,
    n: u32,
    m: u64,
    d: u32,
    algorithm: &str,
    cost_model: &str,
    const_scale: f64,
    seed: u64,
) -> Result<String, JsValue> {
    into_js(trial_report_impl(
        family,
        n,
        m,
        d,
        algorithm,
        cost_model,
        const_scale,
        seed,
    ))
}

#[allow(clippy::too_many_arguments)]
fn trial_report_impl(
    family: &str,
    n: u32,
    m: u64,
    d: u32,
    algorithm: &str,
    cost_model: &str,
    const_scale: f64,
    seed: u64,
) -> Result<String, String> {
    let config = build_config(family, n, m, d, algorithm, cost_model, const_scale, seed)?;
    let report = run_trial(&config).map_err(|e| e.to_string())?;
    Ok(report.to_kv_canonical())
}

/// Sweeps a family over a comma-separated list of `m` values with
/// `n = n_factor * m`, fits the power law to the median query count, and
/// returns a standalone SVG.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn scaling_plot(
    family: &str,
    algorithm: &str,
    cost_model: &str,
    m_list: &str,
    n_factor: u32,
    d: u32,
    trials: u32,
    base_seed: u64,
) -> Result<String, JsValue> {
    into_js(scaling_plot_impl(
        family, algorithm, cost_model, m_list, n_factor, d, trials, base_seed,
    ))
}

#[allow(clippy::too_many_arguments)]
fn scaling_plot_impl(
    family: &str,
    algorithm: &str,
    cost_model: &str,
    m_list: &str,
    n_factor: u32,
    d: u32,
    trials: u32,
    base_seed: u64,
) -> Result<String, String> {
    let ms: Vec<u64> = m_list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad m value {s:?}"))
        })
        .collect::<Result<_, _>>()?;
    if ms.len() < 3 {
        return Err("need at least 3 m values for a fit".to_string());
    }
    let grid: Vec<TrialConfig> = ms
        .iter()
        .map(|&m| {
            build_config(
                family,
                n_factor * m as u32,
                m,
                d,
                algorithm,
                cost_model,
                1.0,
                base_seed,
            )
        })
        .collect::<Result<_, String>>()?;
    let rows = sweep(&grid, trials.max(1));
    if let Some(bad) = rows.iter().find(|r| r.status != "ok") {
        return Err(format!(
            "grid point m={} failed: {}",
            bad.point.m, bad.status
        ));
    }
    let algorithm: Algorithm = algorithm.parse()?;
    let xs: Vec<f64> = ms.iter().map(|&m| m as f64).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| {
            if algorithm == Algorithm::ClassicalOnly {
                r.classical_median as f64
            } else {
                r.quantum_median as f64
            }
        })
        .collect();
    let fit = fit_scaling(&xs, &ys).map_err(|e| e.to_string())?;
    let cfg = PlotConfig {
        title: format!("{} on {}, median queries vs m", algorithm.as_str(), family),
        x_label: "m".into(),
        y_label: "median queries".into(),
        ..Default::default()
    };
    Ok(scatter_loglog_svg(&xs, &ys, Some(&fit), &cfg))
}

/// Draws the hidden graph on a circle with the learner's answer overlaid:
/// recovered edges solid blue, spurious extras dashed red, missed edges
/// (which the one-sided learners never produce) orange.
#[wasm_bindgen]
pub fn trial_graph_svg(
    family: &str,
    n: u32,
    m: u64,
    d: u32,
    algorithm: &str,
    cost_model: &str,
    seed: u64,
) -> Result<String, JsValue> {
    into_js(trial_graph_svg_impl(
        family, n, m, d, algorithm, cost_model, seed,
    ))
}

fn trial_graph_svg_impl(
    family: &str,
    n: u32,
    m: u64,
    d: u32,
    algorithm: &str,
    cost_model: &str,
    seed: u64,
) -> Result<String, String> {
    let config = build_config(family, n, m, d, algorithm, cost_model, 1.0, seed)?;
    if n > 600 {
        return Err("keep n at or below 600 for the picture".to_string());
    }
    let graph = config.generate_graph().map_err(|e| e.to_string())?;
    let truth = graph.edges().clone();
    let m_actual = graph.edge_count() as u64;
    let d_promise = graph.d_max().max(1);
    let opts = LearnOpts {
        model: config.model,
        const_scale: 1.0,
    };
    let learner_seed = mix(seed, 0x006c_6561_726e);

    let mut oracle = orq::OrOracle::new(graph);
    let outcome = match config.algorithm {
        Algorithm::LearnMatching => learn_matching(&mut oracle, m_actual, &opts, learner_seed),
        _ => find_edges(&mut oracle, m_actual, d_promise, &opts, learner_seed),
    };
    let counters = oracle.snapshot();

    let size = 560.0;
    let center = size / 2.0;
    let radius = center - 30.0;
    let pos = |v: u32| {
        let angle = std::f64::consts::TAU * f64::from(v) / f64::from(n.max(1));
        (center + radius * angle.cos(), center + radius * angle.sin())
    };

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    );
    for e in &outcome.edges {
        let (a, b) = e.endpoints();
        let (x1, y1) = pos(a);
        let (x2, y2) = pos(b);
        let style = if truth.contains(e) {
            "stroke=\"#2266aa\" stroke-width=\"1.2\""
        } else {
            "stroke=\"#cc3333\" stroke-width=\"1.6\" stroke-dasharray=\"4 3\""
        };
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" {style}/>"
        );
    }
    for e in truth.difference(&outcome.edges) {
        let (a, b) = e.endpoints();
        let (x1, y1) = pos(a);
        let (x2, y2) = pos(b);
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
             stroke=\"#e69500\" stroke-width=\"2\"/>"
        );
    }
    for v in 0..n {
        let (x, y) = pos(v);
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"2\" fill=\"#333\"/>"
        );
    }
    let exact = outcome.edges == truth;
    let _ = writeln!(
        svg,
        "<text x=\"12\" y=\"20\">exact={exact}, edges {}/{m_actual}, classical {}, quantum {}</text>",
        outcome.edges.len(),
        counters.classical,
        counters.quantum
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
