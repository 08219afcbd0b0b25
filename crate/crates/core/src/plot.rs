//! Self-contained SVG log-log scatter plots with an optional fitted line.
//!
//! No plotting dependency: the output is a single standalone SVG document.

use crate::fit::FitResult;

#[derive(Clone, Debug)]
pub struct PlotConfig {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotConfig {
    fn default() -> Self {
        PlotConfig {
            title: String::new(),
            x_label: "x".into(),
            y_label: "y".into(),
            width: 640,
            height: 480,
        }
    }
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

/// Renders strictly positive data as a log-log scatter, plus the fitted
/// power law when given.
pub fn scatter_loglog_svg(
    xs: &[f64],
    ys: &[f64],
    fit: Option<&FitResult>,
    cfg: &PlotConfig,
) -> String {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty(), "nothing to plot");
    assert!(
        xs.iter().chain(ys).all(|&v| v > 0.0),
        "log-log plot needs positive data"
    );

    let (w, h) = (f64::from(cfg.width), f64::from(cfg.height));
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;

    let pad = |lo: f64, hi: f64| {
        let span = (hi - lo).max(1e-9);
        (lo - 0.05 * span, hi + 0.05 * span)
    };
    let (lx_min, lx_max) = pad(
        xs.iter().copied().fold(f64::INFINITY, f64::min).log10(),
        xs.iter().copied().fold(f64::NEG_INFINITY, f64::max).log10(),
    );
    let (ly_min, ly_max) = pad(
        ys.iter().copied().fold(f64::INFINITY, f64::min).log10(),
        ys.iter().copied().fold(f64::NEG_INFINITY, f64::max).log10(),
    );

    let sx = |x: f64| MARGIN_LEFT + (x.log10() - lx_min) / (lx_max - lx_min) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (ly_max - y.log10()) / (ly_max - ly_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        cfg.width, cfg.height, cfg.width, cfg.height
    ));
    svg.push_str(&format!(
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        cfg.width, cfg.height
    ));
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));
    if !cfg.title.is_empty() {
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
            MARGIN_LEFT + plot_w / 2.0,
            escape(&cfg.title)
        ));
    }

    // Decade grid lines with 2x and 5x minors.
    for exp in lx_min.floor() as i32..=lx_max.ceil() as i32 {
        for mantissa in [1.0, 2.0, 5.0] {
            let value = mantissa * 10f64.powi(exp);
            let lv = value.log10();
            if lv < lx_min || lv > lx_max {
                continue;
            }
            let x = sx(value);
            let major = mantissa == 1.0;
            svg.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{MARGIN_TOP}\" x2=\"{x:.1}\" y2=\"{:.1}\" \
                 stroke=\"#ddd\" stroke-width=\"{}\"/>\n",
                MARGIN_TOP + plot_h,
                if major { 1.0 } else { 0.5 }
            ));
            if major {
                svg.push_str(&format!(
                    "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">1e{exp}</text>\n",
                    MARGIN_TOP + plot_h + 16.0
                ));
            }
        }
    }
    for exp in ly_min.floor() as i32..=ly_max.ceil() as i32 {
        for mantissa in [1.0, 2.0, 5.0] {
            let value = mantissa * 10f64.powi(exp);
            let lv = value.log10();
            if lv < ly_min || lv > ly_max {
                continue;
            }
            let y = sy(value);
            let major = mantissa == 1.0;
            svg.push_str(&format!(
                "<line x1=\"{MARGIN_LEFT}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
                 stroke=\"#ddd\" stroke-width=\"{}\"/>\n",
                MARGIN_LEFT + plot_w,
                if major { 1.0 } else { 0.5 }
            ));
            if major {
                svg.push_str(&format!(
                    "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">1e{exp}</text>\n",
                    MARGIN_LEFT - 6.0,
                    y + 4.0
                ));
            }
        }
    }

    // Fitted line across the x range.
    if let Some(fit) = fit {
        let x0 = 10f64.powf(lx_min);
        let x1 = 10f64.powf(lx_max);
        let y_at = |x: f64| (fit.intercept + fit.slope * x.ln()).exp();
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
             stroke=\"#c33\" stroke-width=\"1.5\"/>\n",
            sx(x0),
            sy(y_at(x0).clamp(10f64.powf(ly_min), 10f64.powf(ly_max))),
            sx(x1),
            sy(y_at(x1).clamp(10f64.powf(ly_min), 10f64.powf(ly_max))),
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" fill=\"#c33\">slope {:.3} (r2 {:.3})</text>\n",
            MARGIN_LEFT + 8.0,
            MARGIN_TOP + 16.0,
            fit.slope,
            fit.r_squared
        ));
    }

    for (&x, &y) in xs.iter().zip(ys) {
        svg.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"#2266aa\" \
             fill-opacity=\"0.8\"/>\n",
            sx(x),
            sy(y)
        ));
    }

    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        h - 12.0,
        escape(&cfg.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {:.1})\">{}</text>\n",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&cfg.y_label)
    ));
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::fit_scaling;

    #[test]
    fn produces_wellformed_svg_with_fit_line() {
        let xs = [64.0f64, 128.0, 256.0, 512.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.sqrt()).collect();
        let fit = fit_scaling(&xs, &ys).unwrap();
        let svg = scatter_loglog_svg(&xs, &ys, Some(&fit), &PlotConfig::default());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains("slope 0.500"));
    }

    #[test]
    fn is_deterministic() {
        let xs = [1.0, 10.0, 100.0];
        let ys = [2.0, 20.0, 200.0];
        let a = scatter_loglog_svg(&xs, &ys, None, &PlotConfig::default());
        let b = scatter_loglog_svg(&xs, &ys, None, &PlotConfig::default());
        assert_eq!(a, b);
    }

    #[test]
    #[should_panic(expected = "positive")]
    fn rejects_nonpositive_data() {
        scatter_loglog_svg(&[1.0, 0.0], &[1.0, 1.0], None, &PlotConfig::default());
    }
}
