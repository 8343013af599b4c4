//! Text renderers for experiment results: CSV tables and self-contained SVG
//! line charts. Everything here is pure string building with fixed numeric
//! formatting, so repeated renders of the same data are byte-identical.

use super::population::AgentRecord;
use super::{SweepAxis, SweepRow};
use std::fmt::Write;

/// Formats with exactly `digits` significant digits in scientific notation.
pub fn fmt_sig(value: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), value)
}

/// The sweep table: one header row, one row per step, 12 significant digits.
pub fn sweep_csv(axis: SweepAxis, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{},eu_energy,eu_utility,ptfixed_energy,ptfixed_utility,ptweighted_energy,ptweighted_utility",
        axis.name()
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_sig(row.axis_value, 12),
            fmt_sig(row.eu_energy, 12),
            fmt_sig(row.eu_utility, 12),
            fmt_sig(row.ptfixed_energy, 12),
            fmt_sig(row.ptfixed_utility, 12),
            fmt_sig(row.ptweighted_energy, 12),
            fmt_sig(row.ptweighted_utility, 12),
        );
    }
    out
}

/// The per-agent table of a population run, at full round-trip precision.
pub fn agents_csv(agents: &[AgentRecord]) -> String {
    let mut out = String::from(
        "agent,beta,lambda,t,eu_energy,eu_utility,eu_regime,ptfixed_energy,ptfixed_utility,ptfixed_regime,ptweighted_energy,ptweighted_utility,ptweighted_regime\n",
    );
    for a in agents {
        let d = &a.decisions;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            a.index,
            a.beta,
            a.lambda,
            a.t,
            d.eu.energy,
            d.eu.utility,
            d.eu.regime,
            d.fixed.energy,
            d.fixed.utility,
            d.fixed.regime,
            d.weighted.energy,
            d.weighted.utility,
            d.weighted.regime,
        );
    }
    out
}

/// Which side of a sweep row a chart plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    Energy,
    Utility,
}

impl ChartKind {
    fn y_label(&self) -> &'static str {
        match self {
            ChartKind::Energy => "energy",
            ChartKind::Utility => "utility",
        }
    }

    fn title(&self) -> &'static str {
        match self {
            ChartKind::Energy => "optimal energy consumption",
            ChartKind::Utility => "utility at the optimum",
        }
    }

    fn series(&self, row: &SweepRow) -> [f64; 3] {
        match self {
            ChartKind::Energy => [row.eu_energy, row.ptfixed_energy, row.ptweighted_energy],
            ChartKind::Utility => [row.eu_utility, row.ptfixed_utility, row.ptweighted_utility],
        }
    }
}

const SERIES_LABELS: [&str; 3] = ["expected utility", "prospect fixed ref", "prospect weighted ref"];
const SERIES_COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const PLOT_LEFT: f64 = 80.0;
const PLOT_RIGHT: f64 = 620.0;
const PLOT_TOP: f64 = 50.0;
const PLOT_BOTTOM: f64 = 540.0;

/// A fixed 800x600 line chart of one sweep side: three labeled series over
/// the axis values, with a legend block on the right.
pub fn sweep_svg(axis: SweepAxis, rows: &[SweepRow], kind: ChartKind) -> String {
    let xs: Vec<f64> = rows.iter().map(|r| r.axis_value).collect();
    let series: Vec<Vec<f64>> = (0..3)
        .map(|k| rows.iter().map(|r| kind.series(r)[k]).collect())
        .collect();

    let (x_min, x_max) = padded_range(&xs, 0.0);
    let all_y: Vec<f64> = series.iter().flatten().copied().collect();
    let (y_min, y_max) = padded_range(&all_y, 0.05);

    let x_of = |v: f64| PLOT_LEFT + (v - x_min) / (x_max - x_min) * (PLOT_RIGHT - PLOT_LEFT);
    let y_of = |v: f64| PLOT_BOTTOM - (v - y_min) / (y_max - y_min) * (PLOT_BOTTOM - PLOT_TOP);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="28" font-family="sans-serif" font-size="18" text-anchor="middle">{}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        kind.title()
    );

    // gridlines and ticks
    for i in 0..=5 {
        let fx = i as f64 / 5.0;
        let xv = x_min + fx * (x_max - x_min);
        let x = x_of(xv);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{PLOT_TOP}" x2="{x:.2}" y2="{PLOT_BOTTOM}" stroke="#dddddd" stroke-width="1"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            PLOT_BOTTOM + 18.0,
            tick_label(xv)
        );
        let yv = y_min + fx * (y_max - y_min);
        let y = y_of(yv);
        let _ = writeln!(
            svg,
            r##"<line x1="{PLOT_LEFT}" y1="{y:.2}" x2="{PLOT_RIGHT}" y2="{y:.2}" stroke="#dddddd" stroke-width="1"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            PLOT_LEFT - 8.0,
            y + 4.0,
            tick_label(yv)
        );
    }

    // axes
    let _ = writeln!(
        svg,
        r##"<line x1="{PLOT_LEFT}" y1="{PLOT_BOTTOM}" x2="{PLOT_RIGHT}" y2="{PLOT_BOTTOM}" stroke="#000000" stroke-width="1.5"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{PLOT_LEFT}" y1="{PLOT_TOP}" x2="{PLOT_LEFT}" y2="{PLOT_BOTTOM}" stroke="#000000" stroke-width="1.5"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        PLOT_BOTTOM + 42.0,
        axis.name()
    );
    let _ = writeln!(
        svg,
        r#"<text x="22" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 22 {:.2})">{}</text>"#,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        kind.y_label()
    );

    // series
    for (k, ys) in series.iter().enumerate() {
        let mut points = String::new();
        for (x, y) in xs.iter().zip(ys) {
            let _ = write!(points, "{:.2},{:.2} ", x_of(*x), y_of(*y));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            SERIES_COLORS[k],
            points.trim_end()
        );
    }

    // legend
    for (k, label) in SERIES_LABELS.iter().enumerate() {
        let y = PLOT_TOP + 20.0 + 24.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"/>"#,
            PLOT_RIGHT + 12.0,
            PLOT_RIGHT + 40.0,
            SERIES_COLORS[k]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            PLOT_RIGHT + 46.0,
            y + 4.0,
            label
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn padded_range(values: &[f64], pad_fraction: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = (hi - lo) * pad_fraction;
    (lo - pad, hi + pad)
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}
