//! Minimal self-contained SVG line charts for simulation traces.

use std::fmt::Write as _;

use crate::sim::TraceRow;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;
const MAX_POINTS: usize = 1000;
const COLORS: [&str; 4] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"];

struct Panel<'a> {
    title: &'a str,
    top: f64,
    height: f64,
    series: Vec<(&'a str, Vec<(f64, f64)>)>,
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn draw_panel(out: &mut String, p: &Panel<'_>, t_range: (f64, f64)) {
    let plot_w = WIDTH - 2.0 * MARGIN;
    let (y_lo, y_hi) = range(
        p.series
            .iter()
            .flat_map(|(_, pts)| pts.iter().map(|&(_, y)| y)),
    );
    let sx = |t: f64| MARGIN + (t - t_range.0) / (t_range.1 - t_range.0) * plot_w;
    let sy = |y: f64| p.top + p.height - (y - y_lo) / (y_hi - y_lo) * p.height;

    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{:.1}" width="{plot_w:.1}" height="{:.1}" fill="none" stroke="#888"/>"##,
        p.top, p.height
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.1}" font-size="13">{}</text>"#,
        p.top - 6.0,
        p.title
    );
    let _ = writeln!(
        out,
        r#"<text x="4" y="{:.1}" font-size="10">{:.3e}</text><text x="4" y="{:.1}" font-size="10">{:.3e}</text>"#,
        p.top + 10.0,
        y_hi,
        p.top + p.height,
        y_lo
    );
    for (i, (label, pts)) in p.series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut path = String::new();
        for &(t, y) in pts.iter().filter(|(_, y)| y.is_finite()) {
            let _ = write!(path, "{:.2},{:.2} ", sx(t), sy(y));
        }
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
            path.trim_end()
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" fill="{color}">{label}</text>"#,
            WIDTH - MARGIN - 90.0,
            p.top + 14.0 + 13.0 * i as f64
        );
    }
}

/// Positions (top) and torques (bottom) against time, 800×480.
pub fn render_trace(title: &str, rows: &[TraceRow]) -> String {
    let stride = (rows.len() / MAX_POINTS).max(1);
    let sampled: Vec<&TraceRow> = rows.iter().step_by(stride).collect();
    let series = |f: fn(&TraceRow) -> f64| sampled.iter().map(|r| (r.t, f(r))).collect::<Vec<_>>();
    let t_range = range(sampled.iter().map(|r| r.t));

    let panel_h = (HEIGHT - 3.0 * MARGIN) / 2.0;
    let panels = [
        Panel {
            title: "position",
            top: MARGIN,
            height: panel_h,
            series: vec![
                ("x", series(|r| r.x)),
                ("y", series(|r| r.y)),
                ("xd", series(|r| r.xd)),
                ("yd", series(|r| r.yd)),
            ],
        },
        Panel {
            title: "torque",
            top: 2.0 * MARGIN + panel_h,
            height: panel_h,
            series: vec![
                ("taux", series(|r| r.taux)),
                ("tauy", series(|r| r.tauy)),
                ("taux_oracle", series(|r| r.taux_oracle)),
                ("tauy_oracle", series(|r| r.tauy_oracle)),
            ],
        },
    ];

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="20" font-size="15">{title}</text>"#
    );
    for p in &panels {
        draw_panel(&mut out, p, t_range);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fixed_viewport() {
        let rows: Vec<TraceRow> = (0..50)
            .map(|i| {
                let t = i as f64 * 0.1;
                TraceRow {
                    t,
                    x: t.sin(),
                    y: t.cos(),
                    xdot: 0.0,
                    ydot: 0.0,
                    xd: t.sin(),
                    yd: t.cos(),
                    fex: 0.0,
                    fey: 0.0,
                    taux: t,
                    tauy: -t,
                    taux_oracle: t,
                    tauy_oracle: -t,
                }
            })
            .collect();
        let svg = render_trace("demo", &rows);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"viewBox="0 0 800 480""#));
        assert_eq!(svg.matches("<polyline").count(), 8);
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
