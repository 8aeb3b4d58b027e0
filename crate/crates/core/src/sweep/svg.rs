//! Minimal SVG line charts.

use std::fmt::Write;

use crate::error::{Error, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotLabels {
    pub title: String,
    pub x: String,
    pub y: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Step of 1, 2 or 5 × 10^k giving roughly `target` intervals over `span`.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    step: f64,
}

impl Axis {
    fn fit(min: f64, max: f64) -> Self {
        let (min, max) = if max > min {
            (min, max)
        } else {
            let pad = if min == 0.0 { 1.0 } else { min.abs() * 0.1 };
            (min - pad, max + pad)
        };
        let step = nice_step(max - min, 6.0);
        Axis {
            lo: (min / step).floor() * step,
            hi: (max / step).ceil() * step,
            step,
        }
    }

    fn ticks(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step).round() as i64;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }

    fn label(&self, v: f64) -> String {
        let v = if v.abs() < self.step * 1e-9 { 0.0 } else { v };
        let big = self.lo.abs().max(self.hi.abs());
        if big >= 1e5 || self.step < 1e-3 {
            format!("{v:e}")
        } else {
            let decimals = (-self.step.log10().floor()).max(0.0) as usize;
            format!("{v:.decimals$}")
        }
    }
}

/// Renders one polyline per series with linear axes and a legend.
pub fn emit_svg_plot(series: &[Series], labels: &PlotLabels) -> Result<String> {
    if series.is_empty() {
        return Err(Error::InvalidSeries("no series to plot".into()));
    }
    for s in series {
        if s.points.len() < 2 {
            return Err(Error::InvalidSeries(format!(
                "series `{}` has {} point(s), need at least 2",
                s.name,
                s.points.len()
            )));
        }
        if s.points
            .iter()
            .any(|(x, y)| !(x.is_finite() && y.is_finite()))
        {
            return Err(Error::InvalidSeries(format!(
                "series `{}` has a non-finite point",
                s.name
            )));
        }
    }

    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let xa = Axis::fit(xmin, xmax);
    let ya = Axis::fit(ymin, ymax);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - xa.lo) / (xa.hi - xa.lo) * plot_w;
    let py = |y: f64| TOP + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h;

    let mut svg = String::new();
    // write! into a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(&labels.title)
    );

    let _ = writeln!(svg, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for t in xa.ticks() {
        let x = px(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
            TOP + plot_h
        );
    }
    for t in ya.ticks() {
        let y = py(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#,
            LEFT + plot_w
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    for t in xa.ticks() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(t),
            TOP + plot_h + 18.0,
            xa.label(t)
        );
    }
    for t in ya.ticks() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            LEFT - 6.0,
            py(t),
            ya.label(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0,
        escape(&labels.x)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&labels.y)
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
    }

    let _ = writeln!(svg, r#"<g class="legend">"#);
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = TOP + 10.0 + 20.0 * i as f64;
        let x = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3"/>"#,
            x + 25.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{y:.2}" dominant-baseline="middle">{}</text>"#,
            x + 32.0,
            escape(&s.name)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> PlotLabels {
        PlotLabels {
            title: "Q vs range".into(),
            x: "Link range (km)".into(),
            y: "Q-factor".into(),
        }
    }

    #[test]
    fn one_series_one_polyline() {
        let svg = emit_svg_plot(
            &[Series::new("NRZ", vec![(1.0, 2.0), (2.0, 3.0)])],
            &labels(),
        )
        .unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let pts = svg
            .split(r#"points=""#)
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        assert_eq!(pts.split(' ').count(), 2);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn five_series_five_legend_entries() {
        let series: Vec<Series> = ["NRZ", "RZ", "CSRZ", "MODB", "MDRZ"]
            .iter()
            .enumerate()
            .map(|(i, n)| Series::new(*n, vec![(0.0, i as f64), (1.0, 2.0 * i as f64), (2.0, 1.0)]))
            .collect();
        let svg = emit_svg_plot(&series, &labels()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 5);
        let legend = svg.split(r#"<g class="legend">"#).nth(1).unwrap();
        assert_eq!(legend.matches("<text").count(), 5);
        let strokes: std::collections::HashSet<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<polyline"))
            .map(|l| {
                l.split("stroke=\"")
                    .nth(1)
                    .unwrap()
                    .split('"')
                    .next()
                    .unwrap()
            })
            .collect();
        assert_eq!(strokes.len(), 5);
    }

    #[test]
    fn deterministic_output() {
        let s = vec![Series::new(
            "a",
            vec![(1e9, -25.66), (2e9, -20.0), (3e9, -21.5)],
        )];
        assert_eq!(
            emit_svg_plot(&s, &labels()).unwrap(),
            emit_svg_plot(&s, &labels()).unwrap()
        );
    }

    #[test]
    fn names_are_escaped() {
        let svg = emit_svg_plot(
            &[Series::new("a<b&c", vec![(0.0, 0.0), (1.0, 1.0)])],
            &labels(),
        )
        .unwrap();
        assert!(svg.contains("a&lt;b&amp;c"));
    }

    #[test]
    fn flat_series_still_renders() {
        let svg = emit_svg_plot(
            &[Series::new("flat", vec![(0.0, 5.0), (1.0, 5.0)])],
            &labels(),
        )
        .unwrap();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn invalid_series_rejected() {
        assert!(matches!(
            emit_svg_plot(&[], &labels()),
            Err(Error::InvalidSeries(_))
        ));
        assert!(emit_svg_plot(&[Series::new("x", vec![(0.0, 1.0)])], &labels()).is_err());
        assert!(emit_svg_plot(
            &[Series::new("x", vec![(0.0, 1.0), (1.0, f64::NAN)])],
            &labels()
        )
        .is_err());
    }

    #[test]
    fn nice_steps() {
        assert_eq!(nice_step(10.0, 5.0), 2.0);
        assert_eq!(nice_step(9.0, 6.0), 2.0);
        assert_eq!(nice_step(0.3, 6.0), 0.05);
    }
}
