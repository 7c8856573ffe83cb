//! SVG rendering of answer regions in the time × distance plane.

use std::fmt::Write;

use crate::interval::{Interval, TimeMode};
use crate::repr::{CTuple, ReprKind};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 48.0;
const FILL: [&str; 6] = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2"];

/// Renders `tuples` (all for one node pair) as SVG.
///
/// Discrete answers are drawn in cell space: the point `(t, d)` is the unit
/// square centred on it, and every shape is grown by half a unit. The
/// visible area is `τ_G` by the observed distances, padded by one unit.
pub fn render_svg(tuples: &[CTuple], domain: &Interval, mode: TimeMode, kind: ReprKind, title: &str) -> String {
    let half = if mode.is_discrete() { 0.5 } else { 0.0 };
    let (mut dmin, mut dmax) = (0.0f64, 0.0f64);
    for c in tuples {
        dmin = dmin.min(c.delta.lo().to_f64());
        dmax = dmax.max(c.delta.hi().to_f64());
    }
    let xmin = domain.lo().to_f64() - 1.0;
    let xmax = domain.hi().to_f64() + 1.0;
    let (ymin, ymax) = (dmin - 1.0, dmax + 1.0);
    let width = (xmax - xmin) * UNIT + 2.0 * MARGIN;
    let height = (ymax - ymin) * UNIT + 2.0 * MARGIN;
    let px = |x: f64| (x - xmin) * UNIT + MARGIN;
    let py = |y: f64| (ymax - y) * UNIT + MARGIN;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.1} {height:.1}" width="{width:.0}" height="{height:.0}">"#
    );
    let _ = writeln!(svg, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#);

    // axes through d = 0 and t = b_{τ_G}
    let x0 = px(xmin);
    let y0 = py(0.0);
    let _ = writeln!(
        svg,
        r##"<line x1="{x0:.1}" y1="{y0:.1}" x2="{:.1}" y2="{y0:.1}" stroke="#333"/>"##,
        px(xmax)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{x0:.1}" y1="{:.1}" x2="{x0:.1}" y2="{:.1}" stroke="#333"/>"##,
        py(ymin),
        py(ymax)
    );
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="14">t</text>"#, px(xmax) + 6.0, y0 + 4.0);
    let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="14">d</text>"#, x0 - 4.0, py(ymax) - 8.0);
    let step = tick_step(xmax - xmin);
    let mut t = (xmin + 1.0).ceil();
    while t <= xmax - 1.0 {
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{t}</text>"#, px(t), y0 + 14.0);
        t += step;
    }
    let step = tick_step(ymax - ymin);
    let mut d = (ymin + 1.0).ceil();
    while d <= ymax - 1.0 {
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{d}</text>"#, x0 - 4.0, py(d) + 3.0);
        d += step;
    }

    for (i, c) in tuples.iter().enumerate() {
        let colour = FILL[i % FILL.len()];
        let poly = region_polygon(c, half);
        if poly.len() < 3 {
            continue;
        }
        let points: Vec<String> = poly.iter().map(|(x, y)| format!("{:.1},{:.1}", px(*x), py(*y))).collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="{kind}" points="{}" fill="{colour}" fill-opacity="0.45" stroke="{colour}"><title>{}</title></polygon>"#,
            points.join(" "),
            escape(&c.to_string())
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick_step(span: f64) -> f64 {
    let mut step = 1.0;
    while span / step > 25.0 {
        step *= 2.0;
    }
    step
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The rectangle `τ × δ` grown by `half`, clipped to `b_α − 2·half ≤ t + d ≤ e_α + 2·half`.
pub fn region_polygon(c: &CTuple, half: f64) -> Vec<(f64, f64)> {
    let (t1, t2) = (c.tau.lo().to_f64() - half, c.tau.hi().to_f64() + half);
    let (d1, d2) = (c.delta.lo().to_f64() - half, c.delta.hi().to_f64() + half);
    let mut poly = vec![(t1, d1), (t2, d1), (t2, d2), (t1, d2)];
    if let Some(alpha) = c.window() {
        let lo = alpha.lo().to_f64() - 2.0 * half;
        let hi = alpha.hi().to_f64() + 2.0 * half;
        poly = clip(&poly, |(x, y)| x + y - lo);
        poly = clip(&poly, |(x, y)| hi - (x + y));
    }
    poly
}

/// Keeps the part of a convex polygon where `f >= 0`.
fn clip(poly: &[(f64, f64)], f: impl Fn((f64, f64)) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = (f(a), f(b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa >= 0.0) != (fb >= 0.0) {
            let k = fa / (fa - fb);
            out.push((a.0 + k * (b.0 - a.0), a.1 + k * (b.1 - a.1)));
        }
    }
    out
}
