//! Minimal static SVG writer for the two GDoF curves.
//!
//! The curves are piecewise linear, so two polylines with axes and a legend
//! are all a figure needs. All coordinates are formatted with fixed
//! precision; rendering a given sweep twice produces identical bytes.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 28.0;
const BOTTOM: f64 = 52.0;

/// Renders the finite-precision and perfect-CSIT curves over a common
/// strength grid.
pub fn curve_svg(alphas: &[f64], d_finite: &[f64], d_perfect: &[f64]) -> String {
    assert_eq!(alphas.len(), d_finite.len());
    assert_eq!(alphas.len(), d_perfect.len());
    let x_min = alphas.first().copied().unwrap_or(0.0);
    let x_max = alphas.last().copied().unwrap_or(1.0).max(x_min + 1e-9);
    let y_max = 1.05;

    let to_x = |a: f64| LEFT + (a - x_min) / (x_max - x_min) * (WIDTH - LEFT - RIGHT);
    let to_y = |d: f64| HEIGHT - BOTTOM - d / y_max * (HEIGHT - TOP - BOTTOM);

    let polyline = |ds: &[f64]| {
        let mut pts = String::new();
        for (a, d) in alphas.iter().zip(ds) {
            write!(pts, "{:.2},{:.2} ", to_x(*a), to_y(*d)).unwrap();
        }
        pts.trim_end().to_string()
    };

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();

    // Axes.
    let x0 = to_x(x_min);
    let x1 = to_x(x_max);
    let y0 = to_y(0.0);
    let y1 = to_y(y_max);
    writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black" stroke-width="1.5"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black" stroke-width="1.5"/>"#
    )
    .unwrap();

    // Ticks and grid.
    for i in 0..=4 {
        let a = x_min + (x_max - x_min) * i as f64 / 4.0;
        let x = to_x(a);
        writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 6.0
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-size="13" text-anchor="middle">{a:.2}</text>"#,
            y0 + 22.0
        )
        .unwrap();
    }
    for i in 0..=4 {
        let d = i as f64 * 0.25;
        let y = to_y(d);
        writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 6.0
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="end">{d:.2}</text>"#,
            x0 - 10.0,
            y + 4.0
        )
        .unwrap();
    }

    // Axis labels.
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="16" text-anchor="middle" font-style="italic">&#945;</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-size="16" text-anchor="middle" font-style="italic" transform="rotate(-90 18 {:.2})">d(&#945;)</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();

    // Curves.
    writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        polyline(d_finite)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="2" stroke-dasharray="7 4"/>"##,
        polyline(d_perfect)
    )
    .unwrap();

    // Legend.
    let lx = x0 + 16.0;
    let ly = y1 + 10.0;
    writeln!(
        svg,
        r##"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="#1f77b4" stroke-width="2"/>"##,
        lx + 30.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13">finite-precision CSIT</text>"#,
        lx + 38.0,
        ly + 4.0
    )
    .unwrap();
    writeln!(
        svg,
        r##"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#d62728" stroke-width="2" stroke-dasharray="7 4"/>"##,
        ly + 20.0,
        lx + 30.0,
        ly + 20.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13">perfect CSIT</text>"#,
        lx + 38.0,
        ly + 24.0
    )
    .unwrap();

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_deterministically() {
        let alphas = [0.0, 0.5, 1.0, 2.0, 3.0];
        let finite = [1.0, 0.5, 1.0 / 3.0, 2.0 / 3.0, 1.0];
        let perfect = [1.0, 0.5, 0.5, 1.0, 1.0];
        let a = curve_svg(&alphas, &finite, &perfect);
        let b = curve_svg(&alphas, &finite, &perfect);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(a.contains("&#945;"));
    }
}
