//! Static SVG scatter plots with an implicit conic curve.

use std::fmt::Write;

use hyperconic::conic_space::incidence;
use hyperconic::{Label, Sample, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: u32,
    pub height: u32,
    pub draw_classes: bool,
    pub draw_conic: bool,
    /// Marching-squares samples per axis.
    pub grid: usize,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self {
            width: 480,
            height: 480,
            draw_classes: true,
            draw_conic: true,
            grid: 400,
        }
    }
}

/// Axis-aligned plotting window `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Window {
    /// Bounding box of the points, padded by 10% on every side.
    pub fn around(points: &[Vec<f64>]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in points {
            x0 = x0.min(p[0]);
            x1 = x1.max(p[0]);
            y0 = y0.min(p[1]);
            y1 = y1.max(p[1]);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let px = ((x1 - x0) * 0.1).max(0.5);
        let py = ((y1 - y0) * 0.1).max(0.5);
        Self {
            x: (x0 - px, x1 + px),
            y: (y0 - py, y1 + py),
        }
    }
}

const MARGIN: f64 = 20.0;

struct Frame {
    window: Window,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1) = self.window.x;
        let (y0, y1) = self.window.y;
        (
            MARGIN + (x - x0) / (x1 - x0) * (self.w - 2.0 * MARGIN),
            self.h - MARGIN - (y - y0) / (y1 - y0) * (self.h - 2.0 * MARGIN),
        )
    }
}

/// Zero-level segments of `f` sampled on an `n × n` grid over `window`.
pub fn marching_squares(
    f: impl Fn(f64, f64) -> f64,
    window: Window,
    n: usize,
) -> Vec<[(f64, f64); 2]> {
    let (x0, x1) = window.x;
    let (y0, y1) = window.y;
    let xs: Vec<f64> = (0..=n)
        .map(|i| x0 + (x1 - x0) * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = (0..=n)
        .map(|j| y0 + (y1 - y0) * j as f64 / n as f64)
        .collect();
    let values: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| xs.iter().map(|&x| f(x, y)).collect())
        .collect();

    let cross = |(xa, ya, va): (f64, f64, f64), (xb, yb, vb): (f64, f64, f64)| {
        let t = va / (va - vb);
        (xa + t * (xb - xa), ya + t * (yb - ya))
    };

    let mut segments = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [
                (xs[i], ys[j], values[j][i]),
                (xs[i + 1], ys[j], values[j][i + 1]),
                (xs[i + 1], ys[j + 1], values[j + 1][i + 1]),
                (xs[i], ys[j + 1], values[j + 1][i]),
            ];
            let hits: Vec<(f64, f64)> = (0..4)
                .filter_map(|k| {
                    let (a, b) = (corners[k], corners[(k + 1) % 4]);
                    ((a.2 > 0.0) != (b.2 > 0.0)).then(|| cross(a, b))
                })
                .collect();
            match hits.as_slice() {
                [p, q] => segments.push([*p, *q]),
                [p, q, r, s] => {
                    let center = f(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
                    if (center > 0.0) == (corners[0].2 > 0.0) {
                        segments.push([*p, *q]);
                        segments.push([*r, *s]);
                    } else {
                        segments.push([*p, *s]);
                        segments.push([*q, *r]);
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// Renders 2-D samples (crosses for `+1`, diamonds for `-1`) and the zero
/// set of `conic`.
pub fn render(
    spec: &PlotSpec,
    window: Window,
    samples: &[Sample],
    conic: Option<&SymmetricMatrix>,
) -> String {
    let frame = Frame {
        window,
        w: f64::from(spec.width),
        h: f64::from(spec.height),
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        frame.w - 2.0 * MARGIN,
        frame.h - 2.0 * MARGIN
    );

    if spec.draw_classes {
        let _ = writeln!(
            svg,
            r##"<g id="positive" stroke="#c0392b" stroke-width="1.2">"##
        );
        for s in samples.iter().filter(|s| s.label == Label::Positive) {
            let (x, y) = frame.px(s.point[0], s.point[1]);
            let _ = writeln!(
                svg,
                r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}"/>"#,
                x - 3.0,
                y - 3.0,
                x + 3.0,
                y + 3.0,
                x - 3.0,
                y + 3.0,
                x + 3.0,
                y - 3.0
            );
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(
            svg,
            r##"<g id="negative" fill="none" stroke="#2471a3" stroke-width="1.2">"##
        );
        for s in samples.iter().filter(|s| s.label == Label::Negative) {
            let (x, y) = frame.px(s.point[0], s.point[1]);
            let _ = writeln!(
                svg,
                r#"<path d="M{:.2} {:.2}L{:.2} {:.2}L{:.2} {:.2}L{:.2} {:.2}Z"/>"#,
                x,
                y - 3.5,
                x + 3.5,
                y,
                x,
                y + 3.5,
                x - 3.5,
                y
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    if let Some(a) = conic.filter(|_| spec.draw_conic) {
        let segments = marching_squares(
            |x, y| incidence(&[x, y], a).unwrap_or(f64::NAN),
            window,
            spec.grid,
        );
        let mut d = String::new();
        for [(xa, ya), (xb, yb)] in segments {
            let (xa, ya) = frame.px(xa, ya);
            let (xb, yb) = frame.px(xb, yb);
            let _ = write!(d, "M{xa:.2} {ya:.2}L{xb:.2} {yb:.2}");
        }
        let _ = writeln!(
            svg,
            r#"<path id="conic" d="{d}" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}
