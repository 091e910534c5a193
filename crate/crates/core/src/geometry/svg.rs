//! SVG 1.1 rendering of sail windows.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::lattice::LatticePoint;
use super::sail::Sail;

/// Lattice rectangle `[x_min, x_max] × [y_min, y_max]` to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Viewport {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Self {
        assert!(x_min < x_max && y_min < y_max, "empty viewport");
        Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    /// Smallest viewport holding every vertex, with a margin of one cell.
    pub fn around(sails: &[Sail]) -> Self {
        let pts: Vec<(i64, i64)> = sails
            .iter()
            .flat_map(|s| s.vertices().map(|(_, v)| coords(v)))
            .collect();
        let lo_x = pts.iter().map(|p| p.0).min().unwrap_or(0).min(0);
        let hi_x = pts.iter().map(|p| p.0).max().unwrap_or(0).max(0);
        let lo_y = pts.iter().map(|p| p.1).min().unwrap_or(0).min(0);
        let hi_y = pts.iter().map(|p| p.1).max().unwrap_or(0).max(0);
        Viewport::new(lo_x - 1, hi_x + 1, lo_y - 1, hi_y + 1)
    }
}

const CELL: f64 = 24.0;
const MARGIN: f64 = 16.0;
const MAX_DOTS: i64 = 40_000;

fn coords(v: &LatticePoint) -> (i64, i64) {
    (
        v.x.to_i64().unwrap_or(i64::MAX / 4),
        v.y.to_i64().unwrap_or(i64::MAX / 4),
    )
}

/// Draws lattice dots, cone lines, sail boundaries, vertex sprouts and the
/// labels `a_k`. Shapes live in a y-flipped group in lattice units; text is
/// placed outside it so it reads upright.
pub fn emit_svg(sails: &[Sail], view: Viewport) -> String {
    let w = (view.x_max - view.x_min) as f64 * CELL + 2.0 * MARGIN;
    let h = (view.y_max - view.y_min) as f64 * CELL + 2.0 * MARGIN;
    let tx = MARGIN - view.x_min as f64 * CELL;
    let ty = MARGIN + view.y_max as f64 * CELL;
    let to_screen = |x: f64, y: f64| (tx + x * CELL, ty - y * CELL);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        "<style>.lattice{{fill:#999}}.cone{{stroke:#000;stroke-width:0.03}}\
         .sail{{fill:none;stroke:#1f4fd1;stroke-width:0.06}}.vertex{{fill:#1f4fd1}}\
         .sprout{{stroke:#d1641f;stroke-width:0.05}}.label{{font:11px sans-serif}}</style>"
    );
    let _ = writeln!(
        out,
        r#"<g transform="translate({tx} {ty}) scale({CELL} -{CELL})">"#
    );

    let cells = (view.x_max - view.x_min + 1) * (view.y_max - view.y_min + 1);
    if cells <= MAX_DOTS {
        for x in view.x_min..=view.x_max {
            for y in view.y_min..=view.y_max {
                let _ = writeln!(out, r#"<circle class="lattice" cx="{x}" cy="{y}" r="0.05"/>"#);
            }
        }
    }

    let mut drawn_cones = Vec::new();
    for sail in sails {
        let Some((alpha, beta)) = sail.cone() else { continue };
        for slope in [alpha, beta] {
            if drawn_cones.contains(&slope) {
                continue;
            }
            drawn_cones.push(slope);
            let m = slope.approx_f64();
            let (x0, x1) = (view.x_min as f64, view.x_max as f64);
            let _ = writeln!(
                out,
                r#"<line class="cone" x1="{x0}" y1="{}" x2="{x1}" y2="{}"/>"#,
                m * x0,
                m * x1
            );
        }
    }

    let mut labels = Vec::new();
    for sail in sails {
        let pts: Vec<(i64, (i64, i64))> = sail.vertices().map(|(k, v)| (k, coords(v))).collect();
        if pts.len() > 1 {
            let path: Vec<String> = pts.iter().map(|(_, (x, y))| format!("{x},{y}")).collect();
            let _ = writeln!(out, r#"<polyline class="sail" points="{}"/>"#, path.join(" "));
        }
        for (k, _) in &pts {
            if let Some(s) = sail.sprout_at(*k) {
                let (a, b) = (coords(&s.from), coords(&s.to));
                let _ = writeln!(
                    out,
                    r#"<line class="sprout" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    a.0, a.1, b.0, b.1
                );
            }
        }
        for pair in pts.windows(2) {
            let (k, (x0, y0)) = pair[1];
            let (_, (x1, y1)) = pair[0];
            if let Some(a) = sail.letter(k) {
                let (sx, sy) = to_screen((x0 + x1) as f64 / 2.0, (y0 + y1) as f64 / 2.0);
                labels.push(format!(
                    r#"<text class="label" x="{:.1}" y="{:.1}">{a}</text>"#,
                    sx + 4.0,
                    sy - 4.0
                ));
            }
        }
        for (k, (x, y)) in &pts {
            let _ = writeln!(
                out,
                r#"<circle class="vertex" data-k="{k}" cx="{x}" cy="{y}" r="0.12"/>"#
            );
        }
    }
    let _ = writeln!(out, "</g>");
    for l in labels {
        let _ = writeln!(out, "{l}");
    }
    out.push_str("</svg>\n");
    out
}
