//! Deterministic SVG rendering: host polygon solid, witnesses dashed with
//! anchor dots, optional external points and their hull.

use std::fmt::Write as _;

use crate::circumscribed::ExternalPoints;
use crate::geom::{ConvexPolygon, InscribedPolygon, Point};

/// Optional overlays for [`render_svg`].
#[derive(Default)]
pub struct SvgAnnotations<'a> {
    pub external: Option<&'a ExternalPoints>,
    pub hull: Option<&'a [Point]>,
}

const WITNESS_COLORS: [&str; 4] = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad"];

fn fmt_pt(p: Point) -> String {
    // Fixed precision keeps output byte-identical across runs.
    format!("{:.6},{:.6}", p.x, p.y)
}

fn polygon_path(pts: &[Point]) -> String {
    pts.iter().map(|&p| fmt_pt(p)).collect::<Vec<_>>().join(" ")
}

/// Renders the host, any number of inscribed witnesses, and optional
/// circumscribed-diameter overlays. Output is deterministic for fixed input.
pub fn render_svg(
    c: &ConvexPolygon,
    witnesses: &[InscribedPolygon],
    annotations: &SvgAnnotations,
) -> String {
    let mut all: Vec<Point> = c.vertices().to_vec();
    if let Some(ext) = annotations.external {
        all.extend(ext.x.iter().copied());
    }
    if let Some(hull) = annotations.hull {
        all.extend(hull.iter().copied());
    }
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) =
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &all {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    let margin = 0.05 * (hi_x - lo_x).max(hi_y - lo_y);
    let (w, h) = (hi_x - lo_x + 2.0 * margin, hi_y - lo_y + 2.0 * margin);
    let stroke = 0.004 * w.max(h);
    let dot = 1.8 * stroke;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        lo_x - margin,
        lo_y - margin,
        w,
        h
    );
    // Flip y so the mathematical orientation matches the screen.
    let _ = writeln!(out, r#"<g transform="translate(0,{:.6}) scale(1,-1)">"#, lo_y + hi_y);
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="{:.6}"/>"##,
        polygon_path(c.vertices()),
        stroke
    );
    for (k, q) in witnesses.iter().enumerate() {
        let color = WITNESS_COLORS[k % WITNESS_COLORS.len()];
        let pts = q.points(c);
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"#,
            polygon_path(&pts),
            color,
            stroke,
            3.0 * stroke,
            2.0 * stroke
        );
        for p in &pts {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{}"/>"#,
                p.x, p.y, dot, color
            );
        }
    }
    if let Some(hull) = annotations.hull {
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="none" stroke="#7f8c8d" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"##,
            polygon_path(hull),
            stroke,
            stroke,
            stroke
        );
    }
    if let Some(ext) = annotations.external {
        for p in &ext.x {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="#7f8c8d" stroke-width="{:.6}"/>"##,
                p.x, p.y, dot, stroke
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
