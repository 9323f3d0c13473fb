//! Text formats and SVG output.
//!
//! Point file: a header line `n`, then `id x y` per line. Edge file: `u v
//! length` per line with `u < v`. Coordinates use Rust's shortest
//! round-trip formatting, so reading a written file gives identical values.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::triangulation::GeoGraph;

fn format_error(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Precondition(format!("line {line}: {msg}"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn write_points(points: &[Point]) -> String {
    let mut out = format!("{}\n", points.len());
    for p in points {
        let _ = writeln!(out, "{} {} {}", p.id, p.x, p.y);
    }
    out
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| format_error(1, "missing header"))?;
    let n: usize = header
        .parse()
        .map_err(|_| format_error(ln, format!("bad point count {header:?}")))?;
    let mut points = Vec::with_capacity(n);
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(format_error(ln, "expected `id x y`"));
        }
        let id: usize = f[0].parse().map_err(|_| format_error(ln, "bad id"))?;
        let x: f64 = f[1].parse().map_err(|_| format_error(ln, "bad x"))?;
        let y: f64 = f[2].parse().map_err(|_| format_error(ln, "bad y"))?;
        points.push(Point::new(id, x, y));
    }
    if points.len() != n {
        return Err(Error::Precondition(format!(
            "header says {n} points, found {}",
            points.len()
        )));
    }
    geom::validate_points(&points)?;
    Ok(points)
}

pub fn write_edges(g: &GeoGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v} {}", g.length(u, v));
    }
    out
}

/// Reads an edge file over `points`. The length column is optional and
/// ignored; lengths are recomputed from coordinates.
pub fn parse_edges(text: &str, points: &[Point]) -> Result<GeoGraph> {
    let mut edges = Vec::new();
    for (ln, line) in content_lines(text) {
        let f: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&f.len()) {
            return Err(format_error(ln, "expected `u v length`"));
        }
        let u: usize = f[0].parse().map_err(|_| format_error(ln, "bad endpoint"))?;
        let v: usize = f[1].parse().map_err(|_| format_error(ln, "bad endpoint"))?;
        if let Some(len) = f.get(2) {
            len.parse::<f64>()
                .map_err(|_| format_error(ln, "bad length"))?;
        }
        if u == v {
            return Err(format_error(ln, "self loop"));
        }
        edges.push((u, v));
    }
    GeoGraph::from_edges(points.to_vec(), edges)
}

/// Figure with points, spanner edges (solid) and base edges not in the
/// spanner (dashed).
pub fn render_svg(base: &GeoGraph, spanner: &GeoGraph) -> String {
    let pts = spanner.points();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let size = 800.0;
    let margin = 20.0;
    let scale = (size - 2.0 * margin) / span;
    let tx = |x: f64| margin + (x - x0) * scale;
    let ty = |y: f64| size - margin - (y - y0) * scale;
    let r = (3.0 * (200.0 / pts.len().max(1) as f64).sqrt()).clamp(0.8, 4.0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str("<g stroke=\"#b0b0b0\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\">\n");
    for (u, v) in base.edges() {
        if !spanner.has_edge(u, v) {
            let (a, b) = (&pts[u], &pts[v]);
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                tx(a.x),
                ty(a.y),
                tx(b.x),
                ty(b.y)
            );
        }
    }
    out.push_str("</g>\n<g stroke=\"#1f4e9c\" stroke-width=\"1.2\">\n");
    for (u, v) in spanner.edges() {
        let (a, b) = (&pts[u], &pts[v]);
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            tx(a.x),
            ty(a.y),
            tx(b.x),
            ty(b.y)
        );
    }
    out.push_str("</g>\n<g fill=\"#c0392b\">\n");
    for p in pts {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.2}"/>"#,
            tx(p.x),
            ty(p.y)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
