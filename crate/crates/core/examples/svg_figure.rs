//! Writes an SVG of the spanner over its Delaunay graph. Usage:
//! `cargo run --example svg_figure -- out.svg`.

use planespan::io::render_svg;
use planespan::{delaunay, generate, modified_yao, Distribution, Region, SpannerParams};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "spanner.svg".into());
    let points = generate(400, Distribution::Clustered, Region::unit(), 2)?;
    let g = delaunay(&points)?;
    let h = modified_yao(&g, &SpannerParams::new(14)?);
    std::fs::write(&out, render_svg(&g, &h))?;
    println!(
        "wrote {out}: {} spanner edges, {} dropped",
        h.edge_count(),
        g.edge_count() - h.edge_count()
    );
    Ok(())
}
