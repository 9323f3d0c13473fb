//! Bounded-degree spanner of the Delaunay graph for several cone counts.

use planespan::spanner::{combined_bound, stretch_bound};
use planespan::verify::{stretch_vs_base, stretch_vs_complete};
use planespan::{delaunay, generate, modified_yao, Distribution, Region, SpannerParams};

fn main() -> planespan::Result<()> {
    let points = generate(2000, Distribution::Uniform, Region::unit(), 1)?;
    let g = delaunay(&points)?;
    println!(
        "delaunay: {} edges, max degree {}",
        g.edge_count(),
        g.max_degree()
    );
    println!(
        "{:>3} {:>6} {:>4} {:>10} {:>10} {:>10} {:>10}",
        "k", "edges", "deg", "stretch_g", "rho_k", "stretch", "bound"
    );
    for k in [14, 16, 20, 32] {
        let h = modified_yao(&g, &SpannerParams::new(k)?);
        println!(
            "{k:>3} {:>6} {:>4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            h.edge_count(),
            h.max_degree(),
            stretch_vs_base(&h, &g)?,
            stretch_bound(k)?,
            stretch_vs_complete(&h).value,
            combined_bound(k)?,
        );
    }
    Ok(())
}
