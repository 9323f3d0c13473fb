//! Delaunay graph and Euclidean minimum spanning tree of a random instance.

use planespan::{delaunay, emst, generate, Distribution, Region};

fn main() -> planespan::Result<()> {
    let points = generate(1000, Distribution::Clustered, Region::unit(), 7)?;
    let g = delaunay(&points)?;
    let tree = emst(&g)?;
    println!("n = {}", g.n());
    println!(
        "delaunay edges = {} (3n - 6 = {})",
        g.edge_count(),
        3 * g.n() - 6
    );
    println!("max degree = {}", g.max_degree());
    println!(
        "emst edges = {}, weight = {:.6}",
        tree.edges().len(),
        tree.total_weight
    );
    Ok(())
}
