//! Four-round distributed construction on a unit disk graph, compared with
//! the centralized pipeline.

use planespan::unitdisk::{ldel2, simulate_distributed, udel, UnitDiskInstance};
use planespan::{generate, modified_yao, Distribution, Region, SpannerParams};

fn main() -> planespan::Result<()> {
    let points = generate(400, Distribution::Uniform, Region::new(8.0, 8.0)?, 3)?;
    let u = UnitDiskInstance::new(points.clone())?;
    let params = SpannerParams::new(14)?;

    let local = ldel2(&u)?;
    println!(
        "unit disk graph: {} edges, max degree {}",
        u.graph().edge_count(),
        u.graph().max_degree()
    );
    println!(
        "UDel: {} edges, LDel2: {} edges",
        udel(&points)?.edge_count(),
        local.edge_count()
    );

    let (h, log) = simulate_distributed(&u, &params)?;
    for (round, count) in log.per_round.iter().enumerate() {
        println!("round {}: {count} messages", round + 1);
    }
    let active = (0..u.n()).filter(|&v| u.graph().degree(v) > 0).count();
    println!("total {} = n + 3 * {active}", log.total());
    println!("largest payload: {} ids", log.max_payload());
    println!(
        "spanner: {} edges, max degree {}",
        h.edge_count(),
        h.max_degree()
    );
    println!(
        "matches centralized: {}",
        h == modified_yao(&local, &params)
    );
    Ok(())
}
