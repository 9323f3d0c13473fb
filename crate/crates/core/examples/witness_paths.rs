//! Witness paths for the Delaunay edges the spanner drops.

use planespan::witness::{
    check_canpath, check_hull, dropped_edge_witnesses, dump_line, WitnessKind,
};
use planespan::{delaunay, generate, Distribution, Region, SpannerParams};

fn main() -> planespan::Result<()> {
    let points = generate(5000, Distribution::Clustered, Region::unit(), 9)?;
    let g = delaunay(&points)?;
    let params = SpannerParams::new(14)?;
    let witnesses = dropped_edge_witnesses(&g, &params)?;

    let (mut outward, mut inward, mut passed) = (0, 0, 0);
    for w in &witnesses {
        let rep = check_canpath(&w.path, &g, &params);
        passed += usize::from(rep.all_pass());
        match w.path.kind {
            WitnessKind::Outward => outward += 1,
            WitnessKind::Inward => {
                inward += 1;
                assert!(check_hull(&w.path, &g).is_some_and(|h| h.all_ok()));
            }
        }
    }
    println!("dropped edges: {}", witnesses.len());
    println!("outward: {outward}, inward: {inward}, all checks pass: {passed}");
    if let Some(w) = witnesses.iter().max_by_key(|w| w.path.vertices.len()) {
        println!(
            "longest: {}",
            dump_line(&w.path, &check_canpath(&w.path, &g, &params))
        );
    }
    Ok(())
}
