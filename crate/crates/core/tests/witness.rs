mod common;

use common::{dist, in_circle_oracle};
use planespan::generate::{generate, Distribution, Region};
use planespan::geom::{self, Point};
use planespan::spanner::{modified_yao, SpannerParams};
use planespan::triangulation::{delaunay, GeoGraph};
use planespan::unitdisk::{ldel2, UnitDiskInstance};
use planespan::witness::{
    check_canpath, check_hull, dropped_edge_witnesses, dump_line, inward_path, outward_path,
    witness_path, CheckOutcome, WitnessKind, LENGTH_EPS,
};
use proptest::prelude::*;

fn params(k: usize) -> SpannerParams {
    SpannerParams::new(k).unwrap()
}

fn pts(coords: &[(f64, f64)]) -> Vec<Point> {
    coords
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Point::new(i, x, y))
        .collect()
}

/// C below, A upper left, B to the right, two points just inside the arc AB.
fn outward_instance() -> GeoGraph {
    delaunay(&pts(&[
        (0., 0.),
        (-1.2, 10.),
        (1.6, 11.),
        (-0.27, 10.49),
        (0.72, 10.83),
    ]))
    .unwrap()
}

/// C at the origin, CA along the x-axis, three points inside triangle CAB of
/// which two lie on the hull chain facing C.
fn inward_instance() -> GeoGraph {
    delaunay(&pts(&[
        (0., 0.),
        (10., 0.),
        (11.3, 4.1),
        (10.3, 1.2),
        (10.7, 2.6),
        (10.45, 1.5),
    ]))
    .unwrap()
}

#[test]
fn outward_path_through_the_lens() {
    let g = outward_instance();
    assert!(!g.has_edge(1, 2));
    let w = outward_path(&g, 0, 1, 2, &params(14)).unwrap();
    assert_eq!(w.kind, WitnessKind::Outward);
    assert_eq!(w.vertices, vec![1, 3, 4, 2]);
    assert!(w.theta <= std::f64::consts::TAU / 14.0);
    let (c, a, b) = (g.point(0), g.point(1), g.point(2));
    for &m in &w.vertices[1..3] {
        let pm = g.point(m);
        assert_eq!(
            in_circle_oracle(c, a, b, pm),
            Some(1),
            "{m} inside the circle"
        );
        assert_eq!(
            geom::orientation(a, b, pm),
            geom::orientation(a, b, c).reversed(),
            "{m} beyond AB"
        );
    }
    assert!(w.length(&g) <= w.arc_bound(&g).unwrap());
    assert!(check_canpath(&w, &g, &params(14)).all_pass());
}

#[test]
fn inward_path_follows_the_hull() {
    let g = inward_instance();
    let w = inward_path(&g, 0, 1, 2, &params(14)).unwrap();
    assert_eq!(w.kind, WitnessKind::Inward);
    assert_eq!(w.hull_points.as_deref(), Some(&[1, 3, 4, 2][..]));
    let hull = check_hull(&w, &g).unwrap();
    assert!(hull.adjacent_to_c && hull.distances_nondecreasing && hull.reflex_towards_c);
    // The point behind the chain is not on the path.
    assert!(!w.vertices.contains(&5));
    assert!(check_canpath(&w, &g, &params(14)).all_pass());
    assert_eq!(witness_path(&g, 0, 1, 2, &params(14)).unwrap(), w);
}

#[test]
fn single_interior_point_path() {
    let g = delaunay(&pts(&[(0., 0.), (10., 0.), (12., 3.6), (10.5, 1.5)])).unwrap();
    let w = inward_path(&g, 0, 1, 2, &params(14)).unwrap();
    assert_eq!(w.vertices, vec![1, 3, 2]);
    assert!(check_hull(&w, &g).unwrap().all_ok());
}

#[test]
fn single_edge_cost() {
    let g = delaunay(&pts(&[(0., 0.), (10., 0.), (10.5, 3.2)])).unwrap();
    let w = outward_path(&g, 0, 1, 2, &params(14)).unwrap();
    let rep = check_canpath(&w, &g, &params(14));
    assert_eq!(rep.iii, CheckOutcome::Pass);
    assert_eq!(rep.min_inner_angle, None);
    let (c, a, b) = (g.point(0), g.point(1), g.point(2));
    assert!((rep.cost - (dist(c, a) + dist(a, b))).abs() < 1e-12);
    assert!((rep.cost_bound - params(14).stretch_bound() * dist(c, b)).abs() < 1e-12);
}

#[test]
fn corrupted_path_is_caught() {
    let g = inward_instance();
    let mut w = inward_path(&g, 0, 1, 2, &params(14)).unwrap();
    // C sits on the wrong side of the chain, so the inner angle turns reflex.
    w.vertices[1] = 0;
    let rep = check_canpath(&w, &g, &params(14));
    assert!(!rep.all_pass());
    assert_eq!(rep.iii, CheckOutcome::Fail);
}

#[test]
fn dump_line_format() {
    let g = outward_instance();
    let w = outward_path(&g, 0, 1, 2, &params(14)).unwrap();
    let line = dump_line(&w, &check_canpath(&w, &g, &params(14)));
    let fields: Vec<&str> = line.split(',').collect();
    assert_eq!(&fields[..4], &["OUTWARD", "0", "1", "2"]);
    assert!(fields[4].parse::<f64>().is_ok());
    assert_eq!(fields[5], "1;3;4;2");
    assert_eq!(
        &fields[6..],
        &["checks=i:pass", "ii:pass", "iii:pass", "iv:pass"]
    );
}

fn assert_witnesses(g: &GeoGraph, k: usize, label: &str) -> usize {
    let p = params(k);
    let h = modified_yao(g, &p);
    let ws = dropped_edge_witnesses(g, &p).unwrap();
    assert_eq!(ws.len(), g.edge_count() - h.edge_count(), "{label}");
    for dw in &ws {
        let w = &dw.path;
        let rep = check_canpath(w, g, &p);
        assert!(rep.all_pass(), "{label}: {}", dump_line(w, &rep));
        assert!(w.edges().all(|(u, v)| g.has_edge(u, v)), "{label}");
        assert!(w.theta <= std::f64::consts::TAU / k as f64 + 1e-9);
        match w.kind {
            WitnessKind::Outward => {
                assert!(
                    w.length(g) <= w.arc_bound(g).unwrap() * (1.0 + LENGTH_EPS),
                    "{label}"
                );
            }
            WitnessKind::Inward => assert!(check_hull(w, g).unwrap().all_ok(), "{label}"),
        }
    }
    ws.len()
}

#[test]
fn random_euclidean_witnesses() {
    let mut total = 0;
    for seed in 0..100 {
        let dist = Distribution::ALL[seed as usize % 3];
        let p = generate(50, dist, Region::unit(), seed).unwrap();
        total += assert_witnesses(&delaunay(&p).unwrap(), 14, &format!("seed {seed}"));
    }
    assert!(total > 0);
}

#[test]
fn unit_disk_witnesses_use_short_edges() {
    for seed in 0..20 {
        let p = generate(
            120,
            Distribution::Uniform,
            Region::new(4., 4.).unwrap(),
            900 + seed,
        )
        .unwrap();
        let g = ldel2(&UnitDiskInstance::new(p).unwrap()).unwrap();
        assert_witnesses(&g, 14, &format!("udg seed {seed}"));
        for dw in dropped_edge_witnesses(&g, &params(14)).unwrap() {
            for (u, v) in dw.path.edges() {
                assert!(geom::within_dist(g.point(u), g.point(v), 1.0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_pass_for_any_k(seed in 0u64..100_000, n in 10usize..150, k in 14usize..30) {
        let p = generate(n, Distribution::Uniform, Region::unit(), seed).unwrap();
        assert_witnesses(&delaunay(&p).unwrap(), k, &format!("seed {seed} n {n} k {k}"));
    }
}
