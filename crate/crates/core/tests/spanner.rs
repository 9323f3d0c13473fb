mod common;

use std::f64::consts::TAU;

use common::{dist, floyd_warshall, hp};
use planespan::generate::{generate, Distribution, Region};
use planespan::geom::{self, Point};
use planespan::spanner::{
    self, modified_yao, select_all, select_at_vertex, SelectionCause, SpannerParams,
};
use planespan::triangulation::{delaunay, delaunay_with, CocircularPolicy};
use proptest::prelude::*;

fn params(k: usize) -> SpannerParams {
    SpannerParams::new(k).unwrap()
}

/// Straightforward restatement of the per-vertex rule on float angles.
/// Neighbours must not sit on cone boundaries.
fn oracle_selection(m: &Point, nb: &[Point], k: usize) -> Vec<usize> {
    let width = TAU / k as f64;
    let angle = |q: &Point| (q.y - m.y).atan2(q.x - m.x).rem_euclid(TAU);
    let mut by_cone: Vec<Vec<&Point>> = vec![Vec::new(); k];
    for q in nb {
        by_cone[((angle(q) / width) as usize).min(k - 1)].push(q);
    }
    for c in &mut by_cone {
        c.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    }
    let key = |q: &Point| (dist(m, q), q.id);
    let mut chosen: Vec<usize> = Vec::new();
    for c in &by_cone {
        if let Some(best) = c.iter().min_by(|a, b| key(a).partial_cmp(&key(b)).unwrap()) {
            chosen.push(best.id);
        }
    }
    if nb.is_empty() {
        return chosen;
    }
    let empty = |c: usize| by_cone[c % k].is_empty();
    for s in 0..k {
        if !(empty(s) && !empty(s + k - 1)) {
            continue;
        }
        let len = (0..k).take_while(|&d| empty(s + d)).count();
        if len == 1 {
            let mx = *by_cone[(s + k - 1) % k].last().unwrap();
            let my = by_cone[(s + 1) % k][0];
            match (chosen.contains(&mx.id), chosen.contains(&my.id)) {
                (true, true) => {}
                (true, false) => chosen.push(my.id),
                (false, true) => chosen.push(mx.id),
                (false, false) => chosen.push(if key(mx) <= key(my) { mx.id } else { my.id }),
            }
            continue;
        }
        // Clockwise side: walk back through occupied cones, nearest edge first.
        let cw: Vec<usize> = (1..k)
            .map(|d| (s + k - d) % k)
            .take_while(|&c| !empty(c))
            .flat_map(|c| by_cone[c].iter().rev().map(|q| q.id))
            .collect();
        let ccw: Vec<usize> = (0..k)
            .map(|d| (s + len + d) % k)
            .take_while(|&c| !empty(c))
            .flat_map(|c| by_cone[c].iter().map(|q| q.id))
            .collect();
        for (list, quota) in [(cw, len / 2), (ccw, len.div_ceil(2))] {
            let fresh: Vec<usize> = list
                .into_iter()
                .filter(|id| !chosen.contains(id))
                .take(quota)
                .collect();
            chosen.extend(fresh);
        }
    }
    chosen.sort_unstable();
    chosen
}

fn angular(m: &Point, nb: &mut [Point]) {
    nb.sort_by(|a, b| geom::cmp_angle_around(m, a, b));
}

/// Lattice points on the circle of radius `r` about the origin.
fn lattice_circle(r: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in -r..=r {
        let y2 = r * r - x * x;
        let y = (y2 as f64).sqrt().round() as i64;
        for y in [y - 1, y, y + 1] {
            if y >= 0 && y * y == y2 {
                out.push((x, y));
                if y != 0 {
                    out.push((x, -y));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Center 0 and twenty neighbours at equal, exactly representable distance,
/// neighbour `j + 1` near direction `2 pi j / 20`.
fn twenty_on_a_circle() -> Vec<Point> {
    // 5 * 13 * 17 * 29 * 37 has many representations as a sum of two squares.
    let r = 1_185_665;
    let lattice = lattice_circle(r);
    let mut pts = vec![Point::new(0, 0., 0.)];
    for j in 0..20 {
        let target = TAU * j as f64 / 20.0;
        let &(x, y) = lattice
            .iter()
            .min_by(|a, b| {
                let da = ((a.1 as f64).atan2(a.0 as f64).rem_euclid(TAU) - target).abs();
                let db = ((b.1 as f64).atan2(b.0 as f64).rem_euclid(TAU) - target).abs();
                da.total_cmp(&db)
            })
            .unwrap();
        pts.push(Point::new(j + 1, x as f64, y as f64));
    }
    pts
}

#[test]
fn twenty_equal_neighbours_fill_all_fourteen_cones() {
    let pts = twenty_on_a_circle();
    assert_eq!((pts[1].x, pts[1].y), (1_185_665., 0.));
    assert_eq!((pts[11].x, pts[11].y), (-1_185_665., 0.));
    let m = pts[0];
    let mut nb = pts[1..].to_vec();
    angular(&m, &mut nb);

    let cones: Vec<usize> = (1..=20)
        .map(|j| geom::cone_index(&m, &pts[j], 14).unwrap())
        .collect();
    assert_eq!(
        cones,
        vec![0, 0, 1, 2, 2, 3, 4, 4, 5, 6, 7, 7, 8, 9, 9, 10, 11, 11, 12, 13]
    );

    let sel = select_at_vertex(&m, &nb, &params(14));
    assert_eq!(sel.len(), 14);
    assert!(sel.occupied.iter().all(|&o| o));
    assert!(sel
        .chosen
        .iter()
        .all(|c| c.cause == SelectionCause::ConeShortest));
    // Two-neighbour cones keep the smaller id.
    for (lo, hi) in [(0, 1), (3, 4), (6, 7), (10, 11), (13, 14), (16, 17)] {
        assert!(
            sel.contains(lo + 1) && !sel.contains(hi + 1),
            "pair {lo},{hi}"
        );
    }
}

#[test]
fn twenty_on_a_circle_center_degree() {
    let pts = twenty_on_a_circle();
    let g = delaunay_with(&pts, CocircularPolicy::TieBreak).unwrap();
    assert_eq!(g.degree(0), 20);
    let h = modified_yao(&g, &params(14));
    assert!(h.degree(0) <= 14);
    assert!(h.max_degree() <= 14);
}

#[test]
fn three_neighbours_in_one_cone() {
    let m = Point::new(0, 0., 0.);
    let mut nb = vec![
        Point::new(1, 1., 0.1),
        Point::new(2, 2., 0.3),
        Point::new(3, 3., 0.2),
    ];
    angular(&m, &mut nb);
    let sel = select_at_vertex(&m, &nb, &params(14));
    assert_eq!(sel.neighbor_ids(), vec![1, 2, 3]);
    assert_eq!(sel.cause_of(1), Some(SelectionCause::ConeShortest));
    assert_eq!(oracle_selection(&m, &nb, 14), vec![1, 2, 3]);
}

#[test]
fn dropped_edges_have_short_detours() {
    let rho = spanner::stretch_bound(14).unwrap();
    for seed in 0..10 {
        let p = generate(50, Distribution::Uniform, Region::unit(), seed).unwrap();
        let g = delaunay(&p).unwrap();
        let h = modified_yao(&g, &params(14));
        assert!(h.is_subgraph_of(&g));
        let d = floyd_warshall(&h);
        for (u, v) in g.edges() {
            if !h.has_edge(u, v) {
                assert!(
                    d[u][v] <= rho * dist(&p[u], &p[v]) * (1.0 + 1e-12),
                    "seed {seed} edge {u}-{v}"
                );
            }
        }
    }
}

#[test]
fn constants_match_high_precision() {
    for k in [14i64, 15, 20, 32, 100] {
        let want = hp::to_f64(&hp::rho(k));
        assert!((spanner::stretch_bound(k as usize).unwrap() - want).abs() < 1e-13);
    }
    assert!((spanner::stretch_bound(14).unwrap() - 1.46034).abs() < 5e-6);
    assert!((spanner::c_del() - hp::to_f64(&hp::c_del())).abs() < 1e-13);
    assert!(spanner::combined_bound(14).unwrap() <= 3.54);
    assert!(spanner::stretch_bound(13).is_err());
}

fn star() -> impl Strategy<Value = (Point, Vec<Point>)> {
    proptest::collection::vec((0.0f64..TAU, 0.1f64..2.0), 0..30).prop_map(|polar| {
        let m = Point::new(0, 0.25, -0.5);
        let nb = polar
            .iter()
            .enumerate()
            .map(|(i, &(a, r))| Point::new(i + 1, m.x + r * a.cos(), m.y + r * a.sin()))
            .collect();
        (m, nb)
    })
}

proptest! {
    #[test]
    fn selection_matches_oracle((m, mut nb) in star(), k in 14usize..24) {
        angular(&m, &mut nb);
        let sel = select_at_vertex(&m, &nb, &params(k));
        prop_assert!(sel.len() <= k);
        prop_assert_eq!(sel.neighbor_ids(), oracle_selection(&m, &nb, k));
    }

    #[test]
    fn spanner_invariants(seed in 0u64..10_000, n in 3usize..120, k in 14usize..40) {
        let p = generate(n, Distribution::Uniform, Region::unit(), seed).unwrap();
        let g = delaunay(&p).unwrap();
        let (h, state) = spanner::modified_yao_with_state(&g, &params(k));
        prop_assert!(h.max_degree() <= k);
        prop_assert!(h.is_subgraph_of(&g));
        prop_assert!(h.is_connected());
        for (u, v) in g.edges() {
            let mutual = state.vertices[u].contains(v) && state.vertices[v].contains(u);
            prop_assert_eq!(h.has_edge(u, v), mutual);
        }
        prop_assert_eq!(select_all(&g, &params(k)), state);
    }

    #[test]
    fn triangle_is_preserved(ax in -5.0f64..5.0, ay in -5.0f64..5.0, bx in -5.0f64..5.0, by in -5.0f64..5.0) {
        let p = vec![Point::new(0, 0., 0.), Point::new(1, ax, ay), Point::new(2, bx, by)];
        prop_assume!(geom::orientation(&p[0], &p[1], &p[2]) != geom::Orientation::Collinear);
        let g = delaunay(&p).unwrap();
        prop_assert_eq!(modified_yao(&g, &params(14)), g);
    }
}
