//! Planar primitives with exact sign decisions.
//!
//! Orientation and in-circle tests use adaptive-precision arithmetic, so their
//! sign is always that of the real determinant of the (binary) input
//! coordinates. Distance comparisons and cone classification use a floating
//! point filter with an exact rational fallback.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use robust::Coord;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

/// An identified point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(id: usize, x: f64, y: f64) -> Self {
        Point { id, x, y }
    }

    fn coord(&self) -> Coord<f64> {
        Coord {
            x: self.x,
            y: self.y,
        }
    }

    pub fn same_position(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }
}

/// A circle stored by center and squared radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center_x: f64,
    pub center_y: f64,
    pub radius_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    fn from_sign(v: f64) -> Self {
        if v > 0.0 {
            Orientation::Ccw
        } else if v < 0.0 {
            Orientation::Cw
        } else {
            Orientation::Collinear
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Cw => -1,
            Orientation::Collinear => 0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleSide {
    Inside,
    Outside,
    Cocircular,
}

/// Exact orientation of the triangle `abc`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    Orientation::from_sign(robust::orient2d(a.coord(), b.coord(), c.coord()))
}

/// Exact classification of `p` against the circle through `a`, `b`, `c`,
/// regardless of the winding of `abc`.
pub fn in_circle(a: &Point, b: &Point, c: &Point, p: &Point) -> Result<CircleSide> {
    let orient = orientation(a, b, c);
    if orient == Orientation::Collinear {
        return Err(Error::DegenerateTriangle([a.id, b.id, c.id]));
    }
    let det = robust::incircle(a.coord(), b.coord(), c.coord(), p.coord()) * orient.sign() as f64;
    Ok(if det > 0.0 {
        CircleSide::Inside
    } else if det < 0.0 {
        CircleSide::Outside
    } else {
        CircleSide::Cocircular
    })
}

/// Raw in-circle sign for a counterclockwise `abc`: positive when `d` is
/// inside. Exact zeros are resolved by an infinitesimal lift of each point,
/// larger for smaller ids, so the result is never zero unless all four points
/// are collinear or `d` repeats a vertex of the triangle.
pub(crate) fn in_circle_perturbed(a: &Point, b: &Point, c: &Point, d: &Point) -> i8 {
    if d.id == a.id || d.id == b.id || d.id == c.id {
        return 0;
    }
    let det = robust::incircle(a.coord(), b.coord(), c.coord(), d.coord());
    if det > 0.0 {
        return 1;
    }
    if det < 0.0 {
        return -1;
    }
    // Cofactors of the lifted column for each row of the 4x4 determinant.
    let mut terms = [
        (a.id, orientation(b, c, d).sign()),
        (b.id, -orientation(a, c, d).sign()),
        (c.id, orientation(a, b, d).sign()),
        (d.id, -orientation(a, b, c).sign()),
    ];
    terms.sort_by_key(|t| t.0);
    terms.iter().map(|t| t.1).find(|&s| s != 0).unwrap_or(0)
}

/// Circle through three non-collinear points. The returned fields are a
/// floating point approximation; containment decisions go through
/// [`in_circle`].
pub fn circumcircle(a: &Point, b: &Point, c: &Point) -> Result<Circle> {
    if orientation(a, b, c) == Orientation::Collinear {
        return Err(Error::DegenerateTriangle([a.id, b.id, c.id]));
    }
    let (bx, by) = (b.x - a.x, b.y - a.y);
    let (cx, cy) = (c.x - a.x, c.y - a.y);
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Ok(Circle {
        center_x: a.x + ux,
        center_y: a.y + uy,
        radius_sq: ux * ux + uy * uy,
    })
}

pub fn dist(a: &Point, b: &Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

pub fn dist_sq(a: &Point, b: &Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite coordinate")
}

fn exact_dist_sq(a: &Point, b: &Point) -> BigRational {
    let dx = rational(a.x) - rational(b.x);
    let dy = rational(a.y) - rational(b.y);
    &dx * &dx + &dy * &dy
}

/// Exact comparison of `|ab|` with `|cd|`.
pub fn cmp_dist(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let l = dist_sq(a, b);
    let r = dist_sq(c, d);
    if (l - r).abs() > 1e-12 * (l + r) {
        return l.partial_cmp(&r).unwrap();
    }
    exact_dist_sq(a, b).cmp(&exact_dist_sq(c, d))
}

/// Exact test of `|ab| <= radius` with `radius` a power of two or other
/// exactly representable value.
pub fn within_dist(a: &Point, b: &Point, radius: f64) -> bool {
    let l = dist_sq(a, b);
    let r = radius * radius;
    if (l - r).abs() > 1e-12 * (l + r) {
        return l <= r;
    }
    exact_dist_sq(a, b) <= rational(radius) * rational(radius)
}

/// Orders edges `(a,b)` by exact length, then by `(min id, max id)`.
pub fn cmp_edges_by_length(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let key = |p: &Point, q: &Point| (p.id.min(q.id), p.id.max(q.id));
    cmp_dist(a, b, c, d).then_with(|| key(a, b).cmp(&key(c, d)))
}

/// Unoriented angle at `vertex` between the rays towards `a` and `b`, in
/// `[0, pi]`.
pub fn angle_at(vertex: &Point, a: &Point, b: &Point) -> f64 {
    let (ux, uy) = (a.x - vertex.x, a.y - vertex.y);
    let (vx, vy) = (b.x - vertex.x, b.y - vertex.y);
    let cross = ux * vy - uy * vx;
    let dot = ux * vx + uy * vy;
    cross.abs().atan2(dot)
}

/// Counterclockwise angle from the ray `vertex -> from` to the ray
/// `vertex -> to`, in `[0, 2pi)`.
pub fn ccw_angle(vertex: &Point, from: &Point, to: &Point) -> f64 {
    let a0 = (from.y - vertex.y).atan2(from.x - vertex.x);
    let a1 = (to.y - vertex.y).atan2(to.x - vertex.x);
    let mut d = a1 - a0;
    if d < 0.0 {
        d += TAU;
    }
    if d >= TAU {
        d -= TAU;
    }
    d
}

/// Polar angle of `x - m` in `[0, 2pi)`.
pub fn polar_angle(m: &Point, x: &Point) -> f64 {
    let a = (x.y - m.y).atan2(x.x - m.x);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn upper_half(m: &Point, x: &Point) -> bool {
    x.y > m.y || (x.y == m.y && x.x > m.x)
}

/// Exact counterclockwise angular order around `m`, starting at the positive
/// x-direction. Equal directions fall back to distance, then id.
pub fn cmp_angle_around(m: &Point, a: &Point, b: &Point) -> Ordering {
    let (ha, hb) = (upper_half(m, a), upper_half(m, b));
    if ha != hb {
        return if ha {
            Ordering::Less
        } else {
            Ordering::Greater
        };
    }
    match orientation(m, a, b) {
        Orientation::Ccw => Ordering::Less,
        Orientation::Cw => Ordering::Greater,
        Orientation::Collinear => cmp_dist(m, a, m, b).then(a.id.cmp(&b.id)),
    }
}

/// Direction of the `j`-th cone boundary ray. Axis and diagonal rays are
/// exact; the rest carry the rounding of `cos`/`sin`, which fixes a single
/// deterministic frame shared by every vertex.
fn boundary_ray(j: usize, k: usize) -> (f64, f64) {
    let j = j % k;
    if (4 * j).is_multiple_of(k) {
        return match 4 * j / k {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        };
    }
    if (8 * j).is_multiple_of(k) {
        return match 8 * j / k {
            1 => (1.0, 1.0),
            3 => (-1.0, 1.0),
            5 => (-1.0, -1.0),
            _ => (1.0, -1.0),
        };
    }
    let theta = TAU * j as f64 / k as f64;
    (theta.cos(), theta.sin())
}

/// Exact sign of `r x (x - m)`.
fn cross_sign(r: (f64, f64), m: &Point, x: &Point) -> Ordering {
    let dx = x.x - m.x;
    let dy = x.y - m.y;
    let v = r.0 * dy - r.1 * dx;
    let mag = (r.0 * dy).abs() + (r.1 * dx).abs();
    if v.abs() > 8.0 * f64::EPSILON * mag {
        return v.partial_cmp(&0.0).unwrap();
    }
    let edx = rational(x.x) - rational(m.x);
    let edy = rational(x.y) - rational(m.y);
    let e = rational(r.0) * edy - rational(r.1) * edx;
    if e.is_zero() {
        Ordering::Equal
    } else if e.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// True when the direction `x - m` is at or counterclockwise past boundary
/// ray `j`, within a half-turn.
fn at_or_after(j: usize, k: usize, m: &Point, x: &Point) -> bool {
    let r = boundary_ray(j, k);
    match cross_sign(r, m, x) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => r.0 * (x.x - m.x) + r.1 * (x.y - m.y) > 0.0,
    }
}

/// Index of the half-open cone `[2 pi i / k, 2 pi (i+1) / k)` containing the
/// direction `x - m`.
pub fn cone_index(m: &Point, x: &Point, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::Precondition("cone count must be at least 1".into()));
    }
    if m.same_position(x) {
        return Err(Error::CoincidentPoints(m.id, x.id));
    }
    Ok(cone_of(m, x, k))
}

pub(crate) fn cone_of(m: &Point, x: &Point, k: usize) -> usize {
    match k {
        1 => 0,
        2 => usize::from(!upper_half(m, x)),
        _ => {
            let t = polar_angle(m, x) * k as f64 / TAU;
            let mut i = (t.floor() as usize).min(k - 1);
            // The float estimate is off by at most one cone near a boundary.
            for _ in 0..k {
                if !at_or_after(i, k, m, x) {
                    i = (i + k - 1) % k;
                } else if at_or_after(i + 1, k, m, x) {
                    i = (i + 1) % k;
                } else {
                    break;
                }
            }
            i
        }
    }
}

/// Checks the instance invariants: ids `0..n` in order, finite coordinates,
/// no two points at the same position.
pub fn validate_points(points: &[Point]) -> Result<()> {
    for (pos, p) in points.iter().enumerate() {
        if p.id != pos {
            return Err(Error::InvalidIds {
                n: points.len(),
                position: pos,
                found: p.id,
            });
        }
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::NonFinite(p.id));
        }
    }
    check_duplicates(points)
}

pub(crate) fn check_duplicates(points: &[Point]) -> Result<()> {
    let mut order: Vec<&Point> = points.iter().collect();
    order.sort_by(|a, b| cmp_xy(a, b));
    for w in order.windows(2) {
        if w[0].same_position(w[1]) {
            let (a, b) = (w[0].id.min(w[1].id), w[0].id.max(w[1].id));
            return Err(Error::DuplicatePoint(a, b));
        }
    }
    Ok(())
}

pub(crate) fn cmp_xy(a: &Point, b: &Point) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// For `q` collinear with segment `ab`, whether `q` lies on the closed segment.
fn on_segment(a: &Point, b: &Point, q: &Point) -> bool {
    let within = |lo: f64, hi: f64, v: f64| lo.min(hi) <= v && v <= lo.max(hi);
    within(a.x, b.x, q.x) && within(a.y, b.y, q.y)
}

/// True when segments `ab` and `cd` meet anywhere other than at a single
/// shared endpoint. Segments sharing an endpoint conflict only when they
/// overlap along a common direction. Identical segments conflict.
pub fn segments_conflict(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let shared = [(a, b, c, d), (a, b, d, c), (b, a, c, d), (b, a, d, c)]
        .into_iter()
        .find(|(s, _, t, _)| s.same_position(t));
    if let Some((s, e, _, f)) = shared {
        if e.same_position(f) {
            return true;
        }
        if orientation(s, e, f) != Orientation::Collinear {
            return false;
        }
        // Same direction from the shared endpoint means overlap.
        let sign = |v: f64| (v > 0.0) as i8 - (v < 0.0) as i8;
        let sx = sign(e.x - s.x) * sign(f.x - s.x);
        let sy = sign(e.y - s.y) * sign(f.y - s.y);
        return sx > 0 || sy > 0;
    }
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return false;
    }
    if o1 == 0 && o2 == 0 {
        return on_segment(a, b, c)
            || on_segment(a, b, d)
            || on_segment(c, d, a)
            || on_segment(c, d, b);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(id: usize, x: f64, y: f64) -> Point {
        Point::new(id, x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(&p(0, 0., 0.), &p(1, 1., 0.), &p(2, 0., 1.)),
            Orientation::Ccw
        );
        assert_eq!(
            orientation(&p(0, 0., 0.), &p(1, 1., 1.), &p(2, 2., 2.)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&p(0, 0., 0.), &p(1, 0., 1.), &p(2, 1., 0.)),
            Orientation::Cw
        );
    }

    #[test]
    fn orientation_is_exact_near_degeneracy() {
        // 0.1 + 0.2 style rounding would misjudge a naive determinant here.
        let a = p(0, 0.5, 0.5);
        let b = p(1, 12.0, 12.0);
        let c = p(2, 24.0, 24.0);
        assert_eq!(orientation(&a, &b, &c), Orientation::Collinear);
        let c2 = p(2, 24.0, 24.000000000000004);
        assert_eq!(orientation(&a, &b, &c2), Orientation::Ccw);
    }

    #[test]
    fn in_circle_examples() {
        let (a, b, c) = (p(0, 0., 0.), p(1, 2., 0.), p(2, 1., 1.));
        assert_eq!(
            in_circle(&a, &b, &c, &p(3, 1., 0.)).unwrap(),
            CircleSide::Inside
        );
        assert_eq!(
            in_circle(&a, &b, &c, &p(3, 5., 5.)).unwrap(),
            CircleSide::Outside
        );
        assert_eq!(
            in_circle(&a, &b, &c, &p(3, 1., -1.)).unwrap(),
            CircleSide::Cocircular
        );
        // mirror winding gives the same answer
        assert_eq!(
            in_circle(&a, &c, &b, &p(3, 1., 0.)).unwrap(),
            CircleSide::Inside
        );
    }

    #[test]
    fn in_circle_rejects_collinear() {
        let r = in_circle(&p(0, 0., 0.), &p(1, 1., 1.), &p(2, 2., 2.), &p(3, 0., 1.));
        assert_eq!(r, Err(Error::DegenerateTriangle([0, 1, 2])));
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(&p(0, 0., 0.), &p(1, 2., 0.), &p(2, 1., 1.)).unwrap();
        assert!((c.center_x - 1.0).abs() < 1e-15 && c.center_y.abs() < 1e-15);
        assert!((c.radius_sq - 1.0).abs() < 1e-15);
        let c = circumcircle(&p(0, 0., 0.), &p(1, 1., 0.), &p(2, 0., 1.)).unwrap();
        assert!((c.center_x - 0.5).abs() < 1e-15 && (c.center_y - 0.5).abs() < 1e-15);
        assert!((c.radius_sq - 0.5).abs() < 1e-15);
        assert!(circumcircle(&p(0, 0., 0.), &p(1, 1., 1.), &p(2, 2., 2.)).is_err());
    }

    #[test]
    fn cone_index_examples() {
        let m = p(0, 0., 0.);
        assert_eq!(cone_index(&m, &p(1, 1., 0.), 14).unwrap(), 0);
        assert_eq!(cone_index(&m, &p(1, 0., 1.), 4).unwrap(), 1);
        assert_eq!(cone_index(&m, &p(1, -1., -1.), 8).unwrap(), 5);
        assert_eq!(cone_index(&m, &p(1, 1., -1e-300), 14).unwrap(), 13);
        assert_eq!(
            cone_index(&m, &p(1, 0., 0.), 14),
            Err(Error::CoincidentPoints(0, 1))
        );
    }

    #[test]
    fn cone_index_small_k() {
        let m = p(0, 0., 0.);
        assert_eq!(cone_index(&m, &p(1, -3., -2.), 1).unwrap(), 0);
        assert_eq!(cone_index(&m, &p(1, -3., 0.), 2).unwrap(), 1);
        assert_eq!(cone_index(&m, &p(1, 3., 0.), 2).unwrap(), 0);
        assert_eq!(cone_index(&m, &p(1, -1., -1.), 3).unwrap(), 1);
    }

    #[test]
    fn perturbed_in_circle_breaks_square_ties() {
        let (a, b, c, d) = (p(0, 0., 0.), p(1, 1., 0.), p(2, 1., 1.), p(3, 0., 1.));
        let s = in_circle_perturbed(&a, &b, &c, &d);
        assert_ne!(s, 0);
        // Consistency under a cyclic shift of the ccw triangle.
        assert_eq!(s, in_circle_perturbed(&b, &c, &a, &d));
    }

    #[test]
    fn exact_distance_ties() {
        let o = p(0, 0., 0.);
        assert_eq!(
            cmp_dist(&o, &p(1, 3., 4.), &o, &p(2, 5., 0.)),
            Ordering::Equal
        );
        assert!(within_dist(&o, &p(1, 1., 0.), 1.0));
        assert!(!within_dist(&o, &p(1, 1.0000000000000002, 0.), 1.0));
    }

    #[test]
    fn validation_errors() {
        assert!(validate_points(&[p(0, 0., 0.), p(1, 1., 0.)]).is_ok());
        assert!(matches!(
            validate_points(&[p(1, 0., 0.)]),
            Err(Error::InvalidIds { .. })
        ));
        assert_eq!(
            validate_points(&[p(0, 0., 0.), p(1, 0., 0.)]),
            Err(Error::DuplicatePoint(0, 1))
        );
        assert_eq!(
            validate_points(&[p(0, f64::NAN, 0.)]),
            Err(Error::NonFinite(0))
        );
    }

    #[test]
    fn segment_conflicts() {
        let (o, a, b, c) = (p(0, 0., 0.), p(1, 1., 1.), p(2, 0., 1.), p(3, 1., 0.));
        assert!(segments_conflict(&o, &a, &b, &c));
        assert!(!segments_conflict(&o, &a, &o, &b));
        assert!(!segments_conflict(&o, &b, &a, &c));
        // T-junction and collinear overlap
        assert!(segments_conflict(&o, &p(4, 2., 0.), &c, &p(5, 1., 3.)));
        assert!(segments_conflict(&o, &p(4, 2., 0.), &o, &c));
        assert!(!segments_conflict(&c, &p(4, 2., 0.), &o, &p(5, -1., 0.)));
        assert!(segments_conflict(&o, &p(4, 2., 0.), &c, &p(6, 3., 0.)));
        assert!(!segments_conflict(&o, &c, &p(4, 2., 0.), &p(6, 3., 0.)));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -1000.0f64..1000.0
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(ax in coord(), ay in coord(), bx in coord(), by in coord(), cx in coord(), cy in coord()) {
            let (a, b, c) = (p(0, ax, ay), p(1, bx, by), p(2, cx, cy));
            let o = orientation(&a, &b, &c);
            prop_assert_eq!(orientation(&b, &a, &c), o.reversed());
            prop_assert_eq!(orientation(&a, &c, &b), o.reversed());
            prop_assert_eq!(orientation(&c, &b, &a), o.reversed());
        }

        #[test]
        fn in_circle_permutation_invariant(ax in coord(), ay in coord(), bx in coord(), by in coord(), cx in coord(), cy in coord(), dx in coord(), dy in coord()) {
            let (a, b, c, d) = (p(0, ax, ay), p(1, bx, by), p(2, cx, cy), p(3, dx, dy));
            prop_assume!(orientation(&a, &b, &c) != Orientation::Collinear);
            let s = in_circle(&a, &b, &c, &d).unwrap();
            prop_assert_eq!(in_circle(&b, &c, &a, &d).unwrap(), s);
            prop_assert_eq!(in_circle(&c, &a, &b, &d).unwrap(), s);
            prop_assert_eq!(in_circle(&b, &a, &c, &d).unwrap(), s);
        }

        #[test]
        fn cone_rotation_increments(theta in 0.0f64..TAU, r in 0.01f64..100.0, k in 3usize..40) {
            let width = TAU / k as f64;
            let frac = (theta / width).fract();
            prop_assume!(frac > 1e-6 && frac < 1.0 - 1e-6);
            let m = p(0, 0.25, -0.5);
            let x = p(1, m.x + r * theta.cos(), m.y + r * theta.sin());
            let phi = theta + width;
            let y = p(2, m.x + r * phi.cos(), m.y + r * phi.sin());
            let i = cone_index(&m, &x, k).unwrap();
            prop_assert_eq!(cone_index(&m, &y, k).unwrap(), (i + 1) % k);
            prop_assert_eq!(i, (theta / width).floor() as usize % k);
        }

        #[test]
        fn angular_order_is_consistent(ax in coord(), ay in coord(), bx in coord(), by in coord()) {
            let m = p(0, 0.0, 0.0);
            let (a, b) = (p(1, ax, ay), p(2, bx, by));
            prop_assume!(!a.same_position(&m) && !b.same_position(&m));
            let o = cmp_angle_around(&m, &a, &b);
            prop_assert_eq!(cmp_angle_around(&m, &b, &a), o.reverse());
            if o == Ordering::Less {
                prop_assert!(cone_of(&m, &a, 14) <= cone_of(&m, &b, 14));
            }
        }
    }
}
