//! Independent reference implementations used by the integration tests.
//! None of these share code with the library beyond the `Point` and
//! `GeoGraph` containers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use planespan::{GeoGraph, Point};

pub fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Circumcenter of `abc` from the intersection of two perpendicular
/// bisectors, in exact rational arithmetic. `None` for collinear input.
pub fn circumcenter_exact(a: &Point, b: &Point, c: &Point) -> Option<(BigRational, BigRational)> {
    let (ax, ay, bx, by, cx, cy) = (rat(a.x), rat(a.y), rat(b.x), rat(b.y), rat(c.x), rat(c.y));
    // Bisector of ab: 2(b-a).X = |b|^2 - |a|^2, likewise for ac.
    let two = BigRational::from_integer(BigInt::from(2));
    let (a1, b1) = (&two * (&bx - &ax), &two * (&by - &ay));
    let c1 = &bx * &bx + &by * &by - &ax * &ax - &ay * &ay;
    let (a2, b2) = (&two * (&cx - &ax), &two * (&cy - &ay));
    let c2 = &cx * &cx + &cy * &cy - &ax * &ax - &ay * &ay;
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return None;
    }
    let x = (&c1 * &b2 - &c2 * &b1) / &det;
    let y = (&a1 * &c2 - &a2 * &c1) / &det;
    Some((x, y))
}

/// +1 inside, 0 on, -1 outside the circle through `abc`; `None` if collinear.
pub fn in_circle_oracle(a: &Point, b: &Point, c: &Point, p: &Point) -> Option<i8> {
    let (ox, oy) = circumcenter_exact(a, b, c)?;
    let d2 = |q: &Point| {
        let dx = rat(q.x) - &ox;
        let dy = rat(q.y) - &oy;
        &dx * &dx + &dy * &dy
    };
    Some(match d2(p).cmp(&d2(a)) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    })
}

/// Delaunay edges by definition: `ij` is an edge iff some circle through `i`
/// and `j` has every other point strictly outside. Centers of such circles
/// are `m + t * perp(j - i)`; each other point bounds `t` on one side, so the
/// test is whether an open interval of `t` survives. Assumes no four points
/// are cocircular.
pub fn brute_force_delaunay(points: &[Point]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            let (pi, pj) = (&points[i], &points[j]);
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let mx = (rat(pi.x) + rat(pj.x)) * &half;
            let my = (rat(pi.y) + rat(pj.y)) * &half;
            // perp = (-(yj - yi), xj - xi)
            let px = -(rat(pj.y) - rat(pi.y));
            let py = rat(pj.x) - rat(pi.x);
            let mut lo: Option<BigRational> = None;
            let mut hi: Option<BigRational> = None;
            let mut feasible = true;
            for (k, q) in points.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                // |c - q|^2 - |c - pi|^2 = base + t * slope must be > 0.
                let (qx, qy, ix, iy) = (rat(q.x), rat(q.y), rat(pi.x), rat(pi.y));
                let dq = (&mx - &qx) * (&mx - &qx) + (&my - &qy) * (&my - &qy);
                let di = (&mx - &ix) * (&mx - &ix) + (&my - &iy) * (&my - &iy);
                let base = dq - di;
                let two = BigRational::from_integer(BigInt::from(2));
                let slope = two * (&px * (&ix - &qx) + &py * (&iy - &qy));
                if slope.is_zero() {
                    if !base.is_positive() {
                        feasible = false;
                        break;
                    }
                    continue;
                }
                let bound = -&base / &slope;
                if slope.is_positive() {
                    if lo.as_ref().is_none_or(|l| bound > *l) {
                        lo = Some(bound);
                    }
                } else if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            }
            if feasible {
                if let (Some(l), Some(h)) = (&lo, &hi) {
                    feasible = l < h;
                }
            }
            if feasible {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Minimum spanning tree weight of the complete Euclidean graph by
/// enumerating every labelled tree through its Pruefer sequence.
pub fn exhaustive_mst_weight(points: &[Point]) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return dist(&points[0], &points[1]);
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut best = f64::INFINITY;
    loop {
        best = best.min(pruefer_weight(points, &seq));
        // Next sequence in base-n counting order.
        let mut pos = 0;
        while pos < len {
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
        if pos == len {
            return best;
        }
    }
}

fn pruefer_weight(points: &[Point], seq: &[usize]) -> f64 {
    let n = points.len();
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut w = 0.0;
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        w += dist(&points[leaf], &points[s]);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    w + dist(&points[rest[0]], &points[rest[1]])
}

pub fn dist(a: &Point, b: &Point) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// All-pairs shortest path lengths.
pub fn floyd_warshall(g: &GeoGraph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v) in g.edges() {
        let w = dist(g.point(u), g.point(v));
        d[u][v] = w;
        d[v][u] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Largest `c_h(X,Y) / |XY|` over edges of `g`, from all-pairs distances.
pub fn naive_stretch_vs_base(h: &GeoGraph, g: &GeoGraph) -> f64 {
    let d = floyd_warshall(h);
    g.edges()
        .into_iter()
        .map(|(u, v)| d[u][v] / dist(g.point(u), g.point(v)))
        .fold(1.0, f64::max)
}

/// Largest `c_h(A,B) / |AB|` over all pairs.
#[allow(clippy::needless_range_loop)]
pub fn naive_stretch_vs_complete(h: &GeoGraph) -> f64 {
    let d = floyd_warshall(h);
    let mut best = 1.0f64;
    for i in 0..h.n() {
        for j in i + 1..h.n() {
            best = best.max(d[i][j] / dist(h.point(i), h.point(j)));
        }
    }
    best
}

fn orient_exact(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = (rat(b.x) - rat(a.x)) * (rat(c.y) - rat(a.y))
        - (rat(b.y) - rat(a.y)) * (rat(c.x) - rat(a.x));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_closed_segment(a: &Point, b: &Point, q: &Point) -> bool {
    orient_exact(a, b, q) == 0
        && a.x.min(b.x) <= q.x
        && q.x <= a.x.max(b.x)
        && a.y.min(b.y) <= q.y
        && q.y <= a.y.max(b.y)
}

/// Whether two edges meet anywhere other than a single shared endpoint.
fn edges_meet(g: &GeoGraph, e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b, c, d) = (g.point(e.0), g.point(e.1), g.point(f.0), g.point(f.1));
    let shared: Vec<usize> = [e.0, e.1]
        .into_iter()
        .filter(|x| *x == f.0 || *x == f.1)
        .collect();
    if shared.len() == 1 {
        let s = g.point(shared[0]);
        let x = if e.0 == shared[0] { b } else { a };
        let y = if f.0 == shared[0] { d } else { c };
        // Overlap iff one far endpoint lies on the other segment.
        return on_closed_segment(s, x, y) || on_closed_segment(s, y, x);
    }
    let (o1, o2, o3, o4) = (
        orient_exact(a, b, c),
        orient_exact(a, b, d),
        orient_exact(c, d, a),
        orient_exact(c, d, b),
    );
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_closed_segment(a, b, c)
        || on_closed_segment(a, b, d)
        || on_closed_segment(c, d, a)
        || on_closed_segment(c, d, b)
}

/// O(m^2) planarity: every pair of edges is compared.
pub fn naive_is_plane(g: &GeoGraph) -> bool {
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges_meet(g, edges[i], edges[j]) {
                return false;
            }
        }
    }
    true
}

/// Fixed-point reals with `DIGITS` decimal digits, enough for the bound
/// constants.
pub mod hp {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub const DIGITS: u32 = 60;

    pub fn scale() -> BigInt {
        BigInt::from(10u32).pow(DIGITS)
    }

    pub fn from_int(v: i64) -> BigInt {
        BigInt::from(v) * scale()
    }

    pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
        a * b / scale()
    }

    pub fn div(a: &BigInt, b: &BigInt) -> BigInt {
        a * scale() / b
    }

    /// `arctan(1/x)` by its Taylor series.
    fn arctan_inv(x: i64) -> BigInt {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = scale() / &x;
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    }

    /// Machin's formula.
    pub fn pi() -> BigInt {
        BigInt::from(16) * arctan_inv(5) - BigInt::from(4) * arctan_inv(239)
    }

    pub fn cos(x: &BigInt) -> BigInt {
        let x2 = mul(x, x);
        let mut term = scale();
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !term.is_zero() {
            sum += &term;
            term = -mul(&term, &x2) / BigInt::from((2 * k + 1) * (2 * k + 2));
            k += 1;
        }
        sum
    }

    /// `1 + 2pi / (k cos(pi/k))`.
    pub fn rho(k: i64) -> BigInt {
        let pi = pi();
        let c = cos(&(&pi / BigInt::from(k)));
        from_int(1) + div(&(BigInt::from(2) * &pi), &(BigInt::from(k) * c))
    }

    /// `2pi / (3 cos(pi/6))`.
    pub fn c_del() -> BigInt {
        let pi = pi();
        let c = cos(&(&pi / BigInt::from(6)));
        div(&(BigInt::from(2) * &pi), &(BigInt::from(3) * c))
    }

    pub fn to_f64(v: &BigInt) -> f64 {
        // 17 significant digits are plenty for comparison against f64.
        let shift = BigInt::from(10u32).pow(DIGITS - 18);
        let top: BigInt = v / shift;
        top.to_string().parse::<f64>().unwrap() / 1e18
    }

    pub fn one() -> BigInt {
        BigInt::one() * scale()
    }
}
