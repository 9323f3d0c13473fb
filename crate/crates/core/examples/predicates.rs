//! Exact orientation, in-circle and cone predicates.

use planespan::geom::{self, Point};

fn main() -> planespan::Result<()> {
    let a = Point::new(0, 0.0, 0.0);
    let b = Point::new(1, 2.0, 0.0);
    let c = Point::new(2, 1.0, 1.0);

    println!("orientation(a, b, c) = {:?}", geom::orientation(&a, &b, &c));
    for (x, y) in [(1.0, 0.0), (5.0, 5.0), (1.0, -1.0)] {
        let p = Point::new(3, x, y);
        println!(
            "in_circle(a, b, c, ({x}, {y})) = {:?}",
            geom::in_circle(&a, &b, &c, &p)?
        );
    }
    let circle = geom::circumcircle(&a, &b, &c)?;
    println!(
        "circumcircle: center ({}, {}), radius^2 {}",
        circle.center_x, circle.center_y, circle.radius_sq
    );

    // Nearly collinear: a float determinant would round to zero.
    let q = Point::new(4, 0.5 + f64::EPSILON, 0.5);
    let r = Point::new(5, 12.0, 12.0);
    println!(
        "orientation near degeneracy = {:?}",
        geom::orientation(&Point::new(6, 0.0, 0.0), &q, &r)
    );

    for k in [4, 8, 14] {
        let x = Point::new(7, -1.0, -1.0);
        println!(
            "cone of (-1, -1) with k = {k}: {}",
            geom::cone_index(&a, &x, k)?
        );
    }
    Ok(())
}
