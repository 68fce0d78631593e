//! Three copies of a triangle: the corner copies at 2/3 cover it, and no
//! split of its vertices and centroid into three groups does better.
//!
//!     cargo run --release --example triangle

use covgamma::body::Triangle;
use covgamma::cover::verify_covering_2d;
use covgamma::linalg::scale;
use covgamma::radius::triangle_gamma3;
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    let t = Triangle::standard();
    let g = triangle_gamma3(&t)?;
    println!("ratio {}: corner copies {:?} in {} cells", g.ratio, g.covering.status, g.covering.cells);
    println!("optimal split of vertices + centroid: {:?}", g.witness_groups);

    let lambda = Rational::new(3, 5);
    let corners: Vec<_> = t.vertices.iter().map(|v| scale(v, &(Rational::one() - &lambda))).collect();
    let r = verify_covering_2d(&t, &lambda, &corners)?;
    println!("corner copies at {lambda}: {:?}, witness {:?}", r.status, r.witness.map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    Ok(())
}
