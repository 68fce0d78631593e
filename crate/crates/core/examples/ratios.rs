//! Smallest enclosing copies of small point sets, computed by exact LP.
//!
//!     cargo run --release --example ratios

use covgamma::body::GaugeBody;
use covgamma::linalg::{v3, Vec3};
use covgamma::polytope::FacetTriangle;
use covgamma::radius::min_ratio;
use covgamma::witness::{node_triple_minimum, node_points};
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    let k = GaugeBody::cross_polytope();
    let center = |s: [i64; 3]| v3((s[0], 3), (s[1], 3), (s[2], 3));
    let sets: [(&str, Vec<Vec3>); 4] = [
        ("two adjacent vertices", vec![v3((1, 1), (0, 1), (0, 1)), v3((0, 1), (0, 1), (1, 1))]),
        ("centers sharing one vertex", vec![center([1, 1, 1]), center([-1, -1, 1])]),
        ("opposite centers", vec![center([1, 1, 1]), center([-1, -1, -1])]),
        ("three centers around e3", vec![center([1, 1, 1]), center([-1, 1, 1]), center([1, -1, 1])]),
    ];
    for (name, pts) in sets {
        let c = min_ratio(&k, &pts);
        assert!(c.verify(&k, &pts));
        let u = &c.center;
        println!("{name:<28} ratio {:<4} center ({}, {}, {})", c.ratio, u[0], u[1], u[2]);
    }

    for eta in [Rational::new(3, 5), Rational::new(4, 7)] {
        let pts: Vec<Vec3> = [[1, 1, 1], [-1, 1, 1], [1, -1, 1]]
            .into_iter()
            .map(|s| {
                let n = node_points(&FacetTriangle::from_signs(s), &eta).expect("valid ratio");
                n.into_iter().max_by(|a, b| a[2].cmp(&b[2])).expect("three points")
            })
            .collect();
        let (min, argmin) = node_triple_minimum(&eta)?;
        println!(
            "node points at {eta} nearest e3: ratio {}; minimum over all triples {min} ({} triples)",
            min_ratio(&k, &pts).ratio,
            argmin.len()
        );
    }
    Ok(())
}
