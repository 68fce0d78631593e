//! Node points of the facets and the shapes a copy cuts out of each facet.
//!
//!     cargo run --release --example nodes

use covgamma::linalg::v3;
use covgamma::polytope::{classify_section_counts, facets_of_cross_polytope};
use covgamma::witness::{node_midpoints, node_points};
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    let f = &facets_of_cross_polytope()[0];
    for lambda in [Rational::new(2, 3), Rational::new(3, 5), Rational::new(4, 7)] {
        let n = node_points(f, &lambda)?;
        let m = node_midpoints(f, &lambda)?;
        let show = |p: &[Rational; 3]| format!("({}, {}, {})", p[0], p[1], p[2]);
        println!("facet {:?} at {lambda}", f.signs);
        println!("  nodes     {}", n.iter().map(show).collect::<Vec<_>>().join(" "));
        println!("  midpoints {}", m.iter().map(show).collect::<Vec<_>>().join(" "));
    }

    // a copy at 2/3 containing the vertex e3 meets the four facets around it
    // in triangles, quadrilaterals or pentagons
    let lambda = Rational::new(2, 3);
    let v = v3((0, 1), (0, 1), (1, 1));
    for u in [v3((0, 1), (0, 1), (1, 3)), v3((1, 10), (0, 1), (1, 2)), v3((1, 10), (1, 20), (1, 2))] {
        let counts = classify_section_counts(&u, &lambda, &v)?;
        println!("copy at ({}, {}, {}): vertex counts of facet sections {counts:?}", u[0], u[1], u[2]);
    }
    Ok(())
}
