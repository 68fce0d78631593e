//! Lower bounds from finite witness sets: no split into `m` groups has every
//! group inside a copy smaller than the target.
//!
//!     cargo run --release --example lower_bounds

use covgamma::assign::{best_lower_bound, certify_lower_bound, DEFAULT_NODE_BUDGET};
use covgamma::witness::{Generator, WitnessSet};
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    let q = Rational::new;
    let runs = [
        (5, q(1, 1), vec![Generator::Vertices]),
        (6, q(1, 1), vec![Generator::Vertices]),
        (9, q(2, 3), vec![Generator::Vertices, Generator::FacetCenters]),
        (11, q(3, 5), vec![Generator::Vertices, Generator::NodePoints(q(3, 5))]),
        (12, q(3, 5), vec![Generator::Vertices, Generator::NodePoints(q(3, 5))]),
    ];
    for (m, target, gens) in runs {
        let w = WitnessSet::build(&gens)?;
        let v = certify_lower_bound(m, &target, &w, DEFAULT_NODE_BUDGET)?;
        println!("m={m:<2} target {target:<4} |W|={:<2} {:?} ({} nodes)", w.len(), v.status, v.nodes_explored);
        if let Some(groups) = &v.counterexample {
            let worst = groups.iter().map(|g| g.ratio.clone()).max().expect("groups");
            println!("      split into {} groups, largest ratio {worst}", groups.len());
        }
    }

    let w = WitnessSet::build(&[Generator::Vertices, Generator::NodePoints(q(3, 5))])?;
    if let Some((b, _)) = best_lower_bound(12, &w, DEFAULT_NODE_BUDGET)? {
        println!("best bound these points give for m=12: {b}");
    }
    Ok(())
}
