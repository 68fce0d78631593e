//! Certify that six axis copies at 2/3 cover the octahedron, then shrink them
//! until a hole appears.
//!
//!     cargo run --release --example verify_covering

use covgamma::configs::find_entry;
use covgamma::cover::{sample_check, verify_covering};
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    let cfg = find_entry("m6").expect("catalog entry").config();
    let r = verify_covering(&cfg)?;
    println!("m=6 at {}: {:?} after {} cells (depth {})", cfg.lambda, r.status, r.cells, r.depth);

    let smaller = cfg.with_lambda(Rational::new(13, 20));
    let r = verify_covering(&smaller)?;
    let w = r.witness.expect("uncovered point");
    println!("m=6 at {}: {:?}, uncovered point ({}, {}, {})", smaller.lambda, r.status, w[0], w[1], w[2]);
    println!("  no copy contains it: {}", smaller.covering_copy(&w).is_none());

    let s = sample_check(&smaller, 20_000, 1);
    println!("  sampled coverage {:.4}", s.fraction());
    Ok(())
}
