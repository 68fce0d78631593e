//! Repair incomplete or non-covering translation lists by symmetry, then
//! search the ratio and the translations directly.
//!
//!     cargo run --release --example completion

use covgamma::configs::{catalog, complete};
use covgamma::cover::DEFAULT_CELL_BUDGET;
use covgamma::search::{binary_search_lambda, local_search_upper, symmetric_seed};
use covgamma::Rational;

fn main() -> covgamma::Result<()> {
    for (idx, target) in [(1, 10), (2, 14)] {
        let mut entry = catalog()[idx].clone();
        entry.verify(DEFAULT_CELL_BUDGET)?;
        println!("{} as listed ({} translations): {:?}", entry.id, entry.translations.len(), entry.verified);
        let cands = complete(&entry, target)?;
        let good: Vec<_> = cands.iter().filter(|c| c.is_covered()).collect();
        println!("  {} candidates with {target} copies, {} cover", cands.len(), good.len());
        for c in good {
            println!("  {}", c.provenance);
        }
    }

    let axes = symmetric_seed(6, &Rational::new(2, 3));
    let b = binary_search_lambda(|_| axes.clone(), &Rational::new(1, 2), &Rational::one(), 8, DEFAULT_CELL_BUDGET)?;
    println!("six fixed axis copies: least covering ratio {} (fails at {})", b.lambda, b.below);

    let r = local_search_upper(6, &Rational::new(2, 3), 1, 50, DEFAULT_CELL_BUDGET)?;
    println!("local search, 6 copies at 2/3: {}", if r.config.is_some() { "covered" } else { "no covering found" });
    let r = local_search_upper(6, &Rational::new(3, 5), 1, 20, DEFAULT_CELL_BUDGET)?;
    println!("local search, 6 copies at 3/5: {}", if r.config.is_some() { "covered" } else { "no covering found" });
    Ok(())
}
