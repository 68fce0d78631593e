//! Searching for coverings: ratio bisection over the rationals and a
//! witness-driven local search over translations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::{sample_check, verify_covering_with_budget, CoverageStatus, CoveringConfig};
use crate::error::{Error, Result};
use crate::linalg::{l1_dist, zero, Vec3};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisectionResult {
    /// Smallest ratio found to cover.
    pub lambda: Rational,
    /// Largest ratio found not to cover.
    pub below: Rational,
    pub probes: Vec<(Rational, CoverageStatus)>,
}

/// Stern–Brocot bisection: keeps `hi` covered and `lo` uncovered, probing the
/// simplest rational strictly between them each step.
///
/// `translations` produces the copy centers for a given ratio. Coverage by
/// fixed centers is monotone in the ratio, so for a fixed template the result
/// is the least covered ratio among the probes.
pub fn binary_search_lambda<F>(translations: F, lo: &Rational, hi: &Rational, steps: usize, budget: u64) -> Result<BisectionResult>
where
    F: Fn(&Rational) -> Vec<Vec3>,
{
    if lo >= hi || !lo.is_positive() {
        return Err(Error::Precondition(format!("need 0 < lo < hi, got {lo} and {hi}")));
    }
    let check = |l: &Rational| -> Result<CoverageStatus> {
        let cfg = CoveringConfig::cross(l.clone(), &translations(l))?;
        let r = verify_covering_with_budget(&cfg, budget)?;
        if r.status == CoverageStatus::Inconclusive {
            return Err(Error::Budget(budget));
        }
        Ok(r.status)
    };
    let mut probes = Vec::new();
    let top = check(hi)?;
    probes.push((hi.clone(), top));
    if top != CoverageStatus::Covered {
        return Err(Error::Precondition(format!("upper end {hi} does not cover")));
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    for _ in 0..steps {
        let mid = Rational::simplest_between(&lo, &hi);
        let s = check(&mid)?;
        probes.push((mid.clone(), s));
        if s == CoverageStatus::Covered {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BisectionResult { lambda: hi, below: lo, probes })
}

/// Symmetric starting centers: the origin for one copy, otherwise axis
/// points `±(1 − λ)eᵢ`, then `±t(1,±1,0)`-type points with `t = (1 − λ)/2`.
pub fn symmetric_seed(m: usize, lambda: &Rational) -> Vec<Vec3> {
    if m == 1 {
        return vec![zero()];
    }
    let t = Rational::one() - lambda;
    let h = &t / Rational::integer(2);
    let mut pool = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut v = zero::<3>();
            v[i] = &t * Rational::integer(s);
            pool.push(v);
        }
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        for (a, b) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
            let mut v = zero::<3>();
            v[i] = &h * Rational::integer(a);
            v[j] = &h * Rational::integer(b);
            pool.push(v);
        }
    }
    pool.truncate(m);
    while pool.len() < m {
        pool.push(zero());
    }
    pool
}

/// Denominator used when rounding moved centers.
const GRID: i64 = 420;

fn round(x: &Rational) -> Rational {
    let scaled = x * Rational::integer(GRID);
    let below = scaled.floor();
    let nearest = if &scaled - &below >= Rational::new(1, 2) { below + Rational::one() } else { below };
    nearest / Rational::integer(GRID)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSearchReport {
    /// A configuration the exact certifier accepted.
    pub config: Option<CoveringConfig>,
    pub iterations: usize,
}

/// Moves the center nearest to each uncovered witness toward it, accepting a
/// move when sampled coverage does not drop. Only certified coverings are
/// returned.
pub fn local_search_upper(m: usize, lambda: &Rational, seed: u64, iterations: usize, budget: u64) -> Result<LocalSearchReport> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    const SAMPLES: u64 = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = symmetric_seed(m, lambda);
    let mut cfg = CoveringConfig::cross(lambda.clone(), &centers)?;
    let mut score = sample_check(&cfg, SAMPLES, seed).covered;
    for it in 0..iterations {
        let r = verify_covering_with_budget(&cfg, budget)?;
        let witness: Vec3 = match r.status {
            CoverageStatus::Covered => return Ok(LocalSearchReport { config: Some(cfg), iterations: it }),
            CoverageStatus::Inconclusive => return Err(Error::Budget(budget)),
            CoverageStatus::NotCovered => {
                let w = r.witness.expect("witness");
                v3_from(&w)
            }
        };
        let mut by_distance: Vec<usize> = (0..m).collect();
        by_distance.sort_by_key(|&i| (l1_dist(&centers[i], &witness), i));
        let pick = if rng.gen_bool(0.75) { by_distance[0] } else { by_distance[rng.gen_range(0..m)] };
        let step = Rational::new(1, 1 << rng.gen_range(1..4));
        let mut moved = centers.clone();
        moved[pick] = std::array::from_fn(|k| round(&(&centers[pick][k] + &step * (&witness[k] - &centers[pick][k]))));
        let candidate = CoveringConfig::cross(lambda.clone(), &moved)?;
        let s = sample_check(&candidate, SAMPLES, seed).covered;
        if s >= score {
            centers = moved;
            cfg = candidate;
            score = s;
        }
    }
    Ok(LocalSearchReport { config: None, iterations })
}

fn v3_from(w: &[Rational]) -> Vec3 {
    std::array::from_fn(|i| w[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::DEFAULT_CELL_BUDGET;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn axes_at_third(_: &Rational) -> Vec<Vec3> {
        symmetric_seed(6, &q(2, 3))
    }

    #[test]
    fn bisection_finds_two_thirds() {
        let r = binary_search_lambda(axes_at_third, &q(1, 2), &q(1, 1), 8, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.lambda, q(2, 3));
        assert!(r.below < q(2, 3));
        assert_eq!(r.probes[1], (q(2, 3), CoverageStatus::Covered));
    }

    #[test]
    fn bisection_single_copy_and_pair() {
        let r = binary_search_lambda(|_| vec![zero()], &q(1, 2), &q(1, 1), 6, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.lambda, q(1, 1));
        let pair = |l: &Rational| {
            let t = Rational::one() - l;
            vec![[t.clone(), q(0, 1), q(0, 1)], [-t, q(0, 1), q(0, 1)]]
        };
        let r = binary_search_lambda(pair, &q(1, 2), &q(1, 1), 6, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.lambda, q(1, 1));
        assert!(binary_search_lambda(axes_at_third, &q(1, 1), &q(1, 2), 3, DEFAULT_CELL_BUDGET).is_err());
        assert!(binary_search_lambda(axes_at_third, &q(1, 3), &q(1, 2), 3, DEFAULT_CELL_BUDGET).is_err());
    }

    #[test]
    fn local_search_examples() {
        let r = local_search_upper(6, &q(2, 3), 1, 20, DEFAULT_CELL_BUDGET).unwrap();
        assert!(r.config.is_some());
        assert_eq!(r.iterations, 0);
        let r = local_search_upper(1, &q(1, 1), 1, 5, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!(r.config.unwrap().translations, vec![vec![q(0, 1); 3]]);
        let r = local_search_upper(6, &q(3, 5), 1, 15, DEFAULT_CELL_BUDGET).unwrap();
        assert!(r.config.is_none());
    }

    #[test]
    fn rounding_grid() {
        assert_eq!(round(&q(1, 3)), q(1, 3));
        assert_eq!(round(&q(1, 1000)), q(0, 1));
        assert_eq!(round(&q(-1, 3)), q(-1, 3));
    }
}
