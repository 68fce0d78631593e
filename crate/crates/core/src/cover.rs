//! Exact decision of `K ⊆ ⋃ᵢ (λK + uᵢ)`.
//!
//! The uncovered set `K ∖ ⋃ᵢ Cᵢ` is relatively open in `K`, so it is empty iff
//! it has measure zero. The certifier keeps a work list of full-dimensional
//! cells whose union contains the uncovered set up to a null set. A cell is
//! settled when one copy contains all of its vertices; otherwise the copy
//! containing its vertex centroid is removed by splitting the cell along that
//! copy's facets, one closed piece per facet (`h₁ … hⱼ₋₁` kept, `hⱼ` flipped).
//! Pieces without interior are dropped, which is where the measure argument
//! enters. When no remaining copy contains a cell's centroid, that centroid is
//! interior to the cell, hence strictly outside every copy removed above it,
//! and is an uncovered point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::body::{GaugeBody, Triangle};
use crate::cell::{Cell, Clip, Plane};
use crate::error::{Error, Result};
use crate::linalg::{add, scale, Vec3};
use crate::rational::Rational;

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringConfig {
    #[serde(default)]
    pub body: GaugeBody,
    pub lambda: Rational,
    pub translations: Vec<Vec<Rational>>,
}

impl CoveringConfig {
    pub fn new(body: GaugeBody, lambda: Rational, translations: Vec<Vec<Rational>>) -> Result<Self> {
        let cfg = CoveringConfig { body, lambda, translations };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Copies of the cross-polytope.
    pub fn cross<T: AsRef<[Rational]>>(lambda: Rational, translations: &[T]) -> Result<Self> {
        CoveringConfig::new(
            GaugeBody::cross_polytope(),
            lambda,
            translations.iter().map(|t| t.as_ref().to_vec()).collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_positive() {
            return Err(Error::NonPositiveRatio(self.lambda.to_string()));
        }
        if self.translations.is_empty() {
            return Err(Error::Precondition("a covering needs at least one copy".into()));
        }
        for t in &self.translations {
            if t.len() != self.body.dim {
                return Err(Error::Dimension { expected: self.body.dim, got: t.len() });
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.translations.len()
    }

    pub fn with_lambda(&self, lambda: Rational) -> Self {
        CoveringConfig { lambda, ..self.clone() }
    }

    /// Index of the first copy containing `x`.
    pub fn covering_copy(&self, x: &[Rational]) -> Option<usize> {
        self.translations
            .iter()
            .position(|u| self.body.copy_contains(&self.lambda, u, x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageStatus {
    Covered,
    NotCovered,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageResult {
    pub status: CoverageStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Rational>>,
    pub cells: u64,
    pub depth: u32,
}

impl CoverageResult {
    pub fn is_covered(&self) -> bool {
        self.status == CoverageStatus::Covered
    }
}

struct Job<const D: usize> {
    cell: Cell<D>,
    remaining: Vec<usize>,
    depth: u32,
}

fn run<const D: usize>(cfg: &CoveringConfig, budget: u64) -> CoverageResult {
    let copies: Vec<Vec<Plane<D>>> = cfg
        .translations
        .iter()
        .map(|u| cfg.body.copy_planes::<D>(&cfg.lambda, u))
        .collect();
    let root = Cell::from_planes(cfg.body.planes::<D>()).expect("body has nonempty interior");
    let mut stack = vec![Job { cell: root, remaining: (0..copies.len()).collect(), depth: 0 }];
    let mut cells = 0u64;
    let mut max_depth = 0u32;
    while let Some(Job { cell, remaining, depth }) = stack.pop() {
        cells += 1;
        max_depth = max_depth.max(depth);
        if cells > budget {
            return CoverageResult { status: CoverageStatus::Inconclusive, witness: None, cells, depth: max_depth };
        }
        let probe = cell.interior_point();
        let inside = |c: usize| copies[c].iter().all(|h| !h.excess(&probe).is_positive());
        let Some(pos) = remaining.iter().position(|&c| inside(c)) else {
            let witness = probe.to_vec();
            assert!(
                cfg.body.contains(&witness) && cfg.covering_copy(&witness).is_none(),
                "uncovered witness failed re-verification"
            );
            return CoverageResult { status: CoverageStatus::NotCovered, witness: Some(witness), cells, depth: max_depth };
        };
        let chosen = &copies[remaining[pos]];
        if chosen.iter().all(|h| cell.inside(h)) {
            continue;
        }
        let mut rest = remaining.clone();
        rest.remove(pos);
        let mut pieces = Vec::new();
        let mut cur = cell;
        for h in chosen {
            match cur.clip(&h.flipped()) {
                Clip::Vanished => {}
                Clip::Unchanged => {
                    pieces.push(cur);
                    break;
                }
                Clip::Cut(piece) => {
                    pieces.push(piece);
                    match cur.clip(h) {
                        Clip::Cut(next) => cur = next,
                        Clip::Unchanged => {}
                        Clip::Vanished => break,
                    }
                }
            }
        }
        // last piece is explored first; reverse so the first facet's piece is
        for cell in pieces.into_iter().rev() {
            stack.push(Job { cell, remaining: rest.clone(), depth: depth + 1 });
        }
    }
    CoverageResult { status: CoverageStatus::Covered, witness: None, cells, depth: max_depth }
}

/// Exact coverage decision with a cell budget.
pub fn verify_covering_with_budget(cfg: &CoveringConfig, budget: u64) -> Result<CoverageResult> {
    cfg.validate()?;
    match cfg.body.dim {
        2 => Ok(run::<2>(cfg, budget)),
        3 => Ok(run::<3>(cfg, budget)),
        d => Err(Error::Dimension { expected: 3, got: d }),
    }
}

pub fn verify_covering(cfg: &CoveringConfig) -> Result<CoverageResult> {
    verify_covering_with_budget(cfg, DEFAULT_CELL_BUDGET)
}

/// Coverage of a triangle `T ⊂ 𝔼³` by the copies `λT + uᵢ`; a witness is
/// returned in 𝔼³.
///
/// In the chart `φ`, `φ(λT + u) = λΔ + φ(λv₀ + u)` with `Δ` the standard simplex.
pub fn verify_covering_2d(t: &Triangle, lambda: &Rational, translations: &[Vec3]) -> Result<CoverageResult> {
    let v0 = &t.vertices[0];
    let mut chart = Vec::new();
    for u in translations {
        let anchor = add(&scale(v0, lambda), u);
        let c = t
            .to_chart(&anchor)
            .ok_or_else(|| Error::Precondition("copy leaves the triangle's plane".into()))?;
        chart.push(c.to_vec());
    }
    let cfg = CoveringConfig::new(t.body(), lambda.clone(), chart)?;
    let mut r = verify_covering(&cfg)?;
    if let Some(w) = r.witness.take() {
        r.witness = Some(t.from_chart(&w).to_vec());
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub samples: u64,
    pub covered: u64,
    /// First sampled point outside every copy.
    pub uncovered_example: Option<Vec<Rational>>,
}

impl SampleReport {
    pub fn fraction(&self) -> f64 {
        self.covered as f64 / self.samples as f64
    }
}

const SAMPLE_DENOMINATOR: i64 = 1 << 20;

/// Deterministic random rational points of the body, tested against the copies.
pub fn sample_check(cfg: &CoveringConfig, n: u64, seed: u64) -> SampleReport {
    assert!(n >= 1, "at least one sample");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = cfg.body.dim;
    let (lo, hi) = bounding_box(&cfg.body);
    let mut covered = 0;
    let mut uncovered_example = None;
    let mut taken = 0;
    while taken < n {
        let x: Vec<Rational> = (0..d)
            .map(|i| Rational::new(rng.gen_range(lo[i] * SAMPLE_DENOMINATOR..=hi[i] * SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR))
            .collect();
        if !cfg.body.contains(&x) {
            continue;
        }
        taken += 1;
        if cfg.covering_copy(&x).is_some() {
            covered += 1;
        } else if uncovered_example.is_none() {
            uncovered_example = Some(x);
        }
    }
    SampleReport { samples: n, covered, uncovered_example }
}

/// Integer box containing the body.
fn bounding_box(body: &GaugeBody) -> (Vec<i64>, Vec<i64>) {
    let verts: Vec<Vec<Rational>> = match body.dim {
        2 => Cell::from_planes(body.planes::<2>()).unwrap().vertices().map(|v| v.to_vec()).collect(),
        3 => Cell::from_planes(body.planes::<3>()).unwrap().vertices().map(|v| v.to_vec()).collect(),
        d => panic!("unsupported dimension {d}"),
    };
    let lo = (0..body.dim)
        .map(|i| verts.iter().map(|v| v[i].floor().to_f64() as i64).min().unwrap())
        .collect();
    let hi = (0..body.dim)
        .map(|i| verts.iter().map(|v| -((-&v[i]).floor().to_f64() as i64)).max().unwrap())
        .collect();
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::v3;
    use crate::polytope::{cross_polytope, homothet, symmetry_group, Emptiness, HPolytope};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn axes(t: Rational) -> Vec<Vec3> {
        let mut out = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = crate::linalg::zero::<3>();
                v[i] = &t * Rational::integer(s);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn six_axis_copies() {
        let cfg = CoveringConfig::cross(q(2, 3), &axes(q(1, 3))).unwrap();
        let r = verify_covering(&cfg).unwrap();
        assert_eq!(r.status, CoverageStatus::Covered);
        assert!(r.witness.is_none());

        let r = verify_covering(&cfg.with_lambda(q(13, 20))).unwrap();
        assert_eq!(r.status, CoverageStatus::NotCovered);
        let w = r.witness.unwrap();
        assert!(cross_polytope().contains(&[w[0].clone(), w[1].clone(), w[2].clone()]));
        assert_eq!(cfg.with_lambda(q(13, 20)).covering_copy(&w), None);
    }

    #[test]
    fn identity_copy_and_budget() {
        let cfg = CoveringConfig::cross(q(1, 1), &[crate::linalg::zero::<3>()]).unwrap();
        let r = verify_covering(&cfg).unwrap();
        assert!(r.is_covered());
        assert_eq!(r.cells, 1);
        let cfg = CoveringConfig::cross(q(2, 3), &axes(q(1, 3))).unwrap();
        let r = verify_covering_with_budget(&cfg, 2).unwrap();
        assert_eq!(r.status, CoverageStatus::Inconclusive);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(CoveringConfig::cross(q(0, 1), &axes(q(1, 3))).is_err());
        assert!(CoveringConfig::cross::<Vec3>(q(1, 2), &[]).is_err());
        assert!(CoveringConfig::cross(q(1, 2), &[vec![q(0, 1)]]).is_err());
    }

    #[test]
    fn triangle_corner_copies() {
        let t = Triangle::standard();
        let corners = |l: &Rational| -> Vec<Vec3> {
            t.vertices.iter().map(|v| crate::linalg::scale(v, &(Rational::one() - l))).collect()
        };
        let l = q(2, 3);
        assert!(verify_covering_2d(&t, &l, &corners(&l)).unwrap().is_covered());
        let l = q(1, 2);
        let r = verify_covering_2d(&t, &l, &corners(&l)).unwrap();
        assert_eq!(r.status, CoverageStatus::NotCovered);
        let w = r.witness.unwrap();
        assert!(t.to_chart(&[w[0].clone(), w[1].clone(), w[2].clone()]).is_some());
        let one = q(1, 1);
        assert!(verify_covering_2d(&t, &one, &[crate::linalg::zero()]).unwrap().is_covered());
    }

    /// Independent check through the H-form emptiness LP: `K ∖ ⋃ Cᵢ` is empty
    /// iff every choice of one violated facet per copy gives an empty set.
    fn covered_by_lp(cfg: &CoveringConfig) -> bool {
        let copies: Vec<HPolytope> = cfg
            .translations
            .iter()
            .map(|u| homothet(&cross_polytope(), &cfg.lambda, &[u[0].clone(), u[1].clone(), u[2].clone()]).unwrap())
            .collect();
        fn rec(p: &HPolytope, copies: &[HPolytope]) -> bool {
            if p.is_empty().is_empty() {
                return true;
            }
            let Some((c, rest)) = copies.split_first() else { return false };
            c.halfspaces.iter().all(|h| rec(&p.with(h.complement()), rest))
        }
        rec(&cross_polytope(), &copies)
    }

    #[test]
    fn agrees_with_lp_decomposition_on_small_configs() {
        let configs = [
            (q(2, 3), vec![v3((1, 3), (0, 1), (0, 1)), v3((-1, 3), (0, 1), (0, 1))]),
            (q(1, 2), vec![v3((1, 2), (0, 1), (0, 1)), v3((-1, 2), (0, 1), (0, 1))]),
            (q(3, 4), vec![v3((1, 4), (0, 1), (0, 1)), v3((-1, 4), (0, 1), (0, 1))]),
            (q(1, 1), vec![v3((1, 10), (0, 1), (0, 1)), v3((-1, 4), (0, 1), (0, 1))]),
            (q(9, 10), vec![v3((1, 10), (0, 1), (0, 1)), v3((-1, 10), (0, 1), (0, 1))]),
        ];
        for (l, us) in configs {
            let cfg = CoveringConfig::cross(l, &us).unwrap();
            let exact = verify_covering(&cfg).unwrap().is_covered();
            assert_eq!(exact, covered_by_lp(&cfg), "{cfg:?}");
        }
    }

    #[test]
    fn witness_region_is_nonempty_under_strict_semantics() {
        let cfg = CoveringConfig::cross(q(13, 20), &axes(q(1, 3))).unwrap();
        let w = verify_covering(&cfg).unwrap().witness.unwrap();
        let w: Vec3 = [w[0].clone(), w[1].clone(), w[2].clone()];
        // strictly outside every copy: a strict halfspace system around w is nonempty
        for u in &cfg.translations {
            let c = homothet(&cross_polytope(), &cfg.lambda, &[u[0].clone(), u[1].clone(), u[2].clone()]).unwrap();
            let outside = c.halfspaces.iter().any(|h| h.complement().contains(&w));
            assert!(outside);
        }
        let p = cross_polytope();
        assert!(matches!(p.is_empty(), Emptiness::Nonempty { .. }));
    }

    #[test]
    fn covered_stays_covered_under_symmetry_and_growth() {
        let base = axes(q(1, 3));
        for g in symmetry_group().into_iter().step_by(7) {
            let moved: Vec<Vec3> = base.iter().map(|u| g.apply(u)).collect();
            let cfg = CoveringConfig::cross(q(2, 3), &moved).unwrap();
            assert!(verify_covering(&cfg).unwrap().is_covered());
        }
        let cfg = CoveringConfig::cross(q(2, 3) + q(1, 100), &base).unwrap();
        assert!(verify_covering(&cfg).unwrap().is_covered());
    }

    #[test]
    fn samples_agree() {
        let cfg = CoveringConfig::cross(q(2, 3), &axes(q(1, 3))).unwrap();
        let r = sample_check(&cfg, 2000, 7);
        assert_eq!(r.covered, 2000);
        assert_eq!(r, sample_check(&cfg, 2000, 7));
        let r = sample_check(&cfg.with_lambda(q(13, 20)), 4000, 7);
        assert!(r.covered < 4000);
        let id = CoveringConfig::cross(q(1, 1), &[crate::linalg::zero::<3>()]).unwrap();
        assert_eq!(sample_check(&id, 1, 0).fraction(), 1.0);
    }

    #[test]
    fn verdict_json_shape() {
        let cfg = CoveringConfig::cross(q(2, 3), &axes(q(1, 3))).unwrap();
        let r = verify_covering(&cfg).unwrap();
        let s = serde_json::to_value(&r).unwrap();
        assert_eq!(s["status"], "covered");
        assert!(s.get("witness").is_none());
    }
}
