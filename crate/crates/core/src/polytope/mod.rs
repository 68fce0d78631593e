//! H-representation polytopes in 𝔼³ with per-constraint strictness.

mod facets;
mod symmetry;

pub use facets::{
    classify_section_counts, facet_section, facets_of_cross_polytope, FacetSection, FacetTriangle,
};
pub use symmetry::{subgroups, symmetry_group, SymmetryOp};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, Vec3};
use crate::lp::{solve_lp, Bounds, LpProblem, LpResult, Relation, Sense};
use crate::rational::Rational;

/// `normal · x ≤ rhs`, or `normal · x < rhs` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(rename = "n")]
    pub normal: Vec3,
    #[serde(rename = "b")]
    pub rhs: Rational,
    pub strict: bool,
}

impl HalfSpace {
    pub fn new(normal: Vec3, rhs: Rational) -> Self {
        HalfSpace { normal, rhs, strict: false }
    }

    pub fn strict(normal: Vec3, rhs: Rational) -> Self {
        HalfSpace { normal, rhs, strict: true }
    }

    /// `normal · x − rhs`.
    pub fn excess(&self, x: &Vec3) -> Rational {
        dot(&self.normal, x) - &self.rhs
    }

    pub fn contains(&self, x: &Vec3) -> bool {
        let e = self.excess(x);
        if self.strict {
            e.is_negative()
        } else {
            !e.is_positive()
        }
    }

    /// The open complement `normal · x > rhs` (or closed complement of a strict halfspace).
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: crate::linalg::neg(&self.normal),
            rhs: -&self.rhs,
            strict: !self.strict,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    Nonempty { witness: Vec3 },
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }
}

impl HPolytope {
    pub fn new(halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| crate::linalg::is_zero(&h.normal)) {
            return Err(Error::Precondition(format!("zero normal with rhs {}", h.rhs)));
        }
        Ok(HPolytope { halfspaces })
    }

    pub fn contains(&self, x: &Vec3) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Number of constraints satisfied with equality at `x`.
    pub fn tight_count(&self, x: &Vec3) -> usize {
        self.halfspaces.iter().filter(|h| h.excess(x).is_zero()).count()
    }

    pub fn intersect(&self, other: &HPolytope) -> HPolytope {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        HPolytope { halfspaces }
    }

    pub fn with(&self, h: HalfSpace) -> HPolytope {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.push(h);
        HPolytope { halfspaces }
    }

    /// Exact emptiness under strict semantics.
    ///
    /// Maximizes the smallest slack `s` of the strict constraints (capped at 1)
    /// subject to the non-strict ones. The set is nonempty iff the program is
    /// feasible with `s > 0`, or feasible at all when nothing is strict.
    pub fn is_empty(&self) -> Emptiness {
        let has_strict = self.halfspaces.iter().any(|h| h.strict);
        let obj = vec![
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            if has_strict { Rational::one() } else { Rational::zero() },
        ];
        let mut lp = LpProblem::new(Sense::Maximize, obj);
        for i in 0..3 {
            lp.set_bounds(i, Bounds::free());
        }
        lp.set_bounds(3, Bounds::between(Rational::zero(), Rational::one()));
        for h in &self.halfspaces {
            let s = if h.strict { Rational::one() } else { Rational::zero() };
            let coeffs = vec![h.normal[0].clone(), h.normal[1].clone(), h.normal[2].clone(), s];
            lp.constrain(coeffs, Relation::Le, h.rhs.clone());
        }
        match solve_lp(&lp) {
            LpResult::Optimal { value, point } => {
                if has_strict && !value.is_positive() {
                    return Emptiness::Empty;
                }
                let witness = [point[0].clone(), point[1].clone(), point[2].clone()];
                debug_assert!(self.contains(&witness));
                Emptiness::Nonempty { witness }
            }
            LpResult::Infeasible => Emptiness::Empty,
            LpResult::Unbounded => unreachable!("slack is capped"),
        }
    }

    /// Maximum of `direction · x` over the closure of the polytope.
    pub fn support(&self, direction: &Vec3) -> LpResult {
        let mut lp = LpProblem::new(Sense::Maximize, direction.to_vec());
        for i in 0..3 {
            lp.set_bounds(i, Bounds::free());
        }
        for h in &self.halfspaces {
            lp.constrain(h.normal.to_vec(), Relation::Le, h.rhs.clone());
        }
        solve_lp(&lp)
    }
}

/// The unit ℓ₁ ball: the eight halfspaces `ε·x ≤ 1`, `ε ∈ {−1, 1}³`.
pub fn cross_polytope() -> HPolytope {
    let halfspaces = octant_signs()
        .into_iter()
        .map(|s| HalfSpace::new(s.map(Rational::integer), Rational::one()))
        .collect();
    HPolytope { halfspaces }
}

/// The eight sign vectors in lexicographic order with `+` before `−`.
pub fn octant_signs() -> [[i64; 3]; 8] {
    let mut out = [[0i64; 3]; 8];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = [
            if k & 4 == 0 { 1 } else { -1 },
            if k & 2 == 0 { 1 } else { -1 },
            if k & 1 == 0 { 1 } else { -1 },
        ];
    }
    out
}

/// `{λx + u : x ∈ P}`; each `n·x ≤ b` becomes `n·x ≤ λb + n·u`.
pub fn homothet(p: &HPolytope, lambda: &Rational, u: &Vec3) -> Result<HPolytope> {
    if !lambda.is_positive() {
        return Err(Error::NonPositiveRatio(lambda.to_string()));
    }
    let halfspaces = p
        .halfspaces
        .iter()
        .map(|h| HalfSpace {
            normal: h.normal.clone(),
            rhs: lambda * &h.rhs + dot(&h.normal, u),
            strict: h.strict,
        })
        .collect();
    Ok(HPolytope { halfspaces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{l1_dist, v3, zero};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cross_polytope_shape() {
        let k = cross_polytope();
        assert_eq!(k.halfspaces.len(), 8);
        assert!(k.halfspaces.iter().all(|h| !h.strict && h.rhs == Rational::one()));
        let e1 = v3((1, 1), (0, 1), (0, 1));
        assert!(k.contains(&e1));
        assert_eq!(k.tight_count(&e1), 4);
        assert!(!k.contains(&v3((1, 2), (1, 2), (1, 2))));
        for i in 0..3 {
            for s in [1, -1] {
                let mut v = zero::<3>();
                v[i] = Rational::integer(s);
                assert!(k.contains(&v));
                assert_eq!(k.tight_count(&v), 4);
            }
        }
    }

    #[test]
    fn homothet_examples() {
        let k = cross_polytope();
        assert_eq!(homothet(&k, &Rational::one(), &zero()).unwrap(), k);

        let c = homothet(&k, &q(2, 3), &v3((1, 3), (0, 1), (0, 1))).unwrap();
        let e1 = v3((1, 1), (0, 1), (0, 1));
        assert!(c.contains(&e1));
        assert!(c.tight_count(&e1) > 0);

        let c = homothet(&k, &q(3, 5), &v3((2, 5), (2, 5), (0, 1))).unwrap();
        assert!(c.contains(&v3((1, 2), (1, 2), (0, 1))));

        assert!(homothet(&k, &Rational::zero(), &zero()).is_err());
        assert!(homothet(&k, &q(-1, 2), &zero()).is_err());
    }

    #[test]
    fn emptiness_examples() {
        let k = cross_polytope();
        match k.is_empty() {
            Emptiness::Nonempty { witness } => assert!(k.contains(&witness)),
            Emptiness::Empty => panic!("K is nonempty"),
        }

        let x1 = v3((1, 1), (0, 1), (0, 1));
        let neg_x1 = v3((-1, 1), (0, 1), (0, 1));
        let p = HPolytope::new(vec![
            HalfSpace::new(x1.clone(), Rational::zero()),
            HalfSpace::new(neg_x1.clone(), Rational::integer(-1)),
        ])
        .unwrap();
        assert_eq!(p.is_empty(), Emptiness::Empty);

        // x1 <= 0 and x1 > 0
        let p = HPolytope::new(vec![
            HalfSpace::new(x1.clone(), Rational::zero()),
            HalfSpace::strict(neg_x1.clone(), Rational::zero()),
        ])
        .unwrap();
        assert_eq!(p.is_empty(), Emptiness::Empty);

        // x1 <= 0 and x1 >= 0 (non-strict) is a plane: nonempty
        let p = HPolytope::new(vec![
            HalfSpace::new(x1, Rational::zero()),
            HalfSpace::new(neg_x1, Rational::zero()),
        ])
        .unwrap();
        assert!(!p.is_empty().is_empty());
    }

    #[test]
    fn strict_witness_is_strictly_inside() {
        let k = cross_polytope();
        let c = homothet(&k, &q(1, 2), &v3((1, 2), (0, 1), (0, 1))).unwrap();
        // K intersected with the open side x₁+x₂+x₃ > 0 of the last facet of c
        let p = k.with(c.halfspaces[7].complement());
        match p.is_empty() {
            Emptiness::Nonempty { witness } => {
                assert!(p.contains(&witness));
                assert!(!c.halfspaces[7].contains(&witness));
            }
            Emptiness::Empty => panic!(),
        }
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(HPolytope::new(vec![HalfSpace::new(zero(), Rational::one())]).is_err());
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn small_v() -> impl Strategy<Value = Vec3> {
        (small_q(), small_q(), small_q()).prop_map(|(a, b, c)| [a, b, c])
    }

    proptest! {
        #[test]
        fn homothet_composes(l1 in 1i64..6, l2 in 1i64..6, u1 in small_v(), u2 in small_v()) {
            let k = cross_polytope();
            let (l1, l2) = (q(l1, 3), q(l2, 4));
            let a = homothet(&homothet(&k, &l1, &u1).unwrap(), &l2, &u2).unwrap();
            let shift = crate::linalg::add(&crate::linalg::scale(&u1, &l2), &u2);
            let b = homothet(&k, &(&l1 * &l2), &shift).unwrap();
            let mut ha = a.halfspaces.clone();
            let mut hb = b.halfspaces.clone();
            ha.sort_by(|x, y| x.normal.cmp(&y.normal));
            hb.sort_by(|x, y| x.normal.cmp(&y.normal));
            prop_assert_eq!(ha, hb);
        }

        #[test]
        fn homothet_membership_is_l1_ball(x in small_v(), u in small_v(), l in 1i64..20) {
            let lambda = q(l, 7);
            let c = homothet(&cross_polytope(), &lambda, &u).unwrap();
            prop_assert_eq!(c.contains(&x), l1_dist(&x, &u) <= lambda);
        }
    }
}
