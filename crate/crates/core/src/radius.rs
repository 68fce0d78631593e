//! Smallest homothet `λK + u` containing a finite point set.

use serde::{Deserialize, Serialize};

use crate::assign::PartitionProblem;
use crate::body::{GaugeBody, Triangle};
use crate::cover::{verify_covering_2d, CoverageResult};
use crate::error::{Error, Result};
use crate::linalg::{dot, Vec3};
use crate::lp::{solve_lp, Bounds, LpProblem, LpResult, Relation, Sense};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCertificate {
    pub ratio: Rational,
    pub center: Vec<Rational>,
    /// Indices of input points lying on a facet of `ratio·K + center` that
    /// is tight in the optimal basis.
    pub active: Vec<usize>,
}

impl RatioCertificate {
    /// Re-checks containment of every point.
    pub fn verify<P: AsRef<[Rational]>>(&self, body: &GaugeBody, points: &[P]) -> bool {
        points
            .iter()
            .all(|p| body.copy_contains(&self.ratio, &self.center, p.as_ref()))
    }
}

/// Exact `min λ` such that some `λK + u` contains every point.
///
/// Only the largest `n·pᵢ` per facet normal `n` matters, so the program has one
/// row per facet: `maxᵢ n·pᵢ − n·u ≤ λ b`, with `u` free and `λ ≥ 0`.
pub fn min_ratio<P: AsRef<[Rational]>>(body: &GaugeBody, points: &[P]) -> RatioCertificate {
    assert!(!points.is_empty(), "min_ratio needs at least one point");
    let d = body.dim;
    for p in points {
        assert_eq!(p.as_ref().len(), d, "point dimension");
    }
    let first = points[0].as_ref();
    if points.iter().all(|p| p.as_ref() == first) {
        return RatioCertificate {
            ratio: Rational::zero(),
            center: first.to_vec(),
            active: (0..points.len()).collect(),
        };
    }
    let support: Vec<Rational> = body
        .facets
        .iter()
        .map(|f| points.iter().map(|p| dot(&f.normal, p.as_ref())).max().unwrap())
        .collect();
    let mut objective = vec![Rational::zero(); d + 1];
    objective[d] = Rational::one();
    let mut lp = LpProblem::new(Sense::Minimize, objective);
    for i in 0..d {
        lp.set_bounds(i, Bounds::free());
    }
    for (f, m) in body.facets.iter().zip(&support) {
        // −n·u − bλ ≤ −M
        let mut coeffs: Vec<Rational> = f.normal.iter().map(|x| -x).collect();
        coeffs.push(-&f.rhs);
        lp.constrain(coeffs, Relation::Le, -m);
    }
    let LpResult::Optimal { value, point } = solve_lp(&lp) else {
        unreachable!("enclosing-homothet program is feasible and bounded below for a bounded body");
    };
    let center = point[..d].to_vec();
    let mut active = Vec::new();
    for (f, m) in body.facets.iter().zip(&support) {
        if m - dot(&f.normal, &center) == &value * &f.rhs {
            for (i, p) in points.iter().enumerate() {
                if &dot(&f.normal, p.as_ref()) == m {
                    active.push(i);
                }
            }
        }
    }
    active.sort_unstable();
    active.dedup();
    let cert = RatioCertificate { ratio: value, center, active };
    debug_assert!(cert.verify(body, points));
    cert
}

/// `gauge(p − q) / 2`, the two-point ratio for a centrally symmetric body.
pub fn min_ratio_two_points_symmetric(
    body: &GaugeBody,
    p: &[Rational],
    q: &[Rational],
) -> Result<Rational> {
    if !body.is_centrally_symmetric() {
        return Err(Error::Precondition("body is not centrally symmetric".into()));
    }
    let diff: Vec<Rational> = p.iter().zip(q).map(|(a, b)| a - b).collect();
    Ok(body.gauge(&diff)? / Rational::integer(2))
}

/// Both halves of the value of the 3-covering functional of a triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleGamma3 {
    pub ratio: Rational,
    /// The corner homothets `λT + (1 − λ)vᵢ` at `ratio`.
    pub covering: CoverageResult,
    /// Best split of the vertices and centroid into three groups.
    pub witness_groups: Vec<Vec<usize>>,
}

/// `γ₃` of an equilateral triangle: the min-max split of its vertices and
/// centroid into three groups bounds it below, and the corner homothets at
/// that ratio are certified to cover.
pub fn triangle_gamma3(t: &Triangle) -> Result<TriangleGamma3> {
    let t = Triangle::new(t.vertices.clone())?;
    let mut pts: Vec<Vec<Rational>> = t.vertices.iter().map(|v| t.to_chart(v).expect("vertex").to_vec()).collect();
    pts.push(t.to_chart(&t.centroid()).expect("centroid").to_vec());
    let problem = PartitionProblem::new(t.body(), pts);
    let mm = problem
        .min_max(3, crate::assign::DEFAULT_NODE_BUDGET)
        .ok_or(Error::Budget(crate::assign::DEFAULT_NODE_BUDGET))?;
    let corners: Vec<Vec3> = t
        .vertices
        .iter()
        .map(|v| crate::linalg::scale(v, &(Rational::one() - &mm.value)))
        .collect();
    let covering = verify_covering_2d(&t, &mm.value, &corners)?;
    if !covering.is_covered() {
        return Err(Error::Precondition(format!("corner homothets at {} do not cover", mm.value)));
    }
    Ok(TriangleGamma3 { ratio: mm.value, covering, witness_groups: mm.groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::v3;
    use crate::polytope::symmetry_group;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Closed form for the ℓ₁ ball, from the four pairs of facet directions.
    fn l1_ratio(points: &[Vec3]) -> Rational {
        let dirs = [[1, 1, 1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]];
        let mut hi = Vec::new();
        let mut lo = Vec::new();
        for d in dirs {
            let n = d.map(Rational::integer);
            let vals: Vec<Rational> = points.iter().map(|p| dot(&n, p)).collect();
            hi.push(vals.iter().max().unwrap().clone());
            lo.push(vals.iter().min().unwrap().clone());
        }
        let two = Rational::integer(2);
        let four = Rational::integer(4);
        let mut best = Rational::zero();
        for k in 0..4 {
            best = best.max((&hi[k] - &lo[k]) / &two);
        }
        best = best.max((&hi[0] - &lo[1] - &lo[2] - &lo[3]) / &four);
        best = best.max((&hi[1] + &hi[2] + &hi[3] - &lo[0]) / &four);
        best
    }

    fn k() -> GaugeBody {
        GaugeBody::cross_polytope()
    }

    #[test]
    fn pair_and_triple_values() {
        let cases: Vec<(Vec<Vec3>, Rational)> = vec![
            (vec![v3((1, 1), (0, 1), (0, 1)), v3((-1, 1), (0, 1), (0, 1))], q(1, 1)),
            (vec![v3((1, 1), (0, 1), (0, 1)), v3((0, 1), (1, 1), (0, 1))], q(1, 1)),
            (vec![v3((1, 3), (1, 3), (1, 3)), v3((-1, 3), (-1, 3), (1, 3))], q(2, 3)),
            (vec![v3((1, 3), (1, 3), (1, 3)), v3((-1, 3), (-1, 3), (-1, 3))], q(1, 1)),
            (
                vec![v3((1, 3), (1, 3), (1, 3)), v3((-1, 3), (1, 3), (1, 3)), v3((-1, 3), (-1, 3), (1, 3))],
                q(2, 3),
            ),
        ];
        for (pts, want) in cases {
            let c = min_ratio(&k(), &pts);
            assert_eq!(c.ratio, want, "{pts:?}");
            assert_eq!(l1_ratio(&pts), want);
            assert!(c.verify(&k(), &pts));
        }
    }

    #[test]
    fn single_point() {
        let p = v3((1, 5), (2, 5), (2, 5));
        let c = min_ratio(&k(), &[p.clone()]);
        assert_eq!(c.ratio, Rational::zero());
        assert_eq!(c.center, p.to_vec());
    }

    #[test]
    fn symmetric_pair_formula() {
        let e1 = v3((1, 1), (0, 1), (0, 1));
        let p = v3((0, 1), (0, 1), (1, 1));
        let c = v3((1, 3), (1, 3), (1, 3));
        assert_eq!(min_ratio_two_points_symmetric(&k(), &e1, &crate::linalg::neg(&e1)).unwrap(), q(1, 1));
        assert_eq!(min_ratio_two_points_symmetric(&k(), &p, &c).unwrap(), q(2, 3));
        assert_eq!(min_ratio_two_points_symmetric(&k(), &p, &p).unwrap(), q(0, 1));
        assert!(min_ratio_two_points_symmetric(&GaugeBody::triangle_chart(), &[q(0, 1), q(0, 1)], &[q(1, 1), q(0, 1)]).is_err());
    }

    #[test]
    fn triangle_vertex_and_centroid() {
        let t = GaugeBody::triangle_chart();
        let c = min_ratio(&t, &[vec![q(0, 1), q(0, 1)], vec![q(1, 3), q(1, 3)]]);
        assert_eq!(c.ratio, q(2, 3));
        let c = min_ratio(&t, &[vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(0, 1)]]);
        assert_eq!(c.ratio, q(1, 1));
    }

    #[test]
    fn triangle_three_copies() {
        let g = triangle_gamma3(&Triangle::standard()).unwrap();
        assert_eq!(g.ratio, q(2, 3));
        assert!(g.covering.is_covered());
        assert_eq!(g.witness_groups.len(), 3);
        let skew = Triangle { vertices: [v3((0, 1), (0, 1), (0, 1)), v3((1, 1), (0, 1), (0, 1)), v3((0, 1), (2, 1), (0, 1))] };
        assert!(triangle_gamma3(&skew).is_err());
    }

    fn small_point() -> impl Strategy<Value = Vec3> {
        (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(a, b, c)| [q(a, 6), q(b, 6), q(c, 6)])
    }

    proptest! {
        #[test]
        fn matches_closed_form(pts in prop::collection::vec(small_point(), 1..6)) {
            let c = min_ratio(&k(), &pts);
            prop_assert_eq!(&c.ratio, &l1_ratio(&pts));
            prop_assert!(c.verify(&k(), &pts));
            let active: Vec<Vec3> = c.active.iter().map(|&i| pts[i].clone()).collect();
            prop_assert_eq!(min_ratio(&k(), &active).ratio, c.ratio);
        }

        #[test]
        fn translation_covariant(pts in prop::collection::vec(small_point(), 1..5), t in small_point()) {
            let a = min_ratio(&k(), &pts);
            let moved: Vec<Vec3> = pts.iter().map(|p| crate::linalg::add(p, &t)).collect();
            let b = min_ratio(&k(), &moved);
            prop_assert_eq!(&a.ratio, &b.ratio);
            prop_assert!(b.verify(&k(), &moved));
        }

        #[test]
        fn monotone_in_points(pts in prop::collection::vec(small_point(), 1..5), extra in small_point()) {
            let a = min_ratio(&k(), &pts).ratio;
            let mut more = pts.clone();
            more.push(extra);
            prop_assert!(min_ratio(&k(), &more).ratio >= a);
        }

        #[test]
        fn pairs_match_gauge(p in small_point(), r in small_point()) {
            prop_assert_eq!(
                min_ratio(&k(), &[p.clone(), r.clone()]).ratio,
                min_ratio_two_points_symmetric(&k(), &p, &r).unwrap()
            );
        }

        #[test]
        fn symmetry_equivariant(pts in prop::collection::vec(small_point(), 2..5), gi in 0usize..48) {
            let g = symmetry_group()[gi];
            let img: Vec<Vec3> = pts.iter().map(|p| g.apply(p)).collect();
            prop_assert_eq!(min_ratio(&k(), &pts).ratio, min_ratio(&k(), &img).ratio);
        }
    }
}
