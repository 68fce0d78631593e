//! Convex bodies used as gauges: the cross-polytope, an equilateral triangle
//! and general bounded H-polytopes.
//!
//! Equilateral triangles have no rational vertices in the plane, so a triangle
//! is given by rational vertices in 𝔼³ (a facet of the cross-polytope is one)
//! and handled in the affine chart `v₀ + s(v₁ − v₀) + t(v₂ − v₀)`, where it is
//! the standard simplex. Homothety ratios and coverage are affine invariants.

use serde::{Deserialize, Serialize};

use crate::cell::{Cell, Plane};
use crate::error::{Error, Result};
use crate::linalg::{add, centroid, dot, scale, solve, sub, Vec3};
use crate::polytope::HPolytope;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    CrossPolytope3,
    EquilateralTriangle2,
    GeneralHPolytope,
}

/// `normal · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaugeFacet {
    #[serde(rename = "n")]
    pub normal: Vec<Rational>,
    #[serde(rename = "b")]
    pub rhs: Rational,
}

impl GaugeFacet {
    pub fn excess(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeBody {
    pub kind: BodyKind,
    pub dim: usize,
    pub facets: Vec<GaugeFacet>,
    /// A point strictly inside the body.
    pub base_point: Vec<Rational>,
}

impl Default for GaugeBody {
    fn default() -> Self {
        GaugeBody::cross_polytope()
    }
}

impl GaugeBody {
    pub fn cross_polytope() -> Self {
        let facets = crate::polytope::octant_signs()
            .into_iter()
            .map(|s| GaugeFacet { normal: s.map(Rational::integer).to_vec(), rhs: Rational::one() })
            .collect();
        GaugeBody {
            kind: BodyKind::CrossPolytope3,
            dim: 3,
            facets,
            base_point: vec![Rational::zero(); 3],
        }
    }

    /// The standard simplex `{s, t ≥ 0, s + t ≤ 1}`, the chart image of any triangle.
    pub fn triangle_chart() -> Self {
        let (z, o) = (Rational::zero, Rational::one);
        GaugeBody {
            kind: BodyKind::EquilateralTriangle2,
            dim: 2,
            facets: vec![
                GaugeFacet { normal: vec![-o(), z()], rhs: z() },
                GaugeFacet { normal: vec![z(), -o()], rhs: z() },
                GaugeFacet { normal: vec![o(), o()], rhs: o() },
            ],
            base_point: vec![Rational::new(1, 3), Rational::new(1, 3)],
        }
    }

    /// A bounded 3D polytope with nonempty interior; strictness flags are dropped.
    pub fn general(p: &HPolytope) -> Result<Self> {
        let planes: Vec<Plane<3>> =
            p.halfspaces.iter().map(|h| Plane::new(h.normal.clone(), h.rhs.clone())).collect();
        let bounded = (0..3).all(|i| {
            [Rational::one(), -Rational::one()].into_iter().all(|s| {
                let mut d = crate::linalg::zero::<3>();
                d[i] = s;
                matches!(p.support(&d), crate::lp::LpResult::Optimal { .. })
            })
        });
        if !bounded {
            return Err(Error::Unbounded);
        }
        let cell = Cell::from_planes(planes)
            .ok_or_else(|| Error::Precondition("body has empty interior".into()))?;
        let facets = cell
            .planes()
            .iter()
            .map(|h| GaugeFacet { normal: h.normal.to_vec(), rhs: h.rhs.clone() })
            .collect();
        Ok(GaugeBody {
            kind: BodyKind::GeneralHPolytope,
            dim: 3,
            facets,
            base_point: cell.interior_point().to_vec(),
        })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| !f.excess(x).is_positive())
    }

    /// Whether `x ∈ λK + u`.
    pub fn copy_contains(&self, lambda: &Rational, u: &[Rational], x: &[Rational]) -> bool {
        self.facets
            .iter()
            .all(|f| dot(&f.normal, x) - dot(&f.normal, u) <= lambda * &f.rhs)
    }

    pub fn planes<const D: usize>(&self) -> Vec<Plane<D>> {
        assert_eq!(self.dim, D, "body dimension");
        self.facets
            .iter()
            .map(|f| Plane::new(std::array::from_fn(|i| f.normal[i].clone()), f.rhs.clone()))
            .collect()
    }

    /// Facet planes of `λK + u`.
    pub fn copy_planes<const D: usize>(&self, lambda: &Rational, u: &[Rational]) -> Vec<Plane<D>> {
        assert_eq!(self.dim, D, "body dimension");
        self.facets
            .iter()
            .map(|f| {
                Plane::new(
                    std::array::from_fn(|i| f.normal[i].clone()),
                    lambda * &f.rhs + dot(&f.normal, u),
                )
            })
            .collect()
    }

    /// `K = −K`, checked on the facet list.
    pub fn is_centrally_symmetric(&self) -> bool {
        self.facets.iter().all(|f| {
            let neg: Vec<Rational> = f.normal.iter().map(|x| -x).collect();
            self.facets.iter().any(|g| g.rhs == f.rhs && g.normal == neg)
        })
    }

    /// Minkowski functional `inf{t ≥ 0 : x ∈ tK}`; needs the origin strictly inside.
    pub fn gauge(&self, x: &[Rational]) -> Result<Rational> {
        if self.facets.iter().any(|f| !f.rhs.is_positive()) {
            return Err(Error::Precondition("origin is not interior to the body".into()));
        }
        Ok(self
            .facets
            .iter()
            .map(|f| dot(&f.normal, x) / &f.rhs)
            .fold(Rational::zero(), |a, b| a.max(b)))
    }
}

/// An equilateral triangle with rational vertices in 𝔼³.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [Vec3; 3],
}

impl Triangle {
    pub fn new(vertices: [Vec3; 3]) -> Result<Self> {
        let sq = |a: &Vec3, b: &Vec3| {
            let d = sub(a, b);
            dot(&d, &d)
        };
        let [a, b, c] = &vertices;
        let (ab, bc, ca) = (sq(a, b), sq(b, c), sq(c, a));
        if ab.is_zero() || ab != bc || bc != ca {
            return Err(Error::Precondition("triangle is not equilateral".into()));
        }
        Ok(Triangle { vertices })
    }

    /// The facet `conv{e₁, e₂, e₃}` of the cross-polytope.
    pub fn standard() -> Self {
        let f = crate::polytope::FacetTriangle::from_signs([1, 1, 1]);
        Triangle { vertices: f.vertices }
    }

    pub fn body(&self) -> GaugeBody {
        GaugeBody::triangle_chart()
    }

    pub fn centroid(&self) -> Vec3 {
        centroid(&self.vertices)
    }

    /// Chart coordinates of a point in the triangle's plane.
    pub fn to_chart(&self, x: &Vec3) -> Option<[Rational; 2]> {
        let [v0, v1, v2] = &self.vertices;
        let (d1, d2, r) = (sub(v1, v0), sub(v2, v0), sub(x, v0));
        // least-squares normal equations are exact for points in the plane
        let g = vec![vec![dot(&d1, &d1), dot(&d1, &d2)], vec![dot(&d2, &d1), dot(&d2, &d2)]];
        let st = solve(&g, &[dot(&d1, &r), dot(&d2, &r)])?;
        let chart = [st[0].clone(), st[1].clone()];
        (self.from_chart(&chart) == *x).then_some(chart)
    }

    pub fn from_chart(&self, st: &[Rational]) -> Vec3 {
        let [v0, v1, v2] = &self.vertices;
        add(&add(v0, &scale(&sub(v1, v0), &st[0])), &scale(&sub(v2, v0), &st[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::v3;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cross_polytope_body() {
        let k = GaugeBody::cross_polytope();
        assert_eq!(k.facets.len(), 8);
        assert!(k.is_centrally_symmetric());
        assert_eq!(k.gauge(&v3((1, 3), (-1, 3), (2, 3))).unwrap(), q(4, 3));
        assert!(k.copy_contains(&q(2, 3), &v3((1, 3), (0, 1), (0, 1)), &v3((1, 1), (0, 1), (0, 1))));
        assert!(!k.copy_contains(&q(13, 20), &v3((1, 3), (0, 1), (0, 1)), &v3((1, 3), (1, 3), (1, 3))));
    }

    #[test]
    fn triangle_chart_round_trip() {
        let t = Triangle::standard();
        assert_eq!(t.to_chart(&t.vertices[1]), Some([q(1, 1), q(0, 1)]));
        assert_eq!(t.to_chart(&t.centroid()), Some([q(1, 3), q(1, 3)]));
        assert_eq!(t.to_chart(&v3((1, 1), (1, 1), (1, 1))), None);
        let body = t.body();
        assert!(!body.is_centrally_symmetric());
        assert!(body.gauge(&[q(1, 2), q(0, 1)]).is_err());
        assert!(Triangle::new([v3((0, 1), (0, 1), (0, 1)), v3((1, 1), (0, 1), (0, 1)), v3((0, 1), (1, 1), (0, 1))]).is_err());
        assert!(Triangle::new(t.vertices.clone()).is_ok());
    }

    #[test]
    fn general_body_checks() {
        let k = GaugeBody::general(&crate::polytope::cross_polytope()).unwrap();
        assert_eq!(k.facets.len(), 8);
        assert_eq!(k.base_point, vec![q(0, 1); 3]);
        let half = HPolytope::new(vec![crate::polytope::HalfSpace::new(v3((1, 1), (0, 1), (0, 1)), q(0, 1))]).unwrap();
        assert!(matches!(GaugeBody::general(&half), Err(Error::Unbounded)));
    }

    #[test]
    fn body_json_round_trip() {
        let k = GaugeBody::cross_polytope();
        let s = serde_json::to_string(&k).unwrap();
        assert!(s.contains("\"kind\":\"cross_polytope3\""));
        let back: GaugeBody = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
