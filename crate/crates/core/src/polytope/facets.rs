use std::cmp::Ordering;

use serde::Serialize;

use super::{octant_signs, homothet, cross_polytope, HPolytope, HalfSpace};
use crate::cell::{enumerate_vertices, Cell, Plane};
use crate::error::{Error, Result};
use crate::linalg::{add, affine_dimension, centroid, dot, l1_norm, scale, sub, Vec3};
use crate::rational::Rational;

/// A triangular facet `conv{s₁e₁, s₂e₂, s₃e₃}` of the cross-polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetTriangle {
    pub signs: [i64; 3],
    pub vertices: [Vec3; 3],
    /// `s·x ≤ 1`, tight on the facet.
    pub plane: HalfSpace,
}

impl FacetTriangle {
    pub fn from_signs(signs: [i64; 3]) -> Self {
        let vertices = std::array::from_fn(|i| {
            let mut v = crate::linalg::zero::<3>();
            v[i] = Rational::integer(signs[i]);
            v
        });
        FacetTriangle {
            signs,
            vertices,
            plane: HalfSpace::new(signs.map(Rational::integer), Rational::one()),
        }
    }

    pub fn center(&self) -> Vec3 {
        centroid(&self.vertices)
    }

    pub fn has_vertex(&self, v: &Vec3) -> bool {
        self.vertices.contains(v)
    }

    /// Facets sharing an edge differ in exactly one sign.
    pub fn is_adjacent(&self, other: &FacetTriangle) -> bool {
        self.signs.iter().zip(&other.signs).filter(|(a, b)| a != b).count() == 1
    }

    /// `v₀ + s(v₁ − v₀) + t(v₂ − v₀)`.
    pub fn point_at(&self, s: &Rational, t: &Rational) -> Vec3 {
        let [v0, v1, v2] = &self.vertices;
        add(&add(v0, &scale(&sub(v1, v0), s)), &scale(&sub(v2, v0), t))
    }
}

/// The eight facets, in the sign order of [`octant_signs`].
pub fn facets_of_cross_polytope() -> Vec<FacetTriangle> {
    octant_signs().into_iter().map(FacetTriangle::from_signs).collect()
}

/// `F ∩ C` for closed `C`; `vertices` is cyclic and nonempty only for a 2D section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetSection {
    pub vertices: Vec<Vec3>,
    /// Dimension of the intersection, `None` when it is empty.
    pub dimension: Option<usize>,
}

impl FacetSection {
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }
}

fn half(p: &[Rational; 2]) -> bool {
    p[1].is_negative() || (p[1].is_zero() && p[0].is_negative())
}

fn angular(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        Rational::zero().cmp(&cross)
    })
}

/// Intersects a facet with a polytope in the facet's barycentric chart.
///
/// Strictness flags of `c` are ignored: the section of the closure is returned.
pub fn facet_section(f: &FacetTriangle, c: &HPolytope) -> FacetSection {
    let [v0, v1, v2] = &f.vertices;
    let (d1, d2) = (sub(v1, v0), sub(v2, v0));
    let z = Rational::zero;
    let mut planes: Vec<Plane<2>> = vec![
        Plane::new([-Rational::one(), z()], z()),
        Plane::new([z(), -Rational::one()], z()),
        Plane::new([Rational::one(), Rational::one()], Rational::one()),
    ];
    for h in &c.halfspaces {
        let a = [dot(&h.normal, &d1), dot(&h.normal, &d2)];
        let rhs = -h.excess(v0);
        if a[0].is_zero() && a[1].is_zero() {
            if rhs.is_negative() {
                return FacetSection { vertices: Vec::new(), dimension: None };
            }
            continue;
        }
        planes.push(Plane::new(a, rhs));
    }
    let chart: Vec<[Rational; 2]> = match Cell::from_planes(planes.clone()) {
        Some(cell) => cell.vertices().cloned().collect(),
        None => {
            let pts: Vec<[Rational; 2]> =
                enumerate_vertices(&planes).into_iter().map(|v| v.point).collect();
            return FacetSection { vertices: Vec::new(), dimension: affine_dimension(&pts) };
        }
    };
    let mid = centroid(&chart);
    let mut rel: Vec<([Rational; 2], &[Rational; 2])> =
        chart.iter().map(|p| ([&p[0] - &mid[0], &p[1] - &mid[1]], p)).collect();
    rel.sort_by(|a, b| angular(&a.0, &b.0));
    let vertices = rel.into_iter().map(|(_, p)| f.point_at(&p[0], &p[1])).collect();
    FacetSection { vertices, dimension: Some(2) }
}

/// Edge counts of the sections of `λK₁ + u` with the four facets at vertex `v`, sorted.
pub fn classify_section_counts(u: &Vec3, lambda: &Rational, v: &Vec3) -> Result<Vec<usize>> {
    let is_vertex = l1_norm(v) == Rational::one() && v.iter().filter(|x| x.is_zero()).count() == 2;
    if !is_vertex {
        return Err(Error::Precondition(format!("{v:?} is not a vertex of the cross-polytope")));
    }
    let copy = homothet(&cross_polytope(), lambda, u)?;
    if !copy.contains(v) {
        return Err(Error::Precondition(format!("{v:?} is not covered by the copy")));
    }
    let mut counts: Vec<usize> = facets_of_cross_polytope()
        .iter()
        .filter(|f| f.has_vertex(v))
        .map(|f| facet_section(f, &copy).edge_count())
        .collect();
    counts.sort_unstable();
    Ok(counts)
}
