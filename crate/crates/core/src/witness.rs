//! Boundary witness points of the cross-polytope: vertices, facet centers,
//! λ-node points and their midpoints.
//!
//! The three corner homothets `λF + (1 − λ)vᵢ` of a facet `F` (ratio `λ ≥ 1/2`)
//! have pairwise side intersections at barycentric coordinates
//! `(1 − λ, 1 − λ, 2λ − 1)` up to cyclic relabeling: the λ-node points. At
//! `λ = 2/3` all three fall on the centroid.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add, centroid, scale, Vec3};
use crate::polytope::{facets_of_cross_polytope, symmetry_group, FacetTriangle};
use crate::rational::Rational;

/// Vertex names: `p = e₃`, `q = −e₃`, `a = e₁`, `b = e₂`, `c = −e₁`, `d = −e₂`.
pub fn named_vertices() -> Vec<(&'static str, Vec3)> {
    let e = |i: usize, s: i64| {
        let mut v = crate::linalg::zero::<3>();
        v[i] = Rational::integer(s);
        v
    };
    vec![("p", e(2, 1)), ("q", e(2, -1)), ("a", e(0, 1)), ("b", e(1, 1)), ("c", e(0, -1)), ("d", e(1, -1))]
}

fn check_node_ratio(lambda: &Rational) -> Result<()> {
    if *lambda < Rational::new(1, 2) || *lambda >= Rational::one() {
        return Err(Error::Precondition(format!("node ratio {lambda} outside [1/2, 1)")));
    }
    Ok(())
}

/// The three λ-node points of a facet, in the order
/// `(1−λ, 1−λ, 2λ−1)`, `(2λ−1, 1−λ, 1−λ)`, `(1−λ, 2λ−1, 1−λ)`.
pub fn node_points(f: &FacetTriangle, lambda: &Rational) -> Result<[Vec3; 3]> {
    check_node_ratio(lambda)?;
    let near = Rational::one() - lambda;
    let far = lambda * Rational::integer(2) - Rational::one();
    let bary = |w: [&Rational; 3]| -> Vec3 {
        let [v0, v1, v2] = &f.vertices;
        add(&add(&scale(v0, w[0]), &scale(v1, w[1])), &scale(v2, w[2]))
    };
    Ok([
        bary([&near, &near, &far]),
        bary([&far, &near, &near]),
        bary([&near, &far, &near]),
    ])
}

/// Midpoints of the sides of the node-point triangle: `n₀n₁`, `n₁n₂`, `n₂n₀`.
pub fn node_midpoints(f: &FacetTriangle, lambda: &Rational) -> Result<[Vec3; 3]> {
    let n = node_points(f, lambda)?;
    let mid = |a: &Vec3, b: &Vec3| centroid(&[a.clone(), b.clone()]);
    Ok([mid(&n[0], &n[1]), mid(&n[1], &n[2]), mid(&n[2], &n[0])])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "lambda")]
pub enum Generator {
    Vertices,
    FacetCenters,
    NodePoints(Rational),
    NodeMidpoints(Rational),
}

impl Generator {
    /// Parses `vertices,centers,nodes,midpoints`; node kinds take `lambda`.
    pub fn parse_list(s: &str, lambda: &Rational) -> Result<Vec<Generator>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "vertices" => Ok(Generator::Vertices),
                "centers" => Ok(Generator::FacetCenters),
                "nodes" => Ok(Generator::NodePoints(lambda.clone())),
                "midpoints" => Ok(Generator::NodeMidpoints(lambda.clone())),
                other => Err(Error::Parse(format!("unknown witness generator {other:?}"))),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Vertex,
    Center,
    Node,
    Midpoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPoint {
    pub label: String,
    pub kind: PointKind,
    /// Index into [`facets_of_cross_polytope`] for facet-derived points.
    pub facet: Option<usize>,
    pub point: Vec3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub generators: Vec<Generator>,
    pub points: Vec<WitnessPoint>,
}

fn sign_tag(signs: &[i64; 3]) -> String {
    signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect()
}

impl WitnessSet {
    /// Points from every generator, in generator order; a point equal to an
    /// earlier one is dropped.
    pub fn build(generators: &[Generator]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("no witness generators".into()));
        }
        let mut points: Vec<WitnessPoint> = Vec::new();
        let mut seen: HashMap<Vec3, ()> = HashMap::new();
        let mut push = |label: String, kind, facet, point: Vec3| {
            if seen.insert(point.clone(), ()).is_none() {
                points.push(WitnessPoint { label, kind, facet, point });
            }
        };
        let facets = facets_of_cross_polytope();
        for g in generators {
            match g {
                Generator::Vertices => {
                    for (name, v) in named_vertices() {
                        push(name.to_string(), PointKind::Vertex, None, v);
                    }
                }
                Generator::FacetCenters => {
                    for (i, f) in facets.iter().enumerate() {
                        push(format!("center{}", sign_tag(&f.signs)), PointKind::Center, Some(i), f.center());
                    }
                }
                Generator::NodePoints(l) => {
                    for (i, f) in facets.iter().enumerate() {
                        for (k, x) in node_points(f, l)?.into_iter().enumerate() {
                            push(format!("node{}.{k}", sign_tag(&f.signs)), PointKind::Node, Some(i), x);
                        }
                    }
                }
                Generator::NodeMidpoints(l) => {
                    for (i, f) in facets.iter().enumerate() {
                        for (k, x) in node_midpoints(f, l)?.into_iter().enumerate() {
                            push(format!("mid{}.{k}", sign_tag(&f.signs)), PointKind::Midpoint, Some(i), x);
                        }
                    }
                }
            }
        }
        Ok(WitnessSet { generators: generators.to_vec(), points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coordinates(&self) -> Vec<Vec3> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }

    /// Index permutations induced by the symmetries mapping the set onto itself.
    pub fn symmetry_permutations(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&Vec3, usize> =
            self.points.iter().enumerate().map(|(i, p)| (&p.point, i)).collect();
        symmetry_group()
            .into_iter()
            .filter_map(|g| {
                self.points
                    .iter()
                    .map(|p| index.get(&g.apply(&p.point)).copied())
                    .collect::<Option<Vec<usize>>>()
            })
            .collect()
    }

    /// The same set with every point moved by `g`; labels follow their points.
    pub fn transformed(&self, g: &crate::polytope::SymmetryOp) -> WitnessSet {
        let mut out = self.clone();
        for p in &mut out.points {
            p.point = g.apply(&p.point);
        }
        out
    }
}

/// A λ-node point: facet index and position in [`node_points`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef {
    pub facet: usize,
    pub index: usize,
}

/// Smallest homothet ratio of three η-node points taken from three distinct facets.
pub fn node_triple_ratio(eta: &Rational, nodes: [NodeRef; 3]) -> Result<Rational> {
    let facets = facets_of_cross_polytope();
    let ids = nodes.map(|n| n.facet);
    if ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
        return Err(Error::Precondition("node points must come from three distinct facets".into()));
    }
    let mut pts = Vec::new();
    for n in nodes {
        if n.facet >= 8 || n.index >= 3 {
            return Err(Error::Precondition(format!("no node point {n:?}")));
        }
        pts.push(node_points(&facets[n.facet], eta)?[n.index].clone());
    }
    Ok(crate::radius::min_ratio(&crate::body::GaugeBody::cross_polytope(), &pts).ratio)
}

/// Minimum of [`node_triple_ratio`] over all triples, with every minimizing triple.
pub fn node_triple_minimum(eta: &Rational) -> Result<(Rational, Vec<[NodeRef; 3]>)> {
    check_node_ratio(eta)?;
    let mut best: Option<Rational> = None;
    let mut argmin = Vec::new();
    for f0 in 0..8 {
        for f1 in f0 + 1..8 {
            for f2 in f1 + 1..8 {
                for i0 in 0..3 {
                    for i1 in 0..3 {
                        for i2 in 0..3 {
                            let t = [
                                NodeRef { facet: f0, index: i0 },
                                NodeRef { facet: f1, index: i1 },
                                NodeRef { facet: f2, index: i2 },
                            ];
                            let r = node_triple_ratio(eta, t)?;
                            match &best {
                                Some(b) if r > *b => {}
                                Some(b) if r == *b => argmin.push(t),
                                _ => {
                                    best = Some(r);
                                    argmin = vec![t];
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((best.expect("nonempty enumeration"), argmin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::v3;
    use crate::polytope::cross_polytope;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn node_points_of_first_facet() {
        let f = &facets_of_cross_polytope()[0];
        let n = node_points(f, &q(3, 5)).unwrap();
        assert_eq!(n, [v3((2, 5), (2, 5), (1, 5)), v3((1, 5), (2, 5), (2, 5)), v3((2, 5), (1, 5), (2, 5))]);
        let n = node_points(f, &q(4, 7)).unwrap();
        assert_eq!(n[0], v3((3, 7), (3, 7), (1, 7)));
        assert!(node_points(f, &q(1, 4)).is_err());
        assert!(node_points(f, &q(1, 1)).is_err());
        assert!(node_points(f, &q(1, 2)).is_ok());
    }

    /// Node points as intersections of sides of the corner homothets.
    #[test]
    fn node_points_are_side_intersections() {
        for l in [q(1, 2), q(3, 5), q(4, 7), q(2, 3), q(5, 9), q(7, 8)] {
            for f in facets_of_cross_polytope() {
                let v = &f.vertices;
                let one_minus = Rational::one() - &l;
                // corner copy at vᵢ is {x in plane : barycentric weight of vᵢ ≥ 1 − λ}
                for x in node_points(&f, &l).unwrap() {
                    let w: Vec<Rational> = (0..3)
                        .map(|i| crate::linalg::dot(&x, &v[i]) * crate::linalg::dot(&v[i], &v[i]).recip())
                        .collect();
                    assert_eq!(w.iter().cloned().sum::<Rational>(), Rational::one());
                    assert!(w.iter().filter(|wi| **wi == one_minus).count() >= 2);
                    assert!(w.iter().all(|wi| !wi.is_negative()));
                    assert!(cross_polytope().contains(&x));
                    assert!(f.plane.excess(&x).is_zero());
                }
            }
        }
    }

    #[test]
    fn two_thirds_degenerates_to_centroid() {
        for f in facets_of_cross_polytope() {
            let n = node_points(&f, &q(2, 3)).unwrap();
            assert!(n.iter().all(|x| *x == f.center()));
            assert!(node_midpoints(&f, &q(2, 3)).unwrap().iter().all(|x| *x == f.center()));
        }
    }

    #[test]
    fn midpoints_of_first_facet() {
        let f = &facets_of_cross_polytope()[0];
        let m = node_midpoints(f, &q(4, 7)).unwrap();
        assert_eq!(m[0], v3((2, 7), (3, 7), (2, 7)));
        for x in m {
            assert!(f.plane.excess(&x).is_zero());
            assert!(x.iter().all(|c| !c.is_negative()));
        }
    }

    #[test]
    fn witness_set_sizes() {
        let size = |g: Vec<Generator>| WitnessSet::build(&g).unwrap().len();
        assert_eq!(size(vec![Generator::Vertices]), 6);
        assert_eq!(size(vec![Generator::Vertices, Generator::FacetCenters]), 14);
        assert_eq!(size(vec![Generator::Vertices, Generator::NodePoints(q(3, 5))]), 30);
        assert_eq!(
            size(vec![Generator::Vertices, Generator::NodePoints(q(4, 7)), Generator::NodeMidpoints(q(4, 7))]),
            54
        );
        assert_eq!(size(vec![Generator::NodePoints(q(2, 3))]), 8);
        assert!(WitnessSet::build(&[]).is_err());
    }

    #[test]
    fn witness_sets_are_symmetric() {
        let w = WitnessSet::build(&[Generator::Vertices, Generator::NodePoints(q(3, 5))]).unwrap();
        assert_eq!(w.symmetry_permutations().len(), 48);
        let labels: std::collections::HashSet<_> = w.points.iter().map(|p| &p.label).collect();
        assert_eq!(labels.len(), w.len());
        for p in &w.points {
            assert_eq!(crate::linalg::l1_norm(&p.point), Rational::one());
        }
    }

    #[test]
    fn parse_generators() {
        let g = Generator::parse_list("vertices,nodes", &q(3, 5)).unwrap();
        assert_eq!(g, vec![Generator::Vertices, Generator::NodePoints(q(3, 5))]);
        assert!(Generator::parse_list("vertices,bogus", &q(3, 5)).is_err());
    }

    fn around_p(eta: &Rational) -> Rational {
        // node points nearest p = e₃ on three facets around p
        let p = v3((0, 1), (0, 1), (1, 1));
        let facets = facets_of_cross_polytope();
        let mut refs = Vec::new();
        for (i, f) in facets.iter().enumerate() {
            if refs.len() == 3 || !f.has_vertex(&p) {
                continue;
            }
            let nodes = node_points(f, eta).unwrap();
            let best = (0..3).max_by_key(|&k| nodes[k][2].clone()).unwrap();
            refs.push(NodeRef { facet: i, index: best });
        }
        node_triple_ratio(eta, [refs[0], refs[1], refs[2]]).unwrap()
    }

    #[test]
    fn three_nodes_around_a_vertex() {
        for eta in [q(3, 5), q(4, 7), q(2, 3)] {
            assert_eq!(around_p(&eta), eta);
        }
    }

    #[test]
    fn node_triple_minimum_is_eta() {
        for eta in [q(3, 5), q(4, 7), q(5, 9)] {
            let (min, argmin) = node_triple_minimum(&eta).unwrap();
            assert_eq!(min, eta);
            let facets = facets_of_cross_polytope();
            let common = |t: &[NodeRef; 3]| {
                named_vertices()
                    .into_iter()
                    .filter(|(_, v)| t.iter().all(|n| facets[n.facet].has_vertex(v)))
                    .count()
            };
            let with_vertex = argmin.iter().filter(|t| common(t) == 1).count();
            assert!(with_vertex > 0);
        }
    }

    #[test]
    fn node_triple_rejects_repeated_facets() {
        let t = [NodeRef { facet: 0, index: 0 }, NodeRef { facet: 0, index: 1 }, NodeRef { facet: 1, index: 0 }];
        assert!(node_triple_ratio(&q(3, 5), t).is_err());
    }
}
