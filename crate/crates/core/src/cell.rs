//! Full-dimensional convex cells in 𝔼² and 𝔼³ kept in vertex form.
//!
//! A [`Cell`] stores its vertices together with the facet planes tight at each
//! one. Clipping by a halfspace only needs the vertices, their signed excess and
//! the edge graph, and in dimension ≤ 3 two vertices span an edge exactly when
//! they share at least `D − 1` facets. Everything is exact, so cells that lose
//! their interior are recognized as such and dropped.

use std::collections::BTreeMap;

use crate::linalg::{affine_dimension, centroid, dot, solve};
use crate::rational::Rational;

/// `normal · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Plane<const D: usize> {
    pub normal: [Rational; D],
    pub rhs: Rational,
}

impl<const D: usize> Plane<D> {
    pub fn new(normal: [Rational; D], rhs: Rational) -> Self {
        Plane { normal, rhs }
    }

    pub fn excess(&self, x: &[Rational; D]) -> Rational {
        dot(&self.normal, x) - &self.rhs
    }

    /// The closed complement `normal · x ≥ rhs`.
    pub fn flipped(&self) -> Self {
        Plane {
            normal: std::array::from_fn(|i| -&self.normal[i]),
            rhs: -&self.rhs,
        }
    }
}

/// A vertex of an arrangement together with the indices of the planes tight there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex<const D: usize> {
    pub point: [Rational; D],
    pub tight: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Cell<const D: usize> {
    planes: Vec<Plane<D>>,
    vertices: Vec<Vertex<D>>,
}

#[derive(Clone, Debug)]
pub enum Clip<const D: usize> {
    /// The halfspace contains the cell.
    Unchanged,
    /// The intersection has empty interior.
    Vanished,
    Cut(Cell<D>),
}

/// All vertices of `{x : planes}` by brute force over `D`-subsets of planes.
///
/// Only meaningful for bounded regions; tight sets index into `planes`.
pub fn enumerate_vertices<const D: usize>(planes: &[Plane<D>]) -> Vec<Vertex<D>> {
    let mut found: BTreeMap<[Rational; D], ()> = BTreeMap::new();
    let n = planes.len();
    let mut idx: Vec<usize> = (0..D).collect();
    if n < D {
        return Vec::new();
    }
    loop {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| planes[i].normal.to_vec()).collect();
        let rhs: Vec<Rational> = idx.iter().map(|&i| planes[i].rhs.clone()).collect();
        if let Some(x) = solve(&rows, &rhs) {
            let p: [Rational; D] = std::array::from_fn(|i| x[i].clone());
            if !found.contains_key(&p) && planes.iter().all(|h| !h.excess(&p).is_positive()) {
                found.insert(p, ());
            }
        }
        // next combination
        let mut k = D;
        loop {
            if k == 0 {
                return found
                    .into_keys()
                    .map(|point| {
                        let tight = (0..n as u32)
                            .filter(|&j| planes[j as usize].excess(&point).is_zero())
                            .collect();
                        Vertex { point, tight }
                    })
                    .collect();
            }
            k -= 1;
            if idx[k] < n - D + k {
                idx[k] += 1;
                for j in k + 1..D {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn shared(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl<const D: usize> Cell<D> {
    /// The bounded region `{x : planes}` if it has nonempty interior.
    pub fn from_planes(planes: Vec<Plane<D>>) -> Option<Self> {
        let vertices = enumerate_vertices(&planes);
        Cell { planes, vertices }.normalized()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[Rational; D]> {
        self.vertices.iter().map(|v| &v.point)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Facet planes of the cell.
    pub fn planes(&self) -> &[Plane<D>] {
        &self.planes
    }

    /// Mean of the vertices; strictly interior because the cell is full-dimensional.
    pub fn interior_point(&self) -> [Rational; D] {
        let pts: Vec<[Rational; D]> = self.vertices.iter().map(|v| v.point.clone()).collect();
        centroid(&pts)
    }

    /// Whether the whole cell satisfies `plane`.
    pub fn inside(&self, plane: &Plane<D>) -> bool {
        self.vertices.iter().all(|v| !plane.excess(&v.point).is_positive())
    }

    /// Intersection with the closed halfspace `plane`.
    pub fn clip(&self, plane: &Plane<D>) -> Clip<D> {
        let excess: Vec<Rational> = self.vertices.iter().map(|v| plane.excess(&v.point)).collect();
        if excess.iter().all(|e| !e.is_positive()) {
            return Clip::Unchanged;
        }
        if excess.iter().all(|e| !e.is_negative()) {
            return Clip::Vanished;
        }
        let new_id = self.planes.len() as u32;
        let mut vertices = Vec::new();
        for (v, e) in self.vertices.iter().zip(&excess) {
            if e.is_positive() {
                continue;
            }
            let mut tight = v.tight.clone();
            if e.is_zero() {
                tight.push(new_id);
            }
            vertices.push(Vertex { point: v.point.clone(), tight });
        }
        for (u, eu) in self.vertices.iter().zip(&excess) {
            if !eu.is_negative() {
                continue;
            }
            for (w, ew) in self.vertices.iter().zip(&excess) {
                if !ew.is_positive() {
                    continue;
                }
                let common = shared(&u.tight, &w.tight);
                if common.len() + 1 < D {
                    continue;
                }
                let t = eu / &(eu - ew);
                let point = std::array::from_fn(|k| &u.point[k] + &t * (&w.point[k] - &u.point[k]));
                let mut tight = common;
                tight.push(new_id);
                vertices.push(Vertex { point, tight });
            }
        }
        let mut planes = self.planes.clone();
        planes.push(plane.clone());
        match (Cell { planes, vertices }).normalized() {
            Some(c) => Clip::Cut(c),
            None => Clip::Vanished,
        }
    }

    /// Drops non-facet planes, reindexes incidences and checks full dimension.
    fn normalized(mut self) -> Option<Self> {
        let pts: Vec<[Rational; D]> = self.vertices.iter().map(|v| v.point.clone()).collect();
        if affine_dimension(&pts) != Some(D) {
            return None;
        }
        let mut count = vec![0usize; self.planes.len()];
        for v in &self.vertices {
            for &t in &v.tight {
                count[t as usize] += 1;
            }
        }
        let mut remap = vec![u32::MAX; self.planes.len()];
        let mut planes = Vec::new();
        for (i, p) in self.planes.into_iter().enumerate() {
            if count[i] >= D {
                remap[i] = planes.len() as u32;
                planes.push(p);
            }
        }
        for v in &mut self.vertices {
            let mut tight: Vec<u32> =
                v.tight.iter().map(|&t| remap[t as usize]).filter(|&t| t != u32::MAX).collect();
            tight.sort_unstable();
            tight.dedup();
            v.tight = tight;
        }
        self.planes = planes;
        Some(self)
    }
}
