use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::linalg::Vec3;

/// A signed permutation matrix: `(g·x)ᵢ = signs[i] · x[perm[i]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryOp {
    perm: [usize; 3],
    signs: [i8; 3],
}

impl SymmetryOp {
    pub fn identity() -> Self {
        SymmetryOp { perm: [0, 1, 2], signs: [1, 1, 1] }
    }

    pub fn new(perm: [usize; 3], signs: [i8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return None;
        }
        Some(SymmetryOp { perm, signs })
    }

    pub fn central_inversion() -> Self {
        SymmetryOp { perm: [0, 1, 2], signs: [-1, -1, -1] }
    }

    pub fn matrix(&self) -> [[i8; 3]; 3] {
        let mut m = [[0i8; 3]; 3];
        for i in 0..3 {
            m[i][self.perm[i]] = self.signs[i];
        }
        m
    }

    pub fn apply(&self, x: &Vec3) -> Vec3 {
        std::array::from_fn(|i| {
            let v = &x[self.perm[i]];
            if self.signs[i] < 0 {
                -v
            } else {
                v.clone()
            }
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SymmetryOp) -> SymmetryOp {
        // (self(other x))_i = s_i (other x)[p_i] = s_i o_{p_i} x[q_{p_i}]
        SymmetryOp {
            perm: std::array::from_fn(|i| other.perm[self.perm[i]]),
            signs: std::array::from_fn(|i| self.signs[i] * other.signs[self.perm[i]]),
        }
    }

    pub fn inverse(&self) -> SymmetryOp {
        let mut perm = [0usize; 3];
        let mut signs = [1i8; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SymmetryOp { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        *self == SymmetryOp::identity()
    }
}

/// All 48 signed permutations of the coordinate axes, identity first.
pub fn symmetry_group() -> Vec<SymmetryOp> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in PERMS {
        for k in 0..8 {
            let signs = [
                if k & 4 == 0 { 1 } else { -1 },
                if k & 2 == 0 { 1 } else { -1 },
                if k & 1 == 0 { 1 } else { -1 },
            ];
            out.push(SymmetryOp { perm, signs });
        }
    }
    out
}

/// Closure of a generating set under composition.
pub fn generate(gens: &[SymmetryOp]) -> Vec<SymmetryOp> {
    let mut set: BTreeSet<SymmetryOp> = BTreeSet::new();
    set.insert(SymmetryOp::identity());
    let mut frontier = vec![SymmetryOp::identity()];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h);
            if set.insert(gh) {
                frontier.push(gh);
            }
        }
    }
    set.into_iter().collect()
}

/// Every subgroup of the octahedral group generated by at most two elements,
/// deduplicated and ordered by size, then lexicographically.
pub fn subgroups() -> Vec<Vec<SymmetryOp>> {
    let g = symmetry_group();
    let mut seen: BTreeSet<Vec<SymmetryOp>> = BTreeSet::new();
    for (i, a) in g.iter().enumerate() {
        seen.insert(generate(&[*a]));
        for b in &g[i + 1..] {
            seen.insert(generate(&[*a, *b]));
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
