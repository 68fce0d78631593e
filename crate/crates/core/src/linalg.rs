//! Small dense exact linear algebra over [`Rational`].

use crate::rational::Rational;

/// A point or vector of 𝔼³.
pub type Vec3 = [Rational; 3];

pub fn vec3(x: Rational, y: Rational, z: Rational) -> Vec3 {
    [x, y, z]
}

/// Shorthand used heavily in tests and catalogs: `v3((1, 3), (0, 1), (-2, 5))`.
pub fn v3(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Vec3 {
    [
        Rational::new(a.0, a.1),
        Rational::new(b.0, b.1),
        Rational::new(c.0, c.1),
    ]
}

pub fn zero<const D: usize>() -> [Rational; D] {
    std::array::from_fn(|_| Rational::zero())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add<const D: usize>(a: &[Rational; D], b: &[Rational; D]) -> [Rational; D] {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn sub<const D: usize>(a: &[Rational; D], b: &[Rational; D]) -> [Rational; D] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

pub fn scale<const D: usize>(a: &[Rational; D], s: &Rational) -> [Rational; D] {
    std::array::from_fn(|i| &a[i] * s)
}

pub fn neg<const D: usize>(a: &[Rational; D]) -> [Rational; D] {
    std::array::from_fn(|i| -&a[i])
}

pub fn l1_norm(a: &[Rational]) -> Rational {
    a.iter().map(Rational::abs).sum()
}

pub fn l1_dist<const D: usize>(a: &[Rational; D], b: &[Rational; D]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

/// Arithmetic mean of a nonempty point list.
pub fn centroid<const D: usize>(points: &[[Rational; D]]) -> [Rational; D] {
    assert!(!points.is_empty(), "centroid of empty set");
    let n = Rational::integer(points.len() as i64);
    std::array::from_fn(|i| points.iter().map(|p| &p[i]).sum::<Rational>() / &n)
}

/// Solves the square system `rows · x = rhs`; `None` when singular.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n, "system must be square");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..=n {
            a[col][k] = &a[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[r][col];
            for k in col..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a point set (`None` for the empty set).
pub fn affine_dimension<const D: usize>(points: &[[Rational; D]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| sub(p, first).to_vec()).collect();
    Some(rank(&diffs))
}

pub fn det3(m: &[Vec3; 3]) -> Rational {
    let [a, b, c] = m;
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}
