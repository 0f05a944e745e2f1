//! Unimodular integer affine maps x ↦ Ax + b.

use smallvec::SmallVec;
use thiserror::Error;

use crate::lattice::{LatticeIndex, Margins, Window};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("leg map is not injective or out of range: {0:?} into {1}")]
    BadLegs(Vec<usize>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    dim: usize,
    /// Row-major d×d.
    a: SmallVec<[i64; 16]>,
    b: SmallVec<[i64; 9]>,
}

impl AffineMap {
    pub fn identity(dim: usize) -> Self {
        let mut a = SmallVec::from_elem(0, dim * dim);
        for k in 0..dim {
            a[k * dim + k] = 1;
        }
        AffineMap {
            dim,
            a,
            b: SmallVec::from_elem(0, dim),
        }
    }

    pub fn translation(b: &[i64]) -> Self {
        let mut m = AffineMap::identity(b.len());
        m.b.copy_from_slice(b);
        m
    }

    /// Checks unimodularity.
    pub fn new(dim: usize, a: &[i64], b: &[i64]) -> Result<Self, AffineError> {
        assert_eq!(a.len(), dim * dim);
        assert_eq!(b.len(), dim);
        let m = AffineMap {
            dim,
            a: SmallVec::from_slice(a),
            b: SmallVec::from_slice(b),
        };
        m.inverse()?;
        Ok(m)
    }

    /// Coordinate permutation: output coordinate `k` takes input coordinate `perm[k]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut a = SmallVec::from_elem(0, dim * dim);
        for (k, &p) in perm.iter().enumerate() {
            a[k * dim + p] = 1;
        }
        AffineMap {
            dim,
            a,
            b: SmallVec::from_elem(0, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a(&self, r: usize, c: usize) -> i64 {
        self.a[r * self.dim + c]
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.dim)
    }

    pub fn apply(&self, x: &[i64]) -> LatticeIndex {
        let d = self.dim;
        let mut out: SmallVec<[i64; 9]> = SmallVec::with_capacity(d);
        for r in 0..d {
            let row = &self.a[r * d..(r + 1) * d];
            let mut s = self.b[r];
            for (aij, xj) in row.iter().zip(x) {
                s += aij * xj;
            }
            out.push(s);
        }
        LatticeIndex(out)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> AffineMap {
        let d = self.dim;
        assert_eq!(d, inner.dim);
        let mut a = SmallVec::from_elem(0, d * d);
        for r in 0..d {
            for c in 0..d {
                a[r * d + c] = (0..d).map(|k| self.a(r, k) * inner.a(k, c)).sum();
            }
        }
        let mut b: SmallVec<[i64; 9]> = SmallVec::from_elem(0, d);
        for r in 0..d {
            b[r] = self.b[r] + (0..d).map(|k| self.a(r, k) * inner.b[k]).sum::<i64>();
        }
        AffineMap { dim: d, a, b }
    }

    pub fn determinant(&self) -> i64 {
        // Fraction-free elimination (Bareiss).
        let d = self.dim;
        let mut m: Vec<i128> = self.a.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..d {
            if m[k * d + k] == 0 {
                match (k + 1..d).find(|&r| m[r * d + k] != 0) {
                    Some(r) => {
                        for c in 0..d {
                            m.swap(k * d + c, r * d + c);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for r in k + 1..d {
                for c in k + 1..d {
                    m[r * d + c] = (m[r * d + c] * m[k * d + k] - m[r * d + k] * m[k * d + c]) / prev;
                }
            }
            prev = m[k * d + k];
        }
        (sign * m[d * d - 1]) as i64
    }

    /// Exact inverse by unimodular row reduction.
    pub fn inverse(&self) -> Result<AffineMap, AffineError> {
        let d = self.dim;
        let w = 2 * d;
        let mut m: Vec<i64> = vec![0; d * w];
        for r in 0..d {
            for c in 0..d {
                m[r * w + c] = self.a(r, c);
            }
            m[r * w + d + r] = 1;
        }
        let row_sub = |m: &mut Vec<i64>, dst: usize, src: usize, f: i64| {
            for c in 0..w {
                m[dst * w + c] -= f * m[src * w + c];
            }
        };
        for col in 0..d {
            loop {
                let pivot = (col..d)
                    .filter(|&r| m[r * w + col] != 0)
                    .min_by_key(|&r| m[r * w + col].abs());
                let Some(p) = pivot else {
                    return Err(AffineError::NotUnimodular);
                };
                if p != col {
                    for c in 0..w {
                        m.swap(p * w + c, col * w + c);
                    }
                }
                let pv = m[col * w + col];
                let mut done = true;
                for r in col + 1..d {
                    let f = m[r * w + col] / pv;
                    if f != 0 {
                        row_sub(&mut m, r, col, f);
                    }
                    if m[r * w + col] != 0 {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            match m[col * w + col] {
                1 => {}
                -1 => {
                    for c in 0..w {
                        m[col * w + c] = -m[col * w + c];
                    }
                }
                _ => return Err(AffineError::NotUnimodular),
            }
        }
        for col in (0..d).rev() {
            for r in 0..col {
                let f = m[r * w + col];
                if f != 0 {
                    row_sub(&mut m, r, col, f);
                }
            }
        }
        let mut a = SmallVec::from_elem(0, d * d);
        for r in 0..d {
            for c in 0..d {
                a[r * d + c] = m[r * w + d + c];
            }
        }
        let lin = AffineMap {
            dim: d,
            a,
            b: SmallVec::from_elem(0, d),
        };
        let nb = lin.apply(&self.b);
        let b = nb.0.iter().map(|v| -v).collect();
        Ok(AffineMap { b, ..lin })
    }

    /// Embed into dimension `big`, coordinate `k` going to `legs[k]`.
    pub fn embed(&self, legs: &[usize], big: usize) -> Result<AffineMap, AffineError> {
        check_legs(legs, self.dim, big)?;
        let mut out = AffineMap::identity(big);
        for (r, &lr) in legs.iter().enumerate() {
            for (c, &lc) in legs.iter().enumerate() {
                out.a[lr * big + lc] = self.a(r, c);
            }
            out.b[lr] = self.b[r];
        }
        Ok(out)
    }

    /// Extreme values of the displacement `(A − I)x + b` over `w`, per coordinate.
    pub fn displacement_range(&self, w: &Window) -> Vec<(i64, i64)> {
        let d = self.dim;
        (0..d)
            .map(|r| {
                let mut lo = self.b[r];
                let mut hi = self.b[r];
                for (c, &(wl, wh)) in w.bounds().iter().enumerate() {
                    let coef = self.a(r, c) - i64::from(r == c);
                    let (x, y) = (coef * wl, coef * wh);
                    lo += x.min(y);
                    hi += x.max(y);
                }
                (lo, hi)
            })
            .collect()
    }

    /// Non-negative `(low, high)` margins needed so `w` stays inside after the map.
    pub fn margins(&self, w: &Window) -> Margins {
        self.displacement_range(w)
            .into_iter()
            .map(|(lo, hi)| ((-lo).max(0), hi.max(0)))
            .collect()
    }
}

pub(crate) fn check_legs(legs: &[usize], small: usize, big: usize) -> Result<(), AffineError> {
    let mut seen = vec![false; big];
    if legs.len() != small {
        return Err(AffineError::BadLegs(legs.to_vec(), big));
    }
    for &l in legs {
        if l >= big || seen[l] {
            return Err(AffineError::BadLegs(legs.to_vec(), big));
        }
        seen[l] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_inverse() {
        let w = AffineMap::new(2, &[1, 0, 1, 1], &[0, 3]).unwrap();
        let inv = w.inverse().unwrap();
        assert!(w.after(&inv).is_identity());
        assert!(inv.after(&w).is_identity());
        assert_eq!(w.apply(&[3, 1]), [3, 7].into());
    }

    #[test]
    fn rejects_singular() {
        assert_eq!(
            AffineMap::new(2, &[2, 0, 0, 1], &[0, 0]),
            Err(AffineError::NotUnimodular)
        );
        assert!(AffineMap::new(2, &[1, 1, 1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn determinant_of_permutation() {
        assert_eq!(AffineMap::permutation(&[1, 0, 2]).determinant(), -1);
        assert_eq!(AffineMap::permutation(&[2, 0, 1]).determinant(), 1);
    }

    #[test]
    fn margins_of_shear() {
        let w = AffineMap::new(2, &[1, 0, 1, 1], &[0, 0]).unwrap();
        assert_eq!(w.margins(&Window::cube(2, 8)), vec![(0, 0), (8, 8)]);
        let v = AffineMap::translation(&[-1, 0]);
        assert_eq!(v.margins(&Window::cube(2, 8)), vec![(1, 0), (0, 0)]);
    }

    #[test]
    fn embed_rejects_repeated_leg() {
        let v = AffineMap::translation(&[-1, 0]);
        assert!(v.embed(&[0, 0], 3).is_err());
        assert!(v.embed(&[0, 3], 3).is_err());
        let e = v.embed(&[2, 0], 3).unwrap();
        assert_eq!(e.apply(&[5, 6, 7]), [5, 6, 6].into());
    }
}
