//! Points of ℤ^d, rectangular windows and sparse vectors in ℓ²(ℤ^d).

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Amplitudes with modulus below this are dropped from a [`StateVector`].
pub const PRUNE_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty interior in coordinate {coord}: [{lo}, {hi}] shrunk by ({low_margin}, {high_margin})")]
    EmptyInterior {
        coord: usize,
        lo: i64,
        hi: i64,
        low_margin: i64,
        high_margin: i64,
    },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeIndex(pub SmallVec<[i64; 9]>);

impl LatticeIndex {
    pub fn new(coords: &[i64]) -> Self {
        LatticeIndex(SmallVec::from_slice(coords))
    }

    pub fn zeros(d: usize) -> Self {
        LatticeIndex(SmallVec::from_elem(0, d))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl std::ops::Index<usize> for LatticeIndex {
    type Output = i64;
    fn index(&self, k: usize) -> &i64 {
        &self.0[k]
    }
}

impl fmt::Debug for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<&[i64]> for LatticeIndex {
    fn from(c: &[i64]) -> Self {
        LatticeIndex::new(c)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeIndex {
    fn from(c: [i64; N]) -> Self {
        LatticeIndex::new(&c)
    }
}

/// Per-coordinate `(low, high)` margins.
pub type Margins = Vec<(i64, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    bounds: Vec<(i64, i64)>,
}

impl Window {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self, LatticeError> {
        if bounds.is_empty() {
            return Err(LatticeError::InvalidWindow("zero dimensions".into()));
        }
        if let Some((k, (lo, hi))) = bounds.iter().enumerate().find(|(_, (lo, hi))| lo > hi) {
            return Err(LatticeError::InvalidWindow(format!(
                "coordinate {k}: lo {lo} > hi {hi}"
            )));
        }
        Ok(Window { bounds })
    }

    /// The cube `[-r, r]^d`.
    pub fn cube(d: usize, r: i64) -> Self {
        assert!(d >= 1 && r >= 0);
        Window {
            bounds: vec![(-r, r); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn contains(&self, x: &LatticeIndex) -> bool {
        x.dim() == self.dim()
            && x
                .coords()
                .iter()
                .zip(&self.bounds)
                .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }

    /// Number of lattice points, saturating at `u64::MAX`.
    pub fn volume(&self) -> u64 {
        self.bounds
            .iter()
            .map(|(lo, hi)| (hi - lo + 1) as u64)
            .fold(1u64, |a, w| a.saturating_mul(w))
    }

    /// Grow every coordinate by the given margins.
    pub fn expand(&self, margins: &[(i64, i64)]) -> Window {
        assert_eq!(margins.len(), self.dim());
        Window {
            bounds: self
                .bounds
                .iter()
                .zip(margins)
                .map(|((lo, hi), (ml, mh))| (lo - ml, hi + mh))
                .collect(),
        }
    }

    /// Lexicographic enumeration of all points.
    pub fn points(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        let start: SmallVec<[i64; 9]> = self.bounds.iter().map(|b| b.0).collect();
        let mut cur = Some(start);
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut k = next.len();
            loop {
                if k == 0 {
                    cur = None;
                    break;
                }
                k -= 1;
                if next[k] < self.bounds[k].1 {
                    next[k] += 1;
                    cur = Some(next);
                    break;
                }
                next[k] = self.bounds[k].0;
            }
            Some(LatticeIndex(out))
        })
    }
}

/// Shrink `window` so that any index map moving at most `margins` stays inside it.
pub fn interior(window: &Window, margins: &[(i64, i64)]) -> Result<Window, LatticeError> {
    if margins.len() != window.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: window.dim(),
            got: margins.len(),
        });
    }
    let mut bounds = Vec::with_capacity(window.dim());
    for (coord, (&(lo, hi), &(ml, mh))) in window.bounds.iter().zip(margins).enumerate() {
        assert!(ml >= 0 && mh >= 0, "margins must be non-negative");
        if lo + ml > hi - mh {
            return Err(LatticeError::EmptyInterior {
                coord,
                lo,
                hi,
                low_margin: ml,
                high_margin: mh,
            });
        }
        bounds.push((lo + ml, hi - mh));
    }
    Ok(Window { bounds })
}

type Hasher = BuildHasherDefault<DefaultHasher>;

/// Finitely supported vector. Iteration order is unspecified but the same on every run.
#[derive(Clone, Debug)]
pub struct StateVector {
    dim: usize,
    amps: HashMap<LatticeIndex, Complex64, Hasher>,
}

impl StateVector {
    pub fn zero(dim: usize) -> Self {
        StateVector {
            dim,
            amps: HashMap::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn get(&self, x: &LatticeIndex) -> Complex64 {
        self.amps.get(x).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeIndex, &Complex64)> {
        self.amps.iter()
    }

    /// Add `a` to the amplitude at `x`.
    pub fn add_at(&mut self, x: LatticeIndex, a: Complex64) {
        debug_assert_eq!(x.dim(), self.dim);
        if a.norm() < PRUNE_THRESHOLD {
            return;
        }
        *self.amps.entry(x).or_default() += a;
    }

    /// Drop entries whose modulus fell below the prune threshold.
    pub fn prune(&mut self) {
        self.amps.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().fold(0.0, |s, a| s + a.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> StateVector {
        let mut out = StateVector::zero(self.dim);
        for (x, a) in &self.amps {
            out.add_at(x.clone(), a * c);
        }
        out
    }

    /// `self - other`.
    pub fn sub(&self, other: &StateVector) -> Result<StateVector, LatticeError> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (x, a) in &other.amps {
            *out.amps.entry(x.clone()).or_default() -= a;
        }
        out.prune();
        Ok(out)
    }

    /// First index not contained in `w`, if any.
    pub fn escapes(&self, w: &Window) -> Option<&LatticeIndex> {
        self.amps.keys().find(|x| !w.contains(x))
    }
}

fn check_dim(expected: usize, got: usize) -> Result<(), LatticeError> {
    if expected != got {
        Err(LatticeError::DimensionMismatch { expected, got })
    } else {
        Ok(())
    }
}

pub fn basis_vector(idx: LatticeIndex) -> StateVector {
    let mut v = StateVector::zero(idx.dim());
    v.add_at(idx, Complex64::new(1.0, 0.0));
    v
}

/// ⟨a|b⟩, conjugate-linear in `a`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<Complex64, LatticeError> {
    check_dim(a.dim, b.dim)?;
    let (small, large, flip) = if a.len() <= b.len() {
        (a, b, false)
    } else {
        (b, a, true)
    };
    let mut acc = Complex64::default();
    for (x, s) in &small.amps {
        if let Some(l) = large.amps.get(x) {
            acc += if flip { l.conj() * s } else { s.conj() * l };
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_orthonormal() {
        let e = basis_vector([1, 2].into());
        let f = basis_vector([2, 1].into());
        assert_eq!(inner(&e, &e).unwrap(), c(1.0, 0.0));
        assert_eq!(inner(&e, &f).unwrap(), c(0.0, 0.0));
        assert_eq!(basis_vector([0, 0].into()).norm(), 1.0);
    }

    #[test]
    fn inner_conjugates_first_slot() {
        let e = basis_vector([0, 0].into());
        assert_eq!(inner(&e, &e.scaled(c(0.0, 2.0))).unwrap(), c(0.0, 2.0));
        assert_eq!(inner(&e.scaled(c(0.0, 1.0)), &e).unwrap(), c(0.0, -1.0));
        let mut s = e.clone();
        s.add_at([1, 0].into(), c(1.0, 0.0));
        assert_eq!(inner(&s, &basis_vector([1, 0].into())).unwrap(), c(1.0, 0.0));
        assert!(inner(&e, &basis_vector([0].into())).is_err());
    }

    #[test]
    fn interior_examples() {
        let w = Window::cube(2, 8);
        assert_eq!(interior(&w, &[(2, 2), (2, 2)]).unwrap(), Window::cube(2, 6));
        let w1 = Window::cube(1, 3);
        assert_eq!(interior(&w1, &[(0, 0)]).unwrap(), w1);
        assert!(matches!(
            interior(&Window::cube(1, 2), &[(5, 5)]),
            Err(LatticeError::EmptyInterior { .. })
        ));
    }

    #[test]
    fn window_points_enumerates_volume() {
        let w = Window::new(vec![(-1, 1), (0, 2), (5, 5)]).unwrap();
        let pts: Vec<_> = w.points().collect();
        assert_eq!(pts.len() as u64, w.volume());
        assert_eq!(pts[0], [-1, 0, 5].into());
        assert_eq!(pts.last().unwrap(), &[1, 2, 5].into());
        assert!(pts.iter().all(|p| w.contains(p)));
        assert!(Window::new(vec![(1, 0)]).is_err());
    }

    #[test]
    fn sub_cancels() {
        let mut a = basis_vector([3].into());
        a.add_at([4].into(), c(0.5, 0.0));
        assert!(a.sub(&a).unwrap().is_empty());
    }
}
