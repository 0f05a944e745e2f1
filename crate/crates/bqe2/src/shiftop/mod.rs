//! Operators on ℓ²(ℤ^d) as finite sums of affine monomial terms e_x ↦ c(x)·e_{Ax+b}.

pub mod affine;
pub mod coeff;

use num_complex::Complex64;
use thiserror::Error;

pub use affine::{AffineError, AffineMap};
pub use coeff::{AffineForm, CoeffError, CoeffExpr, FnFactor, QuadForm};

use crate::lattice::{LatticeError, LatticeIndex, Margins, StateVector, Window};
use crate::qparam::QParam;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("operators built for different q")]
    ParamMismatch,
}

#[derive(Clone, Debug)]
pub struct MonomialTerm {
    pub map: AffineMap,
    pub coeff: CoeffExpr,
}

impl MonomialTerm {
    pub fn new(map: AffineMap, coeff: CoeffExpr) -> Self {
        assert_eq!(map.dim(), coeff.dim());
        MonomialTerm { map, coeff }
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonomialTerm) -> MonomialTerm {
        MonomialTerm {
            map: self.map.after(&inner.map),
            coeff: inner.coeff.mul(&self.coeff.substitute(&inner.map)),
        }
    }

    pub fn adjoint(&self) -> Result<MonomialTerm, AffineError> {
        let inv = self.map.inverse()?;
        Ok(MonomialTerm {
            coeff: self.coeff.substitute(&inv).conj(),
            map: inv,
        })
    }

    pub fn embed(&self, legs: &[usize], big: usize) -> Result<MonomialTerm, AffineError> {
        Ok(MonomialTerm {
            map: self.map.embed(legs, big)?,
            coeff: self.coeff.embed(legs, big)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ShiftOperator {
    dim: usize,
    q: QParam,
    terms: Vec<MonomialTerm>,
}

impl ShiftOperator {
    pub fn zero(dim: usize, q: QParam) -> Self {
        ShiftOperator {
            dim,
            q,
            terms: Vec::new(),
        }
    }

    pub fn identity(dim: usize, q: QParam) -> Self {
        ShiftOperator::from_term(q, MonomialTerm::new(AffineMap::identity(dim), CoeffExpr::one(dim)))
    }

    pub fn from_term(q: QParam, t: MonomialTerm) -> Self {
        ShiftOperator {
            dim: t.dim(),
            q,
            terms: vec![t],
        }
    }

    pub fn from_terms(dim: usize, q: QParam, terms: Vec<MonomialTerm>) -> Self {
        assert!(terms.iter().all(|t| t.dim() == dim));
        ShiftOperator { dim, q, terms }
    }

    /// Single-term operator e_x ↦ coeff(x)·e_{map(x)}.
    pub fn monomial(q: QParam, map: AffineMap, coeff: CoeffExpr) -> Self {
        ShiftOperator::from_term(q, MonomialTerm::new(map, coeff))
    }

    /// Diagonal operator.
    pub fn diagonal(q: QParam, coeff: CoeffExpr) -> Self {
        let d = coeff.dim();
        ShiftOperator::monomial(q, AffineMap::identity(d), coeff)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    fn check(&self, other: &ShiftOperator) -> Result<(), ShiftError> {
        if self.dim != other.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            }
            .into());
        }
        if self.q != other.q {
            return Err(ShiftError::ParamMismatch);
        }
        Ok(())
    }

    /// Exact action on a finitely supported vector; nothing is clipped.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector, ShiftError> {
        if v.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            }
            .into());
        }
        let mut out = StateVector::zero(self.dim);
        for (x, a) in v.iter() {
            for t in &self.terms {
                let c = t.coeff.eval(x.coords(), &self.q)?;
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                out.add_at(t.map.apply(x.coords()), c * a);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn apply_basis(&self, x: &LatticeIndex) -> Result<StateVector, ShiftError> {
        self.apply(&crate::lattice::basis_vector(x.clone()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ShiftOperator) -> Result<ShiftOperator, ShiftError> {
        self.check(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for t1 in &self.terms {
            for t2 in &other.terms {
                terms.push(t1.after(t2));
            }
        }
        Ok(ShiftOperator {
            dim: self.dim,
            q: self.q,
            terms,
        })
    }

    pub fn adjoint(&self) -> ShiftOperator {
        ShiftOperator {
            dim: self.dim,
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|t| t.adjoint().expect("terms are unimodular by construction"))
                .collect(),
        }
    }

    pub fn add(&self, other: &ShiftOperator) -> Result<ShiftOperator, ShiftError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(ShiftOperator {
            dim: self.dim,
            q: self.q,
            terms,
        })
    }

    pub fn scale(&self, c: Complex64) -> ShiftOperator {
        ShiftOperator {
            dim: self.dim,
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|t| MonomialTerm {
                    map: t.map.clone(),
                    coeff: t.coeff.clone().scaled(c),
                })
                .collect(),
        }
    }

    /// `self^k`; negative powers use the adjoint, so only meaningful for unitaries.
    pub fn pow(&self, k: i64) -> ShiftOperator {
        let base = if k < 0 { self.adjoint() } else { self.clone() };
        let mut out = ShiftOperator::identity(self.dim, self.q);
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out).expect("same operator");
        }
        out
    }

    /// Place this operator on legs `legs` of a `big`-dimensional lattice.
    pub fn embed_legs(&self, legs: &[usize], big: usize) -> Result<ShiftOperator, ShiftError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.embed(legs, big))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ShiftOperator {
            dim: big,
            q: self.q,
            terms,
        })
    }

    /// Conjugate by a unitary: `u · self · u*`.
    pub fn conjugated_by(&self, u: &ShiftOperator) -> Result<ShiftOperator, ShiftError> {
        u.compose(self)?.compose(&u.adjoint())
    }

    /// Per-coordinate margins covering every term's displacement over `w`.
    pub fn margin(&self, w: &Window) -> Margins {
        let mut m = vec![(0i64, 0i64); self.dim];
        for t in &self.terms {
            for (acc, tm) in m.iter_mut().zip(t.map.margins(w)) {
                acc.0 = acc.0.max(tm.0);
                acc.1 = acc.1.max(tm.1);
            }
        }
        m
    }
}

/// Product of operators applied right to left without expanding the term product.
#[derive(Clone, Debug)]
pub struct OpChain {
    /// Leftmost factor first.
    factors: Vec<ShiftOperator>,
}

impl OpChain {
    pub fn new(factors: Vec<ShiftOperator>) -> Self {
        assert!(!factors.is_empty());
        let d = factors[0].dim();
        assert!(factors.iter().all(|f| f.dim() == d));
        OpChain { factors }
    }

    pub fn single(op: ShiftOperator) -> Self {
        OpChain { factors: vec![op] }
    }

    pub fn dim(&self) -> usize {
        self.factors[0].dim()
    }

    pub fn factors(&self) -> &[ShiftOperator] {
        &self.factors
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector, ShiftError> {
        let mut cur = v.clone();
        for f in self.factors.iter().rev() {
            cur = f.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn adjoint(&self) -> OpChain {
        OpChain {
            factors: self.factors.iter().rev().map(ShiftOperator::adjoint).collect(),
        }
    }

    /// Smallest box containing every point reachable from `w` through the chain.
    pub fn reach(&self, w: &Window) -> Window {
        let mut cur = w.clone();
        for f in self.factors.iter().rev() {
            cur = cur.expand(&f.margin(&cur));
        }
        cur
    }

    /// Margins of the chain relative to `w`.
    pub fn margin(&self, w: &Window) -> Margins {
        let r = self.reach(w);
        w.bounds()
            .iter()
            .zip(r.bounds())
            .map(|(a, b)| (a.0 - b.0, b.1 - a.1))
            .collect()
    }

    /// Multiply everything out into one operator.
    pub fn expand(&self) -> ShiftOperator {
        let mut it = self.factors.iter();
        let mut out = it.next().unwrap().clone();
        for f in it {
            out = out.compose(f).expect("chain factors share d and q");
        }
        out
    }
}

impl From<ShiftOperator> for OpChain {
    fn from(op: ShiftOperator) -> Self {
        OpChain::single(op)
    }
}
