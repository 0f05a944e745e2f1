//! Embeddings j₁, j₂ (and threefold J₁, J₂, J₃) and the braided comultiplication.

use serde::Serialize;

use crate::qparam::QParam;
use crate::shiftop::ShiftOperator;

use super::braiding::braiding;
use super::generators::{n, p, tensor, v};

/// Generators whose coproducts are needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gen {
    V,
    VStar,
    N,
}

impl Gen {
    pub fn op(self, q: QParam) -> ShiftOperator {
        match self {
            Gen::V => v(q),
            Gen::VStar => v(q).adjoint(),
            Gen::N => n(q),
        }
    }
}

/// A product of generators placed on legs; legs are 0-based.
pub type Word = Vec<(usize, Gen)>;

/// Δ(g) as a sum of words over legs 0 and 1.
pub fn coproduct(g: Gen) -> Vec<Word> {
    match g {
        Gen::V => vec![vec![(0, Gen::V), (1, Gen::V)]],
        Gen::VStar => vec![vec![(0, Gen::VStar), (1, Gen::VStar)]],
        Gen::N => vec![vec![(0, Gen::N), (1, Gen::VStar)], vec![(0, Gen::V), (1, Gen::N)]],
    }
}

/// Apply Δ to every letter sitting on leg `at`, pushing later legs up by one.
pub fn expand_leg(sum: &[Word], at: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for word in sum {
        let mut partial: Vec<Word> = vec![Vec::new()];
        for &(leg, g) in word {
            if leg == at {
                let mut next = Vec::new();
                for pre in &partial {
                    for cw in coproduct(g) {
                        let mut w = pre.clone();
                        w.extend(cw.into_iter().map(|(l, h)| (l + at, h)));
                        next.push(w);
                    }
                }
                partial = next;
            } else {
                let shifted = if leg > at { leg + 1 } else { leg };
                for w in &mut partial {
                    w.push((shifted, g));
                }
            }
        }
        out.extend(partial);
    }
    out
}

/// j₁(a) = a⊗1 on ℓ²(ℤ²)^{⊗legs}, a placed on factor `leg` without braiding.
fn on_factor(a: &ShiftOperator, leg: usize, legs: usize) -> ShiftOperator {
    a.embed_legs(&[2 * leg, 2 * leg + 1], 2 * legs).unwrap()
}

/// J_k(a) for k ∈ {0, …, legs−1}: a on the first factor, carried to factor k by braidings.
pub fn j_embed(a: &ShiftOperator, k: usize, legs: usize) -> ShiftOperator {
    let q = *a.q();
    let mut op = on_factor(a, 0, legs);
    for step in 0..k {
        let psi = braiding(q).embed_legs(&[2 * step, 2 * step + 1, 2 * step + 2, 2 * step + 3], 2 * legs).unwrap();
        op = op.conjugated_by(&psi).unwrap();
    }
    op
}

/// Closed forms J_k(n) = P^{⊗k}⊗n⊗1…, J_k(v) = 1^{⊗k}⊗v⊗1….
pub fn j_closed(g: Gen, k: usize, legs: usize, q: QParam) -> ShiftOperator {
    let one = ShiftOperator::identity(2, q);
    let mut parts: Vec<ShiftOperator> = Vec::new();
    for leg in 0..legs {
        parts.push(match leg.cmp(&k) {
            std::cmp::Ordering::Less if g == Gen::N => p(q),
            std::cmp::Ordering::Equal => g.op(q),
            _ => one.clone(),
        });
    }
    let refs: Vec<&ShiftOperator> = parts.iter().collect();
    tensor(&refs)
}

/// Operator of a sum of words, each letter embedded via braidings.
pub fn realize(sum: &[Word], legs: usize, q: QParam) -> ShiftOperator {
    let mut total = ShiftOperator::zero(2 * legs, q);
    for word in sum {
        let mut prod = ShiftOperator::identity(2 * legs, q);
        for &(leg, g) in word {
            prod = prod.compose(&j_embed(&g.op(q), leg, legs)).unwrap();
        }
        total = total.add(&prod).unwrap();
    }
    total
}

/// Δ_B(v) = v⊗v.
pub fn delta_v(q: QParam) -> ShiftOperator {
    tensor(&[&v(q), &v(q)])
}

/// Δ_B(n) = n⊗v* ∔ vP⊗n.
pub fn delta_n(q: QParam) -> ShiftOperator {
    let a = tensor(&[&n(q), &v(q).adjoint()]);
    let b = tensor(&[&v(q).compose(&p(q)).unwrap(), &n(q)]);
    a.add(&b).unwrap()
}

/// j₂(a) = Ψ(a⊗1)Ψ*.
pub fn j2(a: &ShiftOperator) -> ShiftOperator {
    j_embed(a, 1, 2)
}

pub fn j1(a: &ShiftOperator) -> ShiftOperator {
    j_embed(a, 0, 2)
}

/// Closed threefold form J₁(n)J₂(v*)J₃(v*) + J₁(v)J₂(n)J₃(v*) + J₁(v)J₂(v)J₃(n).
pub fn coassoc_closed(q: QParam) -> ShiftOperator {
    let terms = [
        [(Gen::N, 0), (Gen::VStar, 1), (Gen::VStar, 2)],
        [(Gen::V, 0), (Gen::N, 1), (Gen::VStar, 2)],
        [(Gen::V, 0), (Gen::V, 1), (Gen::N, 2)],
    ];
    let mut total = ShiftOperator::zero(6, q);
    for t in terms {
        let mut prod = ShiftOperator::identity(6, q);
        for (g, k) in t {
            prod = prod.compose(&j_closed(g, k, 3, q)).unwrap();
        }
        total = total.add(&prod).unwrap();
    }
    total
}
