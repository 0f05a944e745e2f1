//! Dense-matrix oracles for composition, adjoint and functional calculus.
//!
//! Every operator is assembled as a dense matrix on a window from its basis
//! actions; products and adjoints are then taken with nalgebra and compared
//! entry by entry with what the shift-operator engine composes symbolically.

#![allow(dead_code)]

use std::collections::HashMap;

use bqe2::config::RunConfig;
use bqe2::constructions::fops::{qexp_normal, qexp_scaled, y};
use bqe2::constructions::generators::{flip, n, n_inv, p, tensor, u, u_beta, v, w};
use bqe2::constructions::xops::{polar_split, x_normal};
use bqe2::constructions::{braiding, comult, suq2, Lambda};
use bqe2::qexp::qexp_value;
use bqe2::verify::Context;
use bqe2::{basis_vector, LatticeIndex, QParam, ShiftOperator, StateVector, Window};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub const TOL: f64 = 1e-10;
const MAX_COLUMNS: usize = 96;

#[derive(Clone)]
pub enum Expr {
    Leaf(ShiftOperator),
    Adj(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
}

use Expr::*;

fn leaf(op: ShiftOperator) -> Expr {
    Leaf(op)
}

fn adj(e: Expr) -> Expr {
    Adj(Box::new(e))
}

fn mul(factors: Vec<Expr>) -> Expr {
    factors
        .into_iter()
        .reduce(|a, b| Mul(Box::new(a), Box::new(b)))
        .expect("at least one factor")
}

fn add(a: Expr, b: Expr) -> Expr {
    Add(Box::new(a), Box::new(b))
}

impl Expr {
    fn engine(&self) -> ShiftOperator {
        match self {
            Leaf(op) => op.clone(),
            Adj(e) => e.engine().adjoint(),
            Mul(a, b) => a.engine().compose(&b.engine()).unwrap(),
            Add(a, b) => a.engine().add(&b.engine()).unwrap(),
        }
    }

    /// Push adjoints down to the leaves so dense evaluation only needs M and M^H.
    fn normalise(&self, dagger: bool) -> Expr {
        match (self, dagger) {
            (Leaf(op), false) => Leaf(op.clone()),
            (Leaf(op), true) => Adj(Box::new(Leaf(op.clone()))),
            (Adj(e), d) => e.normalise(!d),
            (Mul(a, b), false) => Mul(Box::new(a.normalise(false)), Box::new(b.normalise(false))),
            (Mul(a, b), true) => Mul(Box::new(b.normalise(true)), Box::new(a.normalise(true))),
            (Add(a, b), d) => Add(Box::new(a.normalise(d)), Box::new(b.normalise(d))),
        }
    }
}

struct Dense {
    window: Window,
    points: Vec<LatticeIndex>,
    slot: HashMap<LatticeIndex, usize>,
    cache: HashMap<*const ShiftOperator, DMatrix<Complex64>>,
}

impl Dense {
    fn new(window: Window) -> Self {
        let points: Vec<_> = window.points().collect();
        let slot = points.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        Dense {
            window,
            points,
            slot,
            cache: HashMap::new(),
        }
    }

    fn size(&self) -> usize {
        self.points.len()
    }

    /// Columns are basis actions; amplitude leaving the window is dropped.
    fn matrix(&mut self, op: &ShiftOperator) -> &DMatrix<Complex64> {
        let key = op as *const ShiftOperator;
        if !self.cache.contains_key(&key) {
            let n = self.size();
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for (c, x) in self.points.iter().enumerate() {
                for (y, a) in op.apply_basis(x).unwrap().iter() {
                    if let Some(&r) = self.slot.get(y) {
                        m[(r, c)] += *a;
                    }
                }
            }
            self.cache.insert(key, m);
        }
        &self.cache[&key]
    }

    /// Dense value of a normalised expression on the given columns.
    fn eval(&mut self, e: &Expr, cols: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        match e {
            Leaf(op) => self.matrix(op) * cols,
            Adj(inner) => match inner.as_ref() {
                Leaf(op) => self.matrix(op).adjoint() * cols,
                _ => unreachable!("normalised"),
            },
            Mul(a, b) => {
                let right = self.eval(b, cols);
                self.eval(a, &right)
            }
            Add(a, b) => self.eval(a, cols) + self.eval(b, cols),
        }
    }

    /// Engine value on `x`, or None if an intermediate vector leaves the
    /// window (the dense product would then not be exact).
    fn exact_column(&self, e: &Expr, x: &StateVector) -> Option<StateVector> {
        let inside = |s: &StateVector| s.escapes(&self.window).is_none();
        match e {
            Leaf(op) => Some(op.apply(x).unwrap()),
            Adj(inner) => match inner.as_ref() {
                Leaf(op) => Some(op.adjoint().apply(x).unwrap()),
                _ => unreachable!("normalised"),
            },
            Mul(a, b) => {
                let mid = self.exact_column(b, x)?;
                inside(&mid).then_some(())?;
                self.exact_column(a, &mid)
            }
            Add(a, b) => {
                let l = self.exact_column(a, x)?;
                let r = self.exact_column(b, x)?;
                let mut s = l;
                for (k, v) in r.iter() {
                    s.add_at(k.clone(), *v);
                }
                Some(s)
            }
        }
    }
}

/// Largest entrywise deviation between engine and dense oracle, and the number of columns compared.
pub fn compare(window: Window, e: &Expr) -> (f64, usize) {
    let mut dense = Dense::new(window);
    let norm = e.normalise(false);
    let valid: Vec<usize> = (0..dense.size())
        .filter(|&c| dense.exact_column(&norm, &basis_vector(dense.points[c].clone())).is_some())
        .collect();
    let step = valid.len().div_ceil(MAX_COLUMNS).max(1);
    let chosen: Vec<usize> = valid.iter().copied().step_by(step).collect();
    let n = dense.size();
    let mut cols = DMatrix::<Complex64>::zeros(n, chosen.len());
    for (k, &c) in chosen.iter().enumerate() {
        cols[(c, k)] = Complex64::new(1.0, 0.0);
    }
    let oracle = dense.eval(&norm, &cols);
    let op = e.engine();
    let mut worst: f64 = 0.0;
    for (k, &c) in chosen.iter().enumerate() {
        let got = op.apply_basis(&dense.points[c]).unwrap();
        let mut engine_col = vec![Complex64::default(); n];
        for (y, a) in got.iter() {
            if let Some(&r) = dense.slot.get(y) {
                engine_col[r] += *a;
            }
        }
        for r in 0..n {
            worst = worst.max((engine_col[r] - oracle[(r, k)]).norm());
        }
    }
    (worst, chosen.len())
}

fn emb(op: &ShiftOperator, legs: &[usize], d: usize) -> ShiftOperator {
    op.embed_legs(legs, d).unwrap()
}

fn cube(d: usize) -> Window {
    Window::cube(d, 3)
}

fn q() -> QParam {
    QParam::default_q()
}

pub fn composition_cases() -> Vec<(&'static str, Window, Expr)> {
    let q = q();
    let (v, n, p) = (v(q), n(q), p(q));
    let w2 = w(q);
    let one2 = ShiftOperator::identity(2, q);
    let z4 = braiding::z_op(q);
    let psi = braiding::braiding(q);
    let x = x_normal().as_operator(q);
    vec![
        ("v n", cube(2), mul(vec![leaf(v.clone()), leaf(n.clone())])),
        ("n v*", cube(2), mul(vec![leaf(n.clone()), adj(leaf(v.clone()))])),
        ("(v n)*", cube(2), adj(mul(vec![leaf(v.clone()), leaf(n.clone())]))),
        ("P n P*", cube(2), mul(vec![leaf(p.clone()), leaf(n.clone()), adj(leaf(p.clone()))])),
        ("n^2 v^-1", cube(2), mul(vec![leaf(n.pow(2)), leaf(v.pow(-1))])),
        ("n n^-1", cube(2), mul(vec![leaf(n.clone()), leaf(n_inv(q))])),
        (
            "alpha* alpha + gamma* gamma",
            cube(2),
            add(
                mul(vec![adj(leaf(suq2::alpha(q))), leaf(suq2::alpha(q))]),
                mul(vec![adj(leaf(suq2::gamma(q))), leaf(suq2::gamma(q))]),
            ),
        ),
        ("alpha gamma t", cube(2), mul(vec![leaf(suq2::alpha(q)), leaf(suq2::gamma(q)), leaf(suq2::t_pow(q, None, 1))])),
        ("W W*", cube(2), mul(vec![leaf(w2.clone()), adj(leaf(w2.clone()))])),
        ("W^3 (W*)^2", cube(2), mul(vec![leaf(w2.pow(3)), adj(leaf(w2.pow(2)))])),
        ("U U_beta*", cube(3), mul(vec![leaf(u(q)), adj(leaf(u_beta(q)))])),
        ("Z*", cube(4), adj(leaf(z4.clone()))),
        ("Sigma Z Sigma", cube(4), mul(vec![leaf(flip(q)), leaf(z4), leaf(flip(q))])),
        (
            "Psi (n (x) 1) Psi*",
            cube(4),
            mul(vec![leaf(psi.clone()), leaf(tensor(&[&n, &one2])), adj(leaf(psi))]),
        ),
        ("D(n)", cube(4), leaf(comult::delta_n(q))),
        ("D(n)* D(n)", cube(4), mul(vec![adj(leaf(comult::delta_n(q))), leaf(comult::delta_n(q))])),
        (
            "Y (vn (x) 1) Y*",
            cube(4),
            mul(vec![leaf(y(q)), leaf(emb(&v.compose(&n).unwrap(), &[0, 1], 4)), adj(leaf(y(q)))]),
        ),
        ("X X*", cube(4), mul(vec![leaf(x.clone()), adj(leaf(x))])),
    ]
}

/// Dense F_q(c S) on one orbit of a shift, through the twisted circulant
/// T (T^L = -1): T = U diag(mu) U*, F(cT) = U diag(F(c mu)) U*.
/// Returns the entries <e_{t+m}, F(cT) e_t> for m in (-L/2, L/2).
pub fn orbit_oracle(c: Complex64, qp: &QParam, len: usize) -> HashMap<i64, Complex64> {
    let l = len as f64;
    let mu: Vec<Complex64> = (0..len)
        .map(|k| Complex64::cis((std::f64::consts::PI + std::f64::consts::TAU * k as f64) / l))
        .collect();
    // eigenvector k of T has entries mu_k^{-t} / sqrt(L)
    let uu = DMatrix::from_fn(len, len, |t, k| mu[k].powi(-(t as i32)) / l.sqrt());
    let mut tt = DMatrix::<Complex64>::zeros(len, len);
    for t in 0..len - 1 {
        tt[(t + 1, t)] = Complex64::new(1.0, 0.0);
    }
    tt[(0, len - 1)] = Complex64::new(-1.0, 0.0);
    let diag_mu = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(mu.clone()));
    assert!((&uu * diag_mu * uu.adjoint() - &tt).camax() < 1e-12, "spectral decomposition of T");
    let f = nalgebra::DVector::from_iterator(len, mu.iter().map(|m| qexp_value(c * m, qp, 1e-9).unwrap()));
    let fc = &uu * DMatrix::from_diagonal(&f) * uu.adjoint();
    let centre = len / 2;
    (-(len as i64) / 2 + 1..(len as i64) / 2)
        .map(|m| (m, fc[((centre as i64 + m) as usize, centre)]))
        .collect()
}

/// Largest entrywise deviation of the banded functional calculus from the spectral oracle.
pub fn functional_cases() -> Vec<(&'static str, f64)> {
    let mut out = Vec::new();
    let qp = q();
    let ctx = Context::new(RunConfig::default()).unwrap();
    let band = ctx.banding().unwrap();
    let nm = polar_split(&n(qp)).unwrap();
    let ops = [
        ("F_q(n)", qexp_normal(qp, &nm, band).unwrap(), Complex64::new(1.0, 0.0)),
        ("F_q(q n)", qexp_scaled(qp, Lambda::q_pow(1), &nm, band).unwrap(), qp.q()),
    ];
    // n e_{i,j} = q^i e_{i,j+1}: each row i is an orbit of the j-shift with weight q^i
    for (name, op, lambda) in ops {
        let mut worst: f64 = 0.0;
        for i in -3..=3 {
            let entries = orbit_oracle(lambda * qp.q_pow(i), &qp, 256);
            for j in -3..=3 {
                let got = op.apply_basis(&LatticeIndex::new(&[i, j])).unwrap();
                for (x, _) in got.iter() {
                    assert_eq!(x[0], i, "{name} leaves the orbit");
                    let _ = entries.get(&(x[1] - j)).expect("engine band exceeds the oracle period");
                }
                for (&m, &want) in &entries {
                    let have = got.get(&LatticeIndex::new(&[i, j + m]));
                    worst = worst.max((have - want).norm());
                }
            }
        }
        out.push((name, worst));
    }
    out
}
