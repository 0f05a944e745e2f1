//! The registry of named identity checks.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::constructions::fops::{f_lambda, f_op, f_tilde, lemma_normal, qexp_normal, qexp_scaled, t_lambda, t_prime};
use crate::constructions::generators::{n, n_hat, n_modulus, q_l, tensor, u, u_beta, v, v_tilde, w, z};
use crate::constructions::xops::x_normal;
use crate::constructions::{boson, braiding, comult, suq2, yd};
use crate::lattice::{LatticeIndex, Window};
use crate::qexp::{qexp_polar, qexp_value};
use crate::qparam::QParam;
use crate::shiftop::{OpChain, ShiftOperator};

use super::{residual, Context, PartResult, ProbePolicy, ToleranceClass};

type Parts = Result<Vec<PartResult>, String>;

#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub name: &'static str,
    pub class: ToleranceClass,
    pub formula: &'static str,
    pub run: fn(&CheckSpec, &Context) -> Parts,
}

impl std::fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.id, self.name)
    }
}

use ToleranceClass::*;

pub fn registry() -> Vec<CheckSpec> {
    vec![
        CheckSpec { id: "C1", name: "pentagon_W", class: Exact, formula: "W23 W12 = W12 W13 W23", run: c1 },
        CheckSpec { id: "C2", name: "relations", class: Exact, formula: "v n v* = q n; z* N z = N + 1; z n~ z* = zeta n~", run: c2 },
        CheckSpec { id: "C3", name: "heisenberg_Z", class: Exact, formula: "Z12 = U*_{2b} U*_{1a} U_{2b} U_{1a}", run: c3 },
        CheckSpec { id: "C4", name: "qexp_unitarity", class: Banded, formula: "F_q(X) F_q(X)* = F_q(X)* F_q(X) = 1", run: c4 },
        CheckSpec { id: "C5", name: "fourier_symmetry", class: Table, formula: "F_m(|q|^n) = (-|q|)^m F_{-m}(|q|^{n-m})", run: c5 },
        CheckSpec { id: "C6", name: "U_invariance", class: Banded, formula: "F12 U13 U23 = U13 U23 F12", run: c6 },
        CheckSpec { id: "C7", name: "braided_pentagon", class: Banded, formula: "F23 F12 = F12 Psi23 F12 Psi23* F23", run: c7 },
        CheckSpec { id: "C8", name: "corep_family", class: Banded, formula: "F23 F^l12 = F^l12 Psi23 F^l12 Psi23* F23", run: c8 },
        CheckSpec { id: "C9", name: "lemma_pentagon", class: Banded, formula: "F_q(X)23 T(l)12 = T(l)12 F_q(l n^-1 vP (x) v^2 P (x) vn) F_q(X)23", run: c9 },
        CheckSpec { id: "C10", name: "tprime", class: Banded, formula: "(F^l)*12 F23 F^l12 F23* = Psi23 F^l12 Psi23* = T'(l)", run: c10 },
        CheckSpec { id: "C11", name: "manageability", class: Banded, formula: "zeta^{jl} <e_ij (x) e_kl | F_q(X) | e_st (x) e_{a+s+t,b}> = |q|^{l-b} zeta^{-jb} <e~_st (x) e_kl | F~ | e~_ij (x) e_ab>", run: c11 },
        CheckSpec { id: "C12", name: "QL_invariance", class: Banded, formula: "F (Q_L (x) Q_L) F* = Q_L (x) Q_L; F commutes with Q_L (x) Q_L; U (Q_L (x) 1) U* = Q_L (x) 1", run: c12 },
        CheckSpec { id: "C13", name: "comult_n", class: Banded, formula: "F (n (x) 1) F* = n (x) v* + vP (x) n", run: c13 },
        CheckSpec { id: "C14", name: "comult_v", class: Banded, formula: "F (v (x) 1) F* = v (x) v", run: c14 },
        CheckSpec { id: "C15", name: "coassoc_generators", class: Exact, formula: "(D (x) id) D(n) = (id (x) D) D(n) = J1(n)J2(v*)J3(v*) + J1(v)J2(n)J3(v*) + J1(v)J2(v)J3(n)", run: c15 },
        CheckSpec { id: "C16", name: "yd_compat", class: Exact, formula: "V12 U13 w23 = w23 U13 V12", run: c16 },
        CheckSpec { id: "C17", name: "boson_pentagon", class: Banded, formula: "W23 W12 = W12 W13 W23 for the bosonised W", run: c17 },
        CheckSpec { id: "C18", name: "boson_comult", class: Banded, formula: "W (x (x) 1) W* = D_C(x) for x = z~, v~, n~", run: c18 },
        CheckSpec { id: "C19", name: "equivariance_tau", class: Exact, formula: "(tau^k (x) tau^k) D(a) = D(tau^k(a)) for a = v, n", run: c19 },
        CheckSpec { id: "C20", name: "contraction_generators", class: Decay, formula: "tau^l(alpha) -> v at rate |q|^2, tau^l(gamma) -> 0 at rate |q|", run: c20 },
        CheckSpec { id: "C21", name: "contraction_t_Y", class: Decay, formula: "alpha^k v^-k -> t^(1/2); (tau^l (x) tau^l) Y -> 1", run: c21 },
        CheckSpec { id: "C22", name: "g_theta", class: Exact, formula: "g(q l) = |q| g(l); g_{-theta}(g_theta(l)) = l", run: c22 },
    ]
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn emb(op: &ShiftOperator, legs: &[usize], d: usize) -> ShiftOperator {
    op.embed_legs(legs, d).expect("leg map is injective and in range")
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..hi).collect()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Bench<'a> {
    ctx: &'a Context,
    spec: &'a CheckSpec,
    class: ToleranceClass,
    parts: Vec<PartResult>,
}

impl<'a> Bench<'a> {
    fn new(spec: &'a CheckSpec, ctx: &'a Context) -> Self {
        Bench {
            ctx,
            spec,
            class: spec.class,
            parts: Vec::new(),
        }
    }

    fn tolerance(&self, class: ToleranceClass) -> f64 {
        let c = &self.ctx.config;
        match class {
            Exact => c.tol_exact,
            Banded => c.tol_banded,
            Table => c.tol_table,
            Decay => c.decay_band,
        }
    }

    fn cube(&self, d: usize) -> Window {
        let c = &self.ctx.config;
        let default = match self.spec.class {
            Exact => c.exact_radius,
            Banded if d >= 9 => c.boson_radius,
            Banded => c.banded_radius,
            _ => c.exact_radius,
        };
        Window::cube(d, self.ctx.radius(self.spec, default))
    }

    fn policy(&self) -> ProbePolicy {
        let d = if self.spec.id == "C17" {
            self.ctx.config.boson_probes
        } else {
            self.ctx.config.sample_probes
        };
        self.ctx.policy_with(self.spec.id, d)
    }

    fn compare_on(&mut self, label: impl Into<String>, lhs: Vec<ShiftOperator>, rhs: Vec<ShiftOperator>, probe_box: &Window) -> Result<(), String> {
        let label = label.into();
        let m = residual(&OpChain::new(lhs), &OpChain::new(rhs), probe_box, &self.policy()).map_err(|e| format!("{label}: {e}"))?;
        let tol = self.tolerance(self.class);
        self.parts.push(PartResult::from_measurement(label, self.class, m, tol));
        Ok(())
    }

    fn compare(&mut self, label: impl Into<String>, lhs: Vec<ShiftOperator>, rhs: Vec<ShiftOperator>) -> Result<(), String> {
        let d = lhs[0].dim();
        let w = self.cube(d);
        self.compare_on(label, lhs, rhs, &w)
    }

    fn scalar(&mut self, label: impl Into<String>, class: ToleranceClass, probes: usize, residual: f64) {
        let tol = self.tolerance(class);
        self.parts.push(PartResult::scalar(label, class, probes, residual, tol));
    }

    fn done(self) -> Parts {
        Ok(self.parts)
    }
}

fn id(d: usize, q: QParam) -> ShiftOperator {
    ShiftOperator::identity(d, q)
}

fn c1(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    let at = |i, j| emb(&w(q), &[i, j], 3);
    b.compare("W23 W12 = W12 W13 W23", vec![at(1, 2), at(0, 1)], vec![at(0, 1), at(0, 2), at(1, 2)])?;
    b.done()
}

fn c2(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    let (v, n, vs, ns) = (v(q), n(q), v(q).adjoint(), n(q).adjoint());
    b.compare("v n v* = q n", vec![v.clone(), n.clone(), vs.clone()], vec![n.scale(q.q())])?;
    b.compare("v n* v* = conj(q) n*", vec![v.clone(), ns.clone(), vs.clone()], vec![ns.scale(q.q_conj())])?;
    b.compare("v |n| v* = |q| |n|", vec![v.clone(), n_modulus(q), vs], vec![n_modulus(q).scale(c(q.modulus()))])?;
    b.compare("n n* = n* n", vec![n.clone(), ns.clone()], vec![ns, n])?;
    let (z, zs, nh) = (z(q), z(q).adjoint(), n_hat(q));
    b.compare("z* N z = N + 1", vec![zs, nh.clone(), z.clone()], vec![nh.add(&id(1, q)).map_err(err)?])?;
    b.compare("z V~ = zeta V~ z", vec![z.clone(), v_tilde(q)], vec![v_tilde(q).scale(q.zeta()), z])?;
    let (tv, tn, tz) = (boson::jb_v(q), boson::jb_n(q), boson::jc_z(q));
    b.compare("v~ n~ v~* = q n~", vec![tv.clone(), tn.clone(), tv.adjoint()], vec![tn.scale(q.q())])?;
    b.compare("z~ n~ z~* = zeta n~", vec![tz.clone(), tn.clone(), tz.adjoint()], vec![tn.scale(q.zeta())])?;
    b.compare("z~ v~ = v~ z~", vec![tz.clone(), tv.clone()], vec![tv, tz])?;
    b.compare("n~ n~* = n~* n~", vec![tn.clone(), tn.adjoint()], vec![tn.adjoint(), tn])?;
    b.done()
}

fn c3(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    // coordinates (i, j; k, l; p): alpha = z, beta = V~ on the p leg
    let u1a = emb(&u(q), &[0, 1, 4], 5);
    let u2b = emb(&u_beta(q), &[2, 3, 4], 5);
    let zz = emb(&braiding::z_op(q), &[0, 1, 2, 3], 5);
    b.compare("Z12 = U*2b U*1a U2b U1a", vec![zz], vec![u2b.adjoint(), u1a.adjoint(), u2b, u1a])?;
    b.done()
}

fn c4(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let band = ctx.banding()?;
    let f = qexp_normal(q, &x_normal(), band).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    b.compare("F_q(X) F_q(X)* = 1", vec![f.clone(), f.adjoint()], vec![id(4, q)])?;
    b.compare("F_q(X)* F_q(X) = 1", vec![f.adjoint(), f], vec![id(4, q)])?;
    b.done()
}

fn c5(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let cfg = &ctx.config;
    let table = &ctx.banding()?.table;
    let (mm, nn) = (cfg.fourier_m, cfg.fourier_n);
    table.prefill(-nn - mm, nn + mm);
    let r = q.modulus();
    let value = |n: i64, m: i64| table.value(n, m).ok_or_else(|| format!("row {n} outside the table"));
    let mut b = Bench::new(spec, ctx);

    // written with the contracting power of |q| on the larger side
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in -nn..=nn {
        for m in -mm..=mm {
            let (a, bb) = (value(n, m)?, value(n - m, -m)?);
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let dev = if m >= 0 {
                (a - sign * r.powi(m as i32) * bb).abs()
            } else {
                (sign * r.powi(-m as i32) * a - bb).abs()
            };
            worst = worst.max(dev);
            count += 1;
        }
    }
    b.scalar("symmetry", Table, count, worst);

    let mut parseval: f64 = 0.0;
    let mut imag: f64 = 0.0;
    let mut recon: f64 = 0.0;
    for n in -nn..=nn {
        let row = table.row(n).ok_or_else(|| format!("row {n} outside the table"))?;
        parseval = parseval.max((row.parseval() - 1.0).abs());
        imag = imag.max(row.imag_residue);
        for j in 0..32 {
            let phi = std::f64::consts::TAU * (j as f64 + 0.5) / 32.0;
            recon = recon.max((row.reconstruct(phi) - qexp_polar(r, n, phi)).norm());
        }
    }
    let rows = (2 * nn + 1) as usize;
    b.scalar("row Parseval", Banded, rows, parseval);
    b.scalar("reconstruction at 32 angles", Banded, rows * 32, recon);
    b.parts.push(PartResult::scalar("imaginary residue", Table, rows, imag, crate::qexp::IMAG_TOLERANCE));

    let mut singular: f64 = 0.0;
    for k in 0..=3 {
        let z = c(-q.modulus_pow(-2 * k));
        let f = qexp_value(z, &q, 1e-9).map_err(err)?;
        singular = singular.max((f + 1.0).norm());
    }
    b.parts.push(PartResult::scalar("F(-|q|^{-2k}) = -1, k = 0..3", Exact, 4, singular, 0.0));
    b.done()
}

fn c6(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let f = f_op(q, ctx.banding()?).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    let f12 = emb(&f, &range(0, 4), 5);
    let u13 = emb(&u(q), &[0, 1, 4], 5);
    let u23 = emb(&u(q), &[2, 3, 4], 5);
    b.compare("F12 U13 U23 = U13 U23 F12", vec![f12.clone(), u13.clone(), u23.clone()], vec![u13, u23, f12])?;
    b.done()
}

fn leg12(op: &ShiftOperator) -> ShiftOperator {
    emb(op, &range(0, 4), 6)
}

fn leg23(op: &ShiftOperator) -> ShiftOperator {
    emb(op, &range(2, 6), 6)
}

fn c7(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let f = f_op(q, ctx.banding()?).map_err(err)?;
    let psi = leg23(&braiding::braiding(q));
    let mut b = Bench::new(spec, ctx);
    b.compare(
        "F23 F12 = F12 Psi23 F12 Psi23* F23",
        vec![leg23(&f), leg12(&f)],
        vec![leg12(&f), psi.clone(), leg12(&f), psi.adjoint(), leg23(&f)],
    )?;
    b.done()
}

fn c8(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let band = ctx.banding()?;
    let f23 = leg23(&f_op(q, band).map_err(err)?);
    let psi = leg23(&braiding::braiding(q));
    let mut b = Bench::new(spec, ctx);
    for lam in ctx.config.lambda_values().map_err(err)? {
        let fl = leg12(&f_lambda(q, lam, band).map_err(err)?);
        b.compare(
            format!("lambda = {lam}"),
            vec![f23.clone(), fl.clone()],
            vec![fl.clone(), psi.clone(), fl, psi.adjoint(), f23.clone()],
        )?;
    }
    b.done()
}

fn c9(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let band = ctx.banding()?;
    let fx23 = leg23(&qexp_normal(q, &x_normal(), band).map_err(err)?);
    let mut b = Bench::new(spec, ctx);
    for lam in ctx.config.lambda_values().map_err(err)? {
        let t12 = leg12(&t_lambda(q, lam, band).map_err(err)?);
        let mid = qexp_scaled(q, lam, &lemma_normal(q), band).map_err(err)?;
        b.compare(format!("lambda = {lam}"), vec![fx23.clone(), t12.clone()], vec![t12, mid, fx23.clone()])?;
    }
    b.done()
}

fn c10(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let band = ctx.banding()?;
    let f23 = leg23(&f_op(q, band).map_err(err)?);
    let psi = leg23(&braiding::braiding(q));
    let mut b = Bench::new(spec, ctx);
    for lam in ctx.config.lambda_values().map_err(err)? {
        let fl = leg12(&f_lambda(q, lam, band).map_err(err)?);
        let tp = t_prime(q, lam, band).map_err(err)?;
        let conj = vec![psi.clone(), fl.clone(), psi.adjoint()];
        b.compare(
            format!("lambda = {lam}: (F^l)*12 F23 F^l12 F23* = Psi23 F^l12 Psi23*"),
            vec![fl.adjoint(), f23.clone(), fl, f23.adjoint()],
            conj.clone(),
        )?;
        b.compare(format!("lambda = {lam}: Psi23 F^l12 Psi23* = T'(l)"), conj, vec![tp])?;
    }
    b.done()
}

fn c11(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    // the Q_L weights reach |q|^{-2r}, so in-band entries must not be thresholded
    let band = ctx.unthresholded()?;
    let fx = qexp_normal(q, &x_normal(), band).map_err(err)?;
    let ft = f_tilde(q, band).map_err(err)?;
    let r = ctx.radius(spec, ctx.config.manage_radius);
    let table = &band.table;
    let inr = |x: i64| (-r..=r).contains(&x);
    let apply = |op: &ShiftOperator, x: [i64; 4]| op.apply_basis(&LatticeIndex::new(&x)).map_err(err);

    let closed = |i: i64, j: i64, k: i64, l: i64, s: i64, a: i64, b: i64, t: i64| -> Result<Complex64, String> {
        if !(i == s - l + b && j == t - l + b && k + b - l == a + i + j) {
            return Ok(Complex64::default());
        }
        let sign = if (l - b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let f = table.value(k - s + 1, b - l).ok_or("Fourier row outside the table")?;
        Ok(q.zeta_pow(j * b) * q.phase_pow((b - l) * (s - k)) * (sign * q.modulus_pow(l - b) * f))
    };

    let mut rhs_cache: HashMap<[i64; 4], crate::lattice::StateVector> = HashMap::new();
    let (mut lc, mut rc, mut lr): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut tuples = 0usize;
    for s in -r..=r {
        for t in -r..=r {
            for a in -r..=r {
                for bb in -r..=r {
                    let out = apply(&fx, [s, t, a + s + t, bb])?;
                    // support off the constraint surface must vanish
                    for (x, amp) in out.iter() {
                        let [i, j, k, l] = [x[0], x[1], x[2], x[3]];
                        if [i, j, k, l].iter().all(|&y| inr(y)) {
                            let lhs = q.zeta_pow(j * l) * amp;
                            lc = lc.max((lhs - closed(i, j, k, l, s, a, bb, t)?).norm());
                        }
                    }
                    for l in -r..=r {
                        let (i, j) = (s - l + bb, t - l + bb);
                        let k = a + i + j + l - bb;
                        if !(inr(i) && inr(j) && inr(k)) {
                            continue;
                        }
                        tuples += 1;
                        let cf = closed(i, j, k, l, s, a, bb, t)?;
                        let lhs = q.zeta_pow(j * l) * out.get(&LatticeIndex::new(&[i, j, k, l]));
                        let key = [i, j, a, bb];
                        if let std::collections::hash_map::Entry::Vacant(e) = rhs_cache.entry(key) {
                            e.insert(apply(&ft, key)?);
                        }
                        let ftv = rhs_cache[&key].get(&LatticeIndex::new(&[s, t, k, l]));
                        let rhs = q.zeta_pow(-j * bb) * ftv * q.modulus_pow(l - bb);
                        lc = lc.max((lhs - cf).norm());
                        rc = rc.max((rhs - cf).norm());
                        lr = lr.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    let mut b = Bench::new(spec, ctx);
    b.scalar("LHS vs closed form", Banded, tuples, lc);
    b.scalar("RHS vs closed form", Banded, tuples, rc);
    b.scalar("LHS vs RHS", Banded, tuples, lr);
    for p in &mut b.parts {
        p.probe_box = vec![(-r, r); 8];
    }
    b.done()
}

fn c12(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let f = f_op(q, ctx.banding()?).map_err(err)?;
    let qq = tensor(&[&q_l(q), &q_l(q)]);
    let mut b = Bench::new(spec, ctx);
    b.compare("F (Q_L (x) Q_L) F* = Q_L (x) Q_L", vec![f.clone(), qq.clone(), f.adjoint()], vec![qq.clone()])?;
    b.compare("F (Q_L (x) Q_L) = (Q_L (x) Q_L) F", vec![f.clone(), qq.clone()], vec![qq, f.clone()])?;
    // Q = id on the l2(Z) leg of U
    let ql1 = emb(&q_l(q), &[0, 1], 3);
    b.class = Exact;
    b.compare("U (Q_L (x) 1) U* = Q_L (x) 1", vec![u(q), ql1.clone(), u(q).adjoint()], vec![ql1])?;
    b.done()
}

fn c13(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let f = f_op(q, ctx.banding()?).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    let n1 = emb(&n(q), &[0, 1], 4);
    b.compare("F (n (x) 1) F* = n (x) v* + vP (x) n", vec![f.clone(), n1, f.adjoint()], vec![comult::delta_n(q)])?;
    b.done()
}

fn c14(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let f = f_op(q, ctx.banding()?).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    let v1 = emb(&v(q), &[0, 1], 4);
    b.compare("F (v (x) 1) F* = v (x) v", vec![f.clone(), v1, f.adjoint()], vec![comult::delta_v(q)])?;
    b.done()
}

fn c15(spec: &CheckSpec, ctx: &Context) -> Parts {
    use comult::{coproduct, expand_leg, j_closed, j_embed, realize, Gen};
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    for g in [Gen::V, Gen::N] {
        for k in 0..3 {
            b.compare(format!("J{}({g:?}) closed form", k + 1), vec![j_embed(&g.op(q), k, 3)], vec![j_closed(g, k, 3, q)])?;
        }
    }
    let closed = comult::coassoc_closed(q);
    let dn = coproduct(Gen::N);
    b.compare("(D (x) id) D(n)", vec![realize(&expand_leg(&dn, 0), 3, q)], vec![closed.clone()])?;
    b.compare("(id (x) D) D(n)", vec![realize(&expand_leg(&dn, 1), 3, q)], vec![closed])?;
    let dv = coproduct(Gen::V);
    let vvv = tensor(&[&v(q), &v(q), &v(q)]);
    b.compare("(D (x) id) D(v)", vec![realize(&expand_leg(&dv, 0), 3, q)], vec![vvv.clone()])?;
    b.compare("(id (x) D) D(v)", vec![realize(&expand_leg(&dv, 1), 3, q)], vec![vvv])?;
    b.done()
}

fn c16(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    // coordinates (i, j; p; s)
    let v12 = emb(&yd::corep_v(q), &[0, 1, 2], 4);
    let u13 = emb(&u(q), &[0, 1, 3], 4);
    let w23 = emb(&w(q), &[2, 3], 4);
    b.compare("V12 U13 w23 = w23 U13 V12", vec![v12.clone(), u13.clone(), w23.clone()], vec![w23, u13, v12])?;
    // the dual corepresentation is the flipped adjoint
    let vh = yd::ducorep_v_hat(q);
    let flipped = ShiftOperator::monomial(q, crate::shiftop::AffineMap::permutation(&[1, 2, 0]), crate::shiftop::CoeffExpr::one(3));
    b.compare_on(
        "V^ = Sigma V* Sigma",
        vec![vh],
        vec![flipped.adjoint(), yd::corep_v(q).adjoint(), flipped],
        &Window::cube(3, ctx.config.exact_radius),
    )?;
    b.done()
}

fn c17(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let ww = boson::boson_w(q, ctx.banding()?).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    let w12 = emb(&ww, &range(0, 6), 9);
    let w13 = emb(&ww, &[0, 1, 2, 6, 7, 8], 9);
    let w23 = emb(&ww, &range(3, 9), 9);
    b.compare("W23 W12 = W12 W13 W23", vec![w23.clone(), w12.clone()], vec![w12, w13, w23])?;
    b.done()
}

fn c18(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let ww = boson::boson_w(q, ctx.banding()?).map_err(err)?;
    let mut b = Bench::new(spec, ctx);
    let left = |x: &ShiftOperator| emb(x, &[0, 1, 2], 6);
    for (label, x, dx) in [
        ("D_C(z~) = z~ (x) z~", boson::jc_z(q), boson::delta_c_z(q)),
        ("D_C(v~) = v~ (x) v~", boson::jb_v(q), boson::delta_c_v(q)),
        ("D_C(n~) = n~ (x) z~ v~* + v~ (x) n~", boson::jb_n(q), boson::delta_c_n(q)),
    ] {
        b.compare(label, vec![ww.clone(), left(&x), ww.adjoint()], vec![dx])?;
    }
    b.done()
}

fn c19(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let mut b = Bench::new(spec, ctx);
    for k in -3..=3 {
        b.compare(format!("tau^{k}(v) = v"), vec![suq2::tau(&v(q), k)], vec![v(q)])?;
        b.compare(format!("tau^{k}(n) = q^{k} n"), vec![suq2::tau(&n(q), k)], vec![n(q).scale(q.q_pow(k))])?;
    }
    for k in -2..=2 {
        b.compare(format!("k = {k}: (tau (x) tau) D(v) = D(v)"), vec![suq2::tau_tensor(&comult::delta_v(q), k)], vec![comult::delta_v(q)])?;
        b.compare(
            format!("k = {k}: (tau (x) tau) D(n) = D(tau(n))"),
            vec![suq2::tau_tensor(&comult::delta_n(q), k)],
            vec![comult::delta_n(q).scale(q.q_pow(k))],
        )?;
    }
    b.done()
}

/// Probe box on the half lattice, where the SU_q(2) generators live.
fn half_box(d: usize) -> Window {
    Window::new((0..d).map(|k| if k % 2 == 0 { (0, 2) } else { (-2, 2) }).collect()).unwrap()
}

fn decay_part(
    ctx: &Context,
    label: &str,
    family: impl Fn(i64) -> ShiftOperator,
    target: &ShiftOperator,
    scale: impl Fn(i64) -> f64,
    expected: f64,
) -> Result<PartResult, String> {
    let cfg = &ctx.config;
    let d = target.dim();
    let w = half_box(d);
    let policy = ctx.policy(label);
    let ls: Vec<i64> = (cfg.l_lo..=cfg.l_hi).collect();
    let mut res = Vec::new();
    for &l in &ls {
        let m = residual(&family(l).into(), &target.clone().into(), &w, &policy).map_err(|e| format!("{label}: {e}"))?;
        res.push(m.max_residual * scale(l));
    }
    let fit = super::fit_decay(&ls, &res);
    Ok(PartResult::from_decay(label, &w, policy.select(&w).len() * ls.len(), fit, expected, cfg.decay_band))
}

fn c20(_spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let r = q.modulus();
    let (alpha, gamma) = (suq2::alpha(q), suq2::gamma(q));
    let zero = ShiftOperator::zero(2, q);
    Ok(vec![
        decay_part(ctx, "tau^l(alpha) -> v", |l| suq2::tau(&alpha, l), &v(q), |_| 1.0, r * r)?,
        decay_part(ctx, "tau^l(gamma) -> 0", |l| suq2::tau(&gamma, l), &zero, |_| 1.0, r)?,
    ])
}

fn c21(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let r = q.modulus();
    let cfg = &ctx.config;
    let depth = (cfg.depth > 0).then_some(cfg.depth);
    let alpha = suq2::alpha(q);
    let t_half = suq2::t_pow(q, depth, 1);
    let ak = |k: i64| alpha.pow(k).compose(&v(q).pow(-k)).expect("same dimension");
    let mut parts = Vec::new();

    let k = cfg.t_power;
    let w = half_box(2);
    let m = residual(&ak(k).into(), &t_half.clone().into(), &w, &ctx.policy(spec.id)).map_err(err)?;
    parts.push(PartResult::from_measurement(format!("alpha^{k} v^-{k} = t^(1/2)"), Exact, m, 1e-10));
    parts.push(decay_part(ctx, "alpha^k v^-k -> t^(1/2)", ak, &t_half, |_| 1.0, r * r)?);

    let y = suq2::contraction_y(q, cfg.r_max);
    let one = id(4, q);
    parts.push(decay_part(ctx, "(tau^l (x) tau^l) Y -> 1", |l| suq2::tau_tensor(&y, l), &one, |_| 1.0, r * r)?);
    parts.push(decay_part(ctx, "|q|^-l |(tau^l (x) tau^l) Y psi - psi| -> 0", |l| suq2::tau_tensor(&y, l), &one, |l| r.powi(-(l as i32)), r)?);
    Ok(parts)
}

fn c22(spec: &CheckSpec, ctx: &Context) -> Parts {
    let q = ctx.q;
    let tol = 1e-9;
    let rad = ctx.radius(spec, ctx.config.exact_radius);
    let minus = match q.angle_pi() {
        Some((a, bb)) => QParam::with_angle_pi(q.modulus(), -a, bb),
        None => QParam::new(q.modulus(), -q.angle()),
    }
    .map_err(err)?;
    let (mut scaling, mut inverse): (f64, f64) = (0.0, 0.0);
    let mut count = 0;
    for m in -rad..=rad {
        for a in 0..12 {
            let lam = Complex64::from_polar(q.modulus_pow(m), std::f64::consts::PI * a as f64 / 6.0);
            let g = suq2::g_theta(lam, &q, tol).ok_or("lambda off the grid")?;
            let gq = suq2::g_theta(q.q() * lam, &q, tol).ok_or("q lambda off the grid")?;
            scaling = scaling.max((gq - g * q.modulus()).norm());
            let back = suq2::g_theta(g, &minus, tol).ok_or("g(lambda) off the grid")?;
            inverse = inverse.max((back - lam).norm());
            count += 1;
        }
    }
    let zero = suq2::g_theta(Complex64::default(), &q, tol).unwrap().norm();
    let mut b = Bench::new(spec, ctx);
    b.scalar("g(q l) = |q| g(l)", Exact, count, scaling);
    b.scalar("g_{-theta}(g_theta(l)) = l", Exact, count, inverse);
    b.scalar("g(0) = 0", Exact, 1, zero);
    b.done()
}
