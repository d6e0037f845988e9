//! Two-body Ruijsenaars-Schneider and Calogero-Moser models in canonical variables, their
//! maps into top variables and the non-relativistic limit.
//!
//! Exact identities treat `u = e^{p/c}` as an independent generator with `u⁻¹` carried as a
//! negative exponent, so `u·u⁻¹ = 1` holds by construction.

use crate::error::{Error, Result};
use crate::exact::{qf, Q, Ring, SparsePoly, SpinMat, Var, Zero};
use crate::integrate::{rk4, rk4_spin};
use crate::poisson::{eta_sklyanin, lie_poisson, BracketTable};
use crate::tops::{self, TildeSpin};

/// Generator ids of the exact canonical algebra: `u = e^{p/c}` (or `p` for CM) and `q`.
pub const U: Var = 0;
pub const P: Var = 0;
pub const QV: Var = 1;

fn nonzero_q(x: f64) -> Result<()> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Pole(format!("q = {x}")));
    }
    Ok(())
}

/// `𝒮` in terms of `e = e^{p/c}`, `ei = e^{−p/c}`, `q` and `η`.
pub fn rs_map_u<T: Ring>(e: &T, ei: &T, q: &T, eta: &T) -> Result<SpinMat<T>> {
    let iq = q.try_inv().ok_or_else(|| Error::Pole("q = 0".into()))?;
    let half = qf(1, 2);
    let a = e.clone() - ei.clone();
    let b = e.clone() * (q.clone() - eta.clone()).pow(2) - ei.clone() * (q.clone() + eta.clone()).pow(2);
    let hq = q.scale(&half);
    let hiq = iq.scale(&half);
    Ok(SpinMat::new(
        -(hq.clone() * a.clone()),
        hiq.clone() * a,
        -(hq * b.clone()),
        hiq * b,
    ))
}

/// `𝒮(p, q)` for the two-body RS model.
pub fn rs_map(p: f64, q: f64, eta: f64, c: f64) -> Result<SpinMat<f64>> {
    nonzero_q(q)?;
    if c == 0.0 {
        return Err(Error::Pole("c = 0".into()));
    }
    let e = (p / c).exp();
    rs_map_u(&e, &e.recip(), &q, &eta)
}

/// `𝒮` as a Laurent polynomial in `u` and `q`.
pub fn rs_map_symbolic(eta: &Q) -> SpinMat<SparsePoly> {
    let u = SparsePoly::var(U);
    let ui = SparsePoly::var_pow(U, -1);
    rs_map_u(&u, &ui, &SparsePoly::var(QV), &SparsePoly::from_q(eta)).expect("q is invertible")
}

/// `H^RS = ((2q−η)/2q) e^{p/c} + ((2q+η)/2q) e^{−p/c}`.
pub fn rs_ham(p: f64, q: f64, eta: f64, c: f64) -> Result<f64> {
    nonzero_q(q)?;
    let x = p / c;
    Ok(2.0 * x.cosh() - eta / q * x.sinh())
}

pub fn rs_ham_symbolic(eta: &Q) -> SparsePoly {
    let u = SparsePoly::var(U);
    let ui = SparsePoly::var_pow(U, -1);
    let eq = SparsePoly::term(crate::exact::Monomial::var(QV, -1), eta * qf(1, 2));
    &u * &(SparsePoly::from_i64(1) - eq.clone()) + &ui * &(SparsePoly::from_i64(1) + eq)
}

/// `(S̃₀, S̃)` of the RS model, written out directly (traceless `S̃`).
pub fn tilde_map_u<T: Ring>(e: &T, ei: &T, q: &T, eta: &T) -> Result<TildeSpin<T>> {
    let iq = q.try_inv().ok_or_else(|| Error::Pole("q = 0".into()))?;
    let two_q = q.clone() + q.clone();
    let (m, p) = (two_q.clone() - eta.clone(), two_q + eta.clone());
    let s0 = eta.clone() * iq.scale(&qf(1, 2))
        * (-(e.clone() * m.clone()) - ei.clone() * p.clone());
    let d = -(eta.clone() * iq.scale(&qf(1, 4)))
        * (e.clone() * m.pow(2) - ei.clone() * p.pow(2));
    let s12 = eta.clone() * iq.scale(&qf(1, 2)) * (e.clone() - ei.clone());
    let s21 = -(eta.clone() * iq.scale(&qf(1, 32)))
        * (e.clone() * m.pow(4) - ei.clone() * p.pow(4));
    let h = d.scale(&qf(1, 2));
    Ok(TildeSpin { s0, s: SpinMat::new(h.clone(), s12, s21, -h) })
}

pub fn tilde_map(p: f64, q: f64, eta: f64, c: f64) -> Result<TildeSpin<f64>> {
    nonzero_q(q)?;
    let e = (p / c).exp();
    tilde_map_u(&e, &e.recip(), &q, &eta)
}

/// `S = [[pq/2, −p/(2q)], [(pq³ − 2νq²)/2, −pq/2 + ν]]`.
pub fn cm_map_generic<T: Ring>(p: &T, q: &T, nu: &T) -> Result<SpinMat<T>> {
    let iq = q.try_inv().ok_or_else(|| Error::Pole("q = 0".into()))?;
    let half = qf(1, 2);
    let pq = (p.clone() * q.clone()).scale(&half);
    Ok(SpinMat::new(
        pq.clone(),
        -(p.clone() * iq).scale(&half),
        (p.clone() * q.pow(3)).scale(&half) - nu.clone() * q.pow(2),
        -pq + nu.clone(),
    ))
}

pub fn cm_map(p: f64, q: f64, nu: f64) -> Result<SpinMat<f64>> {
    nonzero_q(q)?;
    cm_map_generic(&p, &q, &nu)
}

pub fn cm_map_symbolic(nu: &Q) -> SpinMat<SparsePoly> {
    cm_map_generic(&SparsePoly::var(P), &SparsePoly::var(QV), &SparsePoly::from_q(nu))
        .expect("q is invertible")
}

/// `H^CM = p²/2 − νp/(2q)`.
pub fn cm_ham(p: f64, q: f64, nu: f64) -> Result<f64> {
    nonzero_q(q)?;
    Ok(p * p / 2.0 - nu * p / (2.0 * q))
}

pub fn cm_ham_symbolic(nu: &Q) -> SparsePoly {
    let p = SparsePoly::var(P);
    let t = SparsePoly::term(
        crate::exact::Monomial::from_pairs(&[(P, 1), (QV, -1)]),
        -(nu * qf(1, 2)),
    );
    (&p * &p).scale_q(&qf(1, 2)) + t
}

/// Completed-square form `½(p − ν/2q)² − ½ν²/(2q)²`.
pub fn cm_ham_completed(p: f64, q: f64, nu: f64) -> Result<f64> {
    nonzero_q(q)?;
    let s = p - nu / (2.0 * q);
    Ok(0.5 * s * s - 0.5 * nu * nu / (4.0 * q * q))
}

/// Canonical bracket with `{p, q} = 1` on functions of `(p, q)`.
pub fn canonical_bracket_pq(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    &f.diff(P) * &g.diff(QV) - &f.diff(QV) * &g.diff(P)
}

/// Canonical bracket on functions of `(u, q)` with `u = e^{p/c}`:
/// `{f, g} = (u/c)(f_u g_q − f_q g_u)`.
pub fn canonical_bracket_uq(f: &SparsePoly, g: &SparsePoly, c: &Q) -> SparsePoly {
    let core = &f.diff(U) * &g.diff(QV) - &f.diff(QV) * &g.diff(U);
    core.mul_monomial(&crate::exact::Monomial::var(U, 1)).scale_q(&c.recip())
}

/// Substitute the entries of a spin matrix for the generators of a four-generator table.
pub fn compose(p: &SparsePoly, s: &SpinMat<SparsePoly>) -> Result<SparsePoly> {
    let vals: Vec<SparsePoly> = s.entries().cloned().collect();
    p.eval_with(|v| vals.get(v as usize).cloned(), |v| format!("S#{v}"))
}

/// Residuals `{𝒮_a, 𝒮_b}_can − {S_a, S_b}_table(𝒮)` for all generator pairs `a < b`.
pub fn induced_residuals(
    s: &SpinMat<SparsePoly>,
    table: &BracketTable,
    bracket: impl Fn(&SparsePoly, &SparsePoly) -> SparsePoly,
) -> Result<Vec<((Var, Var), SparsePoly)>> {
    let e: Vec<&SparsePoly> = s.entries().collect();
    let mut out = Vec::new();
    for a in 0..4 {
        for b in (a + 1)..4 {
            let lhs = bracket(e[a], e[b]);
            let rhs = compose(&table.get(a as Var, b as Var), s)?;
            out.push(((a as Var, b as Var), lhs - rhs));
        }
    }
    Ok(out)
}

/// The RS bosonization against the quadratic table at `η` scaled by `1/c`.
pub fn rs_induced_residuals(eta: &Q, c: &Q) -> Result<Vec<((Var, Var), SparsePoly)>> {
    let table = eta_sklyanin(eta).with_multiplier(c.recip());
    let s = rs_map_symbolic(eta);
    induced_residuals(&s, &table, |f, g| canonical_bracket_uq(f, g, c))
}

/// The CM bosonization against the linear table.
pub fn cm_induced_residuals(nu: &Q) -> Result<Vec<((Var, Var), SparsePoly)>> {
    induced_residuals(&cm_map_symbolic(nu), &lie_poisson(), canonical_bracket_pq)
}

/// Constant `κ` with `{H^RS, 𝒮}_can = κ {tr𝒮, 𝒮}_quadratic(𝒮)` entrywise, found exactly.
/// `None` if no such constant exists.
pub fn rs_time_factor(eta: &Q, c: &Q) -> Result<Option<Q>> {
    let s = rs_map_symbolic(eta);
    let h = rs_ham_symbolic(eta);
    let table = eta_sklyanin(eta);
    let flow = table.hamiltonian_flow(&(SparsePoly::var(0) + SparsePoly::var(3)))?;
    let mut kappa: Option<Q> = None;
    let mut pairs = Vec::new();
    for (i, f) in flow.iter().enumerate() {
        let lhs = canonical_bracket_uq(&h, s.entries().nth(i).expect("4 entries"), c);
        let rhs = compose(f, &s)?;
        if kappa.is_none() {
            if let (Some((m, a)), false) = (rhs.terms().next(), rhs.is_zero()) {
                let l = lhs.terms().find(|(lm, _)| *lm == m).map(|(_, x)| x.clone());
                kappa = l.map(|l| l / a);
            }
        }
        pairs.push((lhs, rhs));
    }
    let Some(k) = kappa else { return Ok(None) };
    let ok = pairs.iter().all(|(l, r)| (l.clone() - r.scale_q(&k)).is_zero());
    Ok(ok.then_some(k))
}

/// Two-body Hamiltonians in canonical variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    Free,
    Cm { nu: f64 },
    Rs { eta: f64, c: f64 },
}

impl Model {
    pub fn energy(&self, p: f64, q: f64) -> Result<f64> {
        match *self {
            Model::Free => Ok(p * p / 2.0),
            Model::Cm { nu } => cm_ham(p, q, nu),
            Model::Rs { eta, c } => rs_ham(p, q, eta, c),
        }
    }

    /// `(∂H/∂p, ∂H/∂q)`.
    pub fn gradient(&self, p: f64, q: f64) -> Result<(f64, f64)> {
        match *self {
            Model::Free => Ok((p, 0.0)),
            Model::Cm { nu } => {
                nonzero_q(q)?;
                Ok((p - nu / (2.0 * q), nu * p / (2.0 * q * q)))
            }
            Model::Rs { eta, c } => {
                nonzero_q(q)?;
                let x = p / c;
                let hp = (2.0 * x.sinh() - eta / q * x.cosh()) / c;
                let hq = eta / (q * q) * x.sinh();
                Ok((hp, hq))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalSample {
    pub t: f64,
    pub p: f64,
    pub q: f64,
    pub energy: f64,
}

/// RK4 on `q̇ = ∂H/∂p`, `ṗ = −∂H/∂q`. `every` controls sampling of the returned trajectory
/// (the final state is always included). Aborts when `|q|` drops below `q_min`.
pub fn canonical_flow(
    model: Model,
    p0: f64,
    q0: f64,
    dt: f64,
    steps: usize,
    every: usize,
) -> Result<Vec<CanonicalSample>> {
    const Q_MIN: f64 = 1e-9;
    if q0.abs() < Q_MIN {
        return Err(Error::Pole(format!("initial q = {q0}")));
    }
    let every = every.max(1);
    let f = |_t: f64, y: &[f64]| {
        let (hp, hq) = model.gradient(y[0], y[1])?;
        Ok(vec![-hq, hp])
    };
    let mut out = Vec::new();
    rk4(f, &[p0, q0], dt, steps, |step, t, y| {
        if y[1].abs() < Q_MIN {
            return Err(Error::Unstable { step, reason: format!("q reached {:e}", y[1]) });
        }
        if step % every == 0 || step == steps {
            out.push(CanonicalSample { t, p: y[0], q: y[1], energy: model.energy(y[0], y[1])? });
        }
        Ok(())
    })?;
    Ok(out)
}

/// `Σ_{k≥2} x^{2k}/(2k)!`, i.e. `cosh x − 1 − x²/2`, without cancellation for small `x`.
fn cosh_tail(x: f64) -> f64 {
    if x.abs() > 0.5 {
        return x.cosh() - 1.0 - x * x / 2.0;
    }
    let x2 = x * x;
    let (mut term, mut sum) = (x2 * x2 / 24.0, 0.0f64);
    for k in 2..20 {
        sum += term;
        term *= x2 / ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    sum
}

/// `sinh x − x`, without cancellation for small `x`.
fn sinh_tail(x: f64) -> f64 {
    if x.abs() > 0.5 {
        return x.sinh() - x;
    }
    let x2 = x * x;
    let (mut term, mut sum) = (x2 * x / 6.0, 0.0f64);
    for k in 1..20 {
        sum += term;
        term *= x2 / ((2 * k + 2) * (2 * k + 3)) as f64;
    }
    sum
}

/// `H^RS − 2 − 2H^CM/c²` at `η = ν/c`, evaluated as
/// `2(cosh x − 1 − x²/2) − (ν/(cq))(sinh x − x)` with `x = p/c`.
pub fn limit_defect(p: f64, q: f64, nu: f64, c: f64) -> Result<f64> {
    nonzero_q(q)?;
    let x = p / c;
    Ok(2.0 * cosh_tail(x) - nu / (c * q) * sinh_tail(x))
}

/// Least-squares slope of `log|defect|` against `log c`.
pub fn limit_slope(p: f64, q: f64, nu: f64, cs: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = cs
        .iter()
        .map(|&c| Ok((c.ln(), limit_defect(p, q, nu, c)?.abs().ln())))
        .collect::<Result<_>>()?;
    Ok(fit_slope(&pts))
}

pub fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Sup-norm distance at time `t = dt·steps` between the mapped CM trajectory and the top flow
/// started from `cm_map(p₀, q₀)`.
pub fn cm_vs_top(p0: f64, q0: f64, nu: f64, dt: f64, steps: usize) -> Result<f64> {
    let traj = canonical_flow(Model::Cm { nu }, p0, q0, dt, steps, steps)?;
    let last = traj.last().expect("final sample");
    let mapped = cm_map(last.p, last.q, nu)?;
    let top = rk4_spin(|s| Ok(tops::top_rhs(s)), &cm_map(p0, q0, nu)?, dt, steps)?;
    Ok((mapped - top).max_abs())
}

/// Same comparison for RS against the η-top flow with its time rescaled by `kappa`.
pub fn rs_vs_top(
    p0: f64,
    q0: f64,
    eta: f64,
    c: f64,
    kappa: f64,
    dt: f64,
    steps: usize,
) -> Result<f64> {
    let traj = canonical_flow(Model::Rs { eta, c }, p0, q0, dt, steps, steps)?;
    let last = traj.last().expect("final sample");
    let mapped = rs_map(last.p, last.q, eta, c)?;
    let top = rk4_spin(
        |s| Ok(tops::eta_top_rhs(s, &eta)?.scale(&kappa)),
        &rs_map(p0, q0, eta, c)?,
        dt,
        steps,
    )?;
    Ok((mapped - top).max_abs())
}

/// Least-squares `κ` in `d𝒮/dt = κ·rhs_η(𝒮)` at one phase point, from the canonical
/// velocity pushed through a central-difference Jacobian of `rs_map`.
pub fn measure_rs_factor(p: f64, q: f64, eta: f64, c: f64) -> Result<f64> {
    let (hp, hq) = Model::Rs { eta, c }.gradient(p, q)?;
    let (pdot, qdot) = (-hq, hp);
    let h = 1e-5;
    let dsp = (rs_map(p + h, q, eta, c)? - rs_map(p - h, q, eta, c)?).scale(&(0.5 / h));
    let dsq = (rs_map(p, q + h, eta, c)? - rs_map(p, q - h, eta, c)?).scale(&(0.5 / h));
    let v = dsp.scale(&pdot) + dsq.scale(&qdot);
    let r = tops::eta_top_rhs(&rs_map(p, q, eta, c)?, &eta)?;
    let num: f64 = v.entries().zip(r.entries()).map(|(a, b)| a * b).sum();
    let den: f64 = r.entries().map(|b| b * b).sum();
    if den == 0.0 {
        return Err(Error::Invalid("top velocity vanishes at this point".into()));
    }
    Ok(num / den)
}

/// Entrywise `−½ c 𝒮(p, q, ν/c, c)`, which tends to `cm_map(p, q, ν)` as `c → ∞`.
pub fn scaled_rs(p: f64, q: f64, nu: f64, c: f64) -> Result<SpinMat<f64>> {
    Ok(rs_map(p, q, nu / c, c)?.scale(&(-0.5 * c)))
}

/// Exact zero-check helper for lists of residuals.
pub fn all_zero(rs: &[((Var, Var), SparsePoly)]) -> bool {
    rs.iter().all(|(_, r)| r.is_zero())
}

/// `det` of a symbolic map, which vanishes identically for both bosonizations.
pub fn det_symbolic(s: &SpinMat<SparsePoly>) -> SparsePoly {
    s.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rs_examples() {
        let s = rs_map(0.0, 1.5, 0.3, 2.0).unwrap();
        let want = SpinMat::new(0.0, 0.0, 2.0 * 1.5 * 1.5 * 0.3, -0.6);
        assert!((s.clone() - want).max_abs() < 1e-14);
        assert!(close(s.tr(), -0.6, 1e-14));
        assert!(close(rs_ham(0.0, 1.5, 0.3, 2.0).unwrap(), 2.0, 1e-14));
        assert!(close(rs_ham(0.7, 1.5, 0.0, 2.0).unwrap(), 2.0 * (0.35f64).cosh(), 1e-14));
        assert!(rs_map(1.0, 0.0, 1.0, 1.0).is_err());
        let (p, q, eta, c) = (0.4, -1.3, 0.7, 1.9);
        let tr = rs_map(p, q, eta, c).unwrap().tr();
        assert!(close(rs_ham(p, q, eta, c).unwrap(), -tr / eta, 1e-13));
    }

    #[test]
    fn determinants_vanish() {
        assert!(det_symbolic(&rs_map_symbolic(&qf(3, 5))).is_zero());
        assert!(det_symbolic(&cm_map_symbolic(&q(-2))).is_zero());
    }

    #[test]
    fn tilde_map_is_composition() {
        let eta = qf(-4, 3);
        let u = SparsePoly::var(U);
        let ui = SparsePoly::var_pow(U, -1);
        let e = SparsePoly::from_q(&eta);
        let direct = tilde_map_u(&u, &ui, &SparsePoly::var(QV), &e).unwrap();
        let composed = tops::tilde_from_eta(&rs_map_symbolic(&eta), &e);
        assert_eq!(direct, composed);
        // H^RS = −S̃₀/η
        assert_eq!(rs_ham_symbolic(&eta), direct.s0.scale_q(&-eta.recip()));
        let t = tilde_map(0.0, 2.0, 0.5, 3.0).unwrap();
        assert!(close(t.s.e[0][1], 0.0, 1e-15) && close(t.s0, -1.0, 1e-15));
    }

    #[test]
    fn cm_examples() {
        let s = cm_map(2.0, 1.0, 3.0).unwrap();
        assert_eq!(s, SpinMat::new(1.0, -1.0, -2.0, 2.0));
        assert!(close(s.tr(), 3.0, 0.0) && close(s.det(), 0.0, 0.0));
        assert!(close(cm_ham(1.7, 0.4, 0.0).unwrap(), 1.7 * 1.7 / 2.0, 0.0));
        let (p, qq, nu) = (0.9, -0.6, 1.3);
        assert!(close(cm_ham(p, qq, nu).unwrap(), cm_ham_completed(p, qq, nu).unwrap(), 1e-14));
        // H^CM is the top Hamiltonian of the mapped spin
        let h = tops::hamiltonian(&cm_map_symbolic(&q(5)));
        assert_eq!(h, cm_ham_symbolic(&q(5)));
    }

    #[test]
    fn cm_flow_s12_hand_oracle() {
        let (p, q, nu) = (1.1, 0.7, 0.4);
        let (hp, hq) = Model::Cm { nu }.gradient(p, q).unwrap();
        // Ṡ₁₂ = −½ d(p/q)/dt
        let s12dot = -0.5 * (-hq / q - p * hp / (q * q));
        let s12 = cm_map(p, q, nu).unwrap().e[0][1];
        assert!(close(s12dot, 2.0 * s12 * s12, 1e-14));
    }

    #[test]
    fn induced_brackets() {
        assert!(all_zero(&cm_induced_residuals(&qf(7, 3)).unwrap()));
        assert!(all_zero(&rs_induced_residuals(&qf(2, 3), &q(5)).unwrap()));
        // a wrong scale is detected
        let bad = {
            let table = eta_sklyanin(&q(1));
            let s = rs_map_symbolic(&q(1));
            induced_residuals(&s, &table, |f, g| canonical_bracket_uq(f, g, &q(2))).unwrap()
        };
        assert!(!all_zero(&bad));
    }

    #[test]
    fn time_factor_exact() {
        let (eta, c) = (qf(3, 2), q(4));
        let k = rs_time_factor(&eta, &c).unwrap().unwrap();
        assert_eq!(k, -(&c * &eta).recip());
        let m = measure_rs_factor(0.3, 1.2, 1.5, 4.0).unwrap();
        assert!(close(m, -1.0 / 6.0, 1e-8), "{m}");
    }

    #[test]
    fn free_flow() {
        let tr = canonical_flow(Model::Free, 0.5, 1.0, 0.01, 100, 10).unwrap();
        let last = tr.last().unwrap();
        assert!(close(last.q, 1.5, 1e-12) && close(last.p, 0.5, 1e-15));
        assert_eq!(tr.len(), 11);
        assert!(canonical_flow(Model::Free, -1.0, 0.5, 0.01, 100, 1).is_err());
    }

    #[test]
    fn limits() {
        let slope = limit_slope(1.0, 1.0, 1.0, &[1e1, 1e2, 1e3, 1e4]).unwrap();
        assert!(close(slope, -4.0, 0.3), "{slope}");
        let (p, q, nu) = (0.8, 1.1, 0.6);
        let target = cm_map(p, q, nu).unwrap();
        let e1 = (scaled_rs(p, q, nu, 1e2).unwrap() - target.clone()).max_abs();
        let e2 = (scaled_rs(p, q, nu, 1e3).unwrap() - target).max_abs();
        // at least first order in 1/c (observed: second order)
        assert!(e1 < 0.1 && e1 / e2 >= 9.0, "{e1} {e2}");
    }

    #[test]
    fn trajectories_agree() {
        assert!(cm_vs_top(0.8, 1.3, 0.5, 1e-3, 1000).unwrap() < 1e-8);
        let (eta, c) = (0.5, 2.0);
        assert!(rs_vs_top(0.6, 1.4, eta, c, -1.0 / (c * eta), 1e-3, 1000).unwrap() < 1e-6);
    }
}
