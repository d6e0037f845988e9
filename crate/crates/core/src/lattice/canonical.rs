//! Gaudin Hamiltonians rewritten in canonical coordinates of two-body CM sites, and the RS
//! pairing used for chains. Site `a` uses generator `2a` for `p_a` (or `u_a = e^{p_a/c}`)
//! and `2a + 1` for `q_a`.

use crate::error::Result;
use crate::exact::{qf, Monomial, Q, Ring, SparsePoly, SpinMat, Var, Zero};
use crate::lattice::gaudin::Gaudin;
use crate::manybody::{cm_map_generic, rs_map_u};

fn pv(a: usize) -> SparsePoly {
    SparsePoly::var(2 * a as Var)
}

fn qv(a: usize) -> SparsePoly {
    SparsePoly::var(2 * a as Var + 1)
}

fn inv_q(a: usize) -> SparsePoly {
    SparsePoly::var_pow(2 * a as Var + 1, -1)
}

fn cst(x: &Q) -> SparsePoly {
    SparsePoly::from_q(x)
}

/// Canonical generator names `p1, q1, p2, …` (or `u1, …`).
pub fn name(v: Var, momentum: &str) -> String {
    let a = v / 2 + 1;
    if v % 2 == 0 {
        format!("{momentum}{a}")
    } else {
        format!("q{a}")
    }
}

/// CM spins `S^a(p_a, q_a, ν_a)`.
pub fn cm_spins(nus: &[Q]) -> Vec<SpinMat<SparsePoly>> {
    (0..nus.len())
        .map(|a| cm_map_generic(&pv(a), &qv(a), &cst(&nus[a])).expect("q is invertible"))
        .collect()
}

/// Gaudin model with CM sites.
pub fn composed(zs: &[Q], nus: &[Q]) -> Result<Gaudin<SparsePoly>> {
    Gaudin::new(zs.iter().map(cst).collect(), cm_spins(nus))
}

/// `p_a/(2q_a)·(q_b² − q_a²) + ν_a`.
fn factor(a: usize, b: usize, nu: &Q) -> SparsePoly {
    let t = &pv(a) * &inv_q(a);
    (&t * &(&qv(b).pow(2) - &qv(a).pow(2))).scale_q(&qf(1, 2)) + cst(nu)
}

/// Printed pairing `tr(S^aS^b) = (p_a/2q_a (q_b²−q_a²) + ν_a)(p_b/2q_b (q_a²−q_b²) + ν_b)`.
pub fn trace_pair(a: usize, b: usize, nus: &[Q]) -> SparsePoly {
    &factor(a, b, &nus[a]) * &factor(b, a, &nus[b])
}

/// `p_a/q_a (p_c q_c − ν_c) + p_c/q_c (p_a q_a − ν_a)`.
fn y_term(a: usize, c: usize, nus: &[Q]) -> SparsePoly {
    let one = |x: usize, y: usize| {
        &(&pv(x) * &inv_q(x)) * &(&(&pv(y) * &qv(y)) - &cst(&nus[y]))
    };
    one(a, c) + one(c, a)
}

fn pp_over_qq(a: usize, c: usize) -> SparsePoly {
    &(&pv(a) * &pv(c)) * &(&inv_q(a) * &inv_q(c))
}

/// `h_a = −Σ_{c≠a} [X/d + (d/2)Y − d³ p_ap_c/(4q_aq_c)]` with `d = z_a − z_c`,
/// `X = tr(S^aS^c)` and `Y` the mixed momentum term. The leading minus sign covers the
/// whole summand.
pub fn h_canonical(a: usize, zs: &[Q], nus: &[Q]) -> SparsePoly {
    h_with(a, zs, nus, &qf(-1, 2), &qf(1, 4))
}

/// The same expression with the minus sign applied to the first term only.
pub fn h_sign_first_term_only(a: usize, zs: &[Q], nus: &[Q]) -> SparsePoly {
    h_with(a, zs, nus, &qf(1, 2), &qf(-1, 4))
}

fn h_with(a: usize, zs: &[Q], nus: &[Q], ky: &Q, kp: &Q) -> SparsePoly {
    let mut acc = SparsePoly::zero();
    for c in (0..zs.len()).filter(|&c| c != a) {
        let d = &zs[a] - &zs[c];
        acc += trace_pair(a, c, nus).scale_q(&-d.recip());
        acc += y_term(a, c, nus).scale_q(&(&d * ky));
        acc += pp_over_qq(a, c).scale_q(&(&d * &d * &d * kp));
    }
    acc
}

/// `h₀` as printed: `Σ_a p_a/(2q_a)(p_aq_a − ν_a) + ½ Σ_{b>c} (Y_bc − (z_b−z_c)² p_bp_c/(2q_bq_c))`.
pub fn h0_printed(zs: &[Q], nus: &[Q]) -> SparsePoly {
    h0_with(zs, nus, &qf(-1, 2))
}

/// `h₀` matching the composed Hamiltonian: the last term carries `(z_b−z_c)² p_bp_c/(q_bq_c)`.
pub fn h0_corrected(zs: &[Q], nus: &[Q]) -> SparsePoly {
    h0_with(zs, nus, &qf(-1, 1))
}

fn h0_with(zs: &[Q], nus: &[Q], kp: &Q) -> SparsePoly {
    let mut acc = SparsePoly::zero();
    for a in 0..zs.len() {
        acc += single_cm(a, &nus[a]);
    }
    for b in 0..zs.len() {
        for c in 0..b {
            let d = &zs[b] - &zs[c];
            let inner = y_term(b, c, nus) + pp_over_qq(b, c).scale_q(&(&d * &d * kp));
            acc += inner.scale_q(&qf(1, 2));
        }
    }
    acc
}

/// `p_a/(2q_a)(p_aq_a − ν_a)`, the two-body CM Hamiltonian of site `a`.
pub fn single_cm(a: usize, nu: &Q) -> SparsePoly {
    (&(&pv(a) * &inv_q(a)) * &(&(&pv(a) * &qv(a)) - &cst(nu))).scale_q(&qf(1, 2))
}

/// RS site matrix `𝒮^a(u_a, q_a, η_a)` on generators `u_a = 2a`, `q_a = 2a + 1`.
pub fn rs_spin(a: usize, eta: &Q) -> SpinMat<SparsePoly> {
    let u = pv(a);
    let ui = SparsePoly::term(Monomial::var(2 * a as Var, -1), Q::from_i64(1));
    rs_map_u(&u, &ui, &qv(a), &cst(eta)).expect("q is invertible")
}

/// Printed RS pairing: `[q_a/2 (u_b − 1/u_b) − (u_b(q_b−η_b)² − (q_b+η_b)²/u_b)/(2q_a)] × (a ↔ b)`.
pub fn rs_trace_pair(a: usize, b: usize, etas: &[Q]) -> SparsePoly {
    let half = |x: usize, y: usize| {
        let (u, ui) = (pv(y), SparsePoly::term(Monomial::var(2 * y as Var, -1), Q::from_i64(1)));
        let e = cst(&etas[y]);
        let first = (&qv(x) * &(&u - &ui)).scale_q(&qf(1, 2));
        let big = &u * &(&qv(y) - &e).pow(2) - &ui * &(&qv(y) + &e).pow(2);
        first - (&big * &inv_q(x)).scale_q(&qf(1, 2))
    };
    &half(a, b) * &half(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Point};

    fn data() -> (Vec<Q>, Vec<Q>) {
        (vec![q(0), qf(3, 2), q(-1)], vec![q(2), qf(-1, 3), qf(5, 4)])
    }

    #[test]
    fn pairing_matches_spins() {
        let (_, nus) = data();
        let s = cm_spins(&nus);
        assert_eq!(s[0].matmul(&s[1]).tr(), trace_pair(0, 1, &nus));
        // p_a = p_b = 0 gives ν_aν_b
        let pt: Point = [(0, q(0)), (1, q(3)), (2, q(0)), (3, qf(1, 2))].into_iter().collect();
        assert_eq!(trace_pair(0, 1, &nus).eval(&pt).unwrap(), &nus[0] * &nus[1]);
    }

    #[test]
    fn canonical_forms_match_composition() {
        let (zs, nus) = data();
        let g = composed(&zs, &nus).unwrap();
        for a in 0..3 {
            assert_eq!(g.h(a).unwrap(), h_canonical(a, &zs, &nus));
            assert_ne!(g.h(a).unwrap(), h_sign_first_term_only(a, &zs, &nus));
        }
        assert_eq!(g.h0(), h0_corrected(&zs, &nus));
        assert_ne!(g.h0(), h0_printed(&zs, &nus));
    }

    #[test]
    fn h0_first_sum_is_cm() {
        let nu = qf(7, 3);
        let h = single_cm(0, &nu);
        assert_eq!(h, crate::manybody::cm_ham_symbolic(&nu));
        let (zs, nus) = (vec![q(0)], vec![nu]);
        assert_eq!(h0_corrected(&zs, &nus), h);
    }

    #[test]
    fn rs_pairing() {
        let etas = [qf(2, 3), q(-3)];
        let (a, b) = (rs_spin(0, &etas[0]), rs_spin(1, &etas[1]));
        assert_eq!(a.matmul(&b).tr(), rs_trace_pair(0, 1, &etas));
        let pt: Point = [(0, q(1)), (1, q(2)), (2, q(1)), (3, qf(-1, 5))].into_iter().collect();
        let v = rs_trace_pair(0, 1, &etas).eval(&pt).unwrap();
        assert_eq!(v, q(4) * &etas[0] * &etas[1]);
        assert!(!(v.is_zero()));
    }
}
