//! The rational top in its three descriptions: Lax matrices, inverse inertia tensors,
//! M-operators, Hamiltonians, Casimirs and the change of variables between them.

use crate::error::{Error, Result};
use crate::exact::{partial_trace_2, on2, qf, Q, Ring, SpinMat};
use crate::rmatrix;

fn inv<T: Ring>(x: &T, what: &str) -> Result<T> {
    x.try_inv().ok_or_else(|| Error::Pole(format!("{what} = 0")))
}

fn c<T: Ring>(n: i64) -> T {
    T::from_i64(n)
}

fn diff<T: Ring>(s: &SpinMat<T>) -> T {
    s.s11().clone() - s.s22().clone()
}

/// `L_ε(z, S) = S/z − ε² z [[S₁₂, 0], [S₁₁−S₂₂, −S₁₂]] − ε⁴ z³ S₁₂ E₂₁`; `ε = 1` is the
/// undeformed Lax matrix.
pub fn lax_nonrel_eps<T: Ring>(z: &T, s: &SpinMat<T>, eps: &T) -> Result<SpinMat<T>> {
    let iz = inv(z, "z")?;
    let e2 = eps.pow(2);
    let a = e2.clone() * z.clone();
    let s12 = s.s12().clone();
    let corr = SpinMat::new(
        s12.clone(),
        T::zero(),
        diff(s) + e2 * z.pow(2) * s12.clone(),
        -s12,
    );
    Ok(s.scale(&iz) - corr.scale(&a))
}

pub fn lax_nonrel<T: Ring>(z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
    lax_nonrel_eps(z, s, &T::one())
}

/// Inverse inertia tensor `J(S) = −[[S₁₂, 0], [S₁₁−S₂₂, −S₁₂]]`.
pub fn inertia_j<T: Ring>(s: &SpinMat<T>) -> SpinMat<T> {
    let s12 = s.s12().clone();
    -SpinMat::new(s12.clone(), T::zero(), diff(s), -s12)
}

/// `𝓜(z, S) = −[[S₁₂, 0], [S₁₁−S₂₂+2z²S₁₂, −S₁₂]]`.
pub fn m_cal<T: Ring>(z: &T, s: &SpinMat<T>) -> SpinMat<T> {
    let s12 = s.s12().clone();
    -SpinMat::new(
        s12.clone(),
        T::zero(),
        diff(s) + c::<T>(2) * z.pow(2) * s12.clone(),
        -s12,
    )
}

/// ε-deformed `ε² 𝓜(εz, S)`.
pub fn m_cal_eps<T: Ring>(z: &T, s: &SpinMat<T>, eps: &T) -> SpinMat<T> {
    m_cal(&(eps.clone() * z.clone()), s).scale(&eps.pow(2))
}

/// `M̃(z) = L(z)/z − 𝓜(z)`.
pub fn m_tilde<T: Ring>(z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
    Ok(lax_nonrel(z, s)?.scale(&inv(z, "z")?) - m_cal(z, s))
}

/// Top Hamiltonian `H = −S₁₂(S₁₁−S₂₂) = ½ tr(S J(S))`.
pub fn hamiltonian<T: Ring>(s: &SpinMat<T>) -> T {
    -(s.s12().clone() * diff(s))
}

/// `C₂ = ½ tr S²`.
pub fn casimir2<T: Ring>(s: &SpinMat<T>) -> T {
    s.matmul(s).tr().scale(&qf(1, 2))
}

/// Euler form `[S, J(S)]`.
pub fn top_rhs<T: Ring>(s: &SpinMat<T>) -> SpinMat<T> {
    s.commutator(&inertia_j(s))
}

/// Relativistic Lax matrix `L^η(z, 𝒮)`.
pub fn lax_eta<T: Ring>(z: &T, s: &SpinMat<T>, eta: &T) -> Result<SpinMat<T>> {
    let iz = inv(z, "z")?;
    let ie = inv(eta, "eta")?;
    let s12 = s.s12().clone();
    let quad = eta.pow(2) + z.pow(2) + eta.clone() * z.clone();
    let m = SpinMat::new(s12.clone(), T::zero(), diff(s) + quad * s12.clone(), -s12);
    Ok(s.scale(&iz) + SpinMat::scalar(s.tr() * ie) - m.scale(&(z.clone() + eta.clone())))
}

/// `J^η(𝒮) = −[[η𝒮₁₂, 0], [η³𝒮₁₂ + η(𝒮₁₁−𝒮₂₂), −η𝒮₁₂]] + (tr𝒮/η) 1`.
pub fn inertia_j_eta<T: Ring>(s: &SpinMat<T>, eta: &T) -> Result<SpinMat<T>> {
    let ie = inv(eta, "eta")?;
    let es12 = eta.clone() * s.s12().clone();
    let m = SpinMat::new(es12.clone(), T::zero(), eta.pow(2) * es12.clone() + eta.clone() * diff(s), -es12);
    Ok(SpinMat::scalar(s.tr() * ie) - m)
}

/// `[𝒮, J^η(𝒮)]`, the flow of `tr𝒮` under the quadratic bracket.
pub fn eta_top_rhs<T: Ring>(s: &SpinMat<T>, eta: &T) -> Result<SpinMat<T>> {
    Ok(s.commutator(&inertia_j_eta(s, eta)?))
}

/// Casimirs `(𝒞₁, 𝒞₂)` of the quadratic algebra: `𝒞₁ = (tr𝒮 + η²𝒮₁₂)² − 4η²𝒮₁₂𝒮₂₂`,
/// `𝒞₂ = det 𝒮`.
pub fn eta_casimirs<T: Ring>(s: &SpinMat<T>, eta: &T) -> (T, T) {
    let e2 = eta.pow(2);
    let a = s.tr() + e2.clone() * s.s12().clone();
    let c1 = a.pow(2) - c::<T>(4) * e2 * s.s12().clone() * s.s22().clone();
    (c1, s.det())
}

/// Tilde spin: scalar part `S̃₀` carried next to the 2×2 matrix `S̃`. Only the traceless
/// part of `S̃` enters the Lax matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeSpin<T> {
    pub s0: T,
    pub s: SpinMat<T>,
}

/// `L̃(z) = S̃₀ 1 + (1/z)[[d/2 − z²S̃₁₂, S̃₁₂], [S̃₂₁ − z²d − z⁴S̃₁₂, −d/2 + z²S̃₁₂]]`
/// with `d = S̃₁₁ − S̃₂₂`.
pub fn lax_tilde<T: Ring>(z: &T, t: &TildeSpin<T>) -> Result<SpinMat<T>> {
    let iz = inv(z, "z")?;
    let d = diff(&t.s);
    let half = d.scale(&qf(1, 2));
    let s12 = t.s.s12().clone();
    let z2 = z.pow(2);
    let m = SpinMat::new(
        half.clone() - z2.clone() * s12.clone(),
        s12.clone(),
        t.s.s21().clone() - z2.clone() * d - z2.pow(2) * s12.clone(),
        -half + z2 * s12,
    );
    Ok(SpinMat::scalar(t.s0.clone()) + m.scale(&iz))
}

/// Tilde Casimirs `(C̃₂, C̃₀)`: `C̃₂ = −d²/4 − S̃₁₂S̃₂₁` and `C̃₀ = S̃₀² − 2H(S̃)`,
/// so that `det L̃(z) = C̃₂/z² + C̃₀`.
pub fn tilde_casimirs<T: Ring>(t: &TildeSpin<T>) -> (T, T) {
    let d = diff(&t.s);
    let c2 = -(d.pow(2).scale(&qf(1, 4))) - t.s.s12().clone() * t.s.s21().clone();
    let c0 = t.s0.pow(2) - c::<T>(2) * hamiltonian(&t.s);
    (c2, c0)
}

/// `𝒮 = ½ L̃(η/2, S̃)`.
pub fn change_vars<T: Ring>(eta: &T, t: &TildeSpin<T>) -> Result<SpinMat<T>> {
    let half = eta.scale(&qf(1, 2));
    Ok(lax_tilde(&half, t)?.scale_q(&qf(1, 2)))
}

/// Component map from `𝒮` to `(S̃₀, S̃)`, returning a traceless `S̃`:
/// `S̃₀ = tr𝒮`, `S̃₁₁−S̃₂₂ = η(𝒮₁₁−𝒮₂₂) + η³𝒮₁₂/2`, `S̃₁₂ = η𝒮₁₂`,
/// `S̃₂₁ = η𝒮₂₁ + η³(𝒮₁₁−𝒮₂₂)/4 + 3η⁵𝒮₁₂/16`.
pub fn tilde_from_eta<T: Ring>(s: &SpinMat<T>, eta: &T) -> TildeSpin<T> {
    let e = eta.clone();
    let d = diff(s);
    let s12 = s.s12().clone();
    let dt = e.clone() * d.clone() + e.pow(3) * s12.clone().scale(&qf(1, 2));
    let half = dt.scale(&qf(1, 2));
    let s21 = e.clone() * s.s21().clone()
        + e.pow(3) * d.scale(&qf(1, 4))
        + e.pow(5) * s12.clone().scale(&qf(3, 16));
    TildeSpin { s0: s.tr(), s: SpinMat::new(half.clone(), e * s12, s21, -half) }
}

/// `φ^η(z) = (2z + η)/(zη)`.
pub fn phi_eta<T: Ring>(z: &T, eta: &T) -> Result<T> {
    let num = c::<T>(2) * z.clone() + eta.clone();
    Ok(num * inv(&(z.clone() * eta.clone()), "z*eta")?)
}

/// Residual of `L^η(z+η₀, L̃(−η₀, S̃)) − φ^η(z+η₀) L̃(z, S̃)` with `η₀ = −η/2`.
pub fn intertwining_residual<T: Ring>(z: &T, eta: &T, t: &TildeSpin<T>) -> Result<SpinMat<T>> {
    let eta0 = -eta.scale(&qf(1, 2));
    let zs = z.clone() + eta0.clone();
    let inner = lax_tilde(&(-eta0), t)?;
    Ok(lax_eta(&zs, &inner, eta)? - lax_tilde(z, t)?.scale(&phi_eta(&zs, eta)?))
}

/// `L(z, L(z, S)) − S/z² − 2J(S)`.
pub fn l_of_l_residual<T: Ring>(z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
    let l = lax_nonrel(z, s)?;
    let iz2 = inv(&z.pow(2), "z")?;
    Ok(lax_nonrel(z, &l)? - s.scale(&iz2) - inertia_j(s).scale(&c(2)))
}

/// `½ J^{2z}(L̃(z)) − 𝓜(z, S̃) − S̃₀/(2z) 1`.
pub fn j_eta_tilde_residual<T: Ring>(z: &T, t: &TildeSpin<T>) -> Result<SpinMat<T>> {
    let lt = lax_tilde(z, t)?;
    let two_z = c::<T>(2) * z.clone();
    let half = qf(1, 2);
    Ok(inertia_j_eta(&lt, &two_z)?.scale_q(&half)
        - m_cal(z, &t.s)
        - SpinMat::scalar(t.s0.clone() * inv(&two_z, "z")?))
}

/// `tr₂(r₁₂(z) S₂) − L(z, S)`.
pub fn lax_from_r_residual(z: &Q, s: &SpinMat<Q>) -> Result<SpinMat<Q>> {
    let t = rmatrix::classical_r(z)?.matmul(&on2(s))?;
    Ok(partial_trace_2(&t)? - lax_nonrel(z, s)?)
}

/// `tr₂(R^η₁₂(z) 𝒮₂) − L^η(z, 𝒮)`.
pub fn lax_eta_from_r_residual(z: &Q, s: &SpinMat<Q>, eta: &Q) -> Result<SpinMat<Q>> {
    let t = rmatrix::quantum_r(eta, z)?.matmul(&on2(s))?;
    Ok(partial_trace_2(&t)? - lax_eta(z, s, eta)?)
}

/// `tr₂(R^{η,(0)}₁₂ 𝒮₂)` from the `z⁰` coefficient of the quantum R-matrix.
pub fn inertia_j_eta_from_series(s: &SpinMat<Q>, eta: &Q) -> Result<SpinMat<Q>> {
    let r0 = rmatrix::series_coeff_r_quantum(eta, 0)?;
    partial_trace_2(&r0.matmul(&on2(s))?)
}
