//! The quantum 11-vertex R-matrix, its classical r-matrix, ε-deformations and
//! Yang-Baxter residuals.

use crate::error::{Error, Result};
use crate::exact::{LaurentBi, LegPair, Q, Ring, TensorOp};

fn inv<T: Ring>(x: &T, what: &str) -> Result<T> {
    x.try_inv().ok_or_else(|| Error::Pole(format!("{what} = 0")))
}

fn rows<T: Ring>(r: [[T; 4]; 4]) -> TensorOp<T> {
    TensorOp::from_rows(r.into_iter().map(|row| row.to_vec()).collect()).expect("4x4")
}

/// `R^{ħ,ε}(z) = ε R^{εħ}(εz)`, written polynomially in `ε` so that `ε = 0` is allowed.
/// At `ε = 1` this is the undeformed R-matrix.
pub fn quantum_r_eps<T: Ring>(hbar: &T, z: &T, eps: &T) -> Result<TensorOp<T>> {
    let d = inv(hbar, "hbar")? + inv(z, "z")?;
    let e2 = eps.pow(2);
    let s = hbar.clone() + z.clone();
    let (h, zz) = (hbar.clone(), z.clone());
    let cubic = h.pow(3)
        + zz.clone() * h.pow(2) * T::from_i64(2)
        + h.clone() * zz.pow(2) * T::from_i64(2)
        + zz.pow(3);
    let iz = inv(z, "z")?;
    let ih = inv(hbar, "hbar")?;
    let o = T::zero;
    Ok(rows([
        [d.clone(), o(), o(), o()],
        [-(e2.clone() * s.clone()), ih.clone(), iz.clone(), o()],
        [-(e2.clone() * s.clone()), iz, ih, o()],
        [-(e2.pow(2) * cubic), e2.clone() * s.clone(), e2 * s, d],
    ]))
}

/// The quantum R-matrix `R^ħ(z)`.
pub fn quantum_r<T: Ring>(hbar: &T, z: &T) -> Result<TensorOp<T>> {
    quantum_r_eps(hbar, z, &T::one())
}

/// `r^ε(z) = ε r(εz)`.
pub fn classical_r_eps<T: Ring>(z: &T, eps: &T) -> Result<TensorOp<T>> {
    let iz = inv(z, "z")?;
    let e2 = eps.pow(2);
    let ze = z.clone() * e2.clone();
    let o = T::zero;
    Ok(rows([
        [iz.clone(), o(), o(), o()],
        [-ze.clone(), o(), iz.clone(), o()],
        [-ze.clone(), iz.clone(), o(), o()],
        [-(z.pow(3) * e2.pow(2)), ze.clone(), ze, iz],
    ]))
}

/// The classical r-matrix `r(z)`.
pub fn classical_r<T: Ring>(z: &T) -> Result<TensorOp<T>> {
    classical_r_eps(z, &T::one())
}

/// `P₁₂ / z`, the isotropic (Yang) r-matrix.
pub fn yang_r<T: Ring>(z: &T) -> Result<TensorOp<T>> {
    Ok(TensorOp::permutation().scale(&inv(z, "z")?))
}

/// `ħ⁻¹ 1 + z⁻¹ P₁₂`, the isotropic quantum R-matrix.
pub fn yang_quantum_r<T: Ring>(hbar: &T, z: &T) -> Result<TensorOp<T>> {
    Ok(TensorOp::identity(2).scale(&inv(hbar, "hbar")?) + yang_r(z)?)
}

/// `r₂₁ = P r₁₂ P`.
pub fn swap_legs<T: Ring>(t: &TensorOp<T>) -> Result<TensorOp<T>> {
    let p = TensorOp::permutation();
    p.matmul(t)?.matmul(&p)
}

/// Classical Yang-Baxter residual with the argument convention
/// `[r₁₂(z−w), r₁₃(z)] + [r₁₂(z−w), r₂₃(w)] + [r₁₃(z), r₂₃(w)]`.
pub fn cybe_residual_with<T: Ring>(
    r: impl Fn(&T) -> Result<TensorOp<T>>,
    z: &T,
    w: &T,
) -> Result<TensorOp<T>> {
    let r12 = r(&(z.clone() - w.clone()))?.embed(LegPair::L12)?;
    let r13 = r(z)?.embed(LegPair::L13)?;
    let r23 = r(w)?.embed(LegPair::L23)?;
    Ok(r12.commutator(&r13)? + r12.commutator(&r23)? + r13.commutator(&r23)?)
}

pub fn cybe_residual(z: &Q, w: &Q) -> Result<TensorOp<Q>> {
    cybe_residual_with(classical_r, z, w)
}

/// `R₁₂(z−w) R₁₃(z) R₂₃(w) − R₂₃(w) R₁₃(z) R₁₂(z−w)`.
pub fn quantum_ybe_residual_with<T: Ring>(
    r: impl Fn(&T) -> Result<TensorOp<T>>,
    z: &T,
    w: &T,
) -> Result<TensorOp<T>> {
    let r12 = r(&(z.clone() - w.clone()))?.embed(LegPair::L12)?;
    let r13 = r(z)?.embed(LegPair::L13)?;
    let r23 = r(w)?.embed(LegPair::L23)?;
    Ok(r12.matmul(&r13)?.matmul(&r23)? - r23.matmul(&r13)?.matmul(&r12)?)
}

pub fn quantum_ybe_residual(hbar: &Q, z: &Q, w: &Q) -> Result<TensorOp<Q>> {
    quantum_ybe_residual_with(|x| quantum_r(hbar, x), z, w)
}

/// `R^ħ(z)` with `z` and `ħ` symbolic (first and second Laurent slots).
pub fn quantum_r_symbolic() -> TensorOp<LaurentBi> {
    quantum_r(&LaurentBi::y(), &LaurentBi::x()).expect("monomials are invertible")
}

/// `r(z)` with `z` symbolic in the first slot.
pub fn classical_r_symbolic() -> TensorOp<LaurentBi> {
    classical_r(&LaurentBi::x()).expect("monomial is invertible")
}

/// Exact `z^k` coefficient of `R^ħ(z)` at fixed `ħ`.
pub fn series_coeff_r_quantum(hbar: &Q, k: i32) -> Result<TensorOp<Q>> {
    let h = LaurentBi::from_q(hbar);
    let r = quantum_r(&h, &LaurentBi::x())?;
    Ok(r.map(|e| e.coeff(k, 0)))
}

/// Exact `z^k` coefficient of `r(z)`.
pub fn series_coeff_r_classical(k: i32) -> TensorOp<Q> {
    classical_r_symbolic().map(|e| e.coeff(k, 0))
}

/// `lim_{ħ→0} (R^ħ(z) − ħ⁻¹ 1)` as an exact Laurent polynomial in `z`, or `None` if a
/// pole in `ħ` survives.
pub fn classical_limit() -> Option<TensorOp<LaurentBi>> {
    let r = quantum_r_symbolic();
    let shifted = r - TensorOp::identity(2).scale(&LaurentBi::y().try_inv()?);
    let entries: Option<Vec<LaurentBi>> = shifted.entries().map(|e| e.at_y_zero()).collect();
    let e = entries?;
    TensorOp::from_rows(e.chunks(4).map(|c| c.to_vec()).collect()).ok()
}

/// The ε = 0 value of an operator written polynomially in ε (second Laurent slot).
pub fn at_eps_zero(t: &TensorOp<LaurentBi>) -> Option<TensorOp<LaurentBi>> {
    let entries: Option<Vec<LaurentBi>> = t.entries().map(|e| e.at_y_zero()).collect();
    TensorOp::from_rows(entries?.chunks(t.dim()).map(|c| c.to_vec()).collect()).ok()
}
