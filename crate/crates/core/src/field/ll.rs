//! Deformed Landau-Lifshitz equation: the U-V pair, its jet-level splitting and the
//! right-hand side on a periodic grid.

use crate::error::{Error, Result};
use crate::exact::{Ring, SpinMat, Q};
use crate::field::grid::FieldGrid;
use crate::field::jet::Jet;
use crate::tops::{inertia_j, lax_nonrel, m_cal};

fn c<T: Ring>(n: i64, d: i64) -> T {
    T::from_q(&Q::new(n.into(), d.into()))
}

/// `−k/(4λ²)`, the coefficient of `[S, S_x]` in `h`.
fn h_coeff<T: Ring>(jet: &Jet<T>) -> Result<T> {
    let il = jet.lambda2.try_inv().ok_or_else(|| Error::Pole("λ = 0".into()))?;
    Ok(-(jet.k.clone() * il) * c(1, 4))
}

/// `h = −(k/4λ²)[S, S_x]`, the solution of `−k∂_xS = [S, h]`.
pub fn ll_h<T: Ring>(jet: &Jet<T>) -> Result<SpinMat<T>> {
    Ok(jet.s.commutator(&jet.sx).scale(&h_coeff(jet)?))
}

/// `∂_x h = −(k/4λ²)[S, S_xx]`.
pub fn ll_h_x<T: Ring>(jet: &Jet<T>) -> Result<SpinMat<T>> {
    Ok(jet.s.commutator(&jet.sxx).scale(&h_coeff(jet)?))
}

/// `V₁ = L(z,S)/z − 2𝓜(z,S)`.
pub fn v1<T: Ring>(z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
    let iz = z.try_inv().ok_or_else(|| Error::Pole("z = 0".into()))?;
    Ok(lax_nonrel(z, s)?.scale(&iz) - m_cal(z, s).scale(&T::from_i64(2)))
}

/// Expanded `V₁ = S/z² + [[S₁₂, 0], [2S₁₁ + 3z²S₁₂, −S₁₂]]`, valid for traceless `S`.
pub fn v1_explicit<T: Ring>(z: &T, s: &SpinMat<T>) -> Result<SpinMat<T>> {
    let iz2 = z.pow(2).try_inv().ok_or_else(|| Error::Pole("z = 0".into()))?;
    let s12 = s.s12().clone();
    let tail = SpinMat::new(
        s12.clone(),
        T::zero(),
        T::from_i64(2) * s.s11().clone() + T::from_i64(3) * z.pow(2) * s12.clone(),
        -s12,
    );
    Ok(s.scale(&iz2) + tail)
}

/// `(U, V)` with `U = L(z,S)` and `V = −½(V₁ + L(z,h))`.
pub fn ll_uv<T: Ring>(z: &T, jet: &Jet<T>) -> Result<(SpinMat<T>, SpinMat<T>)> {
    let u = lax_nonrel(z, &jet.s)?;
    let v2 = lax_nonrel(z, &ll_h(jet)?)?;
    Ok((u, (v1(z, &jet.s)? + v2).scale(&c(-1, 2))))
}

/// First half of the zero-curvature splitting: `−k∂_xV₁ − [L, V₂]`.
pub fn zs_split_residual<T: Ring>(z: &T, jet: &Jet<T>) -> Result<SpinMat<T>> {
    let l = lax_nonrel(z, &jet.s)?;
    let v2 = lax_nonrel(z, &ll_h(jet)?)?;
    Ok(v1(z, &jet.sx)?.scale(&-jet.k.clone()) - l.commutator(&v2))
}

/// `∂_tS = α[S, S_xx] + ε²[S, J(S)]` at a jet.
pub fn ll_jet_rhs<T: Ring>(jet: &Jet<T>, eps: &T) -> Result<SpinMat<T>> {
    let a = jet.alpha()?;
    Ok(jet.s.commutator(&jet.sxx).scale(&a) + jet.s.commutator(&inertia_j(&jet.s)).scale(&eps.pow(2)))
}

/// Full zero-curvature residual `∂_tU − k∂_xV − [U, V]` at a jet, with `∂_tS` from
/// [`ll_jet_rhs`] and `∂_x` acting through `S → S_x → S_xx`.
pub fn zs_jet_residual<T: Ring>(z: &T, jet: &Jet<T>) -> Result<SpinMat<T>> {
    let (u, v) = ll_uv(z, jet)?;
    let ut = lax_nonrel(z, &ll_jet_rhs(jet, &T::one())?)?;
    let vx = (v1(z, &jet.sx)? + lax_nonrel(z, &ll_h_x(jet)?)?).scale(&c(-1, 2));
    Ok(ut - vx.scale(&jet.k) - u.commutator(&v))
}

/// Semi-discrete right side `α[S, D²S] + ε²[S, J(S)]` with the 3-point Laplacian.
pub fn ll_rhs(grid: &FieldGrid, alpha: f64, eps: f64) -> Vec<SpinMat<f64>> {
    (0..grid.n())
        .map(|i| {
            let s = grid.at(i);
            s.commutator(&grid.d2(i)).scale(&alpha) + s.commutator(&inertia_j(s)).scale(&(eps * eps))
        })
        .collect()
}

/// Hamiltonian density as printed, `½(tr S_x² + tr(S J(S)))`, integrated by the
/// trapezoid rule with central-difference `S_x`.
pub fn ll_hamiltonian(grid: &FieldGrid) -> f64 {
    let dens = |i: usize| {
        let (s, sx) = (grid.at(i), grid.d1(i));
        0.5 * (sx.matmul(&sx).tr() + s.matmul(&inertia_j(s)).tr())
    };
    (0..grid.n()).map(dens).sum::<f64>() * grid.dx()
}

/// Energy generating [`ll_rhs`] under the field Lie-Poisson bracket:
/// `½∮(tr(S J(S)) − α tr S_x²)`, with forward differences so that it is an exact
/// invariant of the semi-discrete flow at `ε = 1`.
pub fn ll_energy(grid: &FieldGrid, alpha: f64) -> f64 {
    let dens = |i: usize| {
        let (s, sf) = (grid.at(i), grid.dplus(i));
        0.5 * (s.matmul(&inertia_j(s)).tr() - alpha * sf.matmul(&sf).tr())
    };
    (0..grid.n()).map(dens).sum::<f64>() * grid.dx()
}

/// Largest pointwise `|tr S² − 2λ²|`.
pub fn casimir_defect(grid: &FieldGrid, lambda2: f64) -> f64 {
    grid.values().iter().map(|s| (s.matmul(s).tr() - 2.0 * lambda2).abs()).fold(0.0, f64::max)
}

/// Smooth periodic initial data on `S² = λ²`: `S₁₁ = a(x)`, `S₁₂ = b(x)` with `b` bounded
/// away from zero, `S₂₁ = (λ² − a²)/b`. Works for either sign of `λ²`. `b` is negative:
/// the top part of the flow gives `∂_tS₁₂ = 2S₁₂² + …`, which blows up in finite time from
/// positive `S₁₂`.
pub fn ll_initial(n: usize, len: f64, lambda2: f64, seed: u64) -> FieldGrid {
    let mut smp = crate::exact::Sampler::new(seed);
    let scale = lambda2.abs().sqrt().max(1e-3);
    let (amp, ph1, ph2) = (smp.uniform(0.2, 0.5), smp.uniform(0.0, 6.28), smp.uniform(0.0, 6.28));
    let w = 2.0 * std::f64::consts::PI / len;
    FieldGrid::from_fn(n, len, |x| {
        let a = scale * amp * (w * x + ph1).sin();
        let b = -scale * (1.0 + 0.3 * (w * x + ph2).cos());
        SpinMat::new(a, b, (lambda2 - a * a) / b, -a)
    })
}

/// Zero-curvature residual of a stored pair of LL snapshots a time `dt` apart: forward
/// difference in `t`, central differences in `x`, sup norm over the grid.
pub fn zs_residual(z: f64, prev: &FieldGrid, next: &FieldGrid, dt: f64, k: f64, lambda2: f64) -> Result<f64> {
    if prev.n() != next.n() || prev.len() != next.len() {
        return Err(Error::Dimension("snapshots on different grids".into()));
    }
    let jet = |i: usize| Jet { s: prev.at(i).clone(), sx: prev.d1(i), sxx: prev.d2(i), k, lambda2 };
    let vs = (0..prev.n()).map(|i| Ok(ll_uv(&z, &jet(i))?.1)).collect::<Result<Vec<_>>>()?;
    let n = prev.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let u = lax_nonrel(&z, prev.at(i))?;
        let ut = lax_nonrel(&z, &(next.at(i) - prev.at(i)).scale(&(1.0 / dt)))?;
        let vx = (&vs[(i + 1) % n] - &vs[(i + n - 1) % n]).scale(&(0.5 / prev.dx()));
        let r = ut - vx.scale(&k) - u.commutator(&vs[i]);
        worst = worst.max(r.max_abs());
    }
    Ok(worst)
}
