//! Rational principal chiral model: two poles `z₁ ≠ z₂` with fields `S¹`, `S²`.

use crate::error::{Error, Result};
use crate::exact::{Ring, SpinMat, Q};
use crate::field::grid::FieldGrid;
use crate::tops::{inertia_j, lax_nonrel_eps};

/// Two fields on the same grid, poles `z₁`, `z₂`, velocity `k` and deformation `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralState {
    pub s1: FieldGrid,
    pub s2: FieldGrid,
    pub z1: f64,
    pub z2: f64,
    pub k: f64,
    pub eps: f64,
}

impl ChiralState {
    pub fn new(s1: FieldGrid, s2: FieldGrid, z1: f64, z2: f64, k: f64) -> Result<Self> {
        if z1 == z2 {
            return Err(Error::Pole("z₁ = z₂".into()));
        }
        if s1.n() != s2.n() || s1.len() != s2.len() {
            return Err(Error::Dimension("chiral fields on different grids".into()));
        }
        Ok(ChiralState { s1, s2, z1, z2, k, eps: 1.0 })
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }
}

/// Interaction terms `(−2[S¹, L_ε(d, S²)], −2[L_ε(−d, S¹), S²])` with `d = z₁ − z₂`.
pub fn chiral_forces<T: Ring>(d: &T, eps: &T, s1: &SpinMat<T>, s2: &SpinMat<T>) -> Result<(SpinMat<T>, SpinMat<T>)> {
    let m2 = T::from_i64(-2);
    let f1 = s1.commutator(&lax_nonrel_eps(d, s2, eps)?).scale(&m2);
    let f2 = lax_nonrel_eps(&-d.clone(), s1, eps)?.commutator(s2).scale(&m2);
    Ok((f1, f2))
}

/// Pointwise time derivatives `∂_tS¹ = k∂_xS¹ + f₁`, `∂_tS² = −k∂_xS² + f₂`.
pub fn chiral_point<T: Ring>(
    d: &T,
    k: &T,
    eps: &T,
    (s1, s1x): (&SpinMat<T>, &SpinMat<T>),
    (s2, s2x): (&SpinMat<T>, &SpinMat<T>),
) -> Result<(SpinMat<T>, SpinMat<T>)> {
    let (f1, f2) = chiral_forces(d, eps, s1, s2)?;
    Ok((s1x.scale(k) + f1, f2 - s2x.scale(k)))
}

/// Semi-discrete right sides with central differences.
pub fn chiral_rhs(st: &ChiralState) -> Result<(Vec<SpinMat<f64>>, Vec<SpinMat<f64>>)> {
    let d = st.z1 - st.z2;
    let mut out = (Vec::with_capacity(st.s1.n()), Vec::with_capacity(st.s1.n()));
    for i in 0..st.s1.n() {
        let (a, b) = chiral_point(&d, &st.k, &st.eps, (st.s1.at(i), &st.s1.d1(i)), (st.s2.at(i), &st.s2.d1(i)))?;
        out.0.push(a);
        out.1.push(b);
    }
    Ok(out)
}

/// Zero-curvature residual of `U = L¹ + L²`, `V = L¹ − L²` at spectral point `z`, with
/// `∂_tSᵃ ∓ k∂_xSᵃ` taken from the equations of motion. The `x`-derivatives cancel, so
/// only the values `S¹`, `S²` enter.
pub fn chiral_zs_residual<T: Ring>(z: &T, z1: &T, z2: &T, s1: &SpinMat<T>, s2: &SpinMat<T>) -> Result<SpinMat<T>> {
    let one = T::one();
    let d = z1.clone() - z2.clone();
    let (f1, f2) = chiral_forces(&d, &one, s1, s2)?;
    let (w1, w2) = (z.clone() - z1.clone(), z.clone() - z2.clone());
    let (l1, l2) = (lax_nonrel_eps(&w1, s1, &one)?, lax_nonrel_eps(&w2, s2, &one)?);
    let u = l1.clone() + l2.clone();
    let v = l1 - l2;
    Ok(lax_nonrel_eps(&w1, &f1, &one)? + lax_nonrel_eps(&w2, &f2, &one)? - u.commutator(&v))
}

/// At `ε = 0` with `S^± = S¹ ± S²`: residuals of `∂_tS⁻ − k∂_xS⁺ = [S⁻, S⁺]` and
/// `∂_tS⁺ − k∂_xS⁻ = 0`.
pub fn isotropic_residuals<T: Ring>(
    d: &T,
    k: &T,
    s1: (&SpinMat<T>, &SpinMat<T>),
    s2: (&SpinMat<T>, &SpinMat<T>),
) -> Result<(SpinMat<T>, SpinMat<T>)> {
    let (t1, t2) = chiral_point(d, k, &T::zero(), s1, s2)?;
    let (sp, sm) = (s1.0.clone() + s2.0.clone(), s1.0.clone() - s2.0.clone());
    let (spx, smx) = (s1.1.clone() + s2.1.clone(), s1.1.clone() - s2.1.clone());
    let minus = t1.clone() - t2.clone() - spx.scale(k) - sm.commutator(&sp);
    let plus = t1 + t2 - smx.scale(k);
    Ok((minus, plus))
}

/// `[S¹, L(d, S²_red)] + c·[S¹, J(S¹)]` for the stationary light-cone reduction
/// `S²_red = −½L(d, S¹)`. Vanishes identically for `c = 1`.
pub fn light_cone_residual<T: Ring>(d: &T, s1: &SpinMat<T>, c: &Q) -> Result<SpinMat<T>> {
    let one = T::one();
    let red = lax_nonrel_eps(d, s1, &one)?.scale(&T::from_q(&Q::new((-1).into(), 2.into())));
    let lhs = s1.commutator(&lax_nonrel_eps(d, &red, &one)?);
    Ok(lhs + s1.commutator(&inertia_j(s1)).scale(&T::from_q(c)))
}

/// `∮ tr((Sᵃ)²) dx` for both fields.
pub fn trace_square_integrals(st: &ChiralState) -> [f64; 2] {
    let f = |s: &SpinMat<f64>| s.matmul(s).tr();
    [st.s1.integrate(f), st.s2.integrate(f)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf, Sampler};

    #[test]
    fn constant_diagonal_example() {
        let s = SpinMat::new(1.0, 0.0, 0.0, -1.0);
        let g = FieldGrid::from_fn(4, 1.0, |_| s.clone());
        let st = ChiralState::new(g.clone(), g, 1.0, 0.0, 0.7).unwrap();
        let (d1, _) = chiral_rhs(&st).unwrap();
        assert_eq!(lax_nonrel_eps(&1.0, &s, &1.0).unwrap(), SpinMat::new(1.0, 0.0, -2.0, -1.0));
        for m in d1 {
            assert_eq!(m, SpinMat::new(0.0, 0.0, -8.0, 0.0));
        }
        let g = FieldGrid::from_fn(4, 1.0, |_| s.clone());
        assert!(ChiralState::new(g.clone(), g, 2.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn zero_curvature_exact() {
        let mut smp = Sampler::new(21);
        for _ in 0..10 {
            let (s1, s2) = (smp.spin(), smp.spin());
            let zs = smp.distinct(3);
            let r = chiral_zs_residual(&zs[0], &zs[1], &zs[2], &s1, &s2).unwrap();
            assert!(r.is_zero(), "{r:?}");
        }
    }

    #[test]
    fn isotropic_form_needs_unit_normalization() {
        let mut smp = Sampler::new(22);
        let k = qf(3, 2);
        for _ in 0..10 {
            let (a, ax, b, bx) = (smp.spin(), smp.spin(), smp.spin(), smp.spin());
            let (m, p) = isotropic_residuals(&q(-2), &k, (&a, &ax), (&b, &bx)).unwrap();
            assert!(m.is_zero() && p.is_zero());
            // any other pole separation rescales the commutator
            let (m, p) = isotropic_residuals(&q(1), &k, (&a, &ax), (&b, &bx)).unwrap();
            assert!(p.is_zero());
            assert!(!m.is_zero() || a.commutator(&b).is_zero());
        }
    }

    #[test]
    fn light_cone_reduction() {
        let mut smp = Sampler::new(23);
        for _ in 0..10 {
            let (s, d) = (smp.spin(), smp.rational());
            assert!(light_cone_residual(&d, &s, &q(1)).unwrap().is_zero());
            let half = light_cone_residual(&d, &s, &qf(1, 2)).unwrap();
            assert!(!half.is_zero() || s.commutator(&inertia_j(&s)).is_zero());
        }
    }
}
