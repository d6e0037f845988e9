//! Second-order jets of the Landau-Lifshitz field at one point.

use crate::error::{Error, Result};
use crate::exact::{Ring, Sampler, SpinMat, Q};

/// `(S, S_x, S_xx)` at a point, with the velocity `k` and the constant `λ²` of `S² = λ²·1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub s: SpinMat<T>,
    pub sx: SpinMat<T>,
    pub sxx: SpinMat<T>,
    pub k: T,
    pub lambda2: T,
}

impl<T: Ring> Jet<T> {
    /// `α = k²/(8λ²)`.
    pub fn alpha(&self) -> Result<T> {
        let il = self.lambda2.try_inv().ok_or_else(|| Error::Pole("λ = 0".into()))?;
        Ok(self.k.pow(2) * il * T::from_q(&Q::new(1.into(), 8.into())))
    }

    /// Constraint residuals `tr S`, `S² − λ²`, `SS_x + S_xS`, `tr S_x`, all zero on the
    /// constraint surface.
    pub fn constraint_residuals(&self) -> (T, SpinMat<T>, SpinMat<T>, T) {
        let sq = self.s.matmul(&self.s) - SpinMat::scalar(self.lambda2.clone());
        let anti = self.s.matmul(&self.sx) + self.sx.matmul(&self.s);
        (self.s.tr(), sq, anti, self.sx.tr())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Jet<U> {
        Jet {
            s: self.s.map(&f),
            sx: self.sx.map(&f),
            sxx: self.sxx.map(&f),
            k: f(&self.k),
            lambda2: f(&self.lambda2),
        }
    }
}

/// Exact jet on the constraint surface. `S₁₁ = a`, `S₁₂ = b` and their first two
/// derivatives are sampled; `S₂₁ = c` is solved from `a² + bc = λ²` and differentiated.
pub fn constrained_jet(smp: &mut Sampler, k: &Q, lambda2: &Q) -> Jet<Q> {
    let (a, b) = (smp.rational(), smp.rational());
    let (a1, b1) = (smp.rational(), smp.rational());
    let (a2, b2) = (smp.rational(), smp.rational());
    let two = Q::from_i64(2);
    let c = (lambda2 - &a * &a) / &b;
    let c1 = -(&two * &a * &a1 + &b1 * &c) / &b;
    let c2 = -(&two * &a1 * &a1 + &two * &a * &a2 + &b2 * &c + &two * &b1 * &c1) / &b;
    let traceless = |x: &Q, y: &Q, z: &Q| SpinMat::new(x.clone(), y.clone(), z.clone(), -x.clone());
    Jet {
        s: traceless(&a, &b, &c),
        sx: traceless(&a1, &b1, &c1),
        sxx: traceless(&a2, &b2, &c2),
        k: k.clone(),
        lambda2: lambda2.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf, Zero};

    #[test]
    fn sampled_jets_satisfy_constraints() {
        let mut smp = Sampler::new(11);
        for _ in 0..20 {
            let j = constrained_jet(&mut smp, &q(1), &qf(-3, 2));
            let (t, sq, anti, tx) = j.constraint_residuals();
            assert!(t.is_zero() && sq.is_zero() && anti.is_zero() && tx.is_zero());
            // second derivative of S² = λ²: S S_xx + 2 S_x² + S_xx S = 0
            let dd = j.s.matmul(&j.sxx) + j.sx.matmul(&j.sx).scale(&q(2)) + j.sxx.matmul(&j.s);
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn alpha_value() {
        let mut smp = Sampler::new(1);
        let j = constrained_jet(&mut smp, &q(2), &q(1));
        assert_eq!(j.alpha().unwrap(), qf(1, 2));
        let mut z = j.clone();
        z.lambda2 = q(0);
        assert!(z.alpha().is_err());
    }
}
