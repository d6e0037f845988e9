use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Point, Var};
use super::ring::Q;
use super::spin::SpinMat;

/// Seeded source of small random rationals for identity testing.
///
/// Numerators are drawn from [−9, 9] \ {0} and denominators from [1, 9], so values are
/// nonzero and cheap to multiply.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Q {
        let mut n = 0;
        while n == 0 {
            n = self.rng.gen_range(-9i64..=9);
        }
        let d = self.rng.gen_range(1i64..=9);
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn spin(&mut self) -> SpinMat<Q> {
        SpinMat::new(self.rational(), self.rational(), self.rational(), self.rational())
    }

    pub fn point(&mut self, vars: impl IntoIterator<Item = Var>) -> Point {
        vars.into_iter().map(|v| (v, self.rational())).collect()
    }

    /// A spectral pair avoiding z = 0, w = 0, z = ±w and z + w + shift = 0.
    pub fn spectral_pair(&mut self, shift: &Q) -> (Q, Q) {
        loop {
            let (z, w) = (self.rational(), self.rational());
            let bad = (&z - &w).is_zero() || (&z + &w).is_zero() || (&z + &w + shift).is_zero();
            if !bad {
                return (z, w);
            }
        }
    }

    /// `n` pairwise distinct rationals.
    pub fn distinct(&mut self, n: usize) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::with_capacity(n);
        while out.len() < n {
            let x = self.rational();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}
