use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Ring, Q};

/// 2×2 matrix over one scalar role.
#[derive(Clone, PartialEq, Debug)]
pub struct SpinMat<T> {
    pub e: [[T; 2]; 2],
}

impl<T: Ring> SpinMat<T> {
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Self {
        SpinMat { e: [[a11, a12], [a21, a22]] }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(x: T) -> Self {
        Self::new(x.clone(), T::zero(), T::zero(), x)
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.e[i][j] = T::one();
        m
    }

    pub fn from_q(rows: [[Q; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = rows;
        Self::new(T::from_q(&a), T::from_q(&b), T::from_q(&c), T::from_q(&d))
    }

    pub fn s11(&self) -> &T {
        &self.e[0][0]
    }
    pub fn s12(&self) -> &T {
        &self.e[0][1]
    }
    pub fn s21(&self) -> &T {
        &self.e[1][0]
    }
    pub fn s22(&self) -> &T {
        &self.e[1][1]
    }

    pub fn tr(&self) -> T {
        self.e[0][0].clone() + self.e[1][1].clone()
    }

    pub fn det(&self) -> T {
        self.e[0][0].clone() * self.e[1][1].clone() - self.e[0][1].clone() * self.e[1][0].clone()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SpinMat<U> {
        SpinMat::new(f(&self.e[0][0]), f(&self.e[0][1]), f(&self.e[1][0]), f(&self.e[1][1]))
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<SpinMat<U>, E> {
        Ok(SpinMat::new(
            f(&self.e[0][0])?,
            f(&self.e[0][1])?,
            f(&self.e[1][0])?,
            f(&self.e[1][1])?,
        ))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let m = |i: usize, j: usize| {
            self.e[i][0].clone() * o.e[0][j].clone() + self.e[i][1].clone() * o.e[1][j].clone()
        };
        Self::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.matmul(o) - o.matmul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.e.iter().flat_map(|r| r.iter())
    }
}

impl SpinMat<f64> {
    pub fn max_abs(&self) -> f64 {
        self.entries().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl<T: Ring> Add for SpinMat<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [[a, b], [c, d]] = self.e;
        let [[p, q], [r, s]] = o.e;
        Self::new(a + p, b + q, c + r, d + s)
    }
}

impl<T: Ring> Sub for SpinMat<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Ring> Neg for SpinMat<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let [[a, b], [c, d]] = self.e;
        Self::new(-a, -b, -c, -d)
    }
}

impl<T: Ring> Mul for SpinMat<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.matmul(&o)
    }
}

impl<'a, T: Ring> Add for &'a SpinMat<T> {
    type Output = SpinMat<T>;
    fn add(self, o: Self) -> SpinMat<T> {
        self.clone() + o.clone()
    }
}

impl<'a, T: Ring> Sub for &'a SpinMat<T> {
    type Output = SpinMat<T>;
    fn sub(self, o: Self) -> SpinMat<T> {
        self.clone() - o.clone()
    }
}

impl<'a, T: Ring> Mul for &'a SpinMat<T> {
    type Output = SpinMat<T>;
    fn mul(self, o: Self) -> SpinMat<T> {
        self.matmul(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::{q, Q};

    fn m(a: i64, b: i64, c: i64, d: i64) -> SpinMat<Q> {
        SpinMat::new(q(a), q(b), q(c), q(d))
    }

    #[test]
    fn basic_algebra() {
        let a = m(1, 2, 3, 4);
        assert_eq!(a.tr(), q(5));
        assert_eq!(a.det(), q(-2));
        assert_eq!(&a * &SpinMat::identity(), a);
        assert_eq!(a.commutator(&a), SpinMat::zero());
        assert_eq!(SpinMat::<Q>::unit(0, 1) * SpinMat::unit(1, 0), SpinMat::unit(0, 0));
    }

    #[test]
    fn cayley_hamilton() {
        let a = m(2, -1, 5, 7);
        let lhs = &(&a * &a) - &a.scale(&a.tr()) + SpinMat::scalar(a.det());
        assert!(lhs.is_zero());
    }
}
