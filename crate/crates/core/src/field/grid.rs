//! Periodic grids of 2×2 field values.

use crate::exact::SpinMat;

/// `N` equally spaced samples of a 2×2 field on a circle of length `ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    len: f64,
    data: Vec<SpinMat<f64>>,
}

impl FieldGrid {
    pub fn new(len: f64, data: Vec<SpinMat<f64>>) -> Self {
        assert!(!data.is_empty() && len > 0.0, "empty grid");
        FieldGrid { len, data }
    }

    pub fn from_fn(n: usize, len: f64, f: impl Fn(f64) -> SpinMat<f64>) -> Self {
        let dx = len / n as f64;
        Self::new(len, (0..n).map(|i| f(i as f64 * dx)).collect())
    }

    pub fn n(&self) -> usize {
        self.data.len()
    }

    pub fn len(&self) -> f64 {
        self.len
    }

    pub fn dx(&self) -> f64 {
        self.len / self.n() as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn values(&self) -> &[SpinMat<f64>] {
        &self.data
    }

    /// Periodic access.
    pub fn at(&self, i: usize) -> &SpinMat<f64> {
        &self.data[i % self.n()]
    }

    fn left(&self, i: usize) -> &SpinMat<f64> {
        &self.data[(i + self.n() - 1) % self.n()]
    }

    /// Central first difference.
    pub fn d1(&self, i: usize) -> SpinMat<f64> {
        (self.at(i + 1) - self.left(i)).scale(&(0.5 / self.dx()))
    }

    /// Forward first difference.
    pub fn dplus(&self, i: usize) -> SpinMat<f64> {
        (self.at(i + 1) - self.at(i)).scale(&(1.0 / self.dx()))
    }

    /// Three-point second difference.
    pub fn d2(&self, i: usize) -> SpinMat<f64> {
        let h2 = self.dx() * self.dx();
        (self.at(i + 1).clone() - self.at(i).scale(&2.0) + self.left(i).clone()).scale(&(1.0 / h2))
    }

    /// Trapezoid rule for a periodic density.
    pub fn integrate(&self, f: impl Fn(&SpinMat<f64>) -> f64) -> f64 {
        self.data.iter().map(f).sum::<f64>() * self.dx()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(SpinMat::max_abs).fold(0.0, f64::max)
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.data.iter().flat_map(|m| m.entries().copied()).collect()
    }

    pub fn from_slice(len: f64, y: &[f64]) -> Self {
        Self::new(len, y.chunks(4).map(|c| SpinMat::new(c[0], c[1], c[2], c[3])).collect())
    }
}
