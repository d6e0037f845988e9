use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Ring, Q};
use super::spin::SpinMat;
use crate::error::{Error, Result};

/// Dense operator on the tensor product of `legs` copies of the 2-dimensional space.
///
/// Basis index bits: leg 0 is the most significant bit, so a two-site index is `2i + k`
/// for `e_i ⊗ e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorOp<T> {
    legs: usize,
    data: Vec<T>,
}

/// Which pair of legs of a three-site space a two-site operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegPair {
    L12,
    L13,
    L23,
}

impl LegPair {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(LegPair::L12),
            "13" => Ok(LegPair::L13),
            "23" => Ok(LegPair::L23),
            _ => Err(Error::InvalidLegs(s.to_string())),
        }
    }

    fn legs(self) -> [usize; 2] {
        match self {
            LegPair::L12 => [0, 1],
            LegPair::L13 => [0, 2],
            LegPair::L23 => [1, 2],
        }
    }
}

fn bit(idx: usize, leg: usize, legs: usize) -> usize {
    (idx >> (legs - 1 - leg)) & 1
}

impl<T: Ring> TensorOp<T> {
    pub fn zero(legs: usize) -> Self {
        let d = 1 << legs;
        TensorOp { legs, data: vec![T::zero(); d * d] }
    }

    pub fn identity(legs: usize) -> Self {
        let mut t = Self::zero(legs);
        for i in 0..t.dim() {
            t.set(i, i, T::one());
        }
        t
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let d = rows.len();
        let legs = d.trailing_zeros() as usize;
        if d == 0 || 1 << legs != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("{d} rows is not a square power of two")));
        }
        Ok(TensorOp { legs, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_q_rows(rows: &[&[Q]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(T::from_q).collect()).collect())
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        1 << self.legs
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.dim() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        let d = self.dim();
        self.data[r * d + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TensorOp<U> {
        TensorOp { legs: self.legs, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> std::result::Result<U, E>) -> std::result::Result<TensorOp<U>, E> {
        Ok(TensorOp {
            legs: self.legs,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn tr(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let mut t = Self::zero(self.legs);
        for r in 0..d {
            for c in 0..d {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        if self.legs != o.legs {
            return Err(Error::Dimension(format!("{} vs {} legs", self.legs, o.legs)));
        }
        let d = self.dim();
        let mut out = Self::zero(self.legs);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * d + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        Ok(self.matmul(o)? - o.matmul(self)?)
    }

    /// The flip `P₁₂ = Σ E_ij ⊗ E_ji`.
    pub fn permutation() -> Self {
        let mut p = Self::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                p.set(2 * i + j, 2 * j + i, T::one());
            }
        }
        p
    }

    /// Place a `k`-leg operator on `targets` (in that order) inside an `n`-leg space.
    pub fn embed_general(&self, targets: &[usize], n: usize) -> Result<Self> {
        if targets.len() != self.legs
            || targets.iter().any(|&t| t >= n)
            || (1..targets.len()).any(|i| targets[..i].contains(&targets[i]))
        {
            return Err(Error::InvalidLegs(format!("{targets:?} in {n} legs")));
        }
        let rest: Vec<usize> = (0..n).filter(|l| !targets.contains(l)).collect();
        let d = 1 << n;
        let inner = |idx: usize| {
            targets.iter().fold(0, |acc, &l| (acc << 1) | bit(idx, l, n))
        };
        let mut out = Self::zero(n);
        for r in 0..d {
            let ri = inner(r);
            for c in 0..d {
                if rest.iter().any(|&l| bit(r, l, n) != bit(c, l, n)) {
                    continue;
                }
                let v = self.get(ri, inner(c));
                if !v.is_zero() {
                    out.set(r, c, v.clone());
                }
            }
        }
        Ok(out)
    }

    /// Embed a two-site operator into the three-site space.
    pub fn embed(&self, legs: LegPair) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::Dimension(format!("embed needs 2 legs, got {}", self.legs)));
        }
        self.embed_general(&legs.legs(), 3)
    }

    /// Trace out every leg not in `keep`; the result acts on `keep` in the given order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.legs;
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::InvalidLegs(format!("{keep:?} of {n} legs")));
        }
        let traced: Vec<usize> = (0..n).filter(|l| !keep.contains(l)).collect();
        let kd = 1 << keep.len();
        let mut out = Self::zero(keep.len());
        for kr in 0..kd {
            for kc in 0..kd {
                let mut acc = T::zero();
                for t in 0..(1usize << traced.len()) {
                    let build = |kidx: usize| {
                        let mut idx = 0usize;
                        for (p, &l) in keep.iter().enumerate() {
                            idx |= bit(kidx, p, keep.len()) << (n - 1 - l);
                        }
                        for (p, &l) in traced.iter().enumerate() {
                            idx |= bit(t, p, traced.len()) << (n - 1 - l);
                        }
                        idx
                    };
                    acc = acc + self.get(build(kr), build(kc)).clone();
                }
                out.set(kr, kc, acc);
            }
        }
        Ok(out)
    }

    pub fn to_spin(&self) -> Result<SpinMat<T>> {
        if self.legs != 1 {
            return Err(Error::Dimension(format!("expected 1 leg, got {}", self.legs)));
        }
        Ok(SpinMat::new(
            self.get(0, 0).clone(),
            self.get(0, 1).clone(),
            self.get(1, 0).clone(),
            self.get(1, 1).clone(),
        ))
    }

    pub fn from_spin(m: &SpinMat<T>) -> Self {
        TensorOp { legs: 1, data: m.entries().cloned().collect() }
    }
}

impl TensorOp<f64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `a ⊗ b` with row index `2i + k`, column index `2j + l`.
pub fn kron<T: Ring>(a: &SpinMat<T>, b: &SpinMat<T>) -> TensorOp<T> {
    let mut t = TensorOp::zero(2);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    t.set(2 * i + k, 2 * j + l, a.e[i][j].clone() * b.e[k][l].clone());
                }
            }
        }
    }
    t
}

/// `A₁ = A ⊗ 1`.
pub fn on1<T: Ring>(a: &SpinMat<T>) -> TensorOp<T> {
    kron(a, &SpinMat::identity())
}

/// `A₂ = 1 ⊗ A`.
pub fn on2<T: Ring>(a: &SpinMat<T>) -> TensorOp<T> {
    kron(&SpinMat::identity(), a)
}

/// Trace over leg 2 of a two-site operator.
pub fn partial_trace_2<T: Ring>(t: &TensorOp<T>) -> Result<SpinMat<T>> {
    if t.legs() != 2 {
        return Err(Error::Dimension(format!("partial_trace_2 needs 2 legs, got {}", t.legs())));
    }
    t.partial_trace(&[0])?.to_spin()
}

impl<T: Ring> Add for TensorOp<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.legs, o.legs, "tensor leg mismatch");
        TensorOp {
            legs: self.legs,
            data: self.data.into_iter().zip(o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Ring> Sub for TensorOp<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Ring> Neg for TensorOp<T> {
    type Output = Self;
    fn neg(self) -> Self {
        TensorOp { legs: self.legs, data: self.data.into_iter().map(|a| -a).collect() }
    }
}

impl<T: Ring> Mul for TensorOp<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.matmul(&o).expect("tensor leg mismatch")
    }
}
