use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::ring::{q, Ring, Q};
use crate::error::{Error, Result};

/// Variable id. Names live in a registry owned by whoever created the variables.
pub type Var = u32;

/// Assignment of exact values to variables.
pub type Point = BTreeMap<Var, Q>;

/// Sorted `(var, exponent)` pairs with nonzero exponents. Exponents may be negative,
/// which gives Laurent monomials such as `u⁻¹` or `1/q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = SmallVec::new();
        if e != 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut acc = Monomial::one();
        for &(v, e) in pairs {
            acc = acc.mul(&Monomial::var(v, e));
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }
}

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` with zero coefficients dropped, so structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Q>,
}

impl SparsePoly {
    pub fn constant(c: Q) -> Self {
        let mut p = SparsePoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), q(1))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::term(Monomial::var(v, e), q(1))
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = SparsePoly::default();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| *v))
            .collect()
    }

    /// Largest total degree over terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return SparsePoly::default();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect(),
        }
    }

    pub fn diff(&self, v: Var) -> Self {
        let mut out = SparsePoly::default();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.add_term(m.mul(&Monomial::var(v, -1)), c * q(e as i64));
            }
        }
        out
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, e: i32) -> Self {
        let mut out = SparsePoly::default();
        for (m, c) in &self.terms {
            if m.exp(v) == e {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Replace `v` by `by`. Negative powers of `v` need `by` to be a single term.
    pub fn substitute(&self, v: Var, by: &SparsePoly) -> Result<Self> {
        let inv = if self.min_degree_in(v) < 0 {
            Some(by.try_inv().ok_or_else(|| {
                Error::Pole(format!("substituting a non-invertible value for var {v}"))
            })?)
        } else {
            None
        };
        let mut out = SparsePoly::default();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let base = SparsePoly::term(m.without(v), c.clone());
            let factor = if e >= 0 {
                by.pow(e as u32)
            } else {
                inv.as_ref().expect("checked above").pow((-e) as u32)
            };
            out += base * factor;
        }
        Ok(out)
    }

    /// Partial substitution of exact values; unassigned variables stay symbolic.
    pub fn partial_eval(&self, point: &Point) -> Result<Self> {
        let mut out = SparsePoly::default();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Monomial::one();
            for &(v, e) in m.pairs() {
                match point.get(&v) {
                    Some(x) => coef *= pow_q(x, e).ok_or_else(|| {
                        Error::Pole(format!("variable {v} assigned 0 with negative exponent"))
                    })?,
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            out.add_term(rest, coef);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &Point) -> Result<Q> {
        self.eval_with(|v| point.get(&v).cloned(), |v| format!("x{v}"))
    }

    /// Evaluate into any ring; `name` is only used for error messages.
    pub fn eval_with<T: Ring>(
        &self,
        value: impl Fn(Var) -> Option<T>,
        name: impl Fn(Var) -> String,
    ) -> Result<T> {
        let mut acc = T::zero();
        let mut cache: BTreeMap<Var, T> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = T::from_q(c);
            for &(v, e) in m.pairs() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| Error::Unassigned(name(v)))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                let p = if e >= 0 {
                    x.pow(e as u32)
                } else {
                    x.try_inv()
                        .ok_or_else(|| Error::Pole(format!("{} = 0 in denominator", name(v))))?
                        .pow((-e) as u32)
                };
                t = t * p;
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn fmt_with(&self, name: &dyn Fn(Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

fn pow_q(x: &Q, e: i32) -> Option<Q> {
    if e < 0 {
        if x.is_zero() {
            return None;
        }
        return Some(num_traits::pow(x.recip(), (-e) as usize));
    }
    Some(num_traits::pow(x.clone(), e as usize))
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|v| format!("x{v}")))
    }
}

impl AddAssign for SparsePoly {
    fn add_assign(&mut self, rhs: SparsePoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> AddAssign<&'a SparsePoly> for SparsePoly {
    fn add_assign(&mut self, rhs: &'a SparsePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += self;
            return r;
        }
        self += rhs;
        self
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert_with(Q::zero);
                *slot += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        SparsePoly { terms: acc }
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Zero for SparsePoly {
    fn zero() -> Self {
        SparsePoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SparsePoly {
    fn one() -> Self {
        SparsePoly::constant(q(1))
    }
}

impl Ring for SparsePoly {
    fn from_q(x: &Q) -> Self {
        SparsePoly::constant(x.clone())
    }
    /// Only single-term (Laurent monomial) values are invertible.
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(SparsePoly::term(m.inv(), c.recip()))
    }
    fn scale(&self, c: &Q) -> Self {
        self.scale_q(c)
    }
}
