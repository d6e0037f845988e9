use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Monomial, SparsePoly};

use super::ring::{q, Ring, Q};

const X: u32 = 0;
const Y: u32 = 1;

/// Laurent polynomial in two indeterminates with exact coefficients.
///
/// The first slot is the spectral parameter `z`, the second is whatever deformation
/// parameter is in play (`ħ`, `η` or `ε`).
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentBi(SparsePoly);

impl LaurentBi {
    pub fn x() -> Self {
        LaurentBi(SparsePoly::var(X))
    }

    pub fn y() -> Self {
        LaurentBi(SparsePoly::var(Y))
    }

    pub fn monomial(ex: i32, ey: i32, c: Q) -> Self {
        LaurentBi(SparsePoly::term(Monomial::from_pairs(&[(X, ex), (Y, ey)]), c))
    }

    pub fn constant(c: Q) -> Self {
        LaurentBi(SparsePoly::constant(c))
    }

    pub fn coeff(&self, ex: i32, ey: i32) -> Q {
        self.0.coeff_of(X, ex).coeff_of(Y, ey).constant_term()
    }

    /// Coefficient of `y^ey`, still a Laurent polynomial in `x`.
    pub fn coeff_y(&self, ey: i32) -> LaurentBi {
        LaurentBi(self.0.coeff_of(Y, ey))
    }

    /// Coefficient of `x^ex`, still a Laurent polynomial in `y`.
    pub fn coeff_x(&self, ex: i32) -> LaurentBi {
        LaurentBi(self.0.coeff_of(X, ex))
    }

    pub fn min_exp_y(&self) -> i32 {
        self.0.min_degree_in(Y)
    }

    pub fn max_exp_y(&self) -> i32 {
        self.0.degree_in(Y)
    }

    pub fn min_exp_x(&self) -> i32 {
        self.0.min_degree_in(X)
    }

    /// Substitute values for both slots; `None` if a pole is hit.
    pub fn eval(&self, x: &Q, y: &Q) -> Option<Q> {
        self.0
            .eval_with(|v| Some(if v == X { x.clone() } else { y.clone() }), |v| v.to_string())
            .ok()
    }

    /// Substitute `y = value` exactly, keeping `x` symbolic.
    pub fn at_y(&self, value: &Q) -> Option<LaurentBi> {
        self.0
            .substitute(Y, &SparsePoly::constant(value.clone()))
            .ok()
            .map(LaurentBi)
    }

    /// Exact value when `y` is set to zero, provided no negative powers of `y` occur.
    pub fn at_y_zero(&self) -> Option<LaurentBi> {
        if self.min_exp_y() < 0 {
            None
        } else {
            Some(self.coeff_y(0))
        }
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.0
    }
}

impl std::fmt::Debug for LaurentBi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = |v: u32| if v == X { "z".to_string() } else { "h".to_string() };
        write!(f, "{}", self.0.fmt_with(&names))
    }
}

impl Add for LaurentBi {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        LaurentBi(self.0 + rhs.0)
    }
}

impl Sub for LaurentBi {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        LaurentBi(self.0 - rhs.0)
    }
}

impl Mul for LaurentBi {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        LaurentBi(&self.0 * &rhs.0)
    }
}

impl Neg for LaurentBi {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentBi(-self.0)
    }
}

impl num_traits::Zero for LaurentBi {
    fn zero() -> Self {
        LaurentBi(SparsePoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl num_traits::One for LaurentBi {
    fn one() -> Self {
        LaurentBi::constant(q(1))
    }
}

impl Ring for LaurentBi {
    fn from_q(x: &Q) -> Self {
        LaurentBi::constant(x.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        self.0.try_inv().map(LaurentBi)
    }
}
