use super::{Rational, Scalar};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }

    pub fn real(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }

    pub fn epsilon() -> Self {
        Dual { re: S::zero(), eps: S::one() }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, eps: self.eps + o.eps }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, eps: self.eps - o.eps }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual { re: self.re * o.re, eps }
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, eps: -self.eps }
    }
}

impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::real(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::real(S::one())
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn from_rational(r: &Rational) -> Self {
        Dual::real(S::from_rational(r))
    }
    fn scale(&self, r: &Rational) -> Self {
        Dual { re: self.re.scale(r), eps: self.eps.scale(r) }
    }
}
