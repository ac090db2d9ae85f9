use super::{format_rational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vector; its length is the variable count.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The variable λ_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division by `x_k + rest` where `rest` has no `x_k`; returns the
    /// quotient when the remainder vanishes.
    pub(crate) fn div_exact_linear(&self, k: usize, lin: &Poly) -> Option<Poly> {
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars);
        loop {
            let lead = rem.terms.iter().filter(|(m, _)| m[k] > 0).max_by_key(|(m, _)| m[k]).map(|(m, c)| (m.clone(), c.clone()));
            let Some((mut m, c)) = lead else { break };
            m[k] -= 1;
            let mut q = Poly::zero(self.nvars);
            q.add_term(m, c);
            rem = rem.sub(&q.mul(lin));
            quo = quo.add(&q);
        }
        if rem.is_zero() {
            Some(quo)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(m, c)| serde_json::json!([format_rational(c), m])).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn arithmetic_and_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.eval(&[int(1), int(2)]), int(9));
        assert_eq!(sq.div_exact_linear(0, &s), Some(s.clone()));
        assert_eq!(x.div_exact_linear(0, &s), None);
        assert!(s.sub(&s).is_zero());
    }
}
