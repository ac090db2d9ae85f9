use super::{Poly, Rational, ScalarError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `λ_i` or `λ_i + λ_j` (0-based indices, `i < j` for sums).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinearForm {
    Single(usize),
    Sum(usize, usize),
}

impl LinearForm {
    /// `λ_i + λ_j` normalized: the diagonal case becomes `2·λ_i`, returned
    /// as the form `λ_i` together with the scalar `2`.
    pub fn sum(i: usize, j: usize) -> (LinearForm, Rational) {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => (LinearForm::Single(i), super::int(2)),
            std::cmp::Ordering::Less => (LinearForm::Sum(i, j), Rational::one()),
            std::cmp::Ordering::Greater => (LinearForm::Sum(j, i), Rational::one()),
        }
    }

    fn pivot(&self) -> usize {
        match *self {
            LinearForm::Single(i) => i,
            LinearForm::Sum(i, _) => i,
        }
    }

    fn max_index(&self) -> usize {
        match *self {
            LinearForm::Single(i) => i,
            LinearForm::Sum(_, j) => j,
        }
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        match *self {
            LinearForm::Single(i) => Poly::var(nvars, i),
            LinearForm::Sum(i, j) => Poly::var(nvars, i).add(&Poly::var(nvars, j)),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        match *self {
            LinearForm::Single(i) => point[i].clone(),
            LinearForm::Sum(i, j) => &point[i] + &point[j],
        }
    }

    /// One-based index list, as used in reports.
    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            LinearForm::Single(i) => serde_json::json!([i + 1]),
            LinearForm::Sum(i, j) => serde_json::json!([i + 1, j + 1]),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearForm::Single(i) => write!(f, "l{}", i + 1),
            LinearForm::Sum(i, j) => write!(f, "(l{}+l{})", i + 1, j + 1),
        }
    }
}

/// Polynomial over a product of linear forms. Equality is semantic.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<LinearForm, u32>,
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        RatFun { num: Poly::zero(nvars), den: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RatFun { num: Poly::constant(nvars, c), den: BTreeMap::new() }
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun { num, den: BTreeMap::new() }
    }

    /// `1 / form^k`.
    pub fn inv_form(nvars: usize, form: LinearForm, k: u32) -> Self {
        assert!(form.max_index() < nvars, "linear form outside variable range");
        let mut den = BTreeMap::new();
        if k > 0 {
            den.insert(form, k);
        }
        RatFun { num: Poly::one(nvars), den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check(&self, o: &RatFun) -> Result<(), ScalarError> {
        if self.nvars() != o.nvars() {
            Err(ScalarError::VariableMismatch(self.nvars(), o.nvars()))
        } else {
            Ok(())
        }
    }

    fn lift(&self, den: &BTreeMap<LinearForm, u32>) -> Poly {
        let n = self.nvars();
        let mut p = self.num.clone();
        for (f, &m) in den {
            let have = self.den.get(f).copied().unwrap_or(0);
            if m > have {
                p = p.mul(&f.to_poly(n).pow(m - have));
            }
        }
        p
    }

    pub fn try_add(&self, o: &RatFun) -> Result<RatFun, ScalarError> {
        self.check(o)?;
        let mut den = self.den.clone();
        for (f, &m) in &o.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(m);
        }
        let num = self.lift(&den).add(&o.lift(&den));
        Ok(RatFun { num, den }.renormalized())
    }

    pub fn try_sub(&self, o: &RatFun) -> Result<RatFun, ScalarError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &RatFun) -> Result<RatFun, ScalarError> {
        self.check(o)?;
        let mut den = self.den.clone();
        for (f, &m) in &o.den {
            *den.entry(*f).or_insert(0) += m;
        }
        Ok(RatFun { num: self.num.mul(&o.num), den }.renormalized())
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        self.try_add(o).expect("variable count mismatch")
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.try_sub(o).expect("variable count mismatch")
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        self.try_mul(o).expect("variable count mismatch")
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.scale(&-Rational::one()), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.nvars());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div_rational(&self, c: &Rational) -> Result<RatFun, ScalarError> {
        if c.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.scale(&(Rational::one() / c)))
    }

    pub fn div_form(&self, form: LinearForm) -> RatFun {
        self.mul(&RatFun::inv_form(self.nvars(), form, 1))
    }

    /// Cancels every denominator factor dividing the numerator exactly.
    pub fn renormalized(mut self) -> RatFun {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let n = self.nvars();
        let forms: Vec<LinearForm> = self.den.keys().copied().collect();
        for f in forms {
            let lin = f.to_poly(n);
            while let Some(m) = self.den.get(&f).copied() {
                match self.num.div_exact_linear(f.pivot(), &lin) {
                    Some(q) => {
                        self.num = q;
                        if m == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f, m - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ScalarError> {
        if point.len() != self.nvars() {
            return Err(ScalarError::VariableMismatch(self.nvars(), point.len()));
        }
        let mut d = Rational::one();
        for (f, &m) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(ScalarError::Pole(f.to_string()));
            }
            for _ in 0..m {
                d *= &v;
            }
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_json(),
            "den": self.den.iter().map(|(f, m)| serde_json::json!([f.to_json(), m])).collect::<Vec<_>>(),
        })
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &RatFun) -> bool {
        match self.try_sub(o) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}
