//! Z/2-graded algebras with an odd invariant scalar product.

pub mod linalg;
mod builders;
mod json;
mod tensor;

pub use builders::{make_e, make_qn, AlgebraWithOps};
pub use json::{algebra_from_json, algebra_to_json, operator_from_json, operator_to_json};
pub use tensor::{koszul_contract, GradedTensor, Variance};

use crate::scalars::{sign, Rational};
use linalg::{Mat, Vector};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("pairing is degenerate")]
    SingularPairing,
    #[error("algebra has no unit")]
    NoUnit,
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("lambda_{0} + lambda_{1} vanishes")]
    VanishingSum(usize, usize),
    #[error("expected {expected} spectral parameters, got {got}")]
    LambdaCount { expected: usize, got: usize },
    #[error("variance mismatch on contracted slots")]
    VarianceMismatch,
    #[error("malformed algebra json: {0}")]
    Json(String),
}

/// Structure constants are stored sparsely: `mult[i][j]` lists `(k, m_ij^k)`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    names: Vec<String>,
    parity: Vec<u8>,
    mult: Vec<Vec<Vec<(usize, Rational)>>>,
    g: Mat,
    ginv: Mat,
    one: Vector,
}

impl GradedAlgebra {
    pub fn new(
        names: Vec<String>,
        parity: Vec<u8>,
        mult: Vec<Vec<Vec<(usize, Rational)>>>,
        g: Mat,
    ) -> Result<Self, GradedError> {
        let d = names.len();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(GradedError::DuplicateName(n.clone()));
            }
        }
        let ginv = linalg::inverse(&g).ok_or(GradedError::SingularPairing)?;
        let mut a = GradedAlgebra { names, parity, mult, g, ginv, one: vec![Rational::zero(); d] };
        a.one = a.find_unit().ok_or(GradedError::NoUnit)?;
        Ok(a)
    }

    fn find_unit(&self) -> Option<Vector> {
        let d = self.dim();
        // x·u_j = u_j and u_j·x = u_j for every j, linear in x.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..d {
            let ej = self.basis(j);
            for k in 0..d {
                rows.push((0..d).map(|i| self.mul(&self.basis(i), &ej)[k].clone()).collect());
                rhs.push(ej[k].clone());
                rows.push((0..d).map(|i| self.mul(&ej, &self.basis(i))[k].clone()).collect());
                rhs.push(ej[k].clone());
            }
        }
        linalg::solve(&rows, &rhs)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.mult[i][j]
    }

    pub fn gram(&self) -> &Mat {
        &self.g
    }

    pub fn gram_inverse(&self) -> &Mat {
        &self.ginv
    }

    pub fn one(&self) -> &Vector {
        &self.one
    }

    pub fn basis(&self, i: usize) -> Vector {
        linalg::unit_vector(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        vec![Rational::zero(); self.dim()]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut r = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    r[*k] += &ab * c;
                }
            }
        }
        r
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() && !self.g[i][j].is_zero() {
                    s += a * &self.g[i][j] * b;
                }
            }
        }
        s
    }

    /// Parity of a homogeneous vector; `None` for zero or inhomogeneous input.
    pub fn parity_of(&self, x: &[Rational]) -> Option<u8> {
        let mut p = None;
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match p {
                None => p = Some(self.parity[i]),
                Some(q) if q != self.parity[i] => return None,
                _ => {}
            }
        }
        p
    }

    /// `e^μ` with `g(e^μ, e_ν) = δ^μ_ν`.
    pub fn dual(&self, mu: usize) -> Vector {
        self.ginv[mu].clone()
    }

    pub fn dual_parity(&self, mu: usize) -> u8 {
        1 - self.parity[mu]
    }

    /// Pair of dual bases `((e_μ), (e^μ))`.
    pub fn dual_bases(&self) -> (Vec<Vector>, Vec<Vector>) {
        ((0..self.dim()).map(|i| self.basis(i)).collect(), (0..self.dim()).map(|i| self.dual(i)).collect())
    }

    /// Left multiplication by `a` as an operator matrix.
    pub fn left_mult(&self, a: &[Rational]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        linalg::transpose(&cols)
    }

    pub fn right_mult(&self, a: &[Rational]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis(j), a)).collect();
        linalg::transpose(&cols)
    }

    pub fn supertrace(&self, m: &Mat) -> Rational {
        (0..self.dim()).map(|i| sign(self.parity[i] as usize) * &m[i][i]).sum()
    }

    /// `Σ_μ (−1)^{μ̄} g(u^μ, a·u_μ)`.
    pub fn trace_form(&self, a: &[Rational]) -> Rational {
        (0..self.dim())
            .map(|mu| sign(self.parity[mu] as usize) * self.pair(&self.dual(mu), &self.mul(a, &self.basis(mu))))
            .sum()
    }

    /// `Σ_μ (−1)^{ē^μ(ā+1)} e^μ a e_μ` for homogeneous `a` of parity `pa`.
    pub fn center_element(&self, a: &[Rational], pa: u8) -> Vector {
        let mut r = self.zero();
        for mu in 0..self.dim() {
            let s = sign((self.dual_parity(mu) * (pa + 1)) as usize);
            let t = self.mul(&self.mul(&self.dual(mu), a), &self.basis(mu));
            for (x, y) in r.iter_mut().zip(t) {
                *x += &s * y;
            }
        }
        r
    }

    /// `Σ (−1)^{ē^ξ ē^ζ} e^ξ e^ζ e_ξ e_ζ`, the element inserted per handle.
    pub fn handle_element(&self) -> Vector {
        let mut h = self.zero();
        for x in 0..self.dim() {
            for z in 0..self.dim() {
                let s = sign((self.dual_parity(x) * self.dual_parity(z)) as usize);
                let t = self.mul(&self.mul(&self.mul(&self.dual(x), &self.dual(z)), &self.basis(x)), &self.basis(z));
                for (a, b) in h.iter_mut().zip(t) {
                    *a += &s * b;
                }
            }
        }
        h
    }

    pub fn power(&self, x: &[Rational], k: u32) -> Vector {
        let mut r = self.one.clone();
        for _ in 0..k {
            r = self.mul(&r, x);
        }
        r
    }

    /// Matrix of `a ↦ xa − (−1)^{x̄ā} ax`.
    pub fn graded_commutator(&self, x: &[Rational], px: u8) -> Mat {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|j| {
                let s = sign((px * self.parity[j]) as usize);
                let l = self.mul(x, &self.basis(j));
                let r = self.mul(&self.basis(j), x);
                l.iter().zip(r).map(|(a, b)| a - &s * b).collect()
            })
            .collect();
        linalg::transpose(&cols)
    }
}

/// Pass/fail per named check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: BTreeMap<String, bool>,
    /// Reported but not part of `passed`.
    pub info: BTreeMap<String, bool>,
}

impl Report {
    fn set(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.get(name).or_else(|| self.info.get(name)).copied()
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"checks": self.checks, "info": self.info, "passed": self.passed()})
    }
}

pub fn check_algebra(a: &GradedAlgebra) -> Report {
    let d = a.dim();
    let mut r = Report::default();
    let mut parity_ok = true;
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.structure(i, j) {
                if !c.is_zero() && a.parity(*k) != (a.parity(i) + a.parity(j)) % 2 {
                    parity_ok = false;
                }
            }
        }
    }
    r.set("parity_additive", parity_ok);

    let mut assoc = true;
    'outer: for i in 0..d {
        for j in 0..d {
            let ij = a.mul(&a.basis(i), &a.basis(j));
            for k in 0..d {
                let jk = a.mul(&a.basis(j), &a.basis(k));
                if a.mul(&ij, &a.basis(k)) != a.mul(&a.basis(i), &jk) {
                    assoc = false;
                    break 'outer;
                }
            }
        }
    }
    r.set("associative", assoc);

    let g = a.gram();
    let mut odd = true;
    let mut sym = true;
    for i in 0..d {
        for j in 0..d {
            if !g[i][j].is_zero() && a.parity(i) == a.parity(j) {
                odd = false;
            }
            if g[i][j] != sign((a.parity(i) * a.parity(j)) as usize) * &g[j][i] {
                sym = false;
            }
        }
    }
    r.set("pairing_odd", odd);
    r.set("pairing_symmetric", sym);

    let mut inv = true;
    'inv: for i in 0..d {
        for j in 0..d {
            let ij = a.mul(&a.basis(i), &a.basis(j));
            for k in 0..d {
                let jk = a.mul(&a.basis(j), &a.basis(k));
                if a.pair(&ij, &a.basis(k)) != a.pair(&a.basis(i), &jk) {
                    inv = false;
                    break 'inv;
                }
            }
        }
    }
    r.set("pairing_invariant", inv);
    r.set("pairing_nondegenerate", linalg::rank(g) == d);
    r.set("trace_condition", (0..d).all(|i| a.trace_form(&a.basis(i)).is_zero()));
    r
}

pub fn check_derivation(a: &GradedAlgebra, op: &Mat) -> Report {
    let d = a.dim();
    let mut r = Report::default();
    let mut odd = true;
    for i in 0..d {
        for j in 0..d {
            if !op[i][j].is_zero() && a.parity(i) == a.parity(j) {
                odd = false;
            }
        }
    }
    r.set("odd", odd);
    let mut leibniz = true;
    'l: for i in 0..d {
        for j in 0..d {
            let (x, y) = (a.basis(i), a.basis(j));
            let lhs = linalg::apply(op, &a.mul(&x, &y));
            let t1 = a.mul(&linalg::apply(op, &x), &y);
            let t2 = a.mul(&x, &linalg::apply(op, &y));
            let s = sign(a.parity(i) as usize);
            let rhs: Vector = t1.iter().zip(&t2).map(|(p, q)| p + &s * q).collect();
            if lhs != rhs {
                leibniz = false;
                break 'l;
            }
        }
    }
    r.set("leibniz", leibniz);
    r.set("anti_self_adjoint", is_anti_self_adjoint(a.parities(), a.gram(), op));
    r.info.insert("squares_to_zero".into(), linalg::is_zero(&linalg::matmul(op, op)));
    r
}

/// `g(Ix,y) + (−1)^{x̄} g(x,Iy) = 0` on basis vectors.
pub fn is_anti_self_adjoint(parity: &[u8], g: &Mat, op: &Mat) -> bool {
    adjoint_defect(parity, g, op, 1)
}

/// `g(Ĩx,y) = (−1)^{x̄} g(x,Ĩy)` on basis vectors.
pub fn is_self_adjoint(parity: &[u8], g: &Mat, op: &Mat) -> bool {
    adjoint_defect(parity, g, op, 0)
}

fn adjoint_defect(parity: &[u8], g: &Mat, op: &Mat, extra: usize) -> bool {
    let d = parity.len();
    let gi = linalg::matmul(&linalg::transpose(op), g);
    let ig = linalg::matmul(g, op);
    (0..d).all(|x| (0..d).all(|y| gi[x][y] == sign(parity[x] as usize + extra) * &ig[x][y]))
}

/// Odd commutator `[P,Q] = PQ + QP` of two odd operators.
pub fn odd_commutator(p: &Mat, q: &Mat) -> Mat {
    linalg::add(&linalg::matmul(p, q), &linalg::matmul(q, p))
}
