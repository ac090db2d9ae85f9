//! Vertex tensors, propagators and partition functions of (stable) ribbon
//! graphs, the loop defect of the ordinary complex and the cochain `W`.
//!
//! Inputs to a vertex are basis vectors `πu_i` of `ΠA`, of parity `ū_i + 1`.
//! A propagator is stored as a matrix `P[i][j]`: the coefficient of
//! `πu_i ⊗ πu_j` placed on the flags `(f, f')`, `f < f'`, of an edge.

mod cochain;
mod tensors;

pub use cochain::{boundary_pairing, boundary_value, cochain, Cochain, CochainEntry};
pub use tensors::{act_on_two_tensor, alpha_cyclic, derivation_defect, igi_holds};

use crate::graded::AlgebraWithOps;
use crate::graded::linalg::{self, Mat, Vector};
use crate::graded::{check_algebra, GradedAlgebra};
use crate::graphs::{perm_sign, Item, StableGraph};
use crate::scalars::{Dual, Rational, Scalar};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WeightsError {
    #[error("the algebra violates the trace condition; Ẑ is not defined")]
    TraceCondition,
    #[error("α_n needs n ≥ 2, got {0}")]
    TooFewInputs(usize),
    #[error("[I, X] is not anti-self-adjoint")]
    NotAntiSelfAdjoint,
    #[error("class of a contraction is outside the cochain's range")]
    Budget,
    #[error("dimension mismatch")]
    Dimension,
}

/// Nonzero entries of a two-tensor on `ΠA`.
#[derive(Clone, Debug, PartialEq)]
pub struct Propagator<S> {
    pub entries: Vec<(usize, usize, S)>,
}

impl<S: Scalar> Propagator<S> {
    pub fn from_mat(m: &Mat) -> Self {
        let mut entries = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, S::from_rational(c)));
                }
            }
        }
        Propagator { entries }
    }
}

impl Propagator<Dual<Rational>> {
    /// `re + ε·eps`.
    pub fn deformed(re: &Mat, eps: &Mat) -> Self {
        let mut entries = Vec::new();
        for i in 0..re.len() {
            for j in 0..re[i].len() {
                if !re[i][j].is_zero() || !eps[i][j].is_zero() {
                    entries.push((i, j, Dual::new(re[i][j].clone(), eps[i][j].clone())));
                }
            }
        }
        Propagator { entries }
    }
}

/// A vertex in representative order: `γ` and its cycles, each a list of
/// flags (or of basis indices once inputs are assigned).
pub type RepVertex = (u32, Vec<Vec<usize>>);

/// The representative ordering of an oriented graph. Vertices follow their
/// first cycle item, cycles follow their items, and each cycle is rotated
/// to its earliest flag. `sign` compares the items with that ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub vertices: Vec<RepVertex>,
    pub sign: i32,
}

pub fn rep_from_items(g: &StableGraph, items: &[Item]) -> Rep {
    let mut pos: HashMap<Item, usize> = HashMap::new();
    for (i, it) in items.iter().enumerate() {
        pos.insert(*it, i);
    }
    let mut cycles: Vec<usize> = (0..g.cycles.len()).collect();
    cycles.sort_by_key(|&c| pos[&Item::Cycle(c)]);
    let mut verts: Vec<usize> = Vec::new();
    for &c in &cycles {
        let v = g.cycle_vertex[c];
        if !verts.contains(&v) {
            verts.push(v);
        }
    }
    let mut vertices = Vec::new();
    let mut rep_items = Vec::new();
    for &v in &verts {
        let mut blocks = Vec::new();
        for &c in cycles.iter().filter(|&&c| g.cycle_vertex[c] == v) {
            let cyc = &g.cycles[c];
            let k = (0..cyc.len()).min_by_key(|&t| pos[&Item::Flag(cyc[t])]).expect("nonempty cycle");
            let rot: Vec<usize> = cyc[k..].iter().chain(&cyc[..k]).copied().collect();
            rep_items.push(Item::Cycle(c));
            rep_items.extend(rot.iter().map(|&f| Item::Flag(f)));
            blocks.push(rot);
        }
        vertices.push((g.gamma[v], blocks));
    }
    let sign = perm_sign(items, &rep_items);
    Rep { vertices, sign }
}

/// `Π_v (−1)^{Σ_i (i−1)(r_i+1)}` over the cycles `r_1, r_2, …` of each vertex.
fn nu(rep: &Rep) -> i32 {
    let mut e = 0;
    for (_, blocks) in &rep.vertices {
        for (i, b) in blocks.iter().enumerate() {
            e += i * (b.len() + 1);
        }
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of moving the entries of `par` (in order) to the positions `target`.
pub fn koszul_sign(par: &[u8], target: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..par.len() {
        if par[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..par.len() {
            if par[j] % 2 == 1 && target[i] > target[j] {
                s = -s;
            }
        }
    }
    s
}

/// Vertex tensors of one algebra, memoized per input assignment.
pub struct Engine {
    alg: GradedAlgebra,
    /// `C(u_k) = Σ_μ (−1)^{ē^μ(ū_k+1)} e^μ u_k e_μ`.
    c_cols: Vec<Vector>,
    handle: Vector,
    trace_ok: bool,
    memo: RwLock<HashMap<(u32, Vec<Vec<usize>>), Rational>>,
}

impl Engine {
    pub fn new(alg: &GradedAlgebra) -> Self {
        let c_cols = (0..alg.dim()).map(|k| alg.center_element(&alg.basis(k), alg.parity(k))).collect();
        let trace_ok = check_algebra(alg).get("trace_condition") == Some(true);
        Engine { alg: alg.clone(), c_cols, handle: alg.handle_element(), trace_ok, memo: RwLock::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn trace_condition(&self) -> bool {
        self.trace_ok
    }

    /// `α_{σ_v, γ_v}` on basis inputs `πu_i`, cycle by cycle, with the
    /// cycles in representative order:
    /// `(−1)^{Σ_i Σ_{j<i} p_j} (−1)^{Σ_i (i−1) ā_i} g(C(A_1) ⋯ C(A_{b−1}) A_b, H^γ)`
    /// where `A_i` is the product of the inputs of cycle `i`.
    pub fn alpha(&self, blocks: &[Vec<usize>], gamma: u32) -> Rational {
        let key = (gamma, blocks.to_vec());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = self.alpha_uncached(blocks, gamma);
        self.memo.write().expect("memo lock").insert(key, v.clone());
        v
    }

    fn alpha_uncached(&self, blocks: &[Vec<usize>], gamma: u32) -> Rational {
        let a = &self.alg;
        let mut e = 0usize;
        let mut seen = 0usize;
        for &i in blocks.iter().flatten() {
            e += seen;
            seen += a.parity(i) as usize;
        }
        let mut x = a.one().clone();
        let last = blocks.len() - 1;
        for (t, b) in blocks.iter().enumerate() {
            let mut prod = a.basis(b[0]);
            for &i in &b[1..] {
                prod = a.mul(&prod, &a.basis(i));
            }
            let pb: usize = b.iter().map(|&i| a.parity(i) as usize).sum();
            e += t * pb;
            if t < last {
                let mut c = a.zero();
                for (k, coef) in prod.iter().enumerate() {
                    if !coef.is_zero() {
                        for (ci, v) in c.iter_mut().zip(&self.c_cols[k]) {
                            *ci += coef * v;
                        }
                    }
                }
                prod = c;
            }
            x = a.mul(&x, &prod);
            if x.iter().all(Zero::is_zero) {
                return Rational::zero();
            }
        }
        let h = a.power(&self.handle, gamma);
        let v = a.pair(&x, &h);
        if e % 2 == 0 {
            v
        } else {
            -v
        }
    }

    /// The contraction of `⊗_v α_v` with one propagator per edge.
    ///
    /// `special` replaces the propagator on the edge through the given flag.
    /// With `x`, the operator acts on one flag at a time with the derivation
    /// sign `(−1)^{Σ_{j<i}(p_j+1)}` over the flags before it in
    /// representative order.
    pub fn z<S: Scalar>(
        &self,
        g: &StableGraph,
        items: &[Item],
        prop: &Propagator<S>,
        special: Option<(usize, &Propagator<S>)>,
        x: Option<&Mat>,
    ) -> S {
        let rep = rep_from_items(g, items);
        let order: Vec<usize> = rep.vertices.iter().flat_map(|(_, bl)| bl.iter().flatten().copied()).collect();
        let mut pos = vec![0; g.num_flags()];
        for (i, &f) in order.iter().enumerate() {
            pos[f] = i;
        }
        let mut edges = g.edges();
        let mut props: Vec<&Propagator<S>> = vec![prop; edges.len()];
        if let Some((f, sp)) = special {
            let e = (f.min(g.eta[f]), f.max(g.eta[f]));
            edges.retain(|&x| x != e);
            edges.insert(0, e);
            props[0] = sp;
        }
        let word: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let target: Vec<usize> = word.iter().map(|&f| pos[f]).collect();
        let mut ctx = Ctx { eng: self, rep: &rep, order: &order, word: &word, target: &target, x };
        let mut assign = vec![0; g.num_flags()];
        let total = ctx.sum(&edges, &props, 0, S::one(), &mut assign);
        let s = rep.sign * nu(&rep);
        if s > 0 {
            total
        } else {
            -total
        }
    }

    pub fn partition_function(&self, g: &StableGraph, items: &[Item], prop: &Propagator<Rational>) -> Rational {
        self.z(g, items, prop, None, None)
    }

    /// `Ẑ`, which needs the trace condition.
    pub fn zhat<S: Scalar>(&self, g: &StableGraph, items: &[Item], prop: &Propagator<S>) -> Result<S, WeightsError> {
        if !self.trace_ok {
            return Err(WeightsError::TraceCondition);
        }
        Ok(self.z(g, items, prop, None, None))
    }
}

struct Ctx<'a> {
    eng: &'a Engine,
    rep: &'a Rep,
    order: &'a [usize],
    word: &'a [usize],
    target: &'a [usize],
    x: Option<&'a Mat>,
}

impl<'a> Ctx<'a> {
    fn sum<S: Scalar>(&mut self, edges: &[(usize, usize)], props: &[&Propagator<S>], k: usize, coef: S, assign: &mut [usize]) -> S {
        if k == edges.len() {
            return self.leaf(coef, assign);
        }
        let (f, fp) = edges[k];
        let mut total = S::zero();
        for (i, j, c) in &props[k].entries {
            assign[f] = *i;
            assign[fp] = *j;
            total = total + self.sum(edges, props, k + 1, coef.clone() * c.clone(), assign);
        }
        total
    }

    fn vertex_product(&self, assign: &[usize]) -> Rational {
        let mut val = Rational::from_integer(1.into());
        for (gamma, blocks) in &self.rep.vertices {
            let inputs: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&f| assign[f]).collect()).collect();
            val *= self.eng.alpha(&inputs, *gamma);
            if val.is_zero() {
                break;
            }
        }
        val
    }

    fn leaf<S: Scalar>(&self, coef: S, assign: &mut [usize]) -> S {
        let a = &self.eng.alg;
        let par: Vec<u8> = self.word.iter().map(|&f| (a.parity(assign[f]) + 1) % 2).collect();
        let s = koszul_sign(&par, self.target);
        let Some(x) = self.x else {
            let v = self.vertex_product(assign);
            if v.is_zero() {
                return S::zero();
            }
            return coef.scale(&(v * Rational::from_integer(s.into())));
        };
        let mut total = Rational::zero();
        let mut before = 0usize;
        for &f0 in self.order {
            let old = assign[f0];
            let sx = if before % 2 == 0 { s } else { -s };
            for (k, row) in x.iter().enumerate() {
                if row[old].is_zero() {
                    continue;
                }
                assign[f0] = k;
                let v = self.vertex_product(assign);
                total += v * &row[old] * Rational::from_integer(sx.into());
            }
            assign[f0] = old;
            before += a.parity(old) as usize + 1;
        }
        coef.scale(&total)
    }
}

/// `g(Ax, y) + g(x, Ay) = 0` for an even operator `A`.
fn even_anti_self_adjoint(g: &Mat, op: &Mat) -> bool {
    let lhs = linalg::matmul(&linalg::transpose(op), g);
    let rhs = linalg::matmul(g, op);
    linalg::is_zero(&linalg::add(&lhs, &rhs))
}

/// An algebra with its operators and the propagators `T = g⁻¹` and
/// `P = g_Ĩ⁻¹ = Ĩ·T`.
pub struct Theory {
    pub engine: Engine,
    pub i: Mat,
    pub itilde: Mat,
    pub t: Mat,
    pub p: Mat,
}

impl Theory {
    pub fn new(ops: &AlgebraWithOps) -> Self {
        let t = ops.algebra.gram_inverse().clone();
        let p = linalg::matmul(&ops.itilde, &t);
        Theory { engine: Engine::new(&ops.algebra), i: ops.i.clone(), itilde: ops.itilde.clone(), t, p }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.engine.algebra()
    }

    pub fn prop(&self) -> Propagator<Rational> {
        Propagator::from_mat(&self.p)
    }

    pub fn z(&self, g: &StableGraph, items: &[Item]) -> Rational {
        self.engine.partition_function(g, items, &self.prop())
    }

    pub fn zhat(&self, g: &StableGraph, items: &[Item]) -> Result<Rational, WeightsError> {
        self.engine.zhat(g, items, &self.prop())
    }

    /// `Z` with `g⁻¹` in place of `g_Ĩ⁻¹` on the edge through `f`.
    pub fn z_inserted(&self, g: &StableGraph, items: &[Item], f: usize) -> Rational {
        let t = Propagator::from_mat(&self.t);
        self.engine.z(g, items, &self.prop(), Some((f, &t)), None)
    }

    /// `Z^loop = −Σ_{l ∈ Loop} ⟨… I(g_Ĩ⁻¹)_l …, ⊗_v α_v⟩`, with `I` acting
    /// as a derivation on the two-tensor of each loop.
    pub fn loop_defect(&self, g: &StableGraph, items: &[Item]) -> Rational {
        let ip = Propagator::from_mat(&act_on_two_tensor(self.algebra(), &self.i, &self.p));
        let prop = self.prop();
        let mut total = Rational::zero();
        for (f, _) in g.edges() {
            if g.is_loop(f) {
                total -= self.engine.z(g, items, &prop, Some((f, &ip)), None);
            }
        }
        total
    }

    /// `W_{Ĩ,X}`: the contraction with `L_X(⊗_v α_v)`.
    pub fn w(&self, g: &StableGraph, items: &[Item], x: &Mat) -> Result<Rational, WeightsError> {
        let ix = self.anticommutator(x)?;
        if !even_anti_self_adjoint(self.algebra().gram(), &ix) {
            return Err(WeightsError::NotAntiSelfAdjoint);
        }
        Ok(self.engine.z(g, items, &self.prop(), None, Some(x)))
    }

    /// `[I, X] = IX + XI` for odd `X`.
    pub fn anticommutator(&self, x: &Mat) -> Result<Mat, WeightsError> {
        if x.len() != self.i.len() {
            return Err(WeightsError::Dimension);
        }
        Ok(linalg::add(&linalg::matmul(&self.i, x), &linalg::matmul(x, &self.i)))
    }

    /// Basis of the odd operators `X` with `[I, X]` anti-self-adjoint.
    pub fn admissible_x_basis(&self) -> Vec<Mat> {
        self.x_basis(false)
    }

    /// Admissible `X` that are themselves anti-self-adjoint. Only for these
    /// does `L_X` commute with contracting an edge by `g⁻¹`.
    pub fn strict_x_basis(&self) -> Vec<Mat> {
        self.x_basis(true)
    }

    fn x_basis(&self, strict: bool) -> Vec<Mat> {
        let a = self.algebra();
        let d = a.dim();
        let one = Rational::from_integer(1.into());
        let odd: Vec<(usize, usize)> =
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|&(i, j)| a.parity(i) != a.parity(j)).collect();
        let cols: Vec<Vector> = odd
            .iter()
            .map(|&(i, j)| {
                let mut e = linalg::zeros(d, d);
                e[i][j] = one.clone();
                let m = linalg::add(&linalg::matmul(&self.i, &e), &linalg::matmul(&e, &self.i));
                let c = linalg::add(&linalg::matmul(&linalg::transpose(&m), a.gram()), &linalg::matmul(a.gram(), &m));
                let mut v: Vector = c.into_iter().flatten().collect();
                if strict {
                    let l = linalg::matmul(&linalg::transpose(&e), a.gram());
                    let r = linalg::matmul(a.gram(), &e);
                    for x in 0..d {
                        for y in 0..d {
                            let s = if a.parity(x) == 1 { -r[x][y].clone() } else { r[x][y].clone() };
                            v.push(&l[x][y] + s);
                        }
                    }
                }
                v
            })
            .collect();
        linalg::nullspace(&linalg::transpose(&cols), odd.len())
            .into_iter()
            .map(|v| {
                let mut x = linalg::zeros(d, d);
                for (c, &(i, j)) in v.into_iter().zip(&odd) {
                    x[i][j] = c;
                }
                x
            })
            .collect()
    }

    /// `δ = [Ĩ, [I, X]]`, the first-order change of `Ĩ`.
    pub fn deformation(&self, x: &Mat) -> Result<Mat, WeightsError> {
        let ix = self.anticommutator(x)?;
        Ok(linalg::sub(&linalg::matmul(&self.itilde, &ix), &linalg::matmul(&ix, &self.itilde)))
    }

    /// The propagator of `Ĩ + ε δ`.
    pub fn deformed_prop(&self, x: &Mat) -> Result<Propagator<Dual<Rational>>, WeightsError> {
        let d = self.deformation(x)?;
        Ok(Propagator::deformed(&self.p, &linalg::matmul(&d, &self.t)))
    }
}
