//! The odd matrix algebra `Q(N)` with `Ĩ(E_ij) = 2/(λ_i+λ_j) ΠE_ij`:
//! closed-form decorated weights, the ψ-class identity and an independent
//! table of intersection numbers.

mod wk;

pub use wk::{double_factorial, WkTable};

use crate::graphs::{canonical_form, enumerate, EnumOptions, GraphError, StableGraph};
use crate::scalars::{int, LinearForm, RatFun, Rational};
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum PsiError {
    #[error("{0} is out of reach of the string and dilaton equations")]
    OracleIncomplete(String),
    #[error("degree {d} outside 0..={max}")]
    Degree { d: u32, max: i64 },
    #[error("decoration must send each of {faces} faces to one of {labels} labels")]
    Decoration { faces: usize, labels: usize },
    #[error("enumeration budget exceeded: {edges} edges, at most {max} allowed")]
    Budget { edges: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Largest edge count `psi_rhs` will enumerate.
pub const MAX_EDGES: usize = 6;

/// A stable graph with its faces labeled by `0..labels`.
#[derive(Clone, Debug)]
pub struct DecoratedGraph {
    pub base: StableGraph,
    /// Label of each face, indexed as in `base.faces()`.
    pub decoration: Vec<usize>,
}

impl DecoratedGraph {
    pub fn new(base: StableGraph, decoration: Vec<usize>, labels: usize) -> Result<Self, PsiError> {
        let faces = base.faces().len();
        if decoration.len() != faces || decoration.iter().any(|&l| l >= labels) {
            return Err(PsiError::Decoration { faces, labels });
        }
        Ok(DecoratedGraph { base, decoration })
    }

    /// Labels of the two faces along each edge `(f, f')`, `f < f'`.
    pub fn edge_labels(&self) -> Vec<(usize, usize)> {
        let face = self.base.face_of_flag();
        self.base.edges().iter().map(|&(f, fp)| (self.decoration[face[f]], self.decoration[face[fp]])).collect()
    }

    /// Automorphisms of the base graph that preserve the labels.
    pub fn aut_order(&self) -> usize {
        let faces = self.base.faces();
        canonical_form(&self.base)
            .automorphisms
            .iter()
            .filter(|a| preserves(&self.base, &faces, a, &self.decoration))
            .count()
    }
}

fn face_action(g: &StableGraph, faces: &[Vec<usize>], aut: &[usize]) -> Vec<usize> {
    let face = g.face_of_flag();
    faces.iter().map(|fc| face[aut[fc[0]]]).collect()
}

fn preserves(g: &StableGraph, faces: &[Vec<usize>], aut: &[usize], dec: &[usize]) -> bool {
    face_action(g, faces, aut).iter().enumerate().all(|(i, &j)| dec[i] == dec[j])
}

pub fn has_even_cycle(g: &StableGraph) -> bool {
    g.cycles.iter().any(|c| c.len() % 2 == 0)
}

/// `2^{−χ} / |Aut(Ĝ^dec)| · Π_e 1/(λ_{i(e)} + λ_{j(e)})`, and 0 when some
/// cycle has even length. `χ = 2 − 2g − n`.
pub fn closed_form_weight(dg: &DecoratedGraph, nvars: usize) -> Result<RatFun, PsiError> {
    if dg.decoration.iter().any(|&l| l >= nvars) {
        return Err(PsiError::Decoration { faces: dg.decoration.len(), labels: nvars });
    }
    if has_even_cycle(&dg.base) {
        return Ok(RatFun::zero(nvars));
    }
    let (g, n) = dg.base.surface_type()?;
    let minus_chi = 2 * g as i32 - 2 + n as i32;
    let two = int(2);
    let mut c = Rational::one() / int(dg.aut_order() as i64);
    c *= if minus_chi >= 0 { two.pow(minus_chi) } else { Rational::one() / two.pow(-minus_chi) };
    let mut w = RatFun::constant(nvars, c);
    for (i, j) in dg.edge_labels() {
        let (form, k) = LinearForm::sum(i, j);
        w = w.div_form(form).scale(&(Rational::one() / k));
    }
    Ok(w)
}

/// One representative per `Aut`-orbit of labelings of the faces of `g`
/// by `0..labels`; with `bijective`, only labelings that are bijections.
pub fn decorations(g: &StableGraph, labels: usize, bijective: bool) -> Vec<DecoratedGraph> {
    let faces = g.faces();
    let nf = faces.len();
    if bijective && nf != labels {
        return Vec::new();
    }
    let actions: Vec<Vec<usize>> =
        canonical_form(g).automorphisms.iter().map(|a| face_action(g, &faces, a)).collect();
    let mut out = Vec::new();
    let mut dec = vec![0; nf];
    loop {
        let ok = !bijective || {
            let mut seen = vec![false; labels];
            dec.iter().all(|&l| !std::mem::replace(&mut seen[l], true))
        };
        // keep the lexicographically smallest labeling of each orbit
        if ok
            && actions.iter().all(|act| {
                let mut moved = vec![0; nf];
                for (i, &j) in act.iter().enumerate() {
                    moved[j] = dec[i];
                }
                moved >= dec
            })
        {
            out.push(DecoratedGraph { base: g.clone(), decoration: dec.clone() });
        }
        let mut t = 0;
        while t < nf {
            dec[t] += 1;
            if dec[t] < labels {
                break;
            }
            dec[t] = 0;
            t += 1;
        }
        if t == nf {
            break;
        }
    }
    out
}

/// Sum of the closed-form weight over all labelings of the faces by
/// `0..labels`, one term per decorated class.
pub fn decorated_sum(g: &StableGraph, labels: usize) -> Result<RatFun, PsiError> {
    let mut total = RatFun::zero(labels);
    for dg in decorations(g, labels, false) {
        total = total.add(&closed_form_weight(&dg, labels)?);
    }
    Ok(total)
}

/// Top degree `3g − 3 + n`.
pub fn top_degree(g: u32, n: u32) -> i64 {
    3 * g as i64 - 3 + n as i64
}

#[derive(Clone, Debug)]
pub struct PsiTerm {
    pub graph: StableGraph,
    pub aut_order: usize,
    /// Sum over the decorated classes of this graph.
    pub value: RatFun,
}

#[derive(Clone, Debug)]
pub struct PsiSide {
    pub total: RatFun,
    pub terms: Vec<PsiTerm>,
}

/// Sum of closed-form weights over stable graphs of type `(g, n)` with
/// `2d + n` edges and odd cycles only, faces numbered `1..n`. Every such
/// graph carries its canonical orientation, so all terms enter with `+`.
pub fn psi_rhs(g: u32, n: u32, d: u32) -> Result<PsiSide, PsiError> {
    let max = top_degree(g, n);
    if d as i64 > max {
        return Err(PsiError::Degree { d, max });
    }
    let edges = 2 * d as usize + n as usize;
    if edges > MAX_EDGES {
        return Err(PsiError::Budget { edges, max: MAX_EDGES });
    }
    let opts = EnumOptions { odd_cycles_only: true, max_total_gamma: Some(g), ..Default::default() };
    let nvars = n as usize;
    let terms: Vec<PsiTerm> = enumerate(g, n, edges, &opts)
        .par_iter()
        .map(|c| {
            let mut value = RatFun::zero(nvars);
            for dg in decorations(c.graph(), nvars, true) {
                value = value.add(&closed_form_weight(&dg, nvars)?);
            }
            Ok(PsiTerm { graph: c.graph().clone(), aut_order: c.aut_order(), value })
        })
        .collect::<Result<_, PsiError>>()?;
    let total = terms.iter().fold(RatFun::zero(nvars), |acc, t| acc.add(&t.value));
    Ok(PsiSide { total, terms })
}

/// `Π_i (2d_i − 1)!! / λ_i^{2d_i+1}`.
fn monomial_weight(ds: &[u32]) -> RatFun {
    let nvars = ds.len();
    let mut w = RatFun::constant(nvars, Rational::one());
    for (i, &d) in ds.iter().enumerate() {
        w = w.mul(&RatFun::inv_form(nvars, LinearForm::Single(i), 2 * d + 1)).scale(&double_factorial(d));
    }
    w
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `Σ_{Σd_i = d} ⟨τ_{d₁} … τ_{d_n}⟩_g Π_i (2d_i − 1)!! / λ_i^{2d_i+1}`.
pub fn psi_lhs(table: &mut WkTable, g: u32, n: u32, d: u32) -> Result<RatFun, PsiError> {
    let mut total = RatFun::zero(n as usize);
    for ds in compositions(d, n as usize) {
        let v = table.get(g, &ds)?;
        if v != Rational::from_integer(0.into()) {
            total = total.add(&monomial_weight(&ds).scale(&v));
        }
    }
    Ok(total)
}

/// `t_k = −(2k − 1)!! Σ_i λ_i^{−(2k+1)}`.
pub fn t_k(k: u32, nvars: usize) -> RatFun {
    let mut t = RatFun::zero(nvars);
    for i in 0..nvars {
        t = t.add(&RatFun::inv_form(nvars, LinearForm::Single(i), 2 * k + 1));
    }
    t.scale(&-double_factorial(k))
}

/// The `(g, n)` part of `F̂(t_0, t_1, …)` at `t_k = t_k(Λ)`:
/// `(1/n!) Σ_{d₁…d_n} ⟨τ_{d₁} … τ_{d_n}⟩_g Π_i t_{d_i}`.
pub fn fhat_part(table: &mut WkTable, g: u32, n: u32, nvars: usize) -> Result<RatFun, PsiError> {
    let top = top_degree(g, n);
    if top < 0 {
        return Ok(RatFun::zero(nvars));
    }
    let mut total = RatFun::zero(nvars);
    for ds in compositions(top as u32, n as usize) {
        let v = table.get(g, &ds)?;
        if v == Rational::from_integer(0.into()) {
            continue;
        }
        let mut term = RatFun::constant(nvars, v);
        for &d in &ds {
            term = term.mul(&t_k(d, nvars));
        }
        total = total.add(&term);
    }
    let fact: i64 = (1..=n as i64).product();
    Ok(total.scale(&(Rational::one() / int(fact))))
}

#[derive(Clone, Debug)]
pub struct PsiCheck {
    pub g: u32,
    pub n: u32,
    pub d: u32,
    pub lhs: RatFun,
    pub rhs: PsiSide,
}

impl PsiCheck {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs.total
    }

    /// Report with both sides evaluated at `point` when given.
    pub fn to_json(&self, point: Option<&[Rational]>) -> Value {
        let side = |r: &RatFun| match point {
            Some(p) => r.eval(p).map(|v| crate::scalars::rational_to_json(&v)).unwrap_or(Value::Null),
            None => r.to_json(),
        };
        json!({
            "g": self.g,
            "n": self.n,
            "d": self.d,
            "lhs": side(&self.lhs),
            "rhs": side(&self.rhs.total),
            "match": self.matches(),
            "perGraph": self.rhs.terms.iter().map(|t| json!({
                "graph": crate::graphs::graph_to_json(&t.graph, None),
                "autOrder": t.aut_order,
                "value": side(&t.value),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Both sides of the ψ identity at top degree.
pub fn generating_function_check(table: &mut WkTable, g: u32, n: u32) -> Result<PsiCheck, PsiError> {
    let top = top_degree(g, n);
    if top < 0 {
        return Err(PsiError::Degree { d: 0, max: top });
    }
    let d = top as u32;
    let lhs = psi_lhs(table, g, n, d)?;
    let rhs = psi_rhs(g, n, d)?;
    Ok(PsiCheck { g, n, d, lhs, rhs })
}
