//! Stable ribbon graphs, orientations, contraction, canonical forms and
//! enumeration.
//!
//! A graph stores its σ-cycles explicitly; each cycle belongs to a vertex and
//! every vertex carries a genus `γ_v`. Ordinary ribbon graphs are the case
//! of one cycle per vertex and `γ = 0`.
//!
//! An orientation is an ordering of the items of the graph (all flags and
//! one item per cycle), up to even permutations. The block of a cycle
//! `c = (f₁ … f_r)` is `[c, f₁, …, f_r]`; rotating it costs `(−1)^{r−1}`, so
//! only even cycles carry a chosen flag and only their order matters.

mod canon;
mod contract;
mod enumerate;
pub mod fixtures;
mod json;

pub use canon::{canonical_form, CanonCode, CanonicalForm, OrientedClass};
pub use contract::{boundary_labeled, contract_edge, differential, Contraction, EdgeKind};
pub use enumerate::{enumerate, enumerate_by_edges, EnumOptions, GraphClass};
pub use json::{graph_from_json, graph_to_json, orientation_from_json, orientation_to_json};

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("flag {0} is not an edge endpoint")]
    NotAnEdge(usize),
    #[error("cannot contract a loop in the ordinary complex")]
    LoopInOrdinary,
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("invalid orientation: {0}")]
    BadOrientation(String),
    #[error("malformed graph json: {0}")]
    Json(String),
}

/// Orientation item: a flag or a σ-cycle (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Cycle(usize),
    Flag(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableGraph {
    /// σ-cycles, flags in cyclic order.
    pub cycles: Vec<Vec<usize>>,
    pub cycle_vertex: Vec<usize>,
    pub gamma: Vec<u32>,
    pub eta: Vec<usize>,
}

/// Orientation data: a chosen flag in every even cycle and an
/// order of the even cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub chosen: BTreeMap<usize, usize>,
    pub order: Vec<usize>,
}

/// Sign of the permutation carrying `seq` to `target`.
pub fn perm_sign<T: Ord + Clone>(seq: &[T], target: &[T]) -> i32 {
    assert_eq!(seq.len(), target.len());
    let pos: BTreeMap<&T, usize> = target.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let p: Vec<usize> = seq.iter().map(|x| pos[x]).collect();
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub involution: bool,
    pub partition: bool,
    pub stable: bool,
    pub ordinary: bool,
    pub ordinary_valence: bool,
    pub messages: Vec<String>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.involution && self.partition && self.stable
    }
}

impl StableGraph {
    /// Builds and checks flags, involution and partition. Stability is
    /// reported by [`StableGraph::validate`].
    pub fn new(cycles: Vec<Vec<usize>>, cycle_vertex: Vec<usize>, gamma: Vec<u32>, eta: Vec<usize>) -> Result<Self, GraphError> {
        let g = StableGraph { cycles, cycle_vertex, gamma, eta };
        let r = g.validate();
        if !(r.involution && r.partition) {
            return Err(GraphError::Invalid(r.messages.join("; ")));
        }
        Ok(g)
    }

    /// One vertex per cycle, `γ = 0`.
    pub fn ordinary(cycles: Vec<Vec<usize>>, eta: Vec<usize>) -> Result<Self, GraphError> {
        let n = cycles.len();
        Self::new(cycles, (0..n).collect(), vec![0; n], eta)
    }

    /// Builds `η` from a list of edges.
    pub fn eta_from_edges(nflags: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        let mut eta: Vec<usize> = (0..nflags).collect();
        for &(a, b) in edges {
            eta[a] = b;
            eta[b] = a;
        }
        eta
    }

    pub fn num_flags(&self) -> usize {
        self.eta.len()
    }

    pub fn num_edges(&self) -> usize {
        self.eta.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.gamma.len()
    }

    /// Edges as `(f, f')` with `f < f'`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_flags()).filter(|&f| f < self.eta[f]).map(|f| (f, self.eta[f])).collect()
    }

    /// `(cycle, position)` of every flag.
    pub fn flag_positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, 0); self.num_flags()];
        for (c, cyc) in self.cycles.iter().enumerate() {
            for (i, &f) in cyc.iter().enumerate() {
                pos[f] = (c, i);
            }
        }
        pos
    }

    pub fn sigma(&self) -> Vec<usize> {
        let mut s = vec![0; self.num_flags()];
        for cyc in &self.cycles {
            for (i, &f) in cyc.iter().enumerate() {
                s[f] = cyc[(i + 1) % cyc.len()];
            }
        }
        s
    }

    pub fn vertex_of_flag(&self, f: usize) -> usize {
        self.cycle_vertex[self.flag_positions()[f].0]
    }

    pub fn cycles_of_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.cycles.len()).filter(|&c| self.cycle_vertex[c] == v).collect()
    }

    pub fn vertex_flags(&self, v: usize) -> usize {
        self.cycles_of_vertex(v).iter().map(|&c| self.cycles[c].len()).sum()
    }

    pub fn is_ordinary(&self) -> bool {
        self.gamma.iter().all(|&g| g == 0) && (0..self.num_vertices()).all(|v| self.cycles_of_vertex(v).len() == 1)
    }

    pub fn is_loop(&self, f: usize) -> bool {
        self.vertex_of_flag(f) == self.vertex_of_flag(self.eta[f])
    }

    /// `2(2γ + b − 2) + |Flag(v)|`.
    pub fn stability(&self, v: usize) -> i64 {
        let b = self.cycles_of_vertex(v).len() as i64;
        2 * (2 * self.gamma[v] as i64 + b - 2) + self.vertex_flags(v) as i64
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let n = self.num_flags();
        r.involution = self.eta.iter().enumerate().all(|(f, &e)| e < n && e != f && self.eta[e] == f);
        if !r.involution {
            r.messages.push("eta is not a fixed-point-free involution".into());
        }
        let mut seen = BTreeSet::new();
        let mut ok = self.cycle_vertex.len() == self.cycles.len();
        for cyc in &self.cycles {
            if cyc.is_empty() {
                ok = false;
            }
            for &f in cyc {
                if f >= n || !seen.insert(f) {
                    ok = false;
                }
            }
        }
        ok &= seen.len() == n;
        ok &= self.cycle_vertex.iter().all(|&v| v < self.num_vertices());
        ok &= (0..self.num_vertices()).all(|v| self.cycle_vertex.contains(&v));
        r.partition = ok;
        if !ok {
            r.messages.push("cycles do not partition the flags into nonempty cycles of existing vertices".into());
        }
        r.stable = r.partition && (0..self.num_vertices()).all(|v| self.stability(v) > 0);
        if r.partition && !r.stable {
            r.messages.push("stability condition violated".into());
        }
        r.ordinary = r.partition && self.is_ordinary();
        r.ordinary_valence = r.ordinary && self.cycles.iter().all(|c| c.len() >= 3);
        r
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        if nv == 0 {
            return true;
        }
        let pos = self.flag_positions();
        let mut adj = vec![Vec::new(); nv];
        for f in 0..self.num_flags() {
            let (a, b) = (self.cycle_vertex[pos[f].0], self.cycle_vertex[pos[self.eta[f]].0]);
            adj[a].push(b);
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Orbits of `φ = σ∘η`, each starting at its smallest flag.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let sigma = self.sigma();
        let mut seen = vec![false; self.num_flags()];
        let mut out = Vec::new();
        for f in 0..self.num_flags() {
            if seen[f] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = f;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = sigma[self.eta[x]];
            }
            out.push(orbit);
        }
        out
    }

    /// Face index of every flag.
    pub fn face_of_flag(&self) -> Vec<usize> {
        let mut r = vec![0; self.num_flags()];
        for (i, face) in self.faces().iter().enumerate() {
            for &f in face {
                r[f] = i;
            }
        }
        r
    }

    /// `Σ_v (2 − 2γ_v − b_v) − |Edge|`.
    pub fn euler_characteristic(&self) -> i64 {
        let per_vertex: i64 =
            (0..self.num_vertices()).map(|v| 2 - 2 * self.gamma[v] as i64 - self.cycles_of_vertex(v).len() as i64).sum();
        per_vertex - self.num_edges() as i64
    }

    /// `(g, n)` with `n` the number of faces and `2 − 2g − n = χ`.
    pub fn surface_type(&self) -> Result<(u32, u32), GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.faces().len() as i64;
        let twice_g = 2 - self.euler_characteristic() - n;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(GraphError::Invalid(format!("inconsistent genus 2g = {twice_g}")));
        }
        Ok(((twice_g / 2) as u32, n as u32))
    }

    pub fn default_orientation(&self) -> Orientation {
        let mut chosen = BTreeMap::new();
        let mut order = Vec::new();
        for (c, cyc) in self.cycles.iter().enumerate() {
            if cyc.len() % 2 == 0 {
                chosen.insert(c, cyc[0]);
                order.push(c);
            }
        }
        Orientation { chosen, order }
    }

    fn block(&self, c: usize, start: usize) -> Vec<Item> {
        let cyc = &self.cycles[c];
        let k = cyc.iter().position(|&f| f == start).expect("flag in cycle");
        std::iter::once(Item::Cycle(c)).chain((0..cyc.len()).map(|i| Item::Flag(cyc[(k + i) % cyc.len()]))).collect()
    }

    pub fn check_orientation(&self, or: &Orientation) -> Result<(), GraphError> {
        let even: BTreeSet<usize> = (0..self.cycles.len()).filter(|&c| self.cycles[c].len() % 2 == 0).collect();
        let order: BTreeSet<usize> = or.order.iter().copied().collect();
        if order != even || or.order.len() != even.len() {
            return Err(GraphError::BadOrientation("order must list every even cycle once".into()));
        }
        for c in &even {
            match or.chosen.get(c) {
                Some(f) if self.cycles[*c].contains(f) => {}
                _ => return Err(GraphError::BadOrientation(format!("cycle {c} needs a chosen flag from it"))),
            }
        }
        Ok(())
    }

    /// Item sequence representing `or`: even cycles in order from their
    /// chosen flags, then odd cycles from their first stored flag.
    pub fn items(&self, or: &Orientation) -> Vec<Item> {
        let mut out = Vec::new();
        for &c in &or.order {
            out.extend(self.block(c, or.chosen[&c]));
        }
        for c in 0..self.cycles.len() {
            if self.cycles[c].len() % 2 == 1 {
                out.extend(self.block(c, self.cycles[c][0]));
            }
        }
        out
    }

    /// Reads an item sequence as `sign · or`.
    pub fn orientation_of_items(&self, items: &[Item]) -> (Orientation, i32) {
        let pos: BTreeMap<Item, usize> = items.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut even: Vec<usize> = (0..self.cycles.len()).filter(|&c| self.cycles[c].len() % 2 == 0).collect();
        even.sort_by_key(|&c| pos[&Item::Cycle(c)]);
        let chosen = even
            .iter()
            .map(|&c| (c, *self.cycles[c].iter().min_by_key(|&&f| pos[&Item::Flag(f)]).expect("nonempty")))
            .collect();
        let or = Orientation { chosen, order: even };
        let s = perm_sign(items, &self.items(&or));
        (or, s)
    }

    /// Relative sign `or₁ = s·or₂`.
    pub fn orientation_sign(&self, or1: &Orientation, or2: &Orientation) -> i32 {
        perm_sign(&self.items(or1), &self.items(or2))
    }

    /// All items in the default orientation.
    pub fn default_items(&self) -> Vec<Item> {
        self.items(&self.default_orientation())
    }
}
