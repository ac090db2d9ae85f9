use super::{canonical_form, CanonCode, CanonicalForm, StableGraph};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Stability is always enforced. `ordinary` restricts to one cycle per
/// vertex, `γ = 0` and valence ≥ 3.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    pub ordinary: bool,
    pub odd_cycles_only: bool,
    /// Bound on `Σ γ_v`; `None` means no vertex genus at all.
    pub max_total_gamma: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct GraphClass {
    pub form: CanonicalForm,
    pub surface_type: (u32, u32),
    /// Some automorphism reverses the orientation, so the class vanishes.
    pub reverses: bool,
}

impl GraphClass {
    pub fn code(&self) -> &CanonCode {
        &self.form.code
    }

    pub fn graph(&self) -> &StableGraph {
        &self.form.graph
    }

    pub fn aut_order(&self) -> usize {
        self.form.aut_order()
    }
}

/// One vertex: `γ` and its cycle lengths in nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Shape {
    gamma: u32,
    lengths: Vec<usize>,
}

impl Shape {
    fn flags(&self) -> usize {
        self.lengths.iter().sum()
    }

    fn stable(&self) -> bool {
        2 * (2 * self.gamma as i64 + self.lengths.len() as i64 - 2) + self.flags() as i64 > 0
    }
}

fn partitions(m: usize, max: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=m.min(max)).rev() {
        for mut rest in partitions(m - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn shapes(nflags: usize, opts: &EnumOptions) -> Vec<Shape> {
    let mut out = Vec::new();
    let max_gamma = if opts.ordinary { 0 } else { opts.max_total_gamma.unwrap_or(0) };
    for m in 1..=nflags {
        for lengths in partitions(m, m) {
            if opts.ordinary && (lengths.len() != 1 || m < 3) {
                continue;
            }
            if opts.odd_cycles_only && lengths.iter().any(|l| l % 2 == 0) {
                continue;
            }
            for gamma in 0..=max_gamma {
                let s = Shape { gamma, lengths: lengths.clone() };
                if s.stable() {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Multisets of shapes (nondecreasing indices) with the given flag total and
/// genus budget.
fn vertex_sets(shapes: &[Shape], nflags: usize, gamma_budget: u32) -> Vec<Vec<usize>> {
    fn rec(shapes: &[Shape], from: usize, left: usize, gbudget: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..shapes.len() {
            let s = &shapes[i];
            if s.flags() <= left && s.gamma <= gbudget {
                cur.push(i);
                rec(shapes, i, left - s.flags(), gbudget - s.gamma, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(shapes, 0, nflags, gamma_budget, &mut Vec::new(), &mut out);
    out
}

fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(eta: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(f) = eta.iter().position(|&x| x == usize::MAX) else {
            out.push(eta.clone());
            return;
        };
        for h in f + 1..eta.len() {
            if eta[h] == usize::MAX {
                eta[f] = h;
                eta[h] = f;
                rec(eta, out);
                eta[f] = usize::MAX;
                eta[h] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// All classes with the given number of edges, of every surface type.
///
/// Generation lays the flags of each vertex multiset out consecutively, runs
/// over all perfect matchings and deduplicates by canonical code.
pub fn enumerate_by_edges(edges: usize, opts: &EnumOptions) -> Vec<GraphClass> {
    collect(edges, opts, None)
}

/// Classes of surface type `(g, n)` with the given number of edges. The
/// vertex genera add up to at most `g`, tighter than `opts.max_total_gamma`
/// when that is larger.
pub fn enumerate(g: u32, n: u32, edges: usize, opts: &EnumOptions) -> Vec<GraphClass> {
    let mut o = *opts;
    o.max_total_gamma = Some(o.max_total_gamma.map_or(g, |m| m.min(g)));
    collect(edges, &o, Some((g, n)))
}

fn collect(edges: usize, opts: &EnumOptions, target: Option<(u32, u32)>) -> Vec<GraphClass> {
    let nflags = 2 * edges;
    if nflags == 0 {
        return Vec::new();
    }
    let sh = shapes(nflags, opts);
    let budget = if opts.ordinary { 0 } else { opts.max_total_gamma.unwrap_or(0) };
    let mut sets = vertex_sets(&sh, nflags, budget);
    if let Some((g, n)) = target {
        let chi = 2 - 2 * g as i64 - n as i64;
        sets.retain(|set| {
            let per_vertex: i64 = set.iter().map(|&si| 2 - 2 * sh[si].gamma as i64 - sh[si].lengths.len() as i64).sum();
            per_vertex - edges as i64 == chi
        });
    }
    let matchings = perfect_matchings(nflags);
    let found: BTreeMap<CanonCode, GraphClass> = sets
        .par_iter()
        .map(|set| {
            let mut cycles = Vec::new();
            let mut cycle_vertex = Vec::new();
            let mut gamma = Vec::new();
            let mut next = 0;
            for (v, &si) in set.iter().enumerate() {
                gamma.push(sh[si].gamma);
                for &len in &sh[si].lengths {
                    cycles.push((next..next + len).collect::<Vec<_>>());
                    cycle_vertex.push(v);
                    next += len;
                }
            }
            let mut local = BTreeMap::new();
            for eta in &matchings {
                let graph = StableGraph { cycles: cycles.clone(), cycle_vertex: cycle_vertex.clone(), gamma: gamma.clone(), eta: eta.clone() };
                if !graph.is_connected() {
                    continue;
                }
                let Ok(ty) = graph.surface_type() else { continue };
                if target.is_some_and(|t| t != ty) {
                    continue;
                }
                let form = canonical_form(&graph);
                if local.contains_key(&form.code) {
                    continue;
                }
                let reverses = form.reverses_orientation(&graph);
                let graph_c = form.graph.clone();
                let form = CanonicalForm { graph: graph_c, ..form };
                local.insert(form.code.clone(), GraphClass { form, surface_type: ty, reverses });
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    found.into_values().map(recanonicalize).collect()
}

/// Rebases a class on its canonical graph so that `relabel` and the
/// automorphisms refer to `graph()` itself.
fn recanonicalize(c: GraphClass) -> GraphClass {
    let form = canonical_form(&c.form.graph);
    debug_assert_eq!(form.code, c.form.code);
    GraphClass { form, ..c }
}
