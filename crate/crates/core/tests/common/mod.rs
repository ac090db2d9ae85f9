//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use oddgraph::graded::linalg::Mat;
use oddgraph::graded::GradedAlgebra;
use oddgraph::graphs::{enumerate_by_edges, EnumOptions, GraphClass, Item, StableGraph};
use oddgraph::scalars::Rational;
use num_traits::{One, Zero};

pub fn stable(max_gamma: u32) -> EnumOptions {
    EnumOptions { max_total_gamma: Some(max_gamma), ..Default::default() }
}

pub fn ordinary() -> EnumOptions {
    EnumOptions { ordinary: true, ..Default::default() }
}

pub fn classes(max_edges: usize, opts: &EnumOptions) -> Vec<GraphClass> {
    (1..=max_edges).flat_map(|e| enumerate_by_edges(e, opts)).collect()
}

fn sgn(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Sign of the permutation taking `seq` to `target`, by inversion count.
fn inversions<T: PartialEq>(seq: &[T], target: &[T]) -> bool {
    let p: Vec<usize> = seq.iter().map(|x| target.iter().position(|y| y == x).unwrap()).collect();
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Koszul sign of reordering symbols with the given parities.
fn koszul<T: PartialEq>(seq: &[(T, u8)], target: &[T]) -> bool {
    let pos: Vec<usize> = seq.iter().map(|(x, _)| target.iter().position(|y| y == x).unwrap()).collect();
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i].1 % 2 == 1 && seq[j].1 % 2 == 1 && pos[i] > pos[j] {
                odd = !odd;
            }
        }
    }
    odd
}

fn basis(a: &GradedAlgebra, i: usize) -> Vec<Rational> {
    (0..a.dim()).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

fn dual(a: &GradedAlgebra, mu: usize) -> Vec<Rational> {
    a.gram_inverse()[mu].clone()
}

fn pair(a: &GradedAlgebra, x: &[Rational], y: &[Rational]) -> Rational {
    let g = a.gram();
    let mut s = Rational::zero();
    for i in 0..x.len() {
        for j in 0..y.len() {
            s += &x[i] * &g[i][j] * &y[j];
        }
    }
    s
}

/// The element `Σ (−1)^{ē^ξ ē^ζ} e^ξ e^ζ e_ξ e_ζ`, summed term by term.
fn handle(a: &GradedAlgebra) -> Vec<Rational> {
    let d = a.dim();
    let mut h = vec![Rational::zero(); d];
    for x in 0..d {
        for z in 0..d {
            let s = sgn((1 - a.parity(x)) * (1 - a.parity(z)) == 1);
            let t = a.mul(&a.mul(&a.mul(&dual(a, x), &dual(a, z)), &basis(a, x)), &basis(a, z));
            for k in 0..d {
                h[k] += &s * &t[k];
            }
        }
    }
    h
}

#[derive(Clone, Copy, PartialEq)]
enum Sym {
    Input(usize),
    Up(usize),
    Down(usize),
}

/// The vertex tensor on basis inputs, built literally: the inputs of each
/// cycle are interleaved with `e^μ … e_μ` pairs and the Koszul sign of
/// that interleaving is tracked symbol by symbol.
pub fn alpha_naive(a: &GradedAlgebra, blocks: &[Vec<usize>], gamma: u32) -> Rational {
    let flat: Vec<usize> = blocks.iter().flatten().copied().collect();
    let p: Vec<u8> = flat.iter().map(|&i| a.parity(i)).collect();
    let mut pass = false;
    for i in 0..p.len() {
        for j in 0..i {
            if p[j] == 1 {
                pass = !pass;
            }
        }
    }
    let h = handle(a);
    let mut hg = a.one().clone();
    for _ in 0..gamma {
        hg = a.mul(&hg, &h);
    }
    let b = blocks.len();
    let d = a.dim();
    let mut total = Rational::zero();
    let mut mus = vec![0usize; b - 1];
    loop {
        let mut init: Vec<(Sym, u8)> = (0..flat.len()).map(|k| (Sym::Input(k), p[k])).collect();
        for (t, &m) in mus.iter().enumerate() {
            init.push((Sym::Up(t), 1 - a.parity(m)));
            init.push((Sym::Down(t), a.parity(m)));
        }
        let mut target = Vec::new();
        let mut k = 0;
        for t in 0..b {
            if t + 1 < b {
                target.push(Sym::Up(t));
            }
            for _ in &blocks[t] {
                target.push(Sym::Input(k));
                k += 1;
            }
            if t + 1 < b {
                target.push(Sym::Down(t));
            }
        }
        let ups: usize = mus.iter().map(|&m| 1 - a.parity(m) as usize).sum();
        let s = sgn(koszul(&init, &target) ^ (ups % 2 == 1));
        let mut prod = a.one().clone();
        for sym in &target {
            let v = match *sym {
                Sym::Input(i) => basis(a, flat[i]),
                Sym::Up(t) => dual(a, mus[t]),
                Sym::Down(t) => basis(a, mus[t]),
            };
            prod = a.mul(&prod, &v);
        }
        total += s * pair(a, &prod, &hg);
        // next multi-index
        let mut t = 0;
        while t < mus.len() {
            mus[t] += 1;
            if mus[t] < d {
                break;
            }
            mus[t] = 0;
            t += 1;
        }
        if t == mus.len() {
            break;
        }
    }
    sgn(pass) * total
}

/// Partition function by summing over every basis index on every flag.
///
/// The representative order of the orientation is rebuilt here: vertices by
/// their first cycle item, cycles by their items, each cycle rotated to its
/// earliest flag. The propagator of edge `(f, f')`, `f < f'`, carries the
/// inputs of `f` and `f'` in that order; the flag word of all edges is
/// brought into representative order with the Koszul sign of the shifted
/// parities.
pub fn z_naive(a: &GradedAlgebra, g: &StableGraph, items: &[Item], prop: &Mat) -> Rational {
    let at = |it: Item| items.iter().position(|&x| x == it).unwrap();
    let mut cyc: Vec<usize> = (0..g.cycles.len()).collect();
    cyc.sort_by_key(|&c| at(Item::Cycle(c)));
    let mut verts = Vec::new();
    for &c in &cyc {
        if !verts.contains(&g.cycle_vertex[c]) {
            verts.push(g.cycle_vertex[c]);
        }
    }
    let mut rep: Vec<(u32, Vec<Vec<usize>>)> = Vec::new();
    let mut rep_items = Vec::new();
    let mut nu = false;
    for &v in &verts {
        let mut blocks = Vec::new();
        for &c in cyc.iter().filter(|&&c| g.cycle_vertex[c] == v) {
            let cy = &g.cycles[c];
            let k = (0..cy.len()).min_by_key(|&t| at(Item::Flag(cy[t]))).unwrap();
            let r: Vec<usize> = cy[k..].iter().chain(&cy[..k]).copied().collect();
            rep_items.push(Item::Cycle(c));
            rep_items.extend(r.iter().map(|&f| Item::Flag(f)));
            if blocks.len() * (r.len() + 1) % 2 == 1 {
                nu = !nu;
            }
            blocks.push(r);
        }
        rep.push((g.gamma[v], blocks));
    }
    let outer = sgn(inversions(items, &rep_items) ^ nu);
    let order: Vec<usize> = rep.iter().flat_map(|(_, b)| b.iter().flatten().copied()).collect();
    let mut edges: Vec<(usize, usize)> =
        (0..g.num_flags()).filter(|&f| f < g.eta[f]).map(|f| (f, g.eta[f])).collect();
    edges.sort();
    let word: Vec<usize> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
    let n = g.num_flags();
    let d = a.dim();
    let mut total = Rational::zero();
    let mut assign = vec![0usize; n];
    loop {
        let mut coef = Rational::one();
        for &(f, fp) in &edges {
            coef *= &prop[assign[f]][assign[fp]];
        }
        if !coef.is_zero() {
            let seq: Vec<(usize, u8)> = word.iter().map(|&f| (f, (a.parity(assign[f]) + 1) % 2)).collect();
            let mut val = sgn(koszul(&seq, &order)) * coef;
            for (gamma, blocks) in &rep {
                let inputs: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&f| assign[f]).collect()).collect();
                val *= alpha_naive(a, &inputs, *gamma);
            }
            total += val;
        }
        let mut t = 0;
        while t < n {
            assign[t] += 1;
            if assign[t] < d {
                break;
            }
            assign[t] = 0;
            t += 1;
        }
        if t == n {
            break;
        }
    }
    outer * total
}

/// A fixed non-default ordering of the items: reversed.
pub fn reversed_items(g: &StableGraph) -> Vec<Item> {
    let mut it = g.default_items();
    it.reverse();
    it
}

/// Observed ratio between the `Q(N)` contraction and the sum of closed-form
/// weights over decorations, on graphs whose cycles all have odd length:
/// `(−1)^{Σ_c (|c|−1)/2} · 2^{|V| − Σγ_v} · |Aut|`.
pub fn decorated_ratio(g: &StableGraph, aut_order: usize) -> Rational {
    let half: usize = g.cycles.iter().map(|c| (c.len() - 1) / 2).sum();
    let exp = g.num_vertices() as i32 - g.gamma.iter().sum::<u32>() as i32;
    let two = Rational::from_integer(2.into());
    let mut r = Rational::from_integer((aut_order as i64).into()) * two.pow(exp);
    if half % 2 == 1 {
        r = -r;
    }
    r
}
