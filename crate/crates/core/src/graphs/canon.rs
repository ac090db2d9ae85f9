use super::{perm_sign, Item, StableGraph};

/// Complete isomorphism invariant: the token stream of the canonical
/// breadth-first labeling (labels reached through `η`, interleaved with the
/// vertex rank, length and genus of each newly labeled cycle).
pub type CanonCode = Vec<u32>;

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonCode,
    /// The graph relabeled canonically.
    pub graph: StableGraph,
    /// Input flag → canonical flag, for the first minimal labeling.
    pub relabel: Vec<usize>,
    /// Input cycle → canonical cycle, for the same labeling.
    pub cycle_relabel: Vec<usize>,
    /// Automorphisms of the input graph as flag permutations.
    pub automorphisms: Vec<Vec<usize>>,
}

/// An oriented graph up to isomorphism: `sign` times the canonical graph
/// with its default orientation; `sign = 0` when some automorphism
/// reverses the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedClass {
    pub code: CanonCode,
    pub sign: i32,
}

const NONE: usize = usize::MAX;

#[derive(Clone)]
struct State {
    label: Vec<usize>,
    order: Vec<usize>,
    vert_rank: Vec<usize>,
    nverts: usize,
    /// Discovered cycles as (old cycle, vertex rank).
    cycles: Vec<(usize, usize)>,
    ptr: usize,
    code: CanonCode,
    /// The code is already known to be below the best one.
    below: bool,
}

struct Search<'a> {
    g: &'a StableGraph,
    pos: Vec<(usize, usize)>,
    /// Tokens at or above `mark` announce a newly labeled cycle.
    mark: u32,
    best: Option<CanonCode>,
    winners: Vec<State>,
}

impl<'a> Search<'a> {
    /// Appends a token; `false` when the labeling can no longer win.
    fn push(&self, st: &mut State, t: u32) -> bool {
        st.code.push(t);
        if st.below {
            return true;
        }
        let Some(b) = &self.best else { return true };
        match b.get(st.code.len() - 1) {
            None => false,
            Some(&x) if t > x => false,
            Some(&x) => {
                st.below = t < x;
                true
            }
        }
    }

    /// Labels cycle `c` from `start`, ranking its vertex if new. The code
    /// records the vertex rank, the length and, for a new vertex, `γ`.
    fn label_cycle(&self, st: &mut State, c: usize, start: usize) -> bool {
        let v = self.g.cycle_vertex[c];
        let fresh = st.vert_rank[v] == NONE;
        if fresh {
            st.vert_rank[v] = st.nverts;
            st.nverts += 1;
        }
        let cyc = &self.g.cycles[c];
        let k = cyc.iter().position(|&x| x == start).expect("start in cycle");
        st.cycles.push((c, st.vert_rank[v]));
        for i in 0..cyc.len() {
            let f = cyc[(k + i) % cyc.len()];
            st.label[f] = st.order.len();
            st.order.push(f);
        }
        self.push(st, self.mark + st.vert_rank[v] as u32)
            && self.push(st, cyc.len() as u32)
            && (!fresh || self.push(st, self.g.gamma[v]))
    }

    fn run(&mut self, mut st: State) {
        while st.ptr < st.order.len() {
            let f = st.order[st.ptr];
            st.ptr += 1;
            let nb = self.g.eta[f];
            let alive = if st.label[nb] == NONE {
                self.label_cycle(&mut st, self.pos[nb].0, nb)
            } else {
                let t = st.label[nb] as u32;
                self.push(&mut st, t)
            };
            if !alive {
                return;
            }
        }
        // Cycles only reachable through their vertex: branch over the
        // flags of the unlabeled cycles at the lowest-ranked such vertex.
        let pending = (0..self.g.cycles.len())
            .filter(|&c| st.label[self.g.cycles[c][0]] == NONE)
            .map(|c| st.vert_rank[self.g.cycle_vertex[c]])
            .filter(|&r| r != NONE)
            .min();
        if let Some(r) = pending {
            for c in 0..self.g.cycles.len() {
                if st.label[self.g.cycles[c][0]] == NONE && st.vert_rank[self.g.cycle_vertex[c]] == r {
                    for &f in &self.g.cycles[c] {
                        let mut next = st.clone();
                        if self.label_cycle(&mut next, c, f) {
                            self.run(next);
                        }
                    }
                }
            }
            return;
        }
        match &self.best {
            Some(b) if st.code > *b => {}
            Some(b) if st.code == *b => self.winners.push(st),
            _ => {
                self.best = Some(st.code.clone());
                self.winners = vec![st];
            }
        }
    }
}

/// Canonical labeling: breadth-first labelings from every start flag, each
/// cycle labeled from the flag it is first reached by through `η`. The
/// minimal code wins; an isomorphism is fixed by the image of one flag, so
/// the minimal labelings are in bijection with the automorphisms.
pub fn canonical_form(g: &StableGraph) -> CanonicalForm {
    let nf = g.num_flags();
    let mark = nf as u32 + 1;
    let mut search = Search { g, pos: g.flag_positions(), mark, best: None, winners: Vec::new() };
    let empty = State {
        label: vec![NONE; nf],
        order: Vec::with_capacity(nf),
        vert_rank: vec![NONE; g.num_vertices()],
        nverts: 0,
        cycles: Vec::new(),
        ptr: 0,
        code: Vec::with_capacity(2 * nf),
        below: false,
    };
    for f0 in 0..nf {
        let mut st = empty.clone();
        if search.label_cycle(&mut st, search.pos[f0].0, f0) {
            search.run(st);
        }
    }
    let code = search.best.clone().expect("graph has flags");
    let w0 = &search.winners[0];
    assert!(w0.order.len() == nf, "canonical form needs a connected graph");
    let mut cycle_relabel = vec![0; g.cycles.len()];
    let mut cycles = Vec::new();
    let mut cycle_vertex = Vec::new();
    let mut next = 0;
    for (i, &(c, r)) in w0.cycles.iter().enumerate() {
        cycle_relabel[c] = i;
        let len = g.cycles[c].len();
        cycles.push((next..next + len).collect());
        cycle_vertex.push(r);
        next += len;
    }
    let mut gamma = vec![0; w0.nverts];
    for (v, &r) in w0.vert_rank.iter().enumerate() {
        gamma[r] = g.gamma[v];
    }
    let eta = w0.order.iter().map(|&f| w0.label[g.eta[f]]).collect();
    let graph = StableGraph { cycles, cycle_vertex, gamma, eta };
    let automorphisms = search
        .winners
        .iter()
        .map(|w| (0..nf).map(|f| w.order[w0.label[f]]).collect())
        .collect();
    CanonicalForm { code, graph, relabel: w0.label.clone(), cycle_relabel, automorphisms }
}

fn map_items(items: &[Item], flags: &[usize], cycles: &[usize]) -> Vec<Item> {
    items
        .iter()
        .map(|it| match *it {
            Item::Flag(f) => Item::Flag(flags[f]),
            Item::Cycle(c) => Item::Cycle(cycles[c]),
        })
        .collect()
}

impl CanonicalForm {
    pub fn aut_order(&self) -> usize {
        self.automorphisms.len()
    }

    /// Cycle permutation induced by a flag automorphism of `g`.
    pub fn cycle_action(g: &StableGraph, aut: &[usize]) -> Vec<usize> {
        let pos = g.flag_positions();
        g.cycles.iter().map(|c| pos[aut[c[0]]].0).collect()
    }

    /// Sign of the action of `aut` on orientations of `g`.
    pub fn automorphism_sign(g: &StableGraph, aut: &[usize]) -> i32 {
        let items = g.default_items();
        let mapped = map_items(&items, aut, &Self::cycle_action(g, aut));
        perm_sign(&mapped, &items)
    }

    pub fn reverses_orientation(&self, g: &StableGraph) -> bool {
        self.automorphisms.iter().any(|a| Self::automorphism_sign(g, a) < 0)
    }

    /// The oriented class of `(g, items)`, where `self` is the canonical
    /// form of `g`.
    pub fn orient(&self, g: &StableGraph, items: &[Item]) -> OrientedClass {
        if self.reverses_orientation(g) {
            return OrientedClass { code: self.code.clone(), sign: 0 };
        }
        let mapped = map_items(items, &self.relabel, &self.cycle_relabel);
        let (or, s) = self.graph.orientation_of_items(&mapped);
        let sign = s * self.graph.orientation_sign(&or, &self.graph.default_orientation());
        OrientedClass { code: self.code.clone(), sign }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::fixtures;

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
        if xs.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..xs.len() {
            let mut rest = xs.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    fn brute_force_aut(g: &StableGraph) -> usize {
        // Flag bijections commuting with σ and η that respect vertices and γ.
        let n = g.num_flags();
        let sigma = g.sigma();
        let pos = g.flag_positions();
        let vert = |f: usize| g.cycle_vertex[pos[f].0];
        let mut count = 0;
        let idx: Vec<usize> = (0..n).collect();
        for p in permutations(&idx) {
            let ok = (0..n).all(|f| p[sigma[f]] == sigma[p[f]] && p[g.eta[f]] == g.eta[p[f]])
                && (0..n).all(|f| (0..n).all(|h| (vert(f) == vert(h)) == (vert(p[f]) == vert(p[h]))))
                && (0..n).all(|f| g.gamma[vert(f)] == g.gamma[vert(p[f])]);
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn theta_has_six_automorphisms() {
        // σ and η commuting bijections act freely on the six flags
        let g = fixtures::theta();
        assert_eq!(canonical_form(&g).aut_order(), 6);
        assert_eq!(brute_force_aut(&g), 6);
    }

    #[test]
    fn figure_eight_automorphisms() {
        let g = fixtures::figure_eight();
        let c = canonical_form(&g);
        assert_eq!(c.aut_order(), brute_force_aut(&g));
        let again = canonical_form(&c.graph);
        assert_eq!(again.code, c.code);
    }

    #[test]
    fn relabeling_invariance() {
        let g = fixtures::fig1();
        let c = canonical_form(&g);
        // relabel flags by a fixed permutation
        let n = g.num_flags();
        let p: Vec<usize> = (0..n).map(|f| (f * 3 + 1) % n).collect();
        let h = StableGraph {
            cycles: g.cycles.iter().map(|cy| cy.iter().map(|&f| p[f]).collect()).collect(),
            cycle_vertex: g.cycle_vertex.clone(),
            gamma: g.gamma.clone(),
            eta: {
                let mut e = vec![0; n];
                for f in 0..n {
                    e[p[f]] = p[g.eta[f]];
                }
                e
            },
        };
        let ch = canonical_form(&h);
        assert_eq!(ch.code, c.code);
        let items_g = g.default_items();
        let items_h: Vec<Item> = items_g
            .iter()
            .map(|it| match *it {
                Item::Flag(f) => Item::Flag(p[f]),
                c => c,
            })
            .collect();
        assert_eq!(c.orient(&g, &items_g), ch.orient(&h, &items_h));
        assert_eq!(c.aut_order(), brute_force_aut(&g));
    }
}
