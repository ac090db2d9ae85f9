use super::{canonical_form, perm_sign, CanonCode, GraphError, Item, StableGraph};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeKind {
    /// Joins two vertices; genera add.
    Regular,
    /// Loop inside one cycle; the cycle splits, `γ` unchanged.
    LoopSplit,
    /// Loop joining two cycles of one vertex; they merge and `γ` grows by one.
    LoopMerge,
}

/// `(graph, items)` taken with `sign` is the induced oriented graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    pub kind: EdgeKind,
    pub graph: StableGraph,
    pub items: Vec<Item>,
    pub sign: i32,
    /// Old flag → new flag (`None` for the contracted pair).
    pub flag_map: Vec<Option<usize>>,
}

fn rotated(cycle: &[usize], f: usize) -> Vec<usize> {
    let k = cycle.iter().position(|&x| x == f).expect("flag in cycle");
    cycle[k..].iter().chain(&cycle[..k]).copied().collect()
}

/// Contracts the edge `{f, η(f)}` of the oriented graph `(g, items)`.
/// Returns `None` when the contraction would leave an empty cycle: a loop
/// between neighbouring flags, or an edge joining two one-flag cycles.
pub fn contract_edge(g: &StableGraph, items: &[Item], f: usize, ordinary: bool) -> Result<Option<Contraction>, GraphError> {
    if f >= g.num_flags() {
        return Err(GraphError::NotAnEdge(f));
    }
    let fp = g.eta[f];
    let pos = g.flag_positions();
    let (c1, c2) = (pos[f].0, pos[fp].0);
    let (v1, v2) = (g.cycle_vertex[c1], g.cycle_vertex[c2]);
    if ordinary && v1 == v2 {
        return Err(GraphError::LoopInOrdinary);
    }
    let r1 = rotated(&g.cycles[c1], f);
    let flags = |xs: &[usize]| xs.iter().map(|&x| Item::Flag(x)).collect::<Vec<_>>();

    // New cycles as (old vertex, old flags); `remap` sends old cycle ids to new.
    let mut newc: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut remap = vec![usize::MAX; g.cycles.len()];
    let mut gamma = g.gamma.clone();
    let (kind, pre, head, kappa);
    if c1 == c2 {
        let k = r1.iter().position(|&x| x == fp).expect("loop flag");
        let a = r1[1..k].to_vec();
        let b = r1[k + 1..].to_vec();
        if a.is_empty() || b.is_empty() {
            return Ok(None);
        }
        kind = EdgeKind::LoopSplit;
        pre = [vec![Item::Flag(f), Item::Flag(fp), Item::Cycle(c1)], flags(&a), flags(&b)].concat();
        for (ci, cyc) in g.cycles.iter().enumerate() {
            remap[ci] = newc.len();
            newc.push((g.cycle_vertex[ci], if ci == c1 { a.clone() } else { cyc.clone() }));
        }
        let new_id = newc.len();
        newc.push((v1, b.clone()));
        head = [vec![Item::Cycle(remap[c1])], flags(&a), vec![Item::Cycle(new_id)], flags(&b)].concat();
        kappa = if (a.len() + 1) % 2 == 0 { 1 } else { -1 };
    } else {
        let r2 = rotated(&g.cycles[c2], fp);
        let merged: Vec<usize> = r1[1..].iter().chain(&r2[1..]).copied().collect();
        if merged.is_empty() {
            return Ok(None);
        }
        kind = if v1 == v2 { EdgeKind::LoopMerge } else { EdgeKind::Regular };
        pre = [
            vec![Item::Flag(f), Item::Flag(fp), Item::Cycle(c1), Item::Cycle(c2)],
            flags(&r1[1..]),
            flags(&r2[1..]),
        ]
        .concat();
        for (ci, cyc) in g.cycles.iter().enumerate() {
            if ci == c2 {
                continue;
            }
            let v = if g.cycle_vertex[ci] == v2 { v1 } else { g.cycle_vertex[ci] };
            remap[ci] = newc.len();
            newc.push((v, if ci == c1 { merged.clone() } else { cyc.clone() }));
        }
        if v1 == v2 {
            gamma[v1] += 1;
        } else {
            gamma[v1] += gamma[v2];
        }
        head = [vec![Item::Cycle(remap[c1])], flags(&merged)].concat();
        kappa = -1;
    }
    let rest: Vec<Item> = items.iter().filter(|x| !pre.contains(x)).copied().collect();
    let full: Vec<Item> = pre.iter().chain(&rest).copied().collect();
    let s = perm_sign(items, &full);

    let mut verts: Vec<usize> = newc.iter().map(|(v, _)| *v).collect();
    verts.sort_unstable();
    verts.dedup();
    let vmap = |v: usize| verts.binary_search(&v).expect("vertex kept");
    let mut flag_map = vec![None; g.num_flags()];
    let mut next = 0;
    for (x, slot) in flag_map.iter_mut().enumerate() {
        if x != f && x != fp {
            *slot = Some(next);
            next += 1;
        }
    }
    let fm = |x: usize| flag_map[x].expect("surviving flag");
    let cycles: Vec<Vec<usize>> = newc.iter().map(|(_, c)| c.iter().map(|&x| fm(x)).collect()).collect();
    let cycle_vertex: Vec<usize> = newc.iter().map(|(v, _)| vmap(*v)).collect();
    let gamma: Vec<u32> = verts.iter().map(|&v| gamma[v]).collect();
    let mut eta = vec![0; next];
    for x in 0..g.num_flags() {
        if let Some(nx) = flag_map[x] {
            eta[nx] = fm(g.eta[x]);
        }
    }
    let map_item = |it: &Item| match *it {
        Item::Flag(x) => Item::Flag(fm(x)),
        Item::Cycle(c) => Item::Cycle(remap[c]),
    };
    let new_items: Vec<Item> = head
        .iter()
        .map(|it| match *it {
            Item::Flag(x) => Item::Flag(fm(x)),
            c => c,
        })
        .chain(rest.iter().map(map_item))
        .collect();
    let graph = StableGraph { cycles, cycle_vertex, gamma, eta };
    Ok(Some(Contraction { kind, graph, items: new_items, sign: s * kappa, flag_map }))
}

/// All non-empty contractions of `(g, items)`, one per edge `(f, f')` with
/// `f < f'`. The ordinary complex skips loops.
pub fn boundary_labeled(g: &StableGraph, items: &[Item], ordinary: bool) -> Vec<((usize, usize), Contraction)> {
    let mut out = Vec::new();
    for (f, fp) in g.edges() {
        if ordinary && g.is_loop(f) {
            continue;
        }
        if let Some(c) = contract_edge(g, items, f, ordinary).expect("edge of g") {
            out.push(((f, fp), c));
        }
    }
    out
}

/// `d(g, items)` as a combination of oriented classes.
pub fn differential(g: &StableGraph, items: &[Item], ordinary: bool) -> BTreeMap<CanonCode, i64> {
    let mut out = BTreeMap::new();
    for (_, c) in boundary_labeled(g, items, ordinary) {
        let class = canonical_form(&c.graph).orient(&c.graph, &c.items);
        if class.sign != 0 {
            *out.entry(class.code).or_insert(0) += (c.sign * class.sign) as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}
