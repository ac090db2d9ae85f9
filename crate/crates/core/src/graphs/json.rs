use super::{GraphError, Orientation, StableGraph};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn err(s: impl Into<String>) -> GraphError {
    GraphError::Json(s.into())
}

fn as_usize(v: &Value) -> Result<usize, GraphError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(format!("expected a nonnegative integer, got {v}")))
}

fn list<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, GraphError> {
    v.as_array().ok_or_else(|| err(format!("{what} must be a list")))
}

/// `sigma` lists vertices, each a list of cycles; cycle indices follow that
/// order.
pub fn graph_to_json(g: &StableGraph, or: Option<&Orientation>) -> Value {
    let sigma: Vec<Value> = (0..g.num_vertices())
        .map(|v| Value::Array(g.cycles_of_vertex(v).iter().map(|&c| json!(g.cycles[c])).collect()))
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|&(a, b)| json!([a, b])).collect();
    let mut out = Map::new();
    out.insert("flags".into(), json!(g.num_flags()));
    out.insert("sigma".into(), Value::Array(sigma));
    out.insert("eta".into(), Value::Array(edges));
    out.insert("gamma".into(), json!(g.gamma));
    if let Some(or) = or {
        out.insert("orientation".into(), orientation_to_json(g, or));
    }
    Value::Object(out)
}

/// Cycle indices in the JSON follow vertex-grouped order, which is also the
/// order `graph_from_json` stores them in.
pub fn orientation_to_json(_g: &StableGraph, or: &Orientation) -> Value {
    let chosen: Map<String, Value> = or.chosen.iter().map(|(c, f)| (c.to_string(), json!(f))).collect();
    json!({"chosen": chosen, "order": or.order})
}

pub fn orientation_from_json(g: &StableGraph, v: &Value) -> Result<Orientation, GraphError> {
    let mut chosen = BTreeMap::new();
    if let Some(m) = v["chosen"].as_object() {
        for (k, f) in m {
            let c: usize = k.parse().map_err(|_| err(format!("bad cycle index {k:?}")))?;
            chosen.insert(c, as_usize(f)?);
        }
    }
    let order = match v.get("order") {
        Some(o) => list(o, "order")?.iter().map(as_usize).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let or = Orientation { chosen, order };
    g.check_orientation(&or)?;
    Ok(or)
}

/// Parses a graph; a missing orientation yields the default one.
pub fn graph_from_json(v: &Value) -> Result<(StableGraph, Orientation), GraphError> {
    let nflags = as_usize(&v["flags"])?;
    let mut cycles = Vec::new();
    let mut cycle_vertex = Vec::new();
    let verts = list(&v["sigma"], "sigma")?;
    for (vi, vert) in verts.iter().enumerate() {
        for cyc in list(vert, "vertex")? {
            cycles.push(list(cyc, "cycle")?.iter().map(as_usize).collect::<Result<Vec<_>, _>>()?);
            cycle_vertex.push(vi);
        }
    }
    let mut eta = vec![usize::MAX; nflags];
    for e in list(&v["eta"], "eta")? {
        let e = list(e, "edge")?;
        if e.len() != 2 {
            return Err(err("edges are pairs"));
        }
        let (a, b) = (as_usize(&e[0])?, as_usize(&e[1])?);
        if a >= nflags || b >= nflags || eta[a] != usize::MAX || eta[b] != usize::MAX {
            return Err(err(format!("bad edge [{a}, {b}]")));
        }
        eta[a] = b;
        eta[b] = a;
    }
    if eta.contains(&usize::MAX) {
        return Err(GraphError::Invalid("eta has a fixed point".into()));
    }
    let gamma = match v.get("gamma") {
        Some(g) => list(g, "gamma")?.iter().map(|x| as_usize(x).map(|y| y as u32)).collect::<Result<_, _>>()?,
        None => vec![0; verts.len()],
    };
    if gamma.len() != verts.len() {
        return Err(err("gamma must have one entry per vertex"));
    }
    let g = StableGraph::new(cycles, cycle_vertex, gamma, eta)?;
    let or = match v.get("orientation") {
        Some(o) => orientation_from_json(&g, o)?,
        None => g.default_orientation(),
    };
    Ok((g, or))
}
