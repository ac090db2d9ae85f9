//! Verification suites behind `verify <suite>`.

use crate::Outcome;
use anyhow::{anyhow, bail, Result};
use num_traits::Zero;
use oddgraph::graded::linalg::{self, Mat};
use oddgraph::graded::{make_e, AlgebraWithOps};
use oddgraph::graphs::{
    boundary_labeled, differential, enumerate_by_edges, fixtures, graph_to_json, EnumOptions, GraphClass, StableGraph,
};
use oddgraph::scalars::{int, rational_to_json};
use oddgraph::weights::{boundary_value, Theory};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const SUITES: [&str; 5] = ["cocycle", "counterexample", "loop-defect", "coboundary", "d-squared"];

pub fn stable(max_gamma: u32) -> EnumOptions {
    EnumOptions { max_total_gamma: Some(max_gamma), ..Default::default() }
}

pub fn ordinary() -> EnumOptions {
    EnumOptions { ordinary: true, ..Default::default() }
}

pub fn classes(max_edges: usize, opts: &EnumOptions) -> Vec<GraphClass> {
    (1..=max_edges).flat_map(|e| enumerate_by_edges(e, opts)).collect()
}

fn summary(suite: &str, checked: usize, violations: Vec<Value>, extra: Value) -> Outcome {
    let ok = violations.is_empty();
    let mut report = json!({
        "suite": suite,
        "checked": checked,
        "violations": violations,
        "passed": ok,
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut report, extra) {
        r.extend(e);
    }
    Outcome::new(report, ok)
}

/// `d(dG)` for every class, on the stable and on the ordinary complex.
pub fn d_squared(max_edges: usize, max_gamma: u32) -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (ordinary_complex, opts) in [(false, stable(max_gamma)), (true, ordinary())] {
        let cs = classes(max_edges, &opts);
        checked += cs.len();
        let bad: Vec<Value> = cs
            .par_iter()
            .filter_map(|c| {
                let g = c.graph();
                let mut total: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
                for (_, k) in boundary_labeled(g, &g.default_items(), ordinary_complex) {
                    for (code, v) in differential(&k.graph, &k.items, ordinary_complex) {
                        *total.entry(code).or_insert(0) += k.sign as i64 * v;
                    }
                }
                total.retain(|_, v| *v != 0);
                (!total.is_empty()).then(|| {
                    json!({"graph": graph_to_json(g, None), "ordinary": ordinary_complex, "terms": total.len()})
                })
            })
            .collect();
        violations.extend(bad);
    }
    summary("d-squared", checked, violations, json!({"maxEdges": max_edges, "maxGamma": max_gamma}))
}

fn per_graph<F>(cs: &[GraphClass], f: F) -> Result<Vec<Value>>
where
    F: Fn(&StableGraph) -> Result<Option<Value>> + Sync,
{
    let found: Vec<Option<Value>> = cs.par_iter().map(|c| f(c.graph())).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// `Ẑ(∂G) = 0` on every stable graph.
pub fn cocycle(ops: &AlgebraWithOps, max_edges: usize, max_gamma: u32) -> Result<Outcome> {
    let th = Theory::new(ops);
    if !th.engine.trace_condition() {
        bail!("the trace condition fails, so Ẑ is undefined for this algebra");
    }
    let cs = classes(max_edges, &stable(max_gamma));
    let violations = per_graph(&cs, |g| {
        let b = boundary_value(g, &g.default_items(), false, |h, it| th.zhat(h, it).expect("trace condition holds"));
        Ok((!b.is_zero()).then(|| json!({"graph": graph_to_json(g, None), "boundary": rational_to_json(&b)})))
    })?;
    Ok(summary("cocycle", cs.len(), violations, json!({"maxEdges": max_edges, "maxGamma": max_gamma})))
}

/// On the ordinary complex the regular boundary of `Z` equals `Z^loop`.
/// `plusForm` counts the graphs where `Σ_reg Z(G/e) + Z^loop` vanishes too.
pub fn loop_defect(ops: &AlgebraWithOps, max_edges: usize) -> Outcome {
    let th = Theory::new(ops);
    let cs = classes(max_edges, &ordinary());
    let rows: Vec<(bool, bool, Value)> = cs
        .par_iter()
        .map(|c| {
            let g = c.graph();
            let items = g.default_items();
            let reg = boundary_value(g, &items, true, |h, it| th.z(h, it));
            let zl = th.loop_defect(g, &items);
            let row = json!({
                "graph": graph_to_json(g, None),
                "regular": rational_to_json(&reg),
                "loop": rational_to_json(&zl),
            });
            (reg == zl, (&reg + &zl).is_zero(), row)
        })
        .collect();
    let plus = rows.iter().filter(|r| r.1).count();
    let violations = rows.into_iter().filter(|r| !r.0).map(|r| r.2).collect();
    summary("loop-defect", cs.len(), violations, json!({"maxEdges": max_edges, "plusForm": plus}))
}

/// The `fig1` fixture over `E`: `Z(∂G)` on the ordinary complex is nonzero and the
/// contraction with two 4-valent vertices weighs nothing.
pub fn counterexample() -> Outcome {
    let th = Theory::new(&make_e());
    let g = fixtures::fig1();
    let items = g.default_items();
    let b = boundary_value(&g, &items, true, |h, it| th.z(h, it));
    let mut contractions = Vec::new();
    let mut four_four_zero = true;
    for ((f, fp), k) in boundary_labeled(&g, &items, true) {
        let mut val: Vec<usize> = k.graph.cycles.iter().map(Vec::len).collect();
        val.sort_unstable();
        let z = th.z(&k.graph, &k.items);
        if val == [4, 4] && !z.is_zero() {
            four_four_zero = false;
        }
        contractions.push(json!({
            "edge": [f, fp],
            "valences": val,
            "sign": k.sign,
            "value": rational_to_json(&z),
        }));
    }
    let loop_value = th.loop_defect(&g, &items);
    let ok = !b.is_zero() && four_four_zero && b == loop_value;
    let report = json!({
        "suite": "counterexample",
        "graph": graph_to_json(&g, None),
        "boundary": rational_to_json(&b),
        "loop": rational_to_json(&loop_value),
        "contractions": contractions,
        "passed": ok,
    });
    Outcome::new(report, ok)
}

fn combine(basis: &[Mat], d: usize) -> Mat {
    let mut x = linalg::zeros(d, d);
    for (k, b) in basis.iter().enumerate() {
        x = linalg::add(&x, &linalg::scale(b, &int(k as i64 % 5 - 2)));
    }
    x
}

/// The perturbations tried by `coboundary`: `ĨI·0`, the first basis element
/// of anti-self-adjoint admissible `X`, and a combination of all of them.
pub fn deformations(th: &Theory) -> Vec<(String, Mat)> {
    let d = th.i.len();
    let zero = linalg::matmul(&linalg::matmul(&th.itilde, &th.i), &linalg::zeros(d, d));
    let basis = th.strict_x_basis();
    let mut out = vec![("ItildeI*0".to_string(), zero)];
    if let Some(b) = basis.first() {
        out.push(("basis0".to_string(), b.clone()));
        out.push(("combination".to_string(), combine(&basis, d)));
    }
    out
}

/// `Ẑ` with propagator deformed along `X` changes at first order by `W(∂G)`.
pub fn coboundary(ops: &AlgebraWithOps, max_edges: usize, max_gamma: u32) -> Result<Outcome> {
    let th = Theory::new(ops);
    let cs = classes(max_edges, &stable(max_gamma));
    let mut violations = Vec::new();
    let xs = deformations(&th);
    for (name, x) in &xs {
        let dp = th.deformed_prop(x).map_err(|e| anyhow!("{e}"))?;
        let bad = per_graph(&cs, |g| {
            let items = g.default_items();
            let lhs = th.engine.zhat(g, &items, &dp).map_err(|e| anyhow!("{e}"))?;
            let base = th.zhat(g, &items).map_err(|e| anyhow!("{e}"))?;
            let rhs = boundary_value(g, &items, false, |h, it| th.w(h, it, x).expect("admissible X"));
            Ok((lhs.re != base || lhs.eps != rhs).then(|| {
                json!({
                    "x": name,
                    "graph": graph_to_json(g, None),
                    "firstOrder": rational_to_json(&lhs.eps),
                    "dW": rational_to_json(&rhs),
                })
            }))
        })?;
        violations.extend(bad);
    }
    let names: Vec<&String> = xs.iter().map(|(n, _)| n).collect();
    Ok(summary(
        "coboundary",
        cs.len() * xs.len(),
        violations,
        json!({"maxEdges": max_edges, "maxGamma": max_gamma, "deformations": names}),
    ))
}
