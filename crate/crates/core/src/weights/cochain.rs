use super::WeightsError;
use crate::graphs::{boundary_labeled, canonical_form, graph_to_json, CanonCode, GraphClass, Item, StableGraph};
use crate::scalars::{rational_to_json, Rational, Scalar};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct CochainEntry<S> {
    /// Canonical graph; the value refers to its default orientation.
    pub graph: StableGraph,
    pub surface_type: (u32, u32),
    pub aut_order: usize,
    pub value: S,
}

/// Values on oriented classes, keyed by canonical code.
#[derive(Clone, Debug, Default)]
pub struct Cochain<S> {
    pub entries: BTreeMap<CanonCode, CochainEntry<S>>,
}

impl<S: Scalar> Cochain<S> {
    /// Value on `(g, items)`, transported to the canonical orientation.
    pub fn value(&self, g: &StableGraph, items: &[Item]) -> Option<S> {
        let class = canonical_form(g).orient(g, items);
        let e = self.entries.get(&class.code)?;
        Some(match class.sign {
            0 => S::zero(),
            1 => e.value.clone(),
            _ => -e.value.clone(),
        })
    }
}

impl Cochain<Rational> {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .values()
                .map(|e| {
                    json!({
                        "graph": graph_to_json(&e.graph, None),
                        "type": [e.surface_type.0, e.surface_type.1],
                        "edges": e.graph.num_edges(),
                        "autOrder": e.aut_order,
                        "value": rational_to_json(&e.value),
                    })
                })
                .collect(),
        )
    }
}

/// Evaluates `f` on every class at its canonical orientation.
pub fn cochain<S, F>(classes: &[GraphClass], f: F) -> Cochain<S>
where
    S: Scalar,
    F: Fn(&StableGraph, &[Item]) -> S + Sync,
{
    let entries = classes
        .par_iter()
        .map(|c| {
            let g = c.graph();
            let value = f(g, &g.default_items());
            let entry =
                CochainEntry { graph: g.clone(), surface_type: c.surface_type, aut_order: c.aut_order(), value };
            (c.code().clone(), entry)
        })
        .collect();
    Cochain { entries }
}

/// `(δc)(g) = c(∂g) = Σ_e ± c(g/e)` with values looked up in `c`.
pub fn boundary_pairing<S: Scalar>(
    c: &Cochain<S>,
    g: &StableGraph,
    items: &[Item],
    ordinary: bool,
) -> Result<S, WeightsError> {
    let mut total = S::zero();
    for (_, k) in boundary_labeled(g, items, ordinary) {
        let v = c.value(&k.graph, &k.items).ok_or(WeightsError::Budget)?;
        total = if k.sign > 0 { total + v } else { total - v };
    }
    Ok(total)
}

/// `Σ_e ± f(g/e)` with `f` evaluated directly on each contraction.
pub fn boundary_value<S, F>(g: &StableGraph, items: &[Item], ordinary: bool, f: F) -> S
where
    S: Scalar,
    F: Fn(&StableGraph, &[Item]) -> S,
{
    let mut total = S::zero();
    for (_, k) in boundary_labeled(g, items, ordinary) {
        let v = f(&k.graph, &k.items);
        total = if k.sign > 0 { total + v } else { total - v };
    }
    total
}
