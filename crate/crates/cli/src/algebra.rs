use anyhow::{anyhow, bail, Context, Result};
use oddgraph::graded::linalg;
use oddgraph::graded::{
    algebra_from_json, check_algebra, check_derivation, is_self_adjoint, make_e, make_qn, odd_commutator,
    operator_from_json, AlgebraWithOps,
};
use oddgraph::oddop::{homotopy_inverse_solve, SolveOutcome};
use oddgraph::scalars::{int, parse_rational, Rational};
use oddgraph::weights::{igi_holds, Engine};
use serde_json::{json, Value};
use std::path::Path;

/// `a,b,c` as rationals.
pub fn parse_lambda(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| anyhow!("bad λ entry {t:?}: {e}")))
        .collect()
}

/// `E`, `QN` with `n` and `λ`, or a JSON file with the algebra and its
/// operators `I` and, optionally, `Itilde`.
pub fn load(builtin: Option<&str>, n: Option<usize>, lambda: Option<&str>, path: Option<&Path>) -> Result<AlgebraWithOps> {
    match (builtin, path) {
        (Some(_), Some(_)) => bail!("give either --builtin or --algebra, not both"),
        (None, None) => bail!("no algebra given: use --builtin E|QN or --algebra FILE"),
        (Some(b), None) => match b.to_ascii_uppercase().as_str() {
            "E" => Ok(make_e()),
            "QN" | "Q" => {
                let n = n.ok_or_else(|| anyhow!("QN needs --N"))?;
                let lambda = match lambda {
                    Some(l) => parse_lambda(l)?,
                    None => (1..=n as i64).map(int).collect(),
                };
                make_qn(n, &lambda).map_err(|e| anyhow!("{e}"))
            }
            other => bail!("unknown builtin algebra {other:?}"),
        },
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            from_json(&v)
        }
    }
}

pub fn from_json(v: &Value) -> Result<AlgebraWithOps> {
    let algebra = algebra_from_json(v).map_err(|e| anyhow!("{e}"))?;
    let d = algebra.dim();
    if v.get("I").is_none() {
        bail!("algebra file needs the derivation under \"I\"");
    }
    let i = operator_from_json(&v["I"], d).map_err(|e| anyhow!("I: {e}"))?;
    let itilde = match v.get("Itilde") {
        Some(t) => operator_from_json(t, d).map_err(|e| anyhow!("Itilde: {e}"))?,
        None => match homotopy_inverse_solve(algebra.parities(), algebra.gram(), &i) {
            SolveOutcome::Solved(m) => m,
            SolveOutcome::Unsat { .. } => linalg::zeros(d, d),
        },
    };
    Ok(AlgebraWithOps { algebra, i, itilde })
}

/// Axioms of the algebra, of `I` as an odd derivation, and of `Ĩ` as its
/// self-adjoint homotopy inverse.
pub fn check(ops: &AlgebraWithOps) -> (Value, bool) {
    let a = &ops.algebra;
    let alg = check_algebra(a);
    let der = check_derivation(a, &ops.i);
    let homotopy = odd_commutator(&ops.i, &ops.itilde) == linalg::identity(a.dim());
    let self_adj = is_self_adjoint(a.parities(), a.gram(), &ops.itilde);
    let igi = igi_holds(a, &ops.i, &ops.itilde);
    let ok = alg.passed() && der.passed() && homotopy && self_adj && igi;
    let report = json!({
        "dim": a.dim(),
        "algebra": alg.to_json(),
        "derivation": der.to_json(),
        "homotopyInverse": {"commutatorIsIdentity": homotopy, "selfAdjoint": self_adj, "IgI": igi},
        "traceCondition": Engine::new(a).trace_condition(),
        "passed": ok,
    });
    (report, ok)
}
