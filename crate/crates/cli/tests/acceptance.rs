//! Acceptance run: one PASS/FAIL line per criterion. The process fails when
//! the set of failing criteria differs from `EXPECTED_FAILURES`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::{classes, decorated_ratio, ordinary, reversed_items, stable, z_naive};
use num_traits::Zero;
use oddgraph::graded::linalg;
use oddgraph::graded::{make_e, make_qn, odd_commutator, AlgebraWithOps};
use oddgraph::graphs::contract_edge;
use oddgraph::oddop::{decompose, homotopy_inverse_blockwise, OddOpError};
use oddgraph::psi::{decorated_sum, generating_function_check, has_even_cycle, WkTable};
use oddgraph::scalars::{int, rat, LinearForm, RatFun, Rational};
use oddgraph::weights::{boundary_value, derivation_defect, igi_holds, Engine, Theory};
use oddgraph_cli::suites;
use std::process::Command;
use std::time::Instant;

/// Criterion 10 in its literal form: the contraction differs from the plain
/// sum over decorations by `(−1)^{Σ(|c|−1)/2}·2^{|V|−Σγ}·|Aut|`.
const EXPECTED_FAILURES: [u32; 1] = [10];

fn q(n: usize) -> AlgebraWithOps {
    let lambda: Vec<Rational> = (1..=n as i64).map(int).collect();
    make_qn(n, &lambda).unwrap()
}

fn d_squared() -> (bool, String) {
    let o = suites::d_squared(5, 1);
    (o.ok, format!("{} classes up to 5 edges, stable and ordinary complexes", o.report["checked"]))
}

fn cocycle() -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    for ops in [make_e(), q(1), q(2)] {
        let o = suites::cocycle(&ops, 4, 1).unwrap();
        ok &= o.ok;
        checked += o.report["checked"].as_u64().unwrap();
    }
    (ok, format!("Ẑ(∂G) = 0 on {checked} (graph, algebra) pairs over E, Q(1), Q(2)"))
}

fn counterexample() -> (bool, String) {
    let o = suites::counterexample();
    let r = &o.report;
    let four_four: Vec<&serde_json::Value> =
        r["contractions"].as_array().unwrap().iter().filter(|c| c["valences"] == serde_json::json!([4, 4])).collect();
    let ok = r["boundary"] != "0" && !four_four.is_empty() && four_four.iter().all(|c| c["value"] == "0");
    (ok, format!("Z(∂G) = {} on the fig1 fixture over E, 4/4-valent contractions weigh 0", r["boundary"].as_str().unwrap_or("?")))
}

fn loop_defect() -> (bool, String) {
    let th = Theory::new(&make_e());
    let cs = classes(4, &ordinary());
    let mut literal = true;
    let mut theorem = true;
    for c in &cs {
        let g = c.graph();
        let items = g.default_items();
        let reg = boundary_value(g, &items, true, |h, it| th.z(h, it));
        let zl = th.loop_defect(g, &items);
        literal &= (&reg + &zl).is_zero();
        theorem &= reg == zl;
    }
    (
        literal,
        format!(
            "Σ_reg Z(G/e) + Z^loop = 0 on {} ordinary graphs over E (Σ_reg Z(G/e) = Z^loop: {})",
            cs.len(),
            if theorem { "holds" } else { "fails" }
        ),
    )
}

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn operator_identities() -> (bool, String) {
    let mut ok = true;
    for ops in [make_e(), q(1), q(2), q(3)] {
        let a = &ops.algebra;
        ok &= odd_commutator(&ops.i, &ops.itilde) == linalg::identity(a.dim());
        ok &= igi_holds(a, &ops.i, &ops.itilde);
    }
    for ops in [make_e(), q(1), q(2)] {
        let e = Engine::new(&ops.algebra);
        for n in 1..=6 {
            if ops.algebra.dim().pow(n as u32) <= 300_000 {
                ok &= derivation_defect(&e, &ops.i, &[n], 0).is_none();
            }
        }
        for flags in 1..=5 {
            for shape in compositions(flags) {
                for gamma in 0..=1 {
                    ok &= derivation_defect(&e, &ops.i, &shape, gamma).is_none();
                }
            }
        }
    }
    let parity = [0, 1];
    let g = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
    let z = linalg::zeros(2, 2);
    let blocked = decompose(&parity, &g, &z)
        .map(|dec| homotopy_inverse_blockwise(&dec, &z) == Err(OddOpError::NotHomotopyInvertible { k: 1 }))
        .unwrap_or(false);
    ok &= blocked;
    (ok, "IgI, I*α = 0, [I,Ĩ] = 1 for E and Q(1..3), 2₁ block rejected".to_string())
}

fn edge_insertion() -> (bool, String) {
    let th = Theory::new(&make_e());
    let mut ok = true;
    let mut checked = 0;
    for c in classes(4, &stable(1)) {
        let g = c.graph();
        let items = reversed_items(g);
        for f in 0..g.num_flags() {
            checked += 1;
            let lhs = th.z_inserted(g, &items, f);
            ok &= match contract_edge(g, &items, f, false).unwrap() {
                Some(k) => lhs == th.z(&k.graph, &k.items) * int(k.sign as i64),
                None => lhs.is_zero(),
            };
        }
    }
    (ok, format!("g⁻¹ at one flag equals the contraction on {checked} (graph, flag) pairs over E"))
}

fn coboundary() -> (bool, String) {
    let o = suites::coboundary(&make_e(), 4, 1).unwrap();
    let xs = o.report["deformations"].as_array().unwrap().len();
    let ok = o.ok && xs == 3 && o.report["deformations"][0] == "ItildeI*0";
    (ok, format!("first-order change of Ẑ equals dW for {xs} choices of X over E"))
}

fn naive_oracle() -> (bool, String) {
    let graphs: Vec<_> = classes(4, &stable(1)).into_iter().chain(classes(4, &ordinary())).collect();
    let mut ok = true;
    for ops in [make_e(), q(1)] {
        let th = Theory::new(&ops);
        for c in &graphs {
            let g = c.graph();
            let items = g.default_items();
            ok &= th.z(g, &items) == z_naive(th.algebra(), g, &items, &th.p);
        }
    }
    (ok, format!("engine = basis-assignment sum on {} graphs over E and Q(1)", graphs.len()))
}

fn inv(nvars: usize, i: usize, k: u32) -> RatFun {
    RatFun::inv_form(nvars, LinearForm::Single(i), k)
}

fn psi_endpoints() -> (bool, String) {
    let mut table = WkTable::new();
    let e03 = inv(3, 0, 1).mul(&inv(3, 1, 1)).mul(&inv(3, 2, 1));
    let e11 = inv(1, 0, 3).scale(&rat(1, 24));
    let mut e04 = RatFun::zero(4);
    for i in 0..4 {
        let mut term = inv(4, i, 3);
        for j in (0..4).filter(|&j| j != i) {
            term = term.mul(&inv(4, j, 1));
        }
        e04 = e04.add(&term);
    }
    let mut ok = true;
    for (g, n, expected) in [(0, 3, e03), (1, 1, e11), (0, 4, e04)] {
        let c = generating_function_check(&mut table, g, n).unwrap();
        ok &= c.rhs.total == expected && c.lhs == expected;
    }
    let stretch = generating_function_check(&mut table, 1, 2).map(|c| c.matches()).unwrap_or(false);
    (ok, format!("(0,3), (1,1), (0,4) exact with normalization constant 1; (1,2) {}", if stretch { "exact" } else { "differs" }))
}

fn decorated_sums() -> (bool, String) {
    let mut literal = true;
    let mut scaled = true;
    for n in [1, 2] {
        let lambda: Vec<Rational> = (1..=n as i64).map(int).collect();
        let th = Theory::new(&q(n));
        for c in classes(4, &stable(1)) {
            let g = c.graph();
            let z = th.zhat(g, &g.default_items()).unwrap();
            let s = decorated_sum(g, n).unwrap().eval(&lambda).unwrap();
            literal &= z == s;
            if has_even_cycle(g) {
                scaled &= z.is_zero() && s.is_zero();
            } else {
                scaled &= z == decorated_ratio(g, c.aut_order()) * s;
            }
        }
    }
    (
        literal,
        format!(
            "Q(N) contraction = Σ closed-form weights, N = 1, 2 (with factor ±2^(|V|−Σγ)·|Aut|: {})",
            if scaled { "holds" } else { "fails" }
        ),
    )
}

fn binary(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_oddgraph"))
        .args(["--threads", threads])
        .args(args)
        .output()
        .expect("binary runs");
    out.stdout
}

fn determinism() -> (bool, String) {
    let runs: [&[&str]; 4] = [
        &["graphs", "enum", "--edges", "4"],
        &["weights", "z", "--max-edges", "3", "--builtin", "QN", "--N", "1"],
        &["verify", "loop-defect", "--max-edges", "5"],
        &["psi", "check", "--g", "0", "--n", "4"],
    ];
    let mut ok = true;
    for args in runs {
        let first = binary(args, "1");
        ok &= !first.is_empty();
        for threads in ["1", "2", "4"] {
            ok &= binary(args, threads) == first;
        }
    }
    (ok, "byte-identical reports across repeated runs with 1, 2 and 4 threads".to_string())
}

fn main() {
    let criteria: [(u32, &str, fn() -> (bool, String)); 11] = [
        (1, "d² = 0", d_squared),
        (2, "cocycle", cocycle),
        (3, "counterexample", counterexample),
        (4, "loop defect", loop_defect),
        (5, "operator identities", operator_identities),
        (6, "edge insertion", edge_insertion),
        (7, "coboundary", coboundary),
        (8, "naive oracle", naive_oracle),
        (9, "ψ endpoints", psi_endpoints),
        (10, "decorated sums", decorated_sums),
        (11, "determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, name, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = check();
        println!(
            "criterion {k:>2} {}: {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        if !ok {
            failed.push(k);
        }
    }
    if failed != EXPECTED_FAILURES {
        eprintln!("failing criteria {failed:?}, expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
    println!("acceptance: failures {failed:?} are the documented ones");
}
