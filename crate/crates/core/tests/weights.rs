mod common;

use common::{alpha_naive, classes, ordinary, reversed_items, stable, z_naive};
use num_traits::Zero;
use oddgraph::graded::{make_e, make_qn, AlgebraWithOps};
use oddgraph::graphs::{boundary_labeled, contract_edge, fixtures};
use oddgraph::scalars::{int, Rational};
use oddgraph::graded::linalg::{self, Mat};
use oddgraph::weights::{boundary_value, derivation_defect, Engine, Propagator, Theory};

fn q(n: usize) -> AlgebraWithOps {
    let lambda: Vec<Rational> = (1..=n as i64).map(int).collect();
    make_qn(n, &lambda).unwrap()
}

#[test]
fn alpha_matches_literal_construction() {
    for ops in [make_e(), q(1), q(2)] {
        let a = &ops.algebra;
        let e = Engine::new(a);
        let d = a.dim();
        let shapes: Vec<Vec<usize>> = vec![vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1], vec![3, 1]];
        for shape in shapes {
            let n: usize = shape.iter().sum();
            if d.pow(n as u32) > 5000 {
                continue;
            }
            for code in 0..d.pow(n as u32) {
                let flat: Vec<usize> = (0..n).map(|k| code / d.pow(k as u32) % d).collect();
                let mut blocks = Vec::new();
                let mut at = 0;
                for &l in &shape {
                    blocks.push(flat[at..at + l].to_vec());
                    at += l;
                }
                for gamma in 0..=1 {
                    assert_eq!(e.alpha(&blocks, gamma), alpha_naive(a, &blocks, gamma), "{blocks:?} γ={gamma}");
                }
            }
        }
    }
}

#[test]
fn naive_oracle_agrees_on_two_dimensional_algebras() {
    let graphs: Vec<_> = classes(4, &stable(1)).into_iter().chain(classes(4, &ordinary())).collect();
    for ops in [make_e(), q(1)] {
        let th = Theory::new(&ops);
        for c in &graphs {
            let g = c.graph();
            for items in [g.default_items(), reversed_items(g)] {
                assert_eq!(th.z(g, &items), z_naive(th.algebra(), g, &items, &th.p), "{g:?}");
            }
        }
    }
}

#[test]
fn orientation_covariance() {
    let th = Theory::new(&q(2));
    for c in classes(3, &stable(1)) {
        let g = c.graph();
        let rev = reversed_items(g);
        let (or, s) = g.orientation_of_items(&rev);
        let rel = s * g.orientation_sign(&or, &g.default_orientation());
        assert_eq!(th.z(g, &rev), th.z(g, &g.default_items()) * int(rel as i64));
        if c.reverses {
            assert!(th.z(g, &g.default_items()).is_zero());
        }
    }
}

#[test]
fn inserting_inverse_pairing_contracts_the_edge() {
    for ops in [make_e(), q(1)] {
        let th = Theory::new(&ops);
        for c in classes(4, &stable(1)) {
            let g = c.graph();
            let items = reversed_items(g);
            for f in 0..g.num_flags() {
                let lhs = th.z_inserted(g, &items, f);
                match contract_edge(g, &items, f, false).unwrap() {
                    Some(k) => assert_eq!(lhs, th.z(&k.graph, &k.items) * int(k.sign as i64), "{g:?} at {f}"),
                    None => assert!(lhs.is_zero(), "{g:?} at {f}"),
                }
            }
        }
    }
}

#[test]
fn per_graph_cocycle_identity() {
    for ops in [make_e(), q(1), q(2)] {
        let th = Theory::new(&ops);
        for c in classes(4, &stable(1)) {
            let g = c.graph();
            let b = boundary_value(g, &g.default_items(), false, |h, it| th.zhat(h, it).unwrap());
            assert!(b.is_zero(), "{g:?}");
        }
    }
}

#[test]
fn loop_defect_balances_regular_boundary() {
    for (ops, max) in [(make_e(), 5), (q(1), 4), (q(2), 4)] {
        let th = Theory::new(&ops);
        for c in classes(max, &ordinary()) {
            let g = c.graph();
            let items = g.default_items();
            let reg = boundary_value(g, &items, true, |h, it| th.z(h, it));
            assert_eq!(reg, th.loop_defect(g, &items), "{g:?}");
        }
    }
}

#[test]
fn counterexample_boundary() {
    let th = Theory::new(&make_e());
    let g = fixtures::fig1();
    let items = g.default_items();
    let b = boundary_value(&g, &items, true, |h, it| th.z(h, it));
    assert!(!b.is_zero());
    for (_, k) in boundary_labeled(&g, &items, true) {
        let mut val: Vec<usize> = k.graph.cycles.iter().map(Vec::len).collect();
        val.sort_unstable();
        let z = th.z(&k.graph, &k.items);
        if val == [4, 4] {
            assert!(z.is_zero());
        } else {
            assert!(!z.is_zero());
        }
    }
    assert_eq!(b, th.loop_defect(&g, &items));
}

#[test]
fn derivation_annihilates_vertex_tensors() {
    for ops in [make_e(), q(1)] {
        let e = Engine::new(&ops.algebra);
        for n in 2..=6 {
            assert_eq!(derivation_defect(&e, &ops.i, &[n], 0), None);
        }
        let shapes: Vec<Vec<usize>> = vec![vec![1], vec![2], vec![1, 1], vec![3, 1], vec![2, 2], vec![1, 1, 1], vec![3, 2], vec![1, 1, 1, 1, 1]];
        for s in shapes {
            for gamma in 0..=1 {
                assert_eq!(derivation_defect(&e, &ops.i, &s, gamma), None, "{s:?}");
            }
        }
    }
}

fn combine(basis: &[Mat]) -> Mat {
    let d = basis[0].len();
    let mut x = linalg::zeros(d, d);
    for (k, b) in basis.iter().enumerate() {
        x = linalg::add(&x, &linalg::scale(b, &int(k as i64 % 5 - 2)));
    }
    x
}

fn coboundary_holds(th: &Theory, x: &Mat, max_edges: usize) {
    let dp = th.deformed_prop(x).unwrap();
    for c in classes(max_edges, &stable(1)) {
        let g = c.graph();
        let items = g.default_items();
        let lhs = th.engine.zhat(g, &items, &dp).unwrap();
        assert_eq!(lhs.re, th.zhat(g, &items).unwrap());
        let rhs = boundary_value(g, &items, false, |h, it| th.w(h, it, x).unwrap());
        assert_eq!(lhs.eps, rhs, "{g:?}");
    }
}

#[test]
fn deformation_changes_zhat_by_a_coboundary() {
    let th = Theory::new(&make_e());
    assert_eq!(th.admissible_x_basis().len(), 1);
    // X = ĨIY with Y = 0
    let y = linalg::zeros(2, 2);
    let x0 = linalg::matmul(&linalg::matmul(&th.itilde, &th.i), &y);
    for x in [x0, th.i.clone(), linalg::scale(&th.i, &int(-3))] {
        coboundary_holds(&th, &x, 4);
    }

    let th = Theory::new(&q(2));
    coboundary_holds(&th, &combine(&th.strict_x_basis()), 3);
}

#[test]
fn l_x_fails_to_commute_with_contraction() {
    // Admissible X that is not anti-self-adjoint: the first-order change
    // equals the insertion of g⁻¹ next to L_X α edge by edge, but not the
    // contraction W(∂G).
    let th = Theory::new(&q(2));
    assert_eq!(th.admissible_x_basis().len(), 18);
    assert_eq!(th.strict_x_basis().len(), 16);
    let x = combine(&th.admissible_x_basis());
    let dp = th.deformed_prop(&x).unwrap();
    let t = Propagator::from_mat(&th.t);
    let mut mismatches = 0;
    for c in classes(3, &stable(1)) {
        let g = c.graph();
        let items = g.default_items();
        let lhs = th.engine.zhat(g, &items, &dp).unwrap().eps;
        let direct: Rational = g.edges().iter().map(|&(f, _)| th.engine.z(g, &items, &th.prop(), Some((f, &t)), Some(&x))).sum();
        assert_eq!(lhs, direct);
        if boundary_value(g, &items, false, |h, it| th.w(h, it, &x).unwrap()) != lhs {
            mismatches += 1;
        }
    }
    assert!(mismatches > 0);
}

#[test]
fn w_rejects_inadmissible_x() {
    let th = Theory::new(&make_e());
    let mut x = oddgraph::graded::linalg::zeros(2, 2);
    x[1][0] = int(1);
    let g = fixtures::theta();
    assert!(th.w(&g, &g.default_items(), &x).is_err());
}
