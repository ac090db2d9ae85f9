//! Odd anti-self-adjoint operators: homotopy inverses and block structure.

mod blocks;

pub use blocks::{decompose, homotopy_inverse_blockwise, Block, BlockDecomposition};

use crate::graded::linalg::{self, Mat};
use crate::scalars::{sign, Rational};
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OddOpError {
    #[error("no homotopy inverse: block 2_{k} present")]
    NotHomotopyInvertible { k: usize },
    #[error("operator is not odd anti-self-adjoint")]
    NotAntiSelfAdjoint,
    #[error("dimension mismatch")]
    Dimension,
}

/// Outcome of solving `[I, Ĩ] = 1` for odd `Ĩ`.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solved(Mat),
    /// No self-adjoint solution; records whether a non-self-adjoint one exists.
    Unsat { non_self_adjoint_exists: bool },
}

fn odd_unknowns(parity: &[u8]) -> Vec<(usize, usize)> {
    let d = parity.len();
    (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|&(i, j)| parity[i] != parity[j]).collect()
}

fn from_unknowns(d: usize, vars: &[(usize, usize)], x: &[Rational]) -> Mat {
    let mut m = linalg::zeros(d, d);
    for (&(i, j), v) in vars.iter().zip(x) {
        m[i][j] = v.clone();
    }
    m
}

/// Rows expressing `g(Ĩx, y) − (−1)^{x̄} g(x, Ĩy) = 0` (`self_adj`) or the
/// anti-self-adjoint version, linear in the unknown entries.
fn adjointness_rows(parity: &[u8], g: &Mat, vars: &[(usize, usize)], anti: bool) -> Vec<Vec<Rational>> {
    let d = parity.len();
    let mut rows = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let s = sign(parity[x] as usize + usize::from(anti));
            // g(Ĩx,y) = Σ_k Ĩ[k][x] g[k][y];  g(x,Ĩy) = Σ_k g[x][k] Ĩ[k][y]
            let row: Vec<Rational> = vars
                .iter()
                .map(|&(k, j)| {
                    let mut c = Rational::zero();
                    if j == x {
                        c += &g[k][y];
                    }
                    if j == y {
                        c -= &s * &g[x][k];
                    }
                    c
                })
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Solves `IĨ + ĨI = 1` with `Ĩ` odd and self-adjoint, over the rationals.
pub fn homotopy_inverse_solve(parity: &[u8], g: &Mat, i_op: &Mat) -> SolveOutcome {
    let d = parity.len();
    let vars = odd_unknowns(parity);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..d {
        for b in 0..d {
            // (IĨ + ĨI)[a][b] = Σ_k I[a][k] Ĩ[k][b] + Ĩ[a][k] I[k][b]
            let row: Vec<Rational> = vars
                .iter()
                .map(|&(k, j)| {
                    let mut c = Rational::zero();
                    if j == b {
                        c += &i_op[a][k];
                    }
                    if k == a {
                        c += &i_op[j][b];
                    }
                    c
                })
                .collect();
            rows.push(row);
            rhs.push(if a == b { Rational::one() } else { Rational::zero() });
        }
    }
    let plain = linalg::solve(&rows, &rhs);
    let adj = adjointness_rows(parity, g, &vars, false);
    let mut all = rows;
    all.extend(adj.iter().cloned());
    let mut all_rhs = rhs;
    all_rhs.extend(std::iter::repeat(Rational::zero()).take(adj.len()));
    match linalg::solve(&all, &all_rhs) {
        Some(x) => SolveOutcome::Solved(from_unknowns(d, &vars, &x)),
        None => SolveOutcome::Unsat { non_self_adjoint_exists: plain.is_some() },
    }
}

/// Nondegeneracy of `x ↦ g(Ix, x)` on the odd part of `V`.
pub fn quadratic_form_criterion(parity: &[u8], g: &Mat, i_op: &Mat) -> bool {
    let odd: Vec<usize> = (0..parity.len()).filter(|&i| parity[i] == 1).collect();
    let gi = linalg::matmul(&linalg::transpose(i_op), g);
    let form: Mat = odd.iter().map(|&x| odd.iter().map(|&y| gi[x][y].clone()).collect()).collect();
    linalg::rank(&form) == odd.len()
}

/// Basis of the odd anti-self-adjoint operators for `(parity, g)`.
pub fn anti_self_adjoint_basis(parity: &[u8], g: &Mat) -> Vec<Mat> {
    let d = parity.len();
    let vars = odd_unknowns(parity);
    let rows = adjointness_rows(parity, g, &vars, true);
    linalg::nullspace(&rows, vars.len()).iter().map(|x| from_unknowns(d, &vars, x)).collect()
}

/// The components `I₁₀ : V₀ → V₁` and `I₀₁ : V₁ → V₀` read as bilinear
/// forms `(x, y) ↦ g(Ix, y)` on `V₀` and on `V₁`.
pub fn jordan_pair_forms(parity: &[u8], g: &Mat, i_op: &Mat) -> (Mat, Mat) {
    let gi = linalg::matmul(&linalg::transpose(i_op), g);
    let part = |p: u8| -> Mat {
        let idx: Vec<usize> = (0..parity.len()).filter(|&i| parity[i] == p).collect();
        idx.iter().map(|&x| idx.iter().map(|&y| gi[x][y].clone()).collect()).collect()
    };
    (part(0), part(1))
}
