use super::linalg::{self, Mat};
use super::{GradedAlgebra, GradedError};
use crate::scalars::{int, Rational};
use num_traits::Zero;

/// An algebra together with its derivation `I` and homotopy inverse `Ĩ`.
#[derive(Clone, Debug)]
pub struct AlgebraWithOps {
    pub algebra: GradedAlgebra,
    pub i: Mat,
    pub itilde: Mat,
}

/// `E = ⟨1, ξ⟩`, `ξ² = 1`, `g(1, ξ) = 1`, `I(ξ) = 1`, `Ĩ(1) = ξ`.
pub fn make_e() -> AlgebraWithOps {
    let one = int(1);
    let mult = vec![
        vec![vec![(0, one.clone())], vec![(1, one.clone())]],
        vec![vec![(1, one.clone())], vec![(0, one.clone())]],
    ];
    let g = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
    let algebra = GradedAlgebra::new(vec!["1".into(), "xi".into()], vec![0, 1], mult, g).expect("E is well formed");
    let i = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
    let itilde = vec![vec![int(0), int(0)], vec![int(1), int(0)]];
    AlgebraWithOps { algebra, i, itilde }
}

/// `Q(N)` as pairs `(X, ΠY)` with `(X₁,Y₁)(X₂,Y₂) = (X₁X₂+Y₁Y₂, X₁Y₂+Y₁X₂)`.
/// Basis: `E_ij` at `i·N+j`, `ΠE_ij` at `N²+i·N+j`. The pairing is
/// `g(a,b) = otr(ab)` with `otr(X,ΠY) = tr Y`.
pub fn make_qn(n: usize, lambda: &[Rational]) -> Result<AlgebraWithOps, GradedError> {
    if lambda.len() != n {
        return Err(GradedError::LambdaCount { expected: n, got: lambda.len() });
    }
    for i in 0..n {
        for j in i..n {
            if (&lambda[i] + &lambda[j]).is_zero() {
                return Err(GradedError::VanishingSum(i, j));
            }
        }
    }
    let algebra = qn_algebra(n);
    let nn = n * n;
    let d = 2 * nn;
    let mut lam = algebra.zero();
    for i in 0..n {
        lam[nn + i * n + i] = &lambda[i] / int(2);
    }
    let i_op = algebra.graded_commutator(&lam, 1);
    let mut itilde = linalg::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            itilde[nn + i * n + j][i * n + j] = int(2) / (&lambda[i] + &lambda[j]);
        }
    }
    Ok(AlgebraWithOps { algebra, i: i_op, itilde })
}

pub(crate) fn qn_algebra(n: usize) -> GradedAlgebra {
    let nn = n * n;
    let d = 2 * nn;
    let mut mult = vec![vec![Vec::new(); d]; d];
    let one = int(1);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                mult[a][b].push((c, one.clone()));
                mult[nn + a][nn + b].push((c, one.clone()));
                mult[a][nn + b].push((nn + c, one.clone()));
                mult[nn + a][b].push((nn + c, one.clone()));
            }
        }
    }
    let mut g = linalg::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            for (c, v) in &mult[a][b] {
                if *c >= nn && (c - nn) / n == (c - nn) % n {
                    g[a][b] += v;
                }
            }
        }
    }
    let names = (0..nn)
        .map(|k| format!("E{}{}", k / n + 1, k % n + 1))
        .chain((0..nn).map(|k| format!("PE{}{}", k / n + 1, k % n + 1)))
        .collect();
    let parity = (0..d).map(|k| u8::from(k >= nn)).collect();
    GradedAlgebra::new(names, parity, mult, g).expect("Q(N) is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{check_algebra, check_derivation, is_self_adjoint, odd_commutator};
    use crate::scalars::rat;

    #[test]
    fn qn_checks() {
        for (n, lam) in [(1, vec![int(1)]), (2, vec![int(1), int(3)]), (3, vec![int(1), rat(1, 2), int(5)])] {
            let q = make_qn(n, &lam).unwrap();
            assert!(check_algebra(&q.algebra).passed());
            assert!(check_derivation(&q.algebra, &q.i).passed());
            assert_eq!(odd_commutator(&q.i, &q.itilde), linalg::identity(2 * n * n));
            assert!(is_self_adjoint(q.algebra.parities(), q.algebra.gram(), &q.itilde));
        }
    }

    #[test]
    fn qn_rejects_vanishing_sums() {
        assert_eq!(make_qn(2, &[int(1), int(-1)]).unwrap_err(), GradedError::VanishingSum(0, 1));
        assert!(make_qn(1, &[int(0)]).is_err());
        assert!(make_qn(2, &[int(1)]).is_err());
    }
}
