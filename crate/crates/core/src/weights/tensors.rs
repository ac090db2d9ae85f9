use super::{Engine, WeightsError};
use crate::graded::linalg::{self, Mat};
use crate::graded::{GradedAlgebra, GradedTensor, Variance};
use crate::scalars::{sign, Rational};
use num_traits::Zero;

/// `op` acting on a two-tensor on `ΠA` as a derivation:
/// `op(πx ⊗ πy) = π(op x) ⊗ πy + (−1)^{x̄+1} πx ⊗ π(op y)`.
pub fn act_on_two_tensor(a: &GradedAlgebra, op: &Mat, m: &Mat) -> Mat {
    let d = a.dim();
    let mut r = linalg::matmul(op, m);
    for x in 0..d {
        let s = sign(a.parity(x) as usize + 1);
        for b in 0..d {
            let mut acc = Rational::zero();
            for c in 0..d {
                if !m[x][c].is_zero() && !op[b][c].is_zero() {
                    acc += &m[x][c] * &op[b][c];
                }
            }
            r[x][b] += &s * acc;
        }
    }
    r
}

/// `I(g_Ĩ⁻¹) = g⁻¹`.
pub fn igi_holds(a: &GradedAlgebra, i: &Mat, itilde: &Mat) -> bool {
    let p = linalg::matmul(itilde, a.gram_inverse());
    act_on_two_tensor(a, i, &p) == *a.gram_inverse()
}

/// `α_n` as a tensor on `(ΠA)^{⊗n}`.
pub fn alpha_cyclic(e: &Engine, n: usize) -> Result<GradedTensor, WeightsError> {
    if n < 2 {
        return Err(WeightsError::TooFewInputs(n));
    }
    let a = e.algebra();
    let slots = (1..=n).map(|k| (format!("x{k}"), Variance::Covector)).collect();
    let mut t = GradedTensor::new(a.parities().to_vec(), slots);
    for idx in tuples(a.dim(), n) {
        let v = e.alpha(&[idx.clone()], 0);
        t.add_entry(idx, v);
    }
    Ok(t)
}

fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (0..d).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// First input on which `op` acting on `α_{σ,γ}` as a derivation does not
/// vanish. The vertex has cycles of the given lengths; `op` hits input `i`
/// with the sign `(−1)^{Σ_{j<i}(p_j+1)}`.
pub fn derivation_defect(e: &Engine, op: &Mat, lengths: &[usize], gamma: u32) -> Option<(Vec<Vec<usize>>, Rational)> {
    let a = e.algebra();
    let n: usize = lengths.iter().sum();
    let split = |flat: &[usize]| {
        let mut out = Vec::new();
        let mut k = 0;
        for &l in lengths {
            out.push(flat[k..k + l].to_vec());
            k += l;
        }
        out
    };
    for flat in tuples(a.dim(), n) {
        let mut total = Rational::zero();
        let mut before = 0;
        for i in 0..n {
            let s = sign(before);
            let mut inputs = flat.clone();
            for (k, row) in op.iter().enumerate() {
                if row[flat[i]].is_zero() {
                    continue;
                }
                inputs[i] = k;
                total += &s * &row[flat[i]] * e.alpha(&split(&inputs), gamma);
            }
            before += a.parity(flat[i]) as usize + 1;
        }
        if !total.is_zero() {
            return Some((split(&flat), total));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{make_e, make_qn};
    use crate::scalars::int;

    #[test]
    fn e_examples() {
        let ops = make_e();
        let e = Engine::new(&ops.algebra);
        assert_eq!(e.alpha(&[vec![0, 1]], 0), int(1));
        assert_eq!(e.alpha(&[vec![1, 1, 1]], 0), int(-1));
        assert!(alpha_cyclic(&e, 1).is_err());
        assert!(igi_holds(&ops.algebra, &ops.i, &ops.itilde));
    }

    #[test]
    fn alpha_parity() {
        // α_n is even for odd n and odd for even n
        let ops = make_qn(1, &[int(1)]).unwrap();
        let e = Engine::new(&ops.algebra);
        for n in 2..=5 {
            let t = alpha_cyclic(&e, n).unwrap();
            for (idx, _) in &t.entries {
                let p: usize = idx.iter().map(|&i| ops.algebra.parity(i) as usize + 1).sum();
                assert_eq!(p % 2, (n + 1) % 2);
            }
        }
    }

    #[test]
    fn derivation_kills_alpha() {
        for ops in [make_e(), make_qn(1, &[int(1)]).unwrap()] {
            let e = Engine::new(&ops.algebra);
            for n in 2..=5 {
                assert_eq!(derivation_defect(&e, &ops.i, &[n], 0), None);
            }
            assert_eq!(derivation_defect(&e, &ops.i, &[1, 2], 1), None);
        }
    }
}
