use super::OddOpError;
use crate::graded::is_anti_self_adjoint;
use crate::graded::linalg::{self, Mat, Vector};
use crate::scalars::{int, sign, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    /// Chain `v, Iv, …, I^{2k−1}v` paired with itself.
    Type1 { k: usize, v: Vector },
    /// Chains `v, …, I^{k−1}v` and `u, …, I^{k−1}u` paired with each other.
    Type2 { k: usize, v: Vector, u: Vector },
    /// Subspace on which `I` is invertible.
    Type3 { basis: Vec<Vector> },
}

impl Block {
    pub fn label(&self) -> String {
        match self {
            Block::Type1 { k, .. } => format!("1_{k}"),
            Block::Type2 { k, .. } => format!("2_{k}"),
            Block::Type3 { basis } => format!("3[{}]", basis.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Columns are the new basis: block chains in order, then block 3.
    pub base_change: Mat,
    /// True when the new basis puts `g` exactly in canonical block form.
    pub normalized: bool,
}

fn pow(i_op: &Mat, k: usize) -> Mat {
    let mut r = linalg::identity(i_op.len());
    for _ in 0..k {
        r = linalg::matmul(i_op, &r);
    }
    r
}

fn pair(g: &Mat, x: &[Rational], y: &[Rational]) -> Rational {
    let gy = linalg::apply(g, y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

fn combine(coeffs: &[Rational], vs: &[Vector]) -> Vector {
    let d = vs[0].len();
    let mut r = vec![Rational::zero(); d];
    for (c, v) in coeffs.iter().zip(vs) {
        for (x, y) in r.iter_mut().zip(v) {
            *x += c * y;
        }
    }
    r
}

/// Kernel of a parity-homogeneous operator, as homogeneous vectors.
fn graded_kernel(parity: &[u8], m: &Mat) -> Vec<Vector> {
    let d = parity.len();
    let mut out = Vec::new();
    for p in 0..2u8 {
        let cols: Vec<usize> = (0..d).filter(|&i| parity[i] == p).collect();
        let sub: Mat = m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        for v in linalg::nullspace(&sub, cols.len()) {
            let mut w = vec![Rational::zero(); d];
            for (&c, x) in cols.iter().zip(v) {
                w[c] = x;
            }
            out.push(w);
        }
    }
    out
}

fn vec_parity(parity: &[u8], v: &[Rational]) -> u8 {
    v.iter().zip(parity).find(|(x, _)| !x.is_zero()).map_or(0, |(_, &p)| p)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    let s = Rational::new(n, d);
    (&s * &s == *r).then_some(s)
}

/// Congruence-diagonalizes a symmetric form; returns new coordinates (rows)
/// and diagonal values.
fn diagonalize(b: &Mat) -> (Vec<Vector>, Vec<Rational>) {
    let n = b.len();
    let mut basis: Vec<Vector> = linalg::identity(n);
    let form = |x: &Vector, y: &Vector| -> Rational {
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                if !x[i].is_zero() && !y[j].is_zero() {
                    s += &x[i] * &b[i][j] * &y[j];
                }
            }
        }
        s
    };
    let mut out = Vec::new();
    let mut diag = Vec::new();
    while !basis.is_empty() {
        let idx = (0..basis.len()).find(|&i| !form(&basis[i], &basis[i]).is_zero());
        let pivot = match idx {
            Some(i) => basis.remove(i),
            None => {
                let pair = (0..basis.len())
                    .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !form(&basis[i], &basis[j]).is_zero());
                match pair {
                    Some((i, j)) => {
                        let s: Vector = basis[i].iter().zip(&basis[j]).map(|(a, c)| a + c).collect();
                        basis.remove(i);
                        s
                    }
                    None => {
                        // degenerate remainder
                        for v in basis.drain(..) {
                            out.push(v);
                            diag.push(Rational::zero());
                        }
                        break;
                    }
                }
            }
        };
        let c = form(&pivot, &pivot);
        for v in basis.iter_mut() {
            let f = form(&pivot, v) / &c;
            for (x, p) in v.iter_mut().zip(&pivot) {
                *x -= &f * p;
            }
        }
        out.push(pivot);
        diag.push(c);
    }
    (out, diag)
}

/// Symplectic basis for a skew form: pairs `(x, y)` with `b(x, y) = 1`.
fn symplectic(b: &Mat) -> Option<Vec<(Vector, Vector)>> {
    let n = b.len();
    let form = |x: &Vector, y: &Vector| -> Rational {
        let bx = linalg::apply(&linalg::transpose(b), x);
        bx.iter().zip(y).map(|(a, c)| a * c).sum()
    };
    let mut basis: Vec<Vector> = linalg::identity(n);
    let mut out = Vec::new();
    while !basis.is_empty() {
        let x = basis.remove(0);
        let j = basis.iter().position(|y| !form(&x, y).is_zero())?;
        let y0 = basis.remove(j);
        let c = form(&x, &y0);
        let y: Vector = y0.iter().map(|t| t / &c).collect();
        for v in basis.iter_mut() {
            let a = form(&x, v);
            let bb = form(&y, v);
            for ((t, xx), yy) in v.iter_mut().zip(&x).zip(&y) {
                *t += &bb * xx - &a * yy;
            }
        }
        out.push((x, y));
    }
    Some(out)
}

/// Best-effort block decomposition over the rationals. Chains are extracted
/// greedily from kernel bases; top vectors are made `g`-compatible within
/// each chain length, and `normalized` reports whether the result is exactly
/// canonical.
pub fn decompose(parity: &[u8], g: &Mat, i_op: &Mat) -> Result<BlockDecomposition, OddOpError> {
    let d = parity.len();
    if g.len() != d || i_op.len() != d {
        return Err(OddOpError::Dimension);
    }
    if !is_anti_self_adjoint(parity, g, i_op) {
        return Err(OddOpError::NotAntiSelfAdjoint);
    }
    let powers: Vec<Mat> = (0..=d + 1).map(|k| pow(i_op, k)).collect();
    let ranks: Vec<usize> = powers.iter().map(linalg::rank).collect();
    let m = (0..=d).find(|&k| ranks[k] == ranks[k + 1]).unwrap_or(d);
    let kernels: Vec<Vec<Vector>> = (0..=m).map(|k| graded_kernel(parity, &powers[k])).collect();

    let mut blocks = Vec::new();
    let mut chosen: Vec<(usize, Vector)> = Vec::new();
    let mut flagged = false;
    for len in (1..=m).rev() {
        let mut span: Vec<Vector> = kernels[len - 1].clone();
        for (l2, t) in &chosen {
            span.push(linalg::apply(&powers[l2 - len], t));
        }
        let mut tops = Vec::new();
        for c in &kernels[len] {
            let mut trial = span.clone();
            trial.push(c.clone());
            if linalg::rank(&trial) > linalg::rank(&span) {
                span.push(c.clone());
                tops.push(c.clone());
            }
        }
        for t in &tops {
            chosen.push((len, t.clone()));
        }
        let by_parity = |p: u8| -> Vec<Vector> { tops.iter().filter(|t| vec_parity(parity, t) == p).cloned().collect() };
        let form = |xs: &[Vector], ys: &[Vector]| -> Mat {
            xs.iter().map(|x| ys.iter().map(|y| pair(g, x, &linalg::apply(&powers[len - 1], y))).collect()).collect()
        };
        if len % 2 == 1 {
            let (t0, t1) = (by_parity(0), by_parity(1));
            let c = form(&t0, &t1);
            match (t0.len() == t1.len()).then(|| linalg::inverse(&c)).flatten() {
                Some(ci) => {
                    for (i, v) in t0.iter().enumerate() {
                        let coeffs: Vec<Rational> = (0..t1.len()).map(|k| ci[k][i].clone()).collect();
                        blocks.push(Block::Type2 { k: len, v: v.clone(), u: combine(&coeffs, &t1) });
                    }
                }
                None => {
                    flagged = true;
                    for (v, u) in t0.iter().zip(&t1) {
                        blocks.push(Block::Type2 { k: len, v: v.clone(), u: u.clone() });
                    }
                }
            }
            continue;
        }
        for p in 0..2u8 {
            let tp = by_parity(p);
            if tp.is_empty() {
                continue;
            }
            let b = form(&tp, &tp);
            let symmetric = b == linalg::transpose(&b);
            let skew = linalg::is_zero(&linalg::add(&b, &linalg::transpose(&b)));
            if symmetric {
                let (coords, diag) = diagonalize(&b);
                for (c, val) in coords.iter().zip(diag) {
                    let w = combine(c, &tp);
                    let v = match rational_sqrt(&(Rational::one() / &val).abs()) {
                        Some(s) if !val.is_zero() && val.is_positive() => w.iter().map(|x| x * &s).collect(),
                        _ => {
                            flagged = true;
                            w
                        }
                    };
                    blocks.push(Block::Type1 { k: len / 2, v });
                }
            } else if let Some(pairs) = skew.then(|| symplectic(&b)).flatten() {
                for (x, y) in pairs {
                    blocks.push(Block::Type2 { k: len, v: combine(&x, &tp), u: combine(&y, &tp) });
                }
            } else {
                flagged = true;
                for t in tp {
                    blocks.push(Block::Type1 { k: len / 2, v: t });
                }
            }
        }
    }
    let image: Vec<Vector> = {
        let cols = linalg::transpose(&powers[m]);
        let mut acc: Vec<Vector> = Vec::new();
        for c in cols {
            let mut trial = acc.clone();
            trial.push(c.clone());
            if linalg::rank(&trial) > acc.len() {
                acc.push(c);
            }
        }
        acc
    };
    if !image.is_empty() {
        blocks.push(Block::Type3 { basis: image });
    }

    let mut cols: Vec<Vector> = Vec::new();
    for b in &blocks {
        match b {
            Block::Type1 { k, v } => cols.extend((0..2 * k).map(|j| linalg::apply(&powers[j], v))),
            Block::Type2 { k, v, u } => {
                cols.extend((0..*k).map(|j| linalg::apply(&powers[j], v)));
                cols.extend((0..*k).map(|j| linalg::apply(&powers[j], u)));
            }
            Block::Type3 { basis } => cols.extend(basis.iter().cloned()),
        }
    }
    let base_change = linalg::transpose(&cols);
    let normalized = !flagged && linalg::rank(&base_change) == d && canonical_gram(&blocks, parity, g, &base_change);
    Ok(BlockDecomposition { blocks, base_change, normalized })
}

/// Checks `BᵀGB` against the canonical pairing of each block.
fn canonical_gram(blocks: &[Block], parity: &[u8], g: &Mat, b: &Mat) -> bool {
    let gb = linalg::matmul(&linalg::matmul(&linalg::transpose(b), g), b);
    let d = gb.len();
    let mut expect = linalg::zeros(d, d);
    let mut off = 0;
    for blk in blocks {
        match blk {
            Block::Type1 { k, .. } => {
                let pv = col_parity(parity, b, off);
                let n = 2 * k;
                for m in 0..n {
                    let mp = n - 1 - m;
                    expect[off + m][off + mp] = sign(m * pv + m * (m + 1) / 2);
                }
                off += n;
            }
            Block::Type2 { k, .. } => {
                let pv = col_parity(parity, b, off);
                for m in 0..*k {
                    let mp = k - 1 - m;
                    let s = sign(m * pv + m * (m + 1) / 2);
                    expect[off + m][off + k + mp] = s.clone();
                }
                // the transposed entries follow from symmetry of g
                for m in 0..*k {
                    for mp in 0..*k {
                        let val = expect[off + m][off + k + mp].clone();
                        let (pa, pb) = (col_parity(parity, b, off + m), col_parity(parity, b, off + k + mp));
                        expect[off + k + mp][off + m] = sign(pa * pb) * val;
                    }
                }
                off += 2 * k;
            }
            Block::Type3 { basis } => {
                for x in 0..basis.len() {
                    for y in 0..basis.len() {
                        expect[off + x][off + y] = gb[off + x][off + y].clone();
                    }
                }
                off += basis.len();
            }
        }
    }
    gb == expect
}

fn col_parity(parity: &[u8], b: &Mat, c: usize) -> usize {
    (0..b.len()).find(|&r| !b[r][c].is_zero()).map_or(0, |r| parity[r] as usize)
}

/// Homotopy inverse assembled block by block: on each chain
/// `Ĩ(I^{2l+1}v) = I^{2l}v`, `Ĩ(I^{2l}v) = 0`; on block 3, `Ĩ = ½I⁻¹`.
pub fn homotopy_inverse_blockwise(dec: &BlockDecomposition, i_op: &Mat) -> Result<Mat, OddOpError> {
    let d = i_op.len();
    let binv = linalg::inverse(&dec.base_change).ok_or(OddOpError::Dimension)?;
    let i_new = linalg::matmul(&linalg::matmul(&binv, i_op), &dec.base_change);
    let mut t = linalg::zeros(d, d);
    let mut off = 0;
    let chain = |t: &mut Mat, off: usize, n: usize| {
        for l in (1..n).step_by(2) {
            t[off + l - 1][off + l] = Rational::one();
        }
    };
    for blk in &dec.blocks {
        match blk {
            Block::Type1 { k, .. } => {
                chain(&mut t, off, 2 * k);
                off += 2 * k;
            }
            Block::Type2 { k, .. } => {
                if k % 2 == 1 {
                    return Err(OddOpError::NotHomotopyInvertible { k: *k });
                }
                chain(&mut t, off, *k);
                chain(&mut t, off + k, *k);
                off += 2 * k;
            }
            Block::Type3 { basis } => {
                let n = basis.len();
                let sub: Mat = (0..n).map(|r| (0..n).map(|c| i_new[off + r][off + c].clone()).collect()).collect();
                let inv = linalg::inverse(&sub).ok_or(OddOpError::Dimension)?;
                for r in 0..n {
                    for c in 0..n {
                        t[off + r][off + c] = &inv[r][c] / int(2);
                    }
                }
                off += n;
            }
        }
    }
    Ok(linalg::matmul(&linalg::matmul(&dec.base_change, &t), &binv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{is_self_adjoint, make_e, make_qn, odd_commutator};

    #[test]
    fn e_is_a_single_type1_block() {
        let e = make_e();
        let a = &e.algebra;
        let dec = decompose(a.parities(), a.gram(), &e.i).unwrap();
        assert_eq!(dec.blocks, vec![Block::Type1 { k: 1, v: vec![int(0), int(1)] }]);
        assert!(dec.normalized);
        let t = homotopy_inverse_blockwise(&dec, &e.i).unwrap();
        assert_eq!(t, e.itilde);
    }

    #[test]
    fn zero_operator_is_type2_1() {
        let parity = [0, 1];
        let g = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let z = linalg::zeros(2, 2);
        let dec = decompose(&parity, &g, &z).unwrap();
        assert_eq!(dec.blocks.iter().map(Block::label).collect::<Vec<_>>(), vec!["2_1"]);
        assert!(dec.normalized);
        assert_eq!(homotopy_inverse_blockwise(&dec, &z), Err(OddOpError::NotHomotopyInvertible { k: 1 }));
    }

    #[test]
    fn q1_and_q2() {
        let q = make_qn(1, &[int(1)]).unwrap();
        let a = &q.algebra;
        let dec = decompose(a.parities(), a.gram(), &q.i).unwrap();
        assert_eq!(dec.blocks, vec![Block::Type1 { k: 1, v: vec![int(0), int(1)] }]);
        for lam in [[int(1), int(2)], [int(1), int(4)]] {
            let q = make_qn(2, &lam).unwrap();
            let a = &q.algebra;
            let dec = decompose(a.parities(), a.gram(), &q.i).unwrap();
            assert!(dec.blocks.iter().any(|b| matches!(b, Block::Type3 { .. })));
            let t = homotopy_inverse_blockwise(&dec, &q.i).unwrap();
            assert_eq!(odd_commutator(&q.i, &t), linalg::identity(8));
            if dec.normalized {
                assert!(is_self_adjoint(a.parities(), a.gram(), &t));
            }
        }
    }
}
