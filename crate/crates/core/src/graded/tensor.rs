use super::{GradedAlgebra, GradedError};
use crate::scalars::{sign, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Vector,
    Covector,
}

/// Element of a tensor product of copies of `ΠA` and its dual. An index `i`
/// in any slot stands for `πu_i` (or its dual), of parity `ū_i + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedTensor {
    pub parity: Vec<u8>,
    pub slots: Vec<(String, Variance)>,
    pub entries: BTreeMap<Vec<usize>, Rational>,
}

impl GradedTensor {
    pub fn new(parity: Vec<u8>, slots: Vec<(String, Variance)>) -> Self {
        GradedTensor { parity, slots, entries: BTreeMap::new() }
    }

    pub fn add_entry(&mut self, idx: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(idx.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&idx);
        }
    }

    fn shifted(&self, i: usize) -> usize {
        self.parity[i] as usize + 1
    }

    /// The pairing on `ΠA`: `(πx, πy) ↦ (−1)^{x̄} g(x, y)`.
    pub fn pairing(a: &GradedAlgebra) -> Self {
        let slots = vec![("x".into(), Variance::Covector), ("y".into(), Variance::Covector)];
        let mut t = Self::new(a.parities().to_vec(), slots);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                t.add_entry(vec![i, j], sign(a.parity(i) as usize) * &a.gram()[i][j]);
            }
        }
        t
    }

    /// `Σ g^{ij} πu_i ⊗ πu_j` with `g^{ij}` the inverse Gram matrix.
    pub fn inverse_pairing(a: &GradedAlgebra) -> Self {
        let slots = vec![("x".into(), Variance::Vector), ("y".into(), Variance::Vector)];
        let mut t = Self::new(a.parities().to_vec(), slots);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                t.add_entry(vec![i, j], a.gram_inverse()[i][j].clone());
            }
        }
        t
    }

    /// Moves slot `from` to position `to`, applying the Koszul sign.
    pub fn move_slot(&self, from: usize, to: usize) -> Self {
        let mut slots = self.slots.clone();
        let s = slots.remove(from);
        slots.insert(to, s);
        let mut out = Self::new(self.parity.clone(), slots);
        let (lo, hi) = if from < to { (from, to) } else { (to, from) };
        for (idx, c) in &self.entries {
            let mut k = idx.clone();
            let x = k.remove(from);
            let passed: usize = (lo..hi).map(|p| self.shifted(k[p])).sum();
            k.insert(to, x);
            out.add_entry(k, sign(passed * self.shifted(x)) * c);
        }
        out
    }

    /// Juxtaposition `t ⊗ u`.
    pub fn product(&self, u: &GradedTensor) -> Self {
        let mut slots = self.slots.clone();
        slots.extend(u.slots.iter().cloned());
        let mut out = Self::new(self.parity.clone(), slots);
        for (a, ca) in &self.entries {
            for (b, cb) in &u.entries {
                let mut idx = a.clone();
                idx.extend(b.iter().copied());
                out.add_entry(idx, ca * cb);
            }
        }
        out
    }

    /// Evaluates slots `a` and `a+1` against each other:
    /// `ξ ⊗ x ↦ ξ(x)` and `x ⊗ ξ ↦ (−1)^{x̄ξ̄} ξ(x)`.
    fn contract_adjacent(&self, a: usize) -> Result<Self, GradedError> {
        let (va, vb) = (self.slots[a].1, self.slots[a + 1].1);
        if va == vb {
            return Err(GradedError::VarianceMismatch);
        }
        let mut slots = self.slots.clone();
        slots.drain(a..a + 2);
        let mut out = Self::new(self.parity.clone(), slots);
        for (idx, c) in &self.entries {
            if idx[a] != idx[a + 1] {
                continue;
            }
            let p = self.shifted(idx[a]);
            let s = if va == Variance::Vector { sign(p * p) } else { sign(0) };
            let mut k = idx.clone();
            k.drain(a..a + 2);
            out.add_entry(k, s * c);
        }
        Ok(out)
    }
}

/// Contracts `pairs` (slot of `t`, slot of `u`) in the given order. Each
/// paired slot of `u` is moved next to its partner in `t` with the Koszul
/// sign, then the adjacent pair is evaluated. Remaining slots keep their
/// order: `t`'s unpaired slots, then `u`'s.
pub fn koszul_contract(
    t: &GradedTensor,
    u: &GradedTensor,
    pairs: &[(usize, usize)],
) -> Result<GradedTensor, GradedError> {
    for &(s, r) in pairs {
        if s >= t.slots.len() || r >= u.slots.len() {
            return Err(GradedError::IndexOutOfRange(s.max(r)));
        }
        if t.slots[s].1 == u.slots[r].1 {
            return Err(GradedError::VarianceMismatch);
        }
    }
    let mut cur = t.product(u);
    // Track the current position of every original slot.
    let mut pos: Vec<Option<usize>> = (0..cur.slots.len()).map(Some).collect();
    let nt = t.slots.len();
    for &(s, r) in pairs {
        let a = pos[s].ok_or(GradedError::IndexOutOfRange(s))?;
        let b = pos[nt + r].ok_or(GradedError::IndexOutOfRange(r))?;
        cur = cur.move_slot(b, a + 1);
        for p in pos.iter_mut().flatten() {
            if *p > a && *p < b {
                *p += 1;
            }
        }
        cur = cur.contract_adjacent(a)?;
        pos[s] = None;
        pos[nt + r] = None;
        for p in pos.iter_mut().flatten() {
            if *p > a {
                *p -= 2;
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::make_e;
    use crate::scalars::int;

    fn one_slot(parity: Vec<u8>, v: Variance, i: usize) -> GradedTensor {
        let mut t = GradedTensor::new(parity, vec![("s".into(), v)]);
        t.add_entry(vec![i], int(1));
        t
    }

    #[test]
    fn odd_slots_anticommute() {
        // index 0 has shifted parity 1
        let x = one_slot(vec![0, 1], Variance::Vector, 0);
        let f = one_slot(vec![0, 1], Variance::Covector, 0);
        let a = koszul_contract(&x, &f, &[(0, 0)]).unwrap();
        let b = koszul_contract(&f, &x, &[(0, 0)]).unwrap();
        assert_eq!(a.entries[&vec![]], int(-1));
        assert_eq!(b.entries[&vec![]], int(1));
    }

    #[test]
    fn delta_is_identity() {
        let par = vec![0, 1];
        let mut delta = GradedTensor::new(par.clone(), vec![("a".into(), Variance::Vector), ("b".into(), Variance::Covector)]);
        delta.add_entry(vec![0, 0], int(1));
        delta.add_entry(vec![1, 1], int(1));
        let x = one_slot(par, Variance::Vector, 1);
        let r = koszul_contract(&delta, &x, &[(1, 0)]).unwrap();
        assert_eq!(r.entries, x.entries);
    }

    #[test]
    fn pairing_against_inverse_is_superdimension() {
        let e = make_e();
        let g = GradedTensor::pairing(&e.algebra);
        let gi = GradedTensor::inverse_pairing(&e.algebra);
        let r = koszul_contract(&g, &gi, &[(0, 0), (1, 1)]).unwrap();
        assert!(r.entries.is_empty());
        assert!(koszul_contract(&g, &g, &[(0, 0)]).is_err());
    }
}
