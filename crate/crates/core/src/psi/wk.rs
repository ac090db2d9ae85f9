use super::PsiError;
use crate::scalars::{rat, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// `(2d − 1)!!`, with `(−1)!! = 1`.
pub fn double_factorial(d: u32) -> Rational {
    let mut r = 1i64;
    let mut k = 2 * d as i64 - 1;
    while k > 1 {
        r *= k;
        k -= 2;
    }
    Rational::from_integer(r.into())
}

/// Intersection numbers `⟨τ_{d₁} … τ_{d_n}⟩_g` from the string and dilaton
/// equations and the two base cases `⟨τ₀³⟩₀ = 1`, `⟨τ₁⟩₁ = 1/24`.
///
/// Entries with every `d_i ≥ 2` are out of reach; they are reported, never
/// guessed. In genus 0 and 1 everything is reachable.
#[derive(Clone, Debug, Default)]
pub struct WkTable {
    entries: BTreeMap<(u32, Vec<u32>), Rational>,
}

fn describe(g: u32, ds: &[u32]) -> String {
    let taus: Vec<String> = ds.iter().map(|d| format!("τ{d}")).collect();
    format!("⟨{}⟩_{g}", taus.join(" "))
}

impl WkTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&mut self, g: u32, ds: &[u32]) -> Result<Rational, PsiError> {
        let n = ds.len() as i64;
        let total: i64 = ds.iter().map(|&d| d as i64).sum();
        if total != 3 * g as i64 - 3 + n {
            return Ok(Rational::zero());
        }
        let mut key = ds.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(v) = self.entries.get(&(g, key.clone())) {
            return Ok(v.clone());
        }
        let v = self.compute(g, &key)?;
        self.entries.insert((g, key), v.clone());
        Ok(v)
    }

    fn compute(&mut self, g: u32, ds: &[u32]) -> Result<Rational, PsiError> {
        match (g, ds) {
            (0, [0, 0, 0]) => return Ok(rat(1, 1)),
            (1, [1]) => return Ok(rat(1, 24)),
            _ => {}
        }
        let n = ds.len();
        // ds is nonincreasing, so a τ₀ or τ₁ sits at the end
        let Some(&last) = ds.last() else {
            return Err(PsiError::OracleIncomplete(describe(g, ds)));
        };
        let rest = &ds[..n - 1];
        match last {
            0 => {
                let mut sum = Rational::zero();
                for j in 0..rest.len() {
                    if rest[j] == 0 {
                        continue;
                    }
                    let mut lowered = rest.to_vec();
                    lowered[j] -= 1;
                    sum += self.get(g, &lowered)?;
                }
                Ok(sum)
            }
            1 => {
                let factor = Rational::from_integer((2 * g as i64 - 2 + rest.len() as i64).into());
                Ok(factor * self.get(g, rest)?)
            }
            _ => Err(PsiError::OracleIncomplete(describe(g, ds))),
        }
    }
}
