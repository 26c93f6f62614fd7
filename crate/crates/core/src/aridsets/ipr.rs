// SPDX-License-Identifier: Apache-2.0

//! `IP_r^+` sets `{n_0 + sum_{i in I} n_i : I ⊆ [r]}` and their residues.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `r` for which subsets are enumerated one by one.
pub const MAX_ENUMERATE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IprSet {
    pub n0: u64,
    pub sides: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IprStrategy {
    /// Enumerate subsets when `r <= 20`, otherwise build the sumset.
    #[default]
    Auto,
    /// Always enumerate subsets; fails for `r > 20`.
    Enumerate,
}

impl IprSet {
    pub fn new(n0: u64, sides: Vec<u64>) -> Result<IprSet> {
        if sides.contains(&0) {
            return Err(Error::Malformed("sidelengths must be positive".into()));
        }
        Ok(IprSet { n0, sides })
    }

    pub fn rank(&self) -> usize {
        self.sides.len()
    }

    /// Whether every sidelength is coprime to `m`, so that
    /// `#(A mod m) >= min(m, r + 1)` applies.
    pub fn hypothesis_holds(&self, m: u64) -> bool {
        self.sides.iter().all(|s| s.gcd(&m) == 1)
    }

    pub fn residue_bound(&self, m: u64) -> u64 {
        m.min(self.rank() as u64 + 1)
    }
}

/// The residues of `A` modulo `m >= 1`, ascending.
pub fn ipr_residues(a: &IprSet, m: u64, strategy: IprStrategy) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::OutOfRange("modulus must be positive".into()));
    }
    let r = a.rank();
    let enumerate = match strategy {
        IprStrategy::Enumerate if r > MAX_ENUMERATE => {
            return Err(Error::TooLarge(format!(
                "{r} sidelengths exceed the enumeration limit {MAX_ENUMERATE}"
            )))
        }
        IprStrategy::Enumerate => true,
        IprStrategy::Auto => r <= MAX_ENUMERATE,
    };
    if m > 1 << 26 {
        return Err(Error::TooLarge(format!("modulus {m}")));
    }
    let sides: Vec<u64> = a.sides.iter().map(|s| s % m).collect();
    let mut hit = vec![false; m as usize];
    if enumerate {
        for mask in 0u64..(1 << r) {
            let s = (0..r)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(a.n0 % m, |acc, i| (acc + sides[i]) % m);
            hit[s as usize] = true;
        }
    } else {
        hit[(a.n0 % m) as usize] = true;
        for &s in &sides {
            let prev = hit.clone();
            for (x, &h) in prev.iter().enumerate() {
                if h {
                    hit[((x as u64 + s) % m) as usize] = true;
                }
            }
        }
    }
    Ok((0..m).filter(|&x| hit[x as usize]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let a = IprSet::new(0, vec![1, 2]).unwrap();
        assert_eq!(ipr_residues(&a, 5, IprStrategy::Auto).unwrap(), vec![0, 1, 2, 3]);
        let a = IprSet::new(7, vec![]).unwrap();
        assert_eq!(ipr_residues(&a, 4, IprStrategy::Auto).unwrap(), vec![3]);
        let a = IprSet::new(1, vec![6, 12, 18]).unwrap();
        assert!(!a.hypothesis_holds(6));
        assert_eq!(ipr_residues(&a, 6, IprStrategy::Auto).unwrap(), vec![1]);
        assert!(IprSet::new(0, vec![0]).is_err());
        let big = IprSet::new(0, vec![1; 21]).unwrap();
        assert!(ipr_residues(&big, 7, IprStrategy::Enumerate).is_err());
        assert_eq!(ipr_residues(&big, 7, IprStrategy::Auto).unwrap().len(), 7);
    }

    proptest! {
        #[test]
        fn strategies_agree(n0 in 0u64..1000, sides in proptest::collection::vec(1u64..1000, 0..10), m in 1u64..60) {
            let a = IprSet::new(n0, sides).unwrap();
            let enumerated = ipr_residues(&a, m, IprStrategy::Enumerate).unwrap();
            let mut hit = vec![false; m as usize];
            hit[(n0 % m) as usize] = true;
            for &s in &a.sides {
                let prev = hit.clone();
                for (x, &h) in prev.iter().enumerate() {
                    if h { hit[(x + (s % m) as usize) % m as usize] = true; }
                }
            }
            let sumset: Vec<u64> = (0..m).filter(|&x| hit[x as usize]).collect();
            prop_assert_eq!(enumerated, sumset);
        }
    }
}
