// SPDX-License-Identifier: Apache-2.0

//! Vanishing sums `sum x_i k^{alpha_i} = 0` split into vanishing groups
//! of bounded exponent diameter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Group {
    /// Zero-based term indices, ascending.
    pub members: Vec<usize>,
    /// Reference exponent: `|gamma - alpha_i| < C` for every member.
    pub gamma: u64,
}

fn term(base: u32, x: &BigRational, alpha: u64) -> BigRational {
    x * BigRational::from_integer(BigInt::from(base).pow(alpha as u32))
}

/// Finds a partition of the terms into groups whose sums vanish and whose
/// exponents lie within `c - 1` of each other. Among admissible
/// partitions one with the fewest groups is returned (the first in
/// restricted-growth order); `Ok(None)` when none exists for this `c`.
pub fn vanishing_partition(
    base: u32,
    x: &[BigRational],
    alpha: &[u64],
    c: u64,
) -> Result<Option<Vec<Group>>> {
    crate::digits::check_base(base)?;
    if x.len() != alpha.len() {
        return Err(Error::Malformed("coefficient and exponent counts differ".into()));
    }
    let r = x.len();
    if r > MAX_TERMS {
        return Err(Error::TooLarge(format!("{r} terms exceed {MAX_TERMS}")));
    }
    let terms: Vec<BigRational> = x.iter().zip(alpha).map(|(x, &a)| term(base, x, a)).collect();
    let total: BigRational = terms.iter().sum();
    if !total.is_zero() {
        return Err(Error::Hypothesis(format!("sum is {total}, not 0")));
    }
    if r == 0 {
        return Ok(Some(Vec::new()));
    }
    let group_ok = |members: &[usize]| {
        let sum: BigRational = members.iter().map(|&i| &terms[i]).sum();
        let lo = members.iter().map(|&i| alpha[i]).min().unwrap();
        let hi = members.iter().map(|&i| alpha[i]).max().unwrap();
        sum.is_zero() && hi - lo < c
    };
    let mut best: Option<Vec<Vec<usize>>> = None;
    // restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; r];
    loop {
        let groups = 1 + *rgs.iter().max().unwrap();
        if best.as_ref().is_none_or(|b| groups < b.len()) {
            let mut parts = vec![Vec::new(); groups];
            for (i, &g) in rgs.iter().enumerate() {
                parts[g].push(i);
            }
            if parts.iter().all(|p| group_ok(p)) {
                best = Some(parts);
            }
        }
        let mut i = r - 1;
        loop {
            if i == 0 {
                return Ok(best.map(|parts| {
                    parts
                        .into_iter()
                        .map(|members| Group {
                            gamma: members.iter().map(|&i| alpha[i]).min().unwrap(),
                            members,
                        })
                        .collect()
                }));
            }
            let cap = 1 + *rgs[..i].iter().max().unwrap();
            if rgs[i] < cap {
                rgs[i] += 1;
                for j in i + 1..r {
                    rgs[j] = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Replays a partition: every group sums to zero with diameter `< c`,
/// and the groups partition the index set.
pub fn partition_replays(base: u32, x: &[BigRational], alpha: &[u64], c: u64, groups: &[Group]) -> bool {
    let mut seen = vec![false; x.len()];
    for g in groups {
        let sum: BigRational = g.members.iter().map(|&i| term(base, &x[i], alpha[i])).sum();
        if !sum.is_zero() {
            return false;
        }
        for &i in &g.members {
            if i >= x.len() || seen[i] || alpha[i].abs_diff(g.gamma) >= c {
                return false;
            }
            seen[i] = true;
        }
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn examples() {
        let x = [q(1), q(-10)];
        let got = vanishing_partition(10, &x, &[5, 4], 2).unwrap().unwrap();
        assert_eq!(got, vec![Group { members: vec![0, 1], gamma: 4 }]);
        assert!(vanishing_partition(10, &[q(3)], &[2], 5).is_err());
        let x = [q(1), q(-10), q(1), q(-10)];
        let a = [5, 4, 105, 104];
        let got = vanishing_partition(10, &x, &a, 2).unwrap().unwrap();
        assert_eq!(got.iter().map(|g| g.members.clone()).collect::<Vec<_>>(), vec![vec![0, 1], vec![2, 3]]);
        assert!(partition_replays(10, &x, &a, 2, &got));
        // diameter 1 is not < 1
        assert_eq!(vanishing_partition(10, &x[..2], &a[..2], 1).unwrap(), None);
    }

    #[test]
    fn fewest_groups_preferred() {
        // 1 - 2 + 1 at equal exponents: one group of three beats nothing
        // smaller since no proper subset vanishes
        let x = [q(1), q(-2), q(1)];
        let got = vanishing_partition(3, &x, &[0, 0, 0], 1).unwrap().unwrap();
        assert_eq!(got.len(), 1);
        // two vanishing pairs at the same exponent: a single group wins
        let x = [q(1), q(-1), q(2), q(-2)];
        let got = vanishing_partition(2, &x, &[3, 3, 3, 3], 1).unwrap().unwrap();
        assert_eq!(got.len(), 1);
    }
}
