// SPDX-License-Identifier: Apache-2.0

//! Geometric progressions `{x k^{c l} : l >= 0}` and eventually periodic
//! exponent sets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `{x k^{c l} : l >= 0}`; `c = 0` is the single point `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Progression {
    #[serde(with = "big_text")]
    pub x: BigUint,
    pub c: u64,
}

pub(crate) mod big_text {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        use serde::de::Error as _;
        String::deserialize(d)?
            .parse()
            .map_err(|_| D::Error::custom("expected a decimal integer"))
    }
}

impl Progression {
    pub fn new(x: impl Into<BigUint>, c: u64) -> Progression {
        Progression { x: x.into(), c }
    }

    pub fn is_degenerate(&self) -> bool {
        self.c == 0 || self.x.is_zero()
    }

    /// Members `<= n`, ascending.
    pub fn enumerate(&self, base: u32, n: u64) -> Vec<u64> {
        let Some(mut cur) = self.x.to_u64() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if cur > n {
            return out;
        }
        out.push(cur);
        if self.is_degenerate() {
            return out;
        }
        let Some(ratio) = u32::try_from(self.c).ok().and_then(|c| (base as u128).checked_pow(c)) else {
            return out;
        };
        loop {
            let next = (cur as u128).saturating_mul(ratio);
            if next > n as u128 {
                return out;
            }
            cur = next as u64;
            out.push(cur);
        }
    }

    pub fn contains(&self, base: u32, n: &BigUint) -> bool {
        if n == &self.x {
            return true;
        }
        if self.is_degenerate() || n < &self.x || !(n % &self.x).is_zero() {
            return false;
        }
        let mut q = n / &self.x;
        let ratio = BigUint::from(base).pow(self.c as u32);
        while q > BigUint::one() {
            let (d, r) = q.div_rem(&ratio);
            if !r.is_zero() {
                return false;
            }
            q = d;
        }
        true
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.c)
    }
}

/// An eventually periodic set of nonnegative integers: membership below
/// `threshold` is listed in `head`, and from `threshold` on it repeats
/// with `period` following `tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpSet {
    head: Vec<bool>,
    tail: Vec<bool>,
}

impl ExpSet {
    pub fn empty() -> ExpSet {
        ExpSet {
            head: Vec::new(),
            tail: vec![false],
        }
    }

    pub fn point(e: u64) -> ExpSet {
        let mut head = vec![false; e as usize + 1];
        head[e as usize] = true;
        ExpSet::from_parts(head, vec![false])
    }

    /// `{e : e >= 0}` shifted by `start` with step `step >= 1`.
    pub fn progression(start: u64, step: u64) -> ExpSet {
        let mut tail = vec![false; step as usize];
        tail[0] = true;
        ExpSet::from_parts(vec![false; start as usize], tail)
    }

    fn from_parts(head: Vec<bool>, tail: Vec<bool>) -> ExpSet {
        assert!(!tail.is_empty());
        ExpSet { head, tail }.canonical()
    }

    pub fn threshold(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.tail.len() as u64
    }

    pub fn contains(&self, e: u64) -> bool {
        let t = self.threshold();
        if e < t {
            self.head[e as usize]
        } else {
            self.tail[((e - t) % self.period()) as usize]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.head.iter().chain(&self.tail).any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.tail.iter().any(|&b| b)
    }

    /// Minimal period, then minimal threshold.
    fn canonical(self) -> ExpSet {
        let p = self.tail.len();
        let mut best = p;
        for d in 1..p {
            if p.is_multiple_of(d) && (0..p).all(|i| self.tail[i] == self.tail[i % d]) {
                best = d;
                break;
            }
        }
        let mut head = self.head;
        let mut tail: Vec<bool> = self.tail[..best].to_vec();
        while let Some(&last) = head.last() {
            if last != tail[best - 1] {
                break;
            }
            head.pop();
            tail.rotate_right(1);
        }
        ExpSet { head, tail }
    }

    fn expand(&self, threshold: u64, period: u64) -> ExpSet {
        let head = (0..threshold).map(|e| self.contains(e)).collect();
        let tail = (0..period).map(|i| self.contains(threshold + i)).collect();
        ExpSet { head, tail }
    }

    pub fn union(&self, other: &ExpSet) -> ExpSet {
        let t = self.threshold().max(other.threshold());
        let p = self.period().lcm(&other.period());
        let a = self.expand(t, p);
        let b = other.expand(t, p);
        ExpSet::from_parts(
            a.head.iter().zip(&b.head).map(|(x, y)| *x || *y).collect(),
            a.tail.iter().zip(&b.tail).map(|(x, y)| *x || *y).collect(),
        )
    }

    pub fn shift(&self, a: u64) -> ExpSet {
        let mut head = vec![false; a as usize];
        head.extend_from_slice(&self.head);
        ExpSet::from_parts(head, self.tail.clone())
    }

    /// The additive monoid generated by `gens` (`{0}` when empty).
    pub fn semigroup(gens: &[u64]) -> ExpSet {
        let gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return ExpSet::point(0);
        }
        let g = gens.iter().fold(0, |acc, &x| acc.gcd(&x));
        let max = *gens.iter().max().unwrap();
        // every multiple of g beyond max^2 is representable
        let bound = (max * max) as usize;
        let mut reach = vec![false; bound + g as usize];
        reach[0] = true;
        for e in 0..reach.len() {
            if reach[e] {
                for &x in &gens {
                    if e + (x as usize) < reach.len() {
                        reach[e + x as usize] = true;
                    }
                }
            }
        }
        let tail = reach.split_off(bound);
        ExpSet::from_parts(reach, tail)
    }

    /// Members below `limit`.
    pub fn members_below(&self, limit: u64) -> Vec<u64> {
        (0..limit).filter(|&e| self.contains(e)).collect()
    }

    /// Whether `{e + c l : l >= 0}` lies inside the set.
    fn admits(&self, e: u64, c: u64) -> bool {
        if c == 0 {
            return self.contains(e);
        }
        // enough steps to pass the threshold and cycle through residues
        let steps = self.threshold() / c + self.period() + 1;
        (0..=steps).all(|l| self.contains(e + c * l))
    }

    /// A finite family of `(e, c)` with `{e + c l}` inside the set whose
    /// union is the set. Exponents are taken in increasing order, each not
    /// yet covered one with the least admissible `c >= 1` (or `c = 0`).
    pub fn cover(&self) -> Vec<(u64, u64)> {
        let t = self.threshold();
        let p = self.period();
        let window = t + p;
        let mut covered = vec![false; window as usize];
        let mut out: Vec<(u64, u64)> = Vec::new();
        for e in 0..window {
            if covered[e as usize] || !self.contains(e) {
                continue;
            }
            let c = (1..=window).find(|&c| self.admits(e, c)).unwrap_or(0);
            out.push((e, c));
            if c == 0 {
                covered[e as usize] = true;
            } else {
                let mut x = e;
                while x < window {
                    covered[x as usize] = true;
                    x += c;
                }
            }
        }
        for e in t..window {
            if !self.contains(e) {
                continue;
            }
            let whole = out
                .iter()
                .any(|&(e1, c)| c > 0 && p.is_multiple_of(c) && e1 <= e && (e - e1) % c == 0);
            if !whole {
                out.push((e, p));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Canonical form of a finite union of progressions: grouped by the
/// `k`-free part `y` of `x = y k^e`, exponent sets merged and re-covered,
/// sorted by `(x, c)`.
pub fn normalize(base: u32, progs: &[Progression]) -> Vec<Progression> {
    let k = BigUint::from(base);
    let mut groups: BTreeMap<BigUint, ExpSet> = BTreeMap::new();
    let mut has_zero = false;
    for p in progs {
        if p.x.is_zero() {
            has_zero = true;
            continue;
        }
        let mut y = p.x.clone();
        let mut e = 0u64;
        loop {
            let (q, r) = y.div_rem(&k);
            if !r.is_zero() {
                break;
            }
            y = q;
            e += 1;
        }
        let set = if p.c == 0 {
            ExpSet::point(e)
        } else {
            ExpSet::progression(e, p.c)
        };
        let entry = groups.entry(y).or_insert_with(ExpSet::empty);
        *entry = entry.union(&set);
    }
    let mut out = Vec::new();
    if has_zero {
        out.push(Progression::new(0u32, 0));
    }
    for (y, set) in groups {
        for (e, c) in set.cover() {
            out.push(Progression {
                x: &y * k.pow(e as u32),
                c,
            });
        }
    }
    out.sort();
    out.dedup();
    out
}
