// SPDX-License-Identifier: Apache-2.0

//! Basic arid sets `{[u_r v_r^{l_r} ... u_1 v_1^{l_1} u_0]_k}` and
//! finite unions of them.
//!
//! Membership runs a small nondeterministic matcher over the digits of
//! `n` from the least significant end. Because a pattern word may start
//! with zeros that `(n)_k` lacks, a match succeeds when the digits of `n`
//! are consumed and the rest of the pattern can be completed with zeros
//! only.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::progression::{normalize, ExpSet, Progression};
use crate::digits::DigitWord;
use crate::error::{Error, Result};

/// Admissible pump counts `{offset + modulus * j : j >= 0}`; `modulus =
/// 0` admits `offset` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Restriction {
    pub offset: u64,
    pub modulus: u64,
}

impl Restriction {
    pub const ANY: Restriction = Restriction {
        offset: 0,
        modulus: 1,
    };

    pub fn new(offset: u64, modulus: u64) -> Restriction {
        Restriction { offset, modulus }
    }

    pub fn admits(&self, l: u64) -> bool {
        if self.modulus == 0 {
            l == self.offset
        } else {
            l >= self.offset && (l - self.offset).is_multiple_of(self.modulus)
        }
    }

    // Counts are folded so that the matcher's state space stays finite.
    fn fold(&self, l: u64) -> Option<u64> {
        if self.modulus == 0 {
            (l <= self.offset).then_some(l)
        } else if l >= self.offset + self.modulus {
            Some(self.offset + (l - self.offset) % self.modulus)
        } else {
            Some(l)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicAridSet {
    base: u32,
    u: Vec<DigitWord>,
    v: Vec<DigitWord>,
    restrictions: Vec<Restriction>,
}

impl BasicAridSet {
    /// `u = [u_0, ..., u_r]`, `v = [v_1, ..., v_r]`, unrestricted pumps.
    pub fn new(base: u32, u: Vec<DigitWord>, v: Vec<DigitWord>) -> Result<BasicAridSet> {
        let r = v.len();
        BasicAridSet::restricted(base, u, v, vec![Restriction::ANY; r])
    }

    pub fn restricted(
        base: u32,
        u: Vec<DigitWord>,
        v: Vec<DigitWord>,
        restrictions: Vec<Restriction>,
    ) -> Result<BasicAridSet> {
        crate::digits::check_base(base)?;
        if u.len() != v.len() + 1 || restrictions.len() != v.len() {
            return Err(Error::Malformed(format!(
                "basic arid set needs r+1 u-words and r v-words and restrictions, got {}, {}, {}",
                u.len(),
                v.len(),
                restrictions.len()
            )));
        }
        if u.iter().chain(&v).any(|w| w.base() != base) {
            return Err(Error::Malformed("words of mixed bases".into()));
        }
        Ok(BasicAridSet {
            base,
            u,
            v,
            restrictions,
        })
    }

    /// `{[u]_k}`.
    pub fn singleton(u: DigitWord) -> BasicAridSet {
        let base = u.base();
        BasicAridSet::new(base, vec![u], Vec::new()).expect("shape")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Number of pumped blocks.
    pub fn rank(&self) -> usize {
        self.v.len()
    }

    /// `u_0, ..., u_r`.
    pub fn u_words(&self) -> &[DigitWord] {
        &self.u
    }

    /// `v_1, ..., v_r`.
    pub fn v_words(&self) -> &[DigitWord] {
        &self.v
    }

    pub fn restrictions(&self) -> &[Restriction] {
        &self.restrictions
    }

    /// The word `u_r v_r^{l_r} ... v_1^{l_1} u_0` for `ls = [l_1, ..., l_r]`.
    pub fn word(&self, ls: &[u64]) -> DigitWord {
        assert_eq!(ls.len(), self.rank());
        let mut w = self.u[self.rank()].clone();
        for i in (0..self.rank()).rev() {
            w = w.concat(&self.v[i].repeat(ls[i] as usize)).concat(&self.u[i]);
        }
        w
    }

    fn matcher(&self) -> Matcher {
        let mut items = Vec::with_capacity(2 * self.rank() + 1);
        for j in 0..=self.rank() {
            items.push(Item::Lit(self.u[j].lsb_digits().collect()));
            if j < self.rank() {
                items.push(Item::Loop(self.v[j].lsb_digits().collect(), self.restrictions[j]));
            }
        }
        Matcher { items }
    }

    pub fn member(&self, n: &BigUint) -> bool {
        let digits = if n.bits() == 0 {
            Vec::new()
        } else {
            n.to_radix_le(self.base).into_iter().map(u32::from).collect()
        };
        self.matcher().matches(&digits)
    }

    /// Members `<= n`, ascending, without duplicates.
    pub fn enumerate(&self, n: u64) -> Vec<u64> {
        let matcher = self.matcher();
        let k = self.base as u128;
        let mut len = 0u32;
        while k.pow(len) <= n as u128 {
            len += 1;
        }
        let mut e = Enumerator {
            matcher: &matcher,
            k,
            limit: n as u128,
            len,
            out: Vec::new(),
        };
        e.go(0, 0, 0);
        let mut out: Vec<u64> = e.out.into_iter().map(|x| x as u64).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone)]
enum Item {
    Lit(Vec<u32>),
    Loop(Vec<u32>, Restriction),
}

// (item, position inside the item's word, folded pump count)
type Config = (usize, usize, u64);

struct Matcher {
    items: Vec<Item>,
}

impl Matcher {
    fn close(&self, start: impl IntoIterator<Item = Config>) -> BTreeSet<Config> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<Config> = start.into_iter().collect();
        while let Some(cfg) = stack.pop() {
            if !seen.insert(cfg) {
                continue;
            }
            let (i, pos, cnt) = cfg;
            match self.items.get(i) {
                None => {}
                Some(Item::Lit(w)) => {
                    if pos == w.len() {
                        stack.push((i + 1, 0, 0));
                    }
                }
                Some(Item::Loop(v, r)) => {
                    if pos == 0 && r.admits(cnt) {
                        stack.push((i + 1, 0, 0));
                    }
                    if pos == v.len() {
                        if let Some(c) = r.fold(cnt + 1) {
                            stack.push((i, 0, c));
                        }
                    }
                }
            }
        }
        seen
    }

    fn step(&self, set: &BTreeSet<Config>, digit: u32) -> BTreeSet<Config> {
        let next = set.iter().filter_map(|&(i, pos, cnt)| {
            let word = match self.items.get(i)? {
                Item::Lit(w) => w,
                Item::Loop(v, _) => v,
            };
            (pos < word.len() && word[pos] == digit).then_some((i, pos + 1, cnt))
        });
        self.close(next.collect::<Vec<_>>())
    }

    /// Whether some configuration reaches the end reading zeros only.
    fn zero_completable(&self, set: &BTreeSet<Config>) -> bool {
        let mut seen = set.clone();
        let mut queue: VecDeque<Config> = set.iter().copied().collect();
        while let Some(cfg) = queue.pop_front() {
            if cfg.0 == self.items.len() {
                return true;
            }
            let one = BTreeSet::from([cfg]);
            for next in self.step(&one, 0) {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        false
    }

    fn matches(&self, lsb_digits: &[u32]) -> bool {
        let mut set = self.close([(0, 0, 0)]);
        for &d in lsb_digits {
            set = self.step(&set, d);
            if set.is_empty() {
                return false;
            }
        }
        self.zero_completable(&set)
    }
}

fn lsb_value(digits: &[u32], k: u128) -> Option<u128> {
    let mut acc: u128 = 0;
    for &d in digits.iter().rev() {
        acc = acc.checked_mul(k)?.checked_add(d as u128)?;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc)
}

struct Enumerator<'a> {
    matcher: &'a Matcher,
    k: u128,
    limit: u128,
    // positions >= len only hold zeros in members <= limit
    len: u32,
    out: Vec<u128>,
}

impl Enumerator<'_> {
    fn shifted(&self, digits: &[u32], pos: u32) -> Option<u128> {
        lsb_value(digits, self.k)?.checked_mul(self.k.checked_pow(pos)?)
    }

    fn go(&mut self, i: usize, val: u128, pos: u32) {
        if i == self.matcher.items.len() {
            self.out.push(val);
            return;
        }
        if pos >= self.len {
            if self.matcher.zero_completable(&self.matcher.close([(i, 0, 0)])) {
                self.out.push(val);
            }
            return;
        }
        match &self.matcher.items[i] {
            Item::Lit(w) => {
                let Some(next) = self.shifted(w, pos).and_then(|a| a.checked_add(val)) else {
                    return;
                };
                if next <= self.limit {
                    self.go(i + 1, next, pos + w.len() as u32);
                }
            }
            Item::Loop(v, r) => {
                let (v, r) = (v.clone(), *r);
                if v.is_empty() {
                    self.go(i + 1, val, pos);
                    return;
                }
                let (mut l, mut val, mut pos) = (0u64, val, pos);
                loop {
                    if pos >= self.len {
                        let cfg = r.fold(l).map(|c| (i, 0, c));
                        if cfg.is_some_and(|c| self.matcher.zero_completable(&self.matcher.close([c]))) {
                            self.out.push(val);
                        }
                        return;
                    }
                    if r.admits(l) {
                        self.go(i + 1, val, pos);
                    }
                    if r.modulus == 0 && l >= r.offset {
                        return;
                    }
                    match self.shifted(&v, pos).and_then(|a| a.checked_add(val)) {
                        Some(next) if next <= self.limit => val = next,
                        _ => return,
                    }
                    pos += v.len() as u32;
                    l += 1;
                }
            }
        }
    }
}

/// A finite union of basic arid sets over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AridSet {
    base: u32,
    parts: Vec<BasicAridSet>,
}

impl AridSet {
    pub fn new(base: u32, parts: Vec<BasicAridSet>) -> AridSet {
        assert!(parts.iter().all(|p| p.base == base), "parts of mixed bases");
        AridSet { base, parts }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn parts(&self) -> &[BasicAridSet] {
        &self.parts
    }

    /// Largest rank of a part; 0 for the empty union.
    pub fn rank(&self) -> usize {
        self.parts.iter().map(|p| p.rank()).max().unwrap_or(0)
    }

    pub fn member(&self, n: &BigUint) -> bool {
        self.parts.iter().any(|p| p.member(n))
    }

    pub fn member_u64(&self, n: u64) -> bool {
        self.member(&BigUint::from(n))
    }

    pub fn enumerate(&self, n: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.parts.iter().flat_map(|p| p.enumerate(n)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl From<BasicAridSet> for AridSet {
    fn from(p: BasicAridSet) -> AridSet {
        AridSet::new(p.base, vec![p])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Containment {
    Contained,
    Counterexample(u64),
}

/// Checks `A ∩ [0, n] ⊆ B`; reports the least element of `A \ B`.
pub fn containment_oracle(a: &AridSet, b: &AridSet, n: u64) -> Containment {
    match a.enumerate(n).into_iter().find(|&x| !b.member_u64(x)) {
        Some(x) => Containment::Counterexample(x),
        None => Containment::Contained,
    }
}

/// Outcome of [`forbidden_pattern_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternForm {
    /// The set is this finite union of progressions `{x k^{c l}}`.
    Geometric(Vec<Progression>),
    /// The set contains `[w v^l u]_k` for every `l >= 0`, with `v`
    /// nonempty and either `[v]_k != 0` or both `[w]_k, [u]_k != 0`:
    /// no such family fits inside the support of a multiplicative
    /// automatic sequence.
    Forbidden {
        w: DigitWord,
        v: DigitWord,
        u: DigitWord,
    },
}

enum Block {
    Fixed(DigitWord),
    Star(DigitWord),
}

impl Block {
    fn word(&self) -> &DigitWord {
        match self {
            Block::Fixed(w) | Block::Star(w) => w,
        }
    }
}

/// Decides whether a basic arid set is a union of geometric
/// progressions or contains a forbidden family `[w v^l u]_k`.
///
/// Restricted pumps `v^{o + m j}` are first rewritten as a fixed `v^o`
/// followed by a free pump of `v^m`. A free pump of a nonzero word, or of
/// a zero word with nonzero digits on both sides, is forbidden. Otherwise
/// all nonzero digits sit in one fixed stretch of value `x`, the pumps
/// below it are zero blocks, and the set is `{x k^e : e in E}` with `E`
/// a shifted numerical semigroup.
pub fn forbidden_pattern_check(a: &BasicAridSet) -> PatternForm {
    let base = a.base;
    // most significant first
    let mut blocks: Vec<Block> = Vec::new();
    let push_fixed = |blocks: &mut Vec<Block>, w: DigitWord| match blocks.last_mut() {
        Some(Block::Fixed(prev)) => *prev = prev.concat(&w),
        _ => blocks.push(Block::Fixed(w)),
    };
    push_fixed(&mut blocks, a.u[a.rank()].clone());
    for i in (0..a.rank()).rev() {
        let (v, r) = (&a.v[i], a.restrictions[i]);
        push_fixed(&mut blocks, v.repeat(r.offset as usize));
        if r.modulus > 0 && !v.is_empty() {
            blocks.push(Block::Star(v.repeat(r.modulus as usize)));
        }
        push_fixed(&mut blocks, a.u[i].clone());
    }
    let nonzero: Vec<usize> = (0..blocks.len())
        .filter(|&i| !blocks[i].word().is_zero())
        .collect();
    let (Some(&hi), Some(&lo)) = (nonzero.first(), nonzero.last()) else {
        return PatternForm::Geometric(vec![Progression::new(0u32, 0)]);
    };
    let fixed_concat = |range: &[Block]| {
        range.iter().fold(DigitWord::empty(base), |acc, b| match b {
            Block::Fixed(w) => acc.concat(w),
            Block::Star(_) => acc,
        })
    };
    // a nonzero pump if there is one; a zero pump between hi and lo
    // otherwise, which then has nonzero fixed digits on both sides
    let is_star = |i: &usize| matches!(blocks[*i], Block::Star(_));
    let star = nonzero
        .iter()
        .copied()
        .find(is_star)
        .or_else(|| (hi..=lo).find(is_star));
    if let Some(s) = star {
        return PatternForm::Forbidden {
            w: fixed_concat(&blocks[..s]),
            v: blocks[s].word().clone(),
            u: fixed_concat(&blocks[s + 1..]),
        };
    }
    let x = fixed_concat(&blocks[hi..=lo]).value();
    let below = &blocks[lo + 1..];
    let shift: u64 = below
        .iter()
        .filter_map(|b| match b {
            Block::Fixed(w) => Some(w.len() as u64),
            Block::Star(_) => None,
        })
        .sum();
    let gens: Vec<u64> = below
        .iter()
        .filter_map(|b| match b {
            Block::Star(w) => Some(w.len() as u64),
            Block::Fixed(_) => None,
        })
        .collect();
    let exps = ExpSet::semigroup(&gens).shift(shift);
    let k = BigUint::from(base);
    let progs: Vec<Progression> = exps
        .cover()
        .into_iter()
        .map(|(e, c)| Progression {
            x: &x * k.pow(e as u32),
            c,
        })
        .collect();
    PatternForm::Geometric(normalize(base, &progs))
}

#[derive(Serialize, Deserialize)]
struct PartRepr {
    u: Vec<String>,
    v: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    restrictions: Option<Vec<Restriction>>,
}

#[derive(Serialize, Deserialize)]
struct SetRepr {
    base: u32,
    parts: Vec<PartRepr>,
}

impl PartRepr {
    fn of(p: &BasicAridSet) -> PartRepr {
        let restricted = p.restrictions.iter().any(|r| *r != Restriction::ANY);
        PartRepr {
            u: p.u.iter().map(|w| w.to_string()).collect(),
            v: p.v.iter().map(|w| w.to_string()).collect(),
            restrictions: restricted.then(|| p.restrictions.clone()),
        }
    }

    fn build(self, base: u32) -> Result<BasicAridSet> {
        let parse = |ws: Vec<String>| -> Result<Vec<DigitWord>> {
            ws.iter().map(|w| DigitWord::parse(w, base)).collect()
        };
        let u = parse(self.u)?;
        let v = parse(self.v)?;
        let r = v.len();
        let restrictions = self.restrictions.unwrap_or_else(|| vec![Restriction::ANY; r]);
        BasicAridSet::restricted(base, u, v, restrictions)
    }
}

impl Serialize for AridSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetRepr {
            base: self.base,
            parts: self.parts.iter().map(PartRepr::of).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AridSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SetRepr::deserialize(d)?;
        let parts = repr
            .parts
            .into_iter()
            .map(|p| p.build(repr.base))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(AridSet::new(repr.base, parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str, k: u32) -> DigitWord {
        DigitWord::parse(s, k).unwrap()
    }

    fn powers_of_two() -> BasicAridSet {
        BasicAridSet::new(2, vec![w("", 2), w("1", 2)], vec![w("0", 2)]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let a = powers_of_two();
        assert!(a.member(&BigUint::from(8u32)));
        assert!(!a.member(&BigUint::from(6u32)));
        assert!(!a.member(&BigUint::from(0u32)));
        let s = BasicAridSet::singleton(w("0102", 3));
        assert!(s.member(&BigUint::from(11u32)));
        assert!(!s.member(&BigUint::from(12u32)));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(AridSet::from(powers_of_two()).enumerate(40), vec![1, 2, 4, 8, 16, 32]);
        assert!(AridSet::new(2, vec![]).enumerate(100).is_empty());
        let zeros = BasicAridSet::new(2, vec![w("", 2), w("", 2)], vec![w("0", 2)]).unwrap();
        assert_eq!(zeros.enumerate(10), vec![0]);
    }

    #[test]
    fn restricted_pumps() {
        // 1 (01)^{1 + 2j} in base 2: 1 01, 1 010101, ...
        let a = BasicAridSet::restricted(
            2,
            vec![w("", 2), w("1", 2)],
            vec![w("01", 2)],
            vec![Restriction::new(1, 2)],
        )
        .unwrap();
        let brute: Vec<u64> = (0..4u64)
            .map(|l| a.word(&[l]).value().try_into().unwrap())
            .enumerate()
            .filter(|(l, _)| a.restrictions()[0].admits(*l as u64))
            .map(|(_, x)| x)
            .collect();
        assert_eq!(a.enumerate(1 << 8), brute.into_iter().filter(|&x| x <= 256).collect::<Vec<_>>());
        let fixed = BasicAridSet::restricted(2, vec![w("1", 2), w("1", 2)], vec![w("0", 2)], vec![Restriction::new(3, 0)])
            .unwrap();
        assert_eq!(fixed.enumerate(1000), vec![0b10001]);
    }

    #[test]
    fn containment_examples() {
        let a = AridSet::from(powers_of_two());
        assert_eq!(containment_oracle(&a, &a, 10_000), Containment::Contained);
        let one = AridSet::from(BasicAridSet::singleton(w("1", 2)));
        assert_eq!(containment_oracle(&a, &one, 4), Containment::Counterexample(2));
    }

    #[test]
    fn pattern_forms() {
        assert_eq!(
            forbidden_pattern_check(&powers_of_two()),
            PatternForm::Geometric(vec![Progression::new(1u32, 1)])
        );
        let a = BasicAridSet::new(2, vec![w("", 2), w("1", 2)], vec![w("01", 2)]).unwrap();
        assert_eq!(
            forbidden_pattern_check(&a),
            PatternForm::Forbidden { w: w("1", 2), v: w("01", 2), u: w("", 2) }
        );
        assert_eq!(
            forbidden_pattern_check(&BasicAridSet::singleton(w("12", 3))),
            PatternForm::Geometric(vec![Progression::new(5u32, 0)])
        );
        // zero pump between nonzero digits: 1 0^l 1
        let a = BasicAridSet::new(2, vec![w("1", 2), w("1", 2)], vec![w("0", 2)]).unwrap();
        assert!(matches!(forbidden_pattern_check(&a), PatternForm::Forbidden { .. }));
        // 3 (00)^l 0^l' in base 10: 3 * 10^e for every e
        let a = BasicAridSet::new(10, vec![w("", 10), w("", 10), w("3", 10)], vec![w("0", 10), w("00", 10)]).unwrap();
        assert_eq!(forbidden_pattern_check(&a), PatternForm::Geometric(vec![Progression::new(3u32, 1)]));
    }

    fn arb_set(k: u32) -> impl Strategy<Value = BasicAridSet> {
        let word = proptest::collection::vec(0..k, 0..3)
            .prop_map(move |d| DigitWord::new(k, d).unwrap());
        (0usize..3)
            .prop_flat_map(move |r| {
                (
                    proptest::collection::vec(word.clone(), r + 1),
                    proptest::collection::vec(word.clone(), r),
                    proptest::collection::vec((0u64..3, 0u64..3), r),
                )
            })
            .prop_map(move |(u, v, rs)| {
                let rs = rs.into_iter().map(|(o, m)| Restriction::new(o, m)).collect();
                BasicAridSet::restricted(k, u, v, rs).unwrap()
            })
    }

    /// Brute force: all words with pump counts up to a cap.
    fn brute_enumerate(a: &BasicAridSet, n: u64, cap: u64) -> Vec<u64> {
        let r = a.rank();
        let mut out = Vec::new();
        let mut ls = vec![0u64; r];
        loop {
            if ls.iter().zip(a.restrictions()).all(|(&l, rr)| rr.admits(l)) {
                let x = a.word(&ls).value();
                if x <= BigUint::from(n) {
                    out.push(u64::try_from(x).unwrap());
                }
            }
            let mut i = 0;
            while i < r {
                ls[i] += 1;
                if ls[i] <= cap {
                    break;
                }
                ls[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn member_agrees_with_enumerate((_k, set) in (2u32..5).prop_flat_map(|k| (Just(k), arb_set(k)))) {
            let n = 600;
            let listed = set.enumerate(n);
            let members: Vec<u64> = (0..=n).filter(|&x| set.member(&BigUint::from(x))).collect();
            prop_assert_eq!(&listed, &members);
            prop_assert_eq!(listed, brute_enumerate(&set, n, 12));
        }

        #[test]
        fn geometric_forms_round_trip((k, set) in (2u32..5).prop_flat_map(|k| (Just(k), arb_set(k)))) {
            let n = 5000;
            match forbidden_pattern_check(&set) {
                PatternForm::Geometric(progs) => {
                    let mut from_progs: Vec<u64> = progs.iter().flat_map(|p| p.enumerate(k, n)).collect();
                    from_progs.sort_unstable();
                    from_progs.dedup();
                    prop_assert_eq!(from_progs, set.enumerate(n));
                }
                PatternForm::Forbidden { w, v, u } => {
                    prop_assert!(!v.is_empty());
                    prop_assert!(v.value() != BigUint::from(0u32) || (w.value() != BigUint::from(0u32) && u.value() != BigUint::from(0u32)));
                    for l in 0..6 {
                        let x = w.concat(&v.repeat(l)).concat(&u).value();
                        prop_assert!(set.member(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let set = AridSet::new(
            2,
            vec![
                powers_of_two(),
                BasicAridSet::restricted(2, vec![w("1", 2), w("11", 2)], vec![w("0", 2)], vec![Restriction::new(2, 3)]).unwrap(),
            ],
        );
        let text = serde_json::to_string(&set).unwrap();
        let back: AridSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, set);
        let bad = r#"{"base":2,"parts":[{"u":["2"],"v":[]}]}"#;
        assert!(serde_json::from_str::<AridSet>(bad).is_err());
    }
}
