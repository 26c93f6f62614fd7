// SPDX-License-Identifier: Apache-2.0

//! Transition maps, the transition monoid and word equivalence.

use std::collections::HashMap;

use num_integer::Integer;

use super::Dfao;
use crate::digits::DigitWord;
use crate::error::{Error, Result};

/// Upper bound on the size of an enumerated transition monoid.
pub const MAX_MONOID: usize = 1 << 20;

/// The self-map `delta_u` of the state set, with a shortest word `u`
/// inducing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateMap {
    mapping: Vec<u32>,
    witness: DigitWord,
}

impl StateMap {
    pub fn identity(d: &Dfao) -> StateMap {
        StateMap {
            mapping: (0..d.num_states() as u32).collect(),
            witness: DigitWord::empty(d.base()),
        }
    }

    pub fn digit(d: &Dfao, c: u32) -> StateMap {
        StateMap {
            mapping: (0..d.num_states()).map(|s| d.step(s, c) as u32).collect(),
            witness: DigitWord::new(d.base(), vec![c]).expect("digit below base"),
        }
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn witness(&self) -> &DigitWord {
        &self.witness
    }

    pub fn apply(&self, state: usize) -> usize {
        self.mapping[state] as usize
    }

    /// `self . inner`: apply `inner` first. The witness is the
    /// concatenation `self.witness inner.witness`.
    pub fn compose(&self, inner: &StateMap) -> StateMap {
        StateMap {
            mapping: compose(&self.mapping, &inner.mapping),
            witness: self.witness.concat(&inner.witness),
        }
    }
}

pub(crate) fn compose(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&s| outer[s as usize]).collect()
}

/// `delta_u` for a word `u`, most-significant digit first.
pub fn transition_of_word(d: &Dfao, u: &DigitWord) -> Result<StateMap> {
    let mut mapping: Vec<u32> = (0..d.num_states() as u32).collect();
    for c in u.lsb_digits() {
        if c >= d.base() {
            return Err(Error::DigitOutOfRange {
                digit: c,
                base: d.base(),
            });
        }
        for m in mapping.iter_mut() {
            *m = d.step(*m as usize, c) as u32;
        }
    }
    Ok(StateMap {
        mapping,
        witness: DigitWord::new(d.base(), u.digits().to_vec())?,
    })
}

/// All maps `delta_u`, `u` ranging over words, in breadth-first order of
/// their shortest witnesses. The identity (empty word) comes first.
pub fn transition_monoid(d: &Dfao) -> Result<Vec<StateMap>> {
    let letters: Vec<StateMap> = (0..d.base()).map(|c| StateMap::digit(d, c)).collect();
    let identity = StateMap::identity(d);
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    seen.insert(identity.mapping.clone(), 0);
    let mut elements = vec![identity];
    let mut i = 0;
    while i < elements.len() {
        for letter in &letters {
            let next = letter.compose(&elements[i]);
            if !seen.contains_key(&next.mapping) {
                if elements.len() >= MAX_MONOID {
                    return Err(Error::TooLarge(format!(
                        "transition monoid exceeds {MAX_MONOID} elements"
                    )));
                }
                seen.insert(next.mapping.clone(), elements.len());
                elements.push(next);
            }
        }
        i += 1;
    }
    Ok(elements)
}

/// `(index, period)` of the power sequence `f, f^2, f^3, ...`: the least
/// `i >= 1`, `p >= 1` with `f^{i+p} = f^i`.
pub(crate) fn index_and_period(f: &[u32]) -> (u64, u64) {
    let mut seen: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut power = f.to_vec();
    let mut e = 1u64;
    loop {
        if let Some(&first) = seen.get(&power) {
            return (first, e - first);
        }
        seen.insert(power.clone(), e);
        power = compose(f, &power);
        e += 1;
    }
}

/// Least `M >= 1` with `f^{2M} = f^M` for every `f` in the transition
/// monoid, i.e. every `delta_v^M` is idempotent.
pub fn idempotent_exponent(d: &Dfao) -> Result<u64> {
    let mut period_lcm = 1u64;
    let mut max_index = 1u64;
    for f in transition_monoid(d)? {
        let (index, period) = index_and_period(&f.mapping);
        max_index = max_index.max(index);
        period_lcm = checked_lcm(period_lcm, period)?;
    }
    let m = max_index.div_ceil(period_lcm) * period_lcm;
    Ok(m)
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    (a / a.gcd(&b))
        .checked_mul(b)
        .ok_or_else(|| Error::TooLarge("idempotent exponent overflows u64".into()))
}

/// Preperiod and period of `delta_0^j`, `j = 0, 1, 2, ...`.
fn zero_powers(d: &Dfao) -> (usize, usize, Vec<Vec<u32>>) {
    let zero = StateMap::digit(d, 0).mapping;
    let mut powers: Vec<Vec<u32>> = vec![(0..d.num_states() as u32).collect()];
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    seen.insert(powers[0].clone(), 0);
    loop {
        let next = compose(&zero, powers.last().unwrap());
        if let Some(&j) = seen.get(&next) {
            let period = powers.len() - j;
            return (j, period, powers);
        }
        seen.insert(next.clone(), powers.len());
        powers.push(next);
    }
}

/// Canonical key of the class of `n` under `n1 ~ n2`, meaning
/// `delta_{(n1)_k^l} = delta_{(n2)_k^l}` for all sufficiently large `l`.
///
/// With `t` the preperiod and `p` the period of `delta_0^j`, the key is
/// `delta_0^j . delta_{(n)_k}` for the least `j >= t` making
/// `|(n)_k| + j` divisible by `p`.
pub fn equivalence_class(d: &Dfao, n: u64) -> Vec<u32> {
    ClassKeys::new(d).key(d, n)
}

struct ClassKeys {
    preperiod: usize,
    period: usize,
    zero_powers: Vec<Vec<u32>>,
}

impl ClassKeys {
    fn new(d: &Dfao) -> ClassKeys {
        let (preperiod, period, zero_powers) = zero_powers(d);
        ClassKeys {
            preperiod,
            period,
            zero_powers,
        }
    }

    fn key(&self, d: &Dfao, n: u64) -> Vec<u32> {
        let k = d.base() as u64;
        let mut mapping: Vec<u32> = (0..d.num_states() as u32).collect();
        let mut len = 0usize;
        let mut rest = n;
        while rest > 0 {
            let c = (rest % k) as u32;
            for m in mapping.iter_mut() {
                *m = d.step(*m as usize, c) as u32;
            }
            rest /= k;
            len += 1;
        }
        let shift = (self.period - (len + self.preperiod) % self.period) % self.period;
        let pad = self.preperiod + shift;
        let idx = if pad < self.zero_powers.len() {
            pad
        } else {
            self.preperiod + (pad - self.preperiod) % self.period
        };
        compose(&self.zero_powers[idx], &mapping)
    }
}

/// `n1 ~ n2`: their padded expansions induce the same transition map for
/// some (equivalently, every sufficiently large) common length.
pub fn int_equiv(d: &Dfao, n1: u64, n2: u64) -> bool {
    let keys = ClassKeys::new(d);
    keys.key(d, n1) == keys.key(d, n2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivPair {
    pub n1: u64,
    pub n2: u64,
}

/// Searches `n = 0, 1, ..., bound - 1` for `n1 < n2` with
/// `n1 != n2 (mod p)`, `n1 ~ n2` and `p n1 ~ p n2`, pigeonholing on the
/// pair of classes `(class(n), class(p n))`.
///
/// Returns `Err(Error::TooLarge)` carrying the bound when nothing turns up.
pub fn equiv_pair_search(d: &Dfao, p: u64, bound: u64) -> Result<EquivPair> {
    if !crate::numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let keys = ClassKeys::new(d);
    let mut first: HashMap<(Vec<u32>, Vec<u32>), u64> = HashMap::new();
    for n in 0..bound {
        let pn = n
            .checked_mul(p)
            .ok_or_else(|| Error::OutOfRange(format!("{p} * {n} overflows u64")))?;
        let class = (keys.key(d, n), keys.key(d, pn));
        match first.get(&class) {
            Some(&n1) if n1 % p != n % p => return Ok(EquivPair { n1, n2: n }),
            Some(_) => {}
            None => {
                first.insert(class, n);
            }
        }
    }
    Err(Error::TooLarge(format!(
        "no equivalent pair below {bound} for p = {p}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn empty_word_is_identity() {
        let d = fixtures::power_indicator(2);
        let id = transition_of_word(&d, &DigitWord::empty(2)).unwrap();
        assert_eq!(id, StateMap::identity(&d));
    }

    #[test]
    fn two_letter_composition() {
        let d = fixtures::mock("mock-2-4-neg");
        let u = DigitWord::parse("01", 2).unwrap();
        let lhs = transition_of_word(&d, &u).unwrap();
        let rhs = StateMap::digit(&d, 0).compose(&StateMap::digit(&d, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trailing_zero_keeps_acceptance() {
        let d = fixtures::power_indicator(2);
        let zero = transition_of_word(&d, &DigitWord::parse("0", 2).unwrap()).unwrap();
        for s in 0..d.num_states() {
            if d.output(s).is_one() {
                assert!(d.output(zero.apply(s)).is_one());
            }
        }
    }

    #[test]
    fn digit_out_of_range_is_rejected() {
        let d = fixtures::power_indicator(2);
        let u = DigitWord::parse("12", 3).unwrap();
        assert!(matches!(
            transition_of_word(&d, &u),
            Err(Error::DigitOutOfRange { digit: 2, base: 2 })
        ));
    }

    #[test]
    fn monoid_witnesses_replay() {
        for (name, d) in fixtures::registry() {
            let monoid = transition_monoid(&d).unwrap();
            assert!(monoid.len() as f64 <= (d.num_states() as f64).powi(d.num_states() as i32));
            for f in &monoid {
                assert_eq!(&transition_of_word(&d, f.witness()).unwrap(), f, "{name}");
            }
            // closure under letters
            let maps: std::collections::HashSet<_> =
                monoid.iter().map(|f| f.mapping().to_vec()).collect();
            for f in &monoid {
                for c in 0..d.base() {
                    assert!(maps.contains(&compose(&StateMap::digit(&d, c).mapping, &f.mapping)));
                }
            }
        }
    }

    #[test]
    fn idempotent_exponent_examples() {
        assert_eq!(idempotent_exponent(&fixtures::constant(3, crate::Value::ONE)).unwrap(), 1);
        // identity-only monoid: every letter acts trivially
        let d = Dfao::new(
            2,
            vec!["a".into(), "b".into()],
            0,
            vec![vec![0, 0], vec![1, 1]],
            vec![crate::Value::ONE, crate::Value::ZERO],
        )
        .unwrap();
        assert_eq!(transition_monoid(&d).unwrap().len(), 1);
        assert_eq!(idempotent_exponent(&d).unwrap(), 1);

        for (name, d) in fixtures::registry() {
            let m = idempotent_exponent(&d).unwrap();
            let factorial: f64 = (1..=d.num_states()).map(|i| i as f64).product();
            assert!(m as f64 <= factorial, "{name}");
            for f in transition_monoid(&d).unwrap() {
                let fm = power(&f.mapping, m);
                assert_eq!(compose(&fm, &fm), fm, "{name}");
            }
            // minimality
            if m > 1 {
                let smaller = (1..m).any(|cand| {
                    transition_monoid(&d).unwrap().iter().all(|f| {
                        let fc = power(&f.mapping, cand);
                        compose(&fc, &fc) == fc
                    })
                });
                assert!(!smaller, "{name}");
            }
        }
    }

    fn power(f: &[u32], e: u64) -> Vec<u32> {
        let mut acc: Vec<u32> = (0..f.len() as u32).collect();
        for _ in 0..e {
            acc = compose(f, &acc);
        }
        acc
    }

    #[test]
    fn int_equiv_examples() {
        let one = fixtures::constant(2, crate::Value::ONE);
        assert!(int_equiv(&one, 3, 1000));
        let d = fixtures::power_indicator(2);
        assert!(int_equiv(&d, 5, 5));
        assert!(int_equiv(&d, 2, 4));
        assert!(!int_equiv(&d, 2, 3));
    }

    /// Brute-force oracle: compare padded transition maps at every common
    /// length up to a generous bound.
    fn equiv_oracle(d: &Dfao, n1: u64, n2: u64) -> bool {
        let l0 = crate::digits::digit_len(n1.max(n2), d.base());
        (l0..l0 + 2 * d.num_states() + 2).any(|l| {
            let w1 = crate::digits::padded_suffix(&n1.into(), d.base(), l).unwrap();
            let w2 = crate::digits::padded_suffix(&n2.into(), d.base(), l).unwrap();
            transition_of_word(d, &w1).unwrap().mapping == transition_of_word(d, &w2).unwrap().mapping
        })
    }

    #[test]
    fn int_equiv_matches_padding_oracle() {
        for (name, d) in fixtures::registry() {
            for n1 in 0..40u64 {
                for n2 in 0..40u64 {
                    assert_eq!(int_equiv(&d, n1, n2), equiv_oracle(&d, n1, n2), "{name} {n1} {n2}");
                }
            }
        }
    }

    #[test]
    fn equiv_pair_examples() {
        let one = fixtures::constant(2, crate::Value::ONE);
        assert_eq!(equiv_pair_search(&one, 3, 100).unwrap(), EquivPair { n1: 0, n2: 1 });
        let d = fixtures::mock("mock-2-4-neg");
        for p in [3u64, 5, 7, 11, 13] {
            let pair = equiv_pair_search(&d, p, 100_000).unwrap();
            assert_ne!(pair.n1 % p, pair.n2 % p);
            assert!(int_equiv(&d, pair.n1, pair.n2));
            assert!(int_equiv(&d, p * pair.n1, p * pair.n2));
            assert!(equiv_oracle(&d, pair.n1, pair.n2));
        }
        assert!(matches!(equiv_pair_search(&d, 4, 10), Err(Error::NotPrime(4))));
    }

    proptest! {
        #[test]
        fn composition_law(u in proptest::collection::vec(0u32..2, 0..20), v in proptest::collection::vec(0u32..2, 0..20)) {
            let d = fixtures::mock("mock-2-4-neg");
            let u = DigitWord::new(2, u).unwrap();
            let v = DigitWord::new(2, v).unwrap();
            let uv = transition_of_word(&d, &u.concat(&v)).unwrap();
            let composed = transition_of_word(&d, &u).unwrap().compose(&transition_of_word(&d, &v).unwrap());
            prop_assert_eq!(uv, composed);
        }
    }
}
