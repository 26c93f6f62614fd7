// SPDX-License-Identifier: Apache-2.0

//! Certificates bounding `nu_p([w v^l u]_k)` along `l in Q N`.
//!
//! With `K = k^{|v|}`,
//! `[w v^l u]_k = [w] k^{l|v| + |u|} + [v] (K^l - 1)/(K - 1) k^{|u|} + [u]`.
//! Put `D_1 = [wu]_k`, `D_0 = |k^{|u|} [v] - (K - 1)[u]|`, `D = D_0 D_1`.
//!
//! - `p ∤ k`: if `K^l = 1` modulo `p^{nu_p(D_1) + 1 + nu_p(K - 1)}` then
//!   `[w v^l u] = D_1` modulo `p^{nu_p(D_1)+1}`, so `Q` is the order of
//!   `K` modulo that power.
//! - `p | k`: `(K - 1)[w v^l u] = -(k^{|u|}[v] - (K-1)[u])` modulo
//!   `k^{|u| + l|v|}`, so any `l` with `nu_p(k)(|u| + l|v|) > nu_p(D_0)`
//!   works; `Q` is the least such `l >= 1`.
//!
//! Either way `nu_p([w v^l u]) <= nu_p(D)` whenever `Q | l`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::aridsets::progression::big_text;
use crate::digits::DigitWord;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, multiplicative_order_prime_power, valuation, valuation_big};

/// Multiples of `Q` replayed by [`SmallGcdCertificate::verify`].
pub const REPLAY_MULTIPLES: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeBound {
    pub p: u64,
    pub q: u64,
    /// `nu_p(D)`.
    pub nu_d: u64,
    /// For `p ∤ k`, the exponent of the modulus whose order gives `Q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallGcdCertificate {
    pub base: u32,
    pub w: String,
    pub v: String,
    pub u: String,
    #[serde(with = "big_text")]
    pub d0: BigUint,
    #[serde(with = "big_text")]
    pub d1: BigUint,
    #[serde(with = "big_text")]
    pub d: BigUint,
    pub primes: Vec<PrimeBound>,
}

/// `x -> a x + b` modulo `m`.
#[derive(Clone)]
struct Affine {
    a: BigUint,
    b: BigUint,
}

impl Affine {
    // self ∘ other
    fn compose(&self, other: &Affine, m: &BigUint) -> Affine {
        Affine {
            a: (&self.a * &other.a) % m,
            b: (&self.a * &other.b + &self.b) % m,
        }
    }

    fn pow(&self, mut e: u64, m: &BigUint) -> Affine {
        let mut acc = Affine {
            a: BigUint::one() % m,
            b: BigUint::zero(),
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base, m);
            }
            base = base.compose(&base, m);
            e >>= 1;
        }
        acc
    }

    fn apply(&self, x: &BigUint, m: &BigUint) -> BigUint {
        (&self.a * x + &self.b) % m
    }
}

/// `[w v^l u]_k mod m` without building the word.
pub fn pumped_residue(w: &DigitWord, v: &DigitWord, u: &DigitWord, l: u64, m: &BigUint) -> BigUint {
    let k = BigUint::from(w.base());
    let kp = |len: usize| k.modpow(&BigUint::from(len), m);
    let step_v = Affine {
        a: kp(v.len()),
        b: v.value() % m,
    };
    let after_w = w.value() % m;
    let after_v = step_v.pow(l, m).apply(&after_w, m);
    (after_v * kp(u.len()) + u.value()) % m
}

pub fn small_gcd_certificate(
    w: &DigitWord,
    v: &DigitWord,
    u: &DigitWord,
    primes: &[u64],
) -> Result<SmallGcdCertificate> {
    let base = w.base();
    if v.base() != base || u.base() != base {
        return Err(Error::Malformed("words of mixed bases".into()));
    }
    if u.value().is_zero() || w.value().is_zero() {
        return Err(Error::Hypothesis("[u]_k and [w]_k must be nonzero".into()));
    }
    if v.is_empty() {
        return Err(Error::Hypothesis("v must be nonempty".into()));
    }
    let k = BigUint::from(base);
    let big_k = k.pow(v.len() as u32);
    let d1 = w.concat(u).value();
    let lhs = k.pow(u.len() as u32) * v.value();
    let rhs = (&big_k - 1u32) * u.value();
    let d0 = if lhs >= rhs { lhs - rhs } else { rhs - lhs };
    let d = &d0 * &d1;
    let mut table = Vec::with_capacity(primes.len());
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let nu_d = valuation_big(p, &d);
        let bound = if !(base as u64).is_multiple_of(p) {
            let omega = valuation_big(p, &d1) + 1 + valuation_big(p, &(&big_k - 1u32));
            let omega32 = u32::try_from(omega).map_err(|_| Error::TooLarge(format!("omega {omega}")))?;
            let q = multiplicative_order_prime_power(&big_k, p, omega32)?
                .expect("K is a unit modulo p");
            PrimeBound { p, q, nu_d, omega: Some(omega) }
        } else {
            let per_digit = valuation(p, base as u64) as u64;
            let need = valuation_big(p, &d0) + 1;
            let q = need.div_ceil(per_digit * v.len() as u64).max(1);
            PrimeBound { p, q, nu_d, omega: None }
        };
        table.push(bound);
    }
    Ok(SmallGcdCertificate {
        base,
        w: w.to_string(),
        v: v.to_string(),
        u: u.to_string(),
        d0,
        d1,
        d,
        primes: table,
    })
}

impl SmallGcdCertificate {
    fn words(&self) -> (DigitWord, DigitWord, DigitWord) {
        let p = |s: &str| DigitWord::parse(s, self.base).expect("certificate words");
        (p(&self.w), p(&self.v), p(&self.u))
    }

    /// Replays `nu_p([w v^l u]_k) <= nu_p(D)` at `l = Q, 2Q, ..., 10Q`
    /// for every tabulated prime, and `D = D_0 D_1`. Returns the first
    /// failing `(p, l)`.
    pub fn verify(&self) -> std::result::Result<(), (u64, u64)> {
        if self.d != &self.d0 * &self.d1 {
            return Err((0, 0));
        }
        let (w, v, u) = self.words();
        for b in &self.primes {
            let m = BigUint::from(b.p).pow(b.nu_d as u32 + 1);
            for j in 1..=REPLAY_MULTIPLES {
                let l = b.q * j;
                if pumped_residue(&w, &v, &u, l, &m).is_zero() {
                    return Err((b.p, l));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::sieve;

    fn word(s: &str, k: u32) -> DigitWord {
        DigitWord::parse(s, k).unwrap()
    }

    #[test]
    fn documented_constants() {
        let c = small_gcd_certificate(&word("2", 10), &word("3", 10), &word("1", 10), &[3]).unwrap();
        assert_eq!(c.d1, BigUint::from(21u32));
        assert_eq!(c.d0, BigUint::from(21u32));
        assert_eq!(c.d, BigUint::from(441u32));
        assert_eq!(c.primes[0].nu_d, 2);
        let q = c.primes[0].q;
        let n = word("2", 10).concat(&word("3", 10).repeat(q as usize)).concat(&word("1", 10)).value();
        assert!(valuation_big(3, &n) <= 2);
        assert_eq!(c.verify(), Ok(()));
    }

    #[test]
    fn hypotheses_checked() {
        assert!(small_gcd_certificate(&word("0", 10), &word("3", 10), &word("1", 10), &[3]).is_err());
        assert!(small_gcd_certificate(&word("2", 10), &word("", 10), &word("1", 10), &[3]).is_err());
        assert!(small_gcd_certificate(&word("2", 10), &word("3", 10), &word("1", 10), &[4]).is_err());
    }

    #[test]
    fn pumped_residue_matches_words() {
        let (w, v, u) = (word("12", 3), word("201", 3), word("2", 3));
        let m = BigUint::from(1_000_003u32);
        for l in 0..30u64 {
            let direct = w.concat(&v.repeat(l as usize)).concat(&u).value() % &m;
            assert_eq!(pumped_residue(&w, &v, &u, l, &m), direct);
        }
    }

    #[test]
    fn replay_over_small_primes() {
        let primes = sieve(50);
        for (w, v, u, k) in [("1", "0", "1", 2), ("11", "10", "1", 2), ("2", "12", "21", 3), ("7", "44", "3", 10)] {
            let c = small_gcd_certificate(&word(w, k), &word(v, k), &word(u, k), &primes).unwrap();
            assert_eq!(c.verify(), Ok(()), "{w} {v} {u}");
        }
    }
}
