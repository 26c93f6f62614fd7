// SPDX-License-Identifier: Apache-2.0

//! Base-`k` digit words.
//!
//! Words are stored most-significant digit first. `(0)_k` is the empty
//! word, which makes `[u v]_k = [u]_k * k^|v| + [v]_k` hold without
//! exceptions.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitWord {
    base: u32,
    digits: Vec<u32>,
}

pub(crate) fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else {
        Ok(())
    }
}

impl DigitWord {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<DigitWord> {
        check_base(base)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(DigitWord { base, digits })
    }

    pub fn empty(base: u32) -> DigitWord {
        DigitWord {
            base,
            digits: Vec::new(),
        }
    }

    pub fn zeros(base: u32, len: usize) -> DigitWord {
        DigitWord {
            base,
            digits: vec![0; len],
        }
    }

    /// Parses the serialized form: plain digit characters for `base <= 10`,
    /// a comma-separated list of decimal digits for larger bases.
    pub fn parse(s: &str, base: u32) -> Result<DigitWord> {
        check_base(base)?;
        let s = s.trim();
        let digits = if s.is_empty() {
            Vec::new()
        } else if base <= 10 {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad digit `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        DigitWord::new(base, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// True when every digit is 0 (including the empty word).
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn value(&self) -> BigUint {
        word_to_int(self)
    }

    pub fn concat(&self, other: &DigitWord) -> DigitWord {
        assert_eq!(self.base, other.base, "concatenating words of different bases");
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        DigitWord {
            base: self.base,
            digits,
        }
    }

    pub fn repeat(&self, times: usize) -> DigitWord {
        DigitWord {
            base: self.base,
            digits: self.digits.repeat(times),
        }
    }

    pub fn reversed(&self) -> DigitWord {
        let mut digits = self.digits.clone();
        digits.reverse();
        DigitWord {
            base: self.base,
            digits,
        }
    }

    /// Subword `[start, end)` in storage (most-significant-first) order.
    pub fn slice(&self, start: usize, end: usize) -> DigitWord {
        DigitWord {
            base: self.base,
            digits: self.digits[start..end].to_vec(),
        }
    }

    /// Digits from the least-significant end.
    pub fn lsb_digits(&self) -> impl Iterator<Item = u32> + '_ {
        self.digits.iter().rev().copied()
    }

    /// `[self]_k mod modulus`, streamed over the digits.
    pub fn residue(&self, modulus: u64) -> u64 {
        let m = modulus as u128;
        let k = self.base as u128 % m;
        self.digits
            .iter()
            .fold(0u128, |acc, &d| (acc * k + d as u128) % m) as u64
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// `[u]_k`.
pub fn word_to_int(u: &DigitWord) -> BigUint {
    if u.digits.is_empty() {
        return BigUint::zero();
    }
    if u.base <= 256 {
        let bytes: Vec<u8> = u.digits.iter().map(|&d| d as u8).collect();
        BigUint::from_radix_be(&bytes, u.base).expect("digits validated at construction")
    } else {
        u.digits
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * u.base + d)
    }
}

/// `(n)_k`, without leading zeros.
pub fn int_to_word(n: &BigUint, base: u32) -> Result<DigitWord> {
    check_base(base)?;
    if n.is_zero() {
        return Ok(DigitWord::empty(base));
    }
    let digits = if base <= 256 {
        n.to_radix_be(base).into_iter().map(u32::from).collect()
    } else {
        let mut digits = Vec::new();
        let mut rest = n.clone();
        let b = BigUint::from(base);
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&b);
            digits.push(r.to_u32().expect("remainder below base"));
            rest = q;
        }
        digits.reverse();
        digits
    };
    Ok(DigitWord { base, digits })
}

pub fn int_to_word_u64(n: u64, base: u32) -> Result<DigitWord> {
    check_base(base)?;
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % base as u64) as u32);
        rest /= base as u64;
    }
    digits.reverse();
    Ok(DigitWord { base, digits })
}

/// `(n)_k^l`: the length-`l` suffix of `0^inf (n)_k`.
pub fn padded_suffix(n: &BigUint, base: u32, len: usize) -> Result<DigitWord> {
    let w = int_to_word(n, base)?;
    let digits = if w.len() >= len {
        w.digits[w.len() - len..].to_vec()
    } else {
        let mut d = vec![0; len - w.len()];
        d.extend_from_slice(&w.digits);
        d
    };
    Ok(DigitWord { base, digits })
}

/// Number of base-`k` digits of `n` (0 for `n = 0`).
pub fn digit_len(mut n: u64, base: u32) -> usize {
    let mut len = 0;
    while n > 0 {
        n /= base as u64;
        len += 1;
    }
    len
}
