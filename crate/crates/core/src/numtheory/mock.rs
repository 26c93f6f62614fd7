// SPDX-License-Identifier: Apache-2.0

//! Mock Dirichlet characters `a(n) = xi^{nu_k(n)} chi(n / k^{nu_k(n)})`
//! for a prime base `k`, a character `chi` modulo `k^r` and a root of
//! unity `xi`; `a(0) := 0`.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{is_prime, valuation, valuation_big, DirichletCharacter};
use crate::automaton::Dfao;
use crate::error::{Error, Result};
use crate::value::{Root, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MockCharacter {
    base: u32,
    inner: DirichletCharacter,
    #[serde(with = "root_text")]
    xi: Root,
    #[serde(skip)]
    power: u32,
}

mod root_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Root, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Root, D::Error> {
        use serde::de::Error as _;
        let text = String::deserialize(d)?;
        let v: Value = text.parse().map_err(D::Error::custom)?;
        v.as_root().ok_or_else(|| D::Error::custom("xi must be a root of unity"))
    }
}

impl<'de> Deserialize<'de> for MockCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            base: u32,
            inner: DirichletCharacter,
            #[serde(with = "root_text")]
            xi: Root,
        }
        let r = Repr::deserialize(d)?;
        MockCharacter::new(r.base, r.inner, r.xi).map_err(D::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum State {
    // only zeros read so far, count mod ord(xi)
    Zeros(u64),
    // `t` digits read since the first nonzero one (capped at r)
    Tail { zeros: u64, residue: u64, t: u32 },
}

impl MockCharacter {
    pub fn new(base: u32, inner: DirichletCharacter, xi: Root) -> Result<MockCharacter> {
        if !is_prime(base as u64) {
            return Err(Error::NotPrime(base as u64));
        }
        let m = inner.modulus();
        let power = if m == 1 { 0 } else { valuation(base as u64, m) };
        if (base as u64).pow(power) != m {
            return Err(Error::Hypothesis(format!(
                "character modulus {m} is not a power of {base}"
            )));
        }
        Ok(MockCharacter {
            base,
            inner,
            xi,
            power,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn inner(&self) -> &DirichletCharacter {
        &self.inner
    }

    pub fn xi(&self) -> Root {
        self.xi
    }

    /// `r` with inner modulus `k^r`.
    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn eval(&self, n: u64) -> Value {
        if n == 0 {
            return Value::ZERO;
        }
        let k = self.base as u64;
        let nu = valuation(k, n);
        let rest = n / k.pow(nu);
        Value::root(self.xi.pow(nu as u64)).mul(&self.inner.eval_u64(rest))
    }

    pub fn eval_big(&self, n: &BigUint) -> Value {
        if n.is_zero() {
            return Value::ZERO;
        }
        let nu = valuation_big(self.base as u64, n);
        let rest = n / BigUint::from(self.base).pow(nu as u32);
        Value::root(self.xi.pow(nu)).mul(&self.inner.eval_big(&rest))
    }

    /// Automaton reading digits least significant first: count trailing
    /// zeros modulo `ord(xi)`, then collect the next `r` digits as a
    /// residue modulo `k^r` and ignore the rest.
    pub fn to_dfao(&self) -> Result<Dfao> {
        let k = self.base as u64;
        let m = self.inner.modulus();
        let ord = self.xi.order();
        let r = self.power;
        let step = |s: &State, c: u32| match *s {
            State::Zeros(j) if c == 0 => State::Zeros((j + 1) % ord),
            State::Zeros(j) => State::Tail {
                zeros: j,
                residue: c as u64 % m,
                t: 1.min(r),
            },
            State::Tail { zeros, residue, t } if t < r => State::Tail {
                zeros,
                residue: (residue + c as u64 * k.pow(t)) % m,
                t: t + 1,
            },
            State::Tail { .. } => s.clone(),
        };
        let out = |s: &State| match *s {
            State::Zeros(_) => Value::ZERO,
            State::Tail { zeros, residue, .. } => {
                Value::root(self.xi.pow(zeros)).mul(&self.inner.value_at_residue(residue))
            }
        };
        Dfao::explore(self.base, State::Zeros(0), step, out)
    }
}
