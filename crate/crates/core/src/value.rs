// SPDX-License-Identifier: Apache-2.0

//! Exact sequence values.
//!
//! A [`Value`] is zero or `q * zeta(d, e)` with `q` a positive rational
//! and `zeta(d, e) = exp(2 pi i e / d)`. Both factors are kept in lowest
//! terms, so structural equality is mathematical equality: `int:-1` and
//! `zeta:2,1` parse to the same value.
//!
//! Text forms: `int:n`, `rat:p/q`, `zeta:d,e`, and for products that are
//! neither real nor of modulus one, `rat:p/q*zeta:d,e`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A root of unity `zeta(order, exp)` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    order: u64,
    exp: u64,
}

impl Root {
    pub const ONE: Root = Root { order: 1, exp: 0 };
    pub const MINUS_ONE: Root = Root { order: 2, exp: 1 };

    /// `zeta(order, exp)`, reduced. `exp` may be any integer.
    pub fn new(order: u64, exp: i64) -> Root {
        assert!(order >= 1, "root of unity of order 0");
        let e = exp.rem_euclid(order as i64) as u64;
        Root::reduced(order, e)
    }

    fn reduced(order: u64, exp: u64) -> Root {
        let g = order.gcd(&exp);
        if exp == 0 {
            Root::ONE
        } else {
            Root {
                order: order / g,
                exp: exp / g,
            }
        }
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn exp(self) -> u64 {
        self.exp
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }

    pub fn mul(self, other: Root) -> Root {
        let l = self.order.lcm(&other.order);
        let a = mul_mod(self.exp, l / self.order, l);
        let b = mul_mod(other.exp, l / other.order, l);
        Root::reduced(l, (a + b) % l)
    }

    pub fn pow(self, e: u64) -> Root {
        Root::reduced(self.order, mul_mod(self.exp, e % self.order, self.order))
    }

    pub fn inverse(self) -> Root {
        Root::reduced(self.order, (self.order - self.exp) % self.order)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta:{},{}", self.order, self.exp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Zero,
    Unit(Root),
    // magnitude is positive and != 1
    Scaled(Box<BigRational>, Root),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Value(Repr);

impl Value {
    pub const ZERO: Value = Value(Repr::Zero);
    pub const ONE: Value = Value(Repr::Unit(Root::ONE));
    pub const MINUS_ONE: Value = Value(Repr::Unit(Root::MINUS_ONE));

    pub fn root(r: Root) -> Value {
        Value(Repr::Unit(r))
    }

    pub fn zeta(order: u64, exp: i64) -> Value {
        Value::root(Root::new(order, exp))
    }

    pub fn int(n: i64) -> Value {
        Value::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(q: BigRational) -> Value {
        if q.is_zero() {
            return Value::ZERO;
        }
        let root = if q.is_negative() {
            Root::MINUS_ONE
        } else {
            Root::ONE
        };
        Value::scaled(q.abs(), root)
    }

    fn scaled(mag: BigRational, root: Root) -> Value {
        if mag.is_one() {
            Value(Repr::Unit(root))
        } else {
            Value(Repr::Scaled(Box::new(mag), root))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Value::ONE
    }

    /// The root-of-unity factor when the value has modulus one.
    pub fn as_root(&self) -> Option<Root> {
        match self.0 {
            Repr::Unit(r) => Some(r),
            _ => None,
        }
    }

    /// The value as a rational, when it is real.
    pub fn as_rational(&self) -> Option<BigRational> {
        let (mag, root) = match &self.0 {
            Repr::Zero => return Some(BigRational::zero()),
            Repr::Unit(r) => (BigRational::one(), *r),
            Repr::Scaled(m, r) => ((**m).clone(), *r),
        };
        match root.order {
            1 => Some(mag),
            2 => Some(-mag),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (&self.0, &other.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Value::ZERO,
            (Repr::Unit(a), Repr::Unit(b)) => Value(Repr::Unit(a.mul(*b))),
            (Repr::Unit(a), Repr::Scaled(m, b)) | (Repr::Scaled(m, b), Repr::Unit(a)) => {
                Value(Repr::Scaled(m.clone(), a.mul(*b)))
            }
            (Repr::Scaled(m1, a), Repr::Scaled(m2, b)) => {
                Value::scaled((**m1).clone() * (**m2).clone(), a.mul(*b))
            }
        }
    }

    pub fn pow(&self, e: u64) -> Value {
        match &self.0 {
            Repr::Zero if e == 0 => Value::ONE,
            Repr::Zero => Value::ZERO,
            Repr::Unit(r) => Value(Repr::Unit(r.pow(e))),
            Repr::Scaled(m, r) => {
                let e32 = u32::try_from(e).expect("exponent too large for a scaled value");
                let mag = BigRational::new(m.numer().pow(e32), m.denom().pow(e32));
                Value::scaled(mag, r.pow(e))
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Value> {
        match &self.0 {
            Repr::Zero => None,
            Repr::Unit(r) => Some(Value(Repr::Unit(r.inverse()))),
            Repr::Scaled(m, r) => Some(Value::scaled(m.recip(), r.inverse())),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mag, root) = match &self.0 {
            Repr::Zero => return f.write_str("int:0"),
            Repr::Unit(r) => (BigRational::one(), *r),
            Repr::Scaled(m, r) => ((**m).clone(), *r),
        };
        let real = match root.order {
            1 => Some(mag.clone()),
            2 => Some(-mag.clone()),
            _ => None,
        };
        match real {
            Some(q) if q.is_integer() => write!(f, "int:{}", q.numer()),
            Some(q) => write!(f, "rat:{}/{}", q.numer(), q.denom()),
            None if mag.is_one() => write!(f, "{root}"),
            None => write!(f, "rat:{}/{}*{root}", mag.numer(), mag.denom()),
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Accepts the tagged forms above and, as shorthand, bare integers
    /// (`-1`) and fractions (`3/4`). Factors may be joined with `*`.
    fn from_str(s: &str) -> Result<Value> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty value".into()));
        }
        let mut acc = Value::ONE;
        for factor in s.split('*') {
            acc = acc.mul(&parse_factor(factor.trim())?);
        }
        Ok(acc)
    }
}

fn parse_factor(s: &str) -> Result<Value> {
    let bad = || Error::Parse(format!("bad value `{s}`"));
    if let Some(rest) = s.strip_prefix("zeta:") {
        let (d, e) = rest.split_once(',').ok_or_else(bad)?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        let e: i64 = e.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Value::zeta(d, e));
    }
    let body = s
        .strip_prefix("int:")
        .or_else(|| s.strip_prefix("rat:"))
        .unwrap_or(s);
    if s.starts_with("int:") && body.contains('/') {
        return Err(bad());
    }
    let q = match body.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(body.parse::<BigInt>().map_err(|_| bad())?),
    };
    Ok(Value::rational(q))
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Value, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!("int:-1".parse::<Value>().unwrap(), Value::zeta(2, 1));
        assert_eq!("zeta:4,2".parse::<Value>().unwrap(), Value::MINUS_ONE);
        assert_eq!("zeta:1,0".parse::<Value>().unwrap().to_string(), "int:1");
        assert_eq!("rat:6/4".parse::<Value>().unwrap().to_string(), "rat:3/2");
        assert_eq!("zeta:3,4".parse::<Value>().unwrap().to_string(), "zeta:3,1");
        assert_eq!(Value::ZERO.to_string(), "int:0");
        let mixed: Value = "rat:1/2*zeta:3,1".parse().unwrap();
        assert_eq!(mixed.to_string(), "rat:1/2*zeta:3,1");
        assert!("int:1/2".parse::<Value>().is_err());
        assert!("zeta:0,1".parse::<Value>().is_err());
        assert!("rat:1/0".parse::<Value>().is_err());
    }

    #[test]
    fn arithmetic() {
        let i = Value::zeta(4, 1);
        assert_eq!(i.mul(&i), Value::MINUS_ONE);
        assert_eq!(i.pow(4), Value::ONE);
        assert_eq!(Value::int(-2).mul(&Value::int(-3)), Value::int(6));
        assert_eq!(Value::int(2).inverse().unwrap().to_string(), "rat:1/2");
        assert_eq!(Value::ZERO.pow(0), Value::ONE);
        assert_eq!(Value::zeta(3, 1).mul(&Value::zeta(2, 1)), Value::zeta(6, 5));
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        prop_oneof![
            (-20i64..20).prop_map(Value::int),
            (1u64..13, -30i64..30).prop_map(|(d, e)| Value::zeta(d, e)),
            (-9i64..9, 1i64..9, 1u64..7, 0i64..7).prop_map(|(p, q, d, e)| {
                Value::rational(BigRational::new(p.into(), q.into())).mul(&Value::zeta(d, e))
            }),
        ]
    }

    proptest! {
        #[test]
        fn text_round_trip(v in arb_value()) {
            let s = v.to_string();
            let back: Value = s.parse().unwrap();
            prop_assert_eq!(&back, &v);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn multiplication_is_commutative_and_associative(a in arb_value(), b in arb_value(), c in arb_value()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
