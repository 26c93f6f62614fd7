// SPDX-License-Identifier: Apache-2.0

//! Dirichlet characters modulo `m`, built by CRT from generators of the
//! prime-power components of `(Z/m)^*`.
//!
//! For odd `p^e` the component is cyclic, generated by the least
//! primitive root. For `2^e` with `e >= 3` it is generated by `-1`
//! (order 2) and `5` (order `2^(e-2)`); `(Z/4)^*` by `-1` alone and
//! `(Z/2)^*` is trivial. A character is fixed by its label, one exponent
//! `j` per generator `g` of order `o`, via `chi(g) = zeta(o, j)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{factorize, multiplicative_order, pow_mod};
use crate::automaton::Dfao;
use crate::error::{Error, Result};
use crate::value::{Root, Value};

/// Largest modulus for which characters are enumerated.
pub const MAX_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    label: Vec<u64>,
    orders: Vec<u64>,
    values: Vec<Option<Root>>,
}

struct Component {
    modulus: u64,
    gens: Vec<(u64, u64)>,
    // discrete-log vector for each unit residue mod `modulus`
    logs: Vec<Option<Vec<u64>>>,
}

fn least_primitive_root(p: u64, e: u32) -> u64 {
    let g = (2..p)
        .find(|&g| multiplicative_order(g, p) == Some(p - 1))
        .unwrap_or(1);
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

impl Component {
    fn new(p: u64, e: u32) -> Component {
        let pe = p.pow(e);
        let gens = if p == 2 {
            match e {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pe - 1, 2), (5, pe / 4)],
            }
        } else {
            vec![(least_primitive_root(p, e) % pe, pe / p * (p - 1))]
        };
        let mut logs = vec![None; pe as usize];
        let mut exps = vec![0u64; gens.len()];
        loop {
            let elem = gens
                .iter()
                .zip(&exps)
                .fold(1 % pe, |acc, (&(g, _), &j)| acc * pow_mod(g, j, pe) % pe);
            debug_assert!(logs[elem as usize].is_none());
            logs[elem as usize] = Some(exps.clone());
            if !odometer(&mut exps, gens.iter().map(|g| g.1)) {
                break;
            }
        }
        Component {
            modulus: pe,
            gens,
            logs,
        }
    }
}

/// Advances `digits` as a mixed-radix counter (last digit fastest).
/// Returns false after wrapping around.
fn odometer(digits: &mut [u64], radices: impl DoubleEndedIterator<Item = u64> + ExactSizeIterator) -> bool {
    let radices: Vec<u64> = radices.collect();
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// All `phi(m)` characters modulo `m`, in lexicographic order of labels;
/// the principal character comes first.
pub fn characters_mod(m: u64) -> Result<Vec<DirichletCharacter>> {
    if m == 0 || m > MAX_MODULUS {
        return Err(Error::OutOfRange(format!(
            "character modulus {m} outside 1..={MAX_MODULUS}"
        )));
    }
    let comps: Vec<Component> = factorize(m)?
        .into_iter()
        .map(|(p, e)| Component::new(p, e))
        .collect();
    let orders: Vec<u64> = comps
        .iter()
        .flat_map(|c| c.gens.iter().map(|g| g.1))
        .collect();
    // flattened discrete logs of every residue
    let logs: Vec<Option<Vec<u64>>> = (0..m)
        .map(|r| {
            let mut v = Vec::with_capacity(orders.len());
            for c in &comps {
                v.extend_from_slice(c.logs[(r % c.modulus) as usize].as_ref()?);
            }
            Some(v)
        })
        .collect();
    let mut out = Vec::new();
    let mut label = vec![0u64; orders.len()];
    loop {
        let values = logs
            .iter()
            .map(|log| {
                log.as_ref().map(|log| {
                    log.iter()
                        .zip(&orders)
                        .zip(&label)
                        .fold(Root::ONE, |acc, ((&x, &o), &j)| {
                            acc.mul(Root::new(o, ((j * x) % o) as i64))
                        })
                })
            })
            .collect();
        out.push(DirichletCharacter {
            modulus: m,
            label: label.clone(),
            orders: orders.clone(),
            values,
        });
        if !odometer(&mut label, orders.iter().copied()) {
            break;
        }
    }
    Ok(out)
}

impl DirichletCharacter {
    /// The principal character modulo `m`.
    pub fn principal(m: u64) -> Result<DirichletCharacter> {
        Ok(characters_mod(m)?.swap_remove(0))
    }

    /// Looks a character up by its value table (`None` off the units).
    pub fn from_values(m: u64, values: &[Option<Root>]) -> Result<DirichletCharacter> {
        characters_mod(m)?
            .into_iter()
            .find(|c| c.values == values)
            .ok_or_else(|| Error::Malformed(format!("not a character modulo {m}")))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponents of the generator images, components ordered by prime.
    pub fn label(&self) -> &[u64] {
        &self.label
    }

    /// Orders of the generators the label refers to.
    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Values indexed by residue; `None` where `gcd(r, m) > 1`.
    pub fn values(&self) -> &[Option<Root>] {
        &self.values
    }

    pub fn is_principal(&self) -> bool {
        self.label.iter().all(|&j| j == 0)
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .flatten()
            .fold(1, |acc, r| acc.lcm(&r.order()))
    }

    pub fn value_at_residue(&self, r: u64) -> Value {
        match self.values[(r % self.modulus) as usize] {
            Some(root) => Value::root(root),
            None => Value::ZERO,
        }
    }

    pub fn eval(&self, n: i64) -> Value {
        self.value_at_residue(n.rem_euclid(self.modulus as i64) as u64)
    }

    pub fn eval_u64(&self, n: u64) -> Value {
        self.value_at_residue(n % self.modulus)
    }

    pub fn eval_big(&self, n: &BigUint) -> Value {
        let r = (n % self.modulus).to_u64().expect("residue below modulus");
        self.value_at_residue(r)
    }

    /// One value per residue `0..m`, zeros off the units.
    pub fn table(&self) -> Vec<Value> {
        (0..self.modulus).map(|r| self.value_at_residue(r)).collect()
    }

    /// A base-`k` automaton computing the character.
    pub fn to_dfao(&self, base: u32) -> Result<Dfao> {
        periodic_dfao(base, &self.table())
    }
}

/// Automaton for the periodic sequence `n -> table[n mod q]`, `q =
/// table.len()`. States track `(n mod q, k^t mod q)` after `t` digits.
pub fn periodic_dfao(base: u32, table: &[Value]) -> Result<Dfao> {
    let q = table.len() as u64;
    if q == 0 || q > MAX_MODULUS {
        return Err(Error::OutOfRange(format!("period {q}")));
    }
    let k = base as u64;
    Dfao::explore(
        base,
        (0u64, 1 % q),
        |&(acc, pw), c| ((acc + c as u64 * pw) % q, pw * k % q),
        |&(acc, _)| table[acc as usize].clone(),
    )
}

#[derive(Serialize, Deserialize)]
struct CharacterRepr {
    modulus: u64,
    label: Vec<u64>,
    values: Vec<(u64, u64, u64)>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRepr {
            modulus: self.modulus,
            label: self.label.clone(),
            values: self
                .values
                .iter()
                .enumerate()
                .filter_map(|(r, v)| v.map(|root| (r as u64, root.order(), root.exp())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CharacterRepr::deserialize(d)?;
        if repr.modulus == 0 || repr.modulus > MAX_MODULUS {
            return Err(D::Error::custom("character modulus out of range"));
        }
        let mut values = vec![None; repr.modulus as usize];
        for (r, o, e) in repr.values {
            if r >= repr.modulus || o == 0 {
                return Err(D::Error::custom("bad character entry"));
            }
            values[r as usize] = Some(Root::new(o, e as i64));
        }
        let chi = DirichletCharacter::from_values(repr.modulus, &values).map_err(D::Error::custom)?;
        if chi.label != repr.label {
            return Err(D::Error::custom("label does not match values"));
        }
        Ok(chi)
    }
}
