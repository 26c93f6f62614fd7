// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use super::{tabulate, Sequence};
use crate::exec::Exec;
use crate::numtheory::smallest_prime_factors;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub m: u64,
    pub n: u64,
    pub a_m: Value,
    pub a_n: Value,
    pub a_mn: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplicativity {
    Holds,
    Fails(Counterexample),
}

impl Multiplicativity {
    pub fn holds(&self) -> bool {
        matches!(self, Multiplicativity::Holds)
    }
}

/// Checks `a(mn) = a(m) a(n)` for all `m <= n` with `1 <= mn <= bound`,
/// over coprime pairs when `complete` is false and all pairs otherwise.
/// The counterexample returned has the least product, then the least `m`.
pub fn check_multiplicative(seq: &dyn Sequence, bound: u64, complete: bool) -> Multiplicativity {
    check_multiplicative_with(Exec::default(), seq, bound, complete)
}

pub fn check_multiplicative_with(
    exec: Exec,
    seq: &dyn Sequence,
    bound: u64,
    complete: bool,
) -> Multiplicativity {
    let values = tabulate(seq, bound, exec);
    let spf = smallest_prime_factors(bound as usize);
    let hit = exec.find_first(1..bound + 1, |prod| {
        let mut divisors = divisors(prod, &spf, complete);
        divisors.sort_unstable();
        divisors
            .into_iter()
            .take_while(|&m| m * m <= prod)
            .find(|&m| {
                let n = prod / m;
                values[m as usize].mul(&values[n as usize]) != values[prod as usize]
            })
            .map(|m| Counterexample {
                m,
                n: prod / m,
                a_m: values[m as usize].clone(),
                a_n: values[(prod / m) as usize].clone(),
                a_mn: values[prod as usize].clone(),
            })
    });
    match hit {
        Some(c) => Multiplicativity::Fails(c),
        None => Multiplicativity::Holds,
    }
}

/// Divisors of `n`, or only unitary divisors (`gcd(d, n/d) = 1`) when
/// `all` is false.
fn divisors(mut n: u64, spf: &[u32], all: bool) -> Vec<u64> {
    let mut out = vec![1u64];
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut pe = 1u64;
        let mut powers = Vec::new();
        while n.is_multiple_of(p) {
            n /= p;
            pe *= p;
            powers.push(pe);
        }
        let choices: &[u64] = if all {
            &powers
        } else {
            std::slice::from_ref(powers.last().unwrap())
        };
        let base_len = out.len();
        for &q in choices {
            for i in 0..base_len {
                out.push(out[i] * q);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::numtheory::{characters_mod, MockCharacter};
    use crate::value::Root;

    #[test]
    fn divisor_lists() {
        let spf = smallest_prime_factors(100);
        let mut d = divisors(72, &spf, true);
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]);
        let mut d = divisors(72, &spf, false);
        d.sort_unstable();
        assert_eq!(d, vec![1, 8, 9, 72]);
        assert_eq!(divisors(1, &spf, true), vec![1]);
    }

    #[test]
    fn characters_are_completely_multiplicative() {
        let chi = characters_mod(4).unwrap().swap_remove(1);
        assert!(check_multiplicative(&chi, 10_000, true).holds());
    }

    #[test]
    fn thue_morse_fails_at_one() {
        let t = fixtures::thue_morse();
        let Multiplicativity::Fails(c) = check_multiplicative(&t, 1000, false) else {
            panic!("Thue-Morse is not multiplicative");
        };
        assert_eq!((c.m, c.n), (1, 1));
        assert!(c.m * c.n <= 6);
    }

    #[test]
    fn mock_characters() {
        let chi = characters_mod(4).unwrap().swap_remove(1);
        for xi in [Root::ONE, Root::MINUS_ONE] {
            let a = MockCharacter::new(2, chi.clone(), xi).unwrap();
            assert!(check_multiplicative(&a, 20_000, false).holds());
            // with k prime, xi^nu * chi(odd part) is completely multiplicative
            assert!(check_multiplicative(&a, 20_000, true).holds());
        }
    }

    #[test]
    fn least_counterexample_first() {
        // a(n) = 1 except a(6) = 2: a(1) a(6) is fine, a(2) a(3) is not
        struct Bump;
        impl Sequence for Bump {
            fn at(&self, n: u64) -> Value {
                if n == 6 { Value::int(2) } else { Value::ONE }
            }
            fn at_big(&self, _: &num_bigint::BigUint) -> Value {
                unreachable!()
            }
        }
        let Multiplicativity::Fails(c) = check_multiplicative(&Bump, 100, false) else {
            panic!()
        };
        assert_eq!((c.m, c.n), (2, 3));
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(
                check_multiplicative_with(exec, &Bump, 100, true),
                Multiplicativity::Fails(c.clone())
            );
        }
    }

    #[test]
    fn power_indicator_is_multiplicative_not_complete() {
        let d = fixtures::power_indicator(2);
        assert!(check_multiplicative(&d, 5000, false).holds());
        // the indicator of powers of 2 is completely multiplicative too
        assert!(check_multiplicative(&d, 5000, true).holds());
        let d = fixtures::power_indicator(3);
        assert!(check_multiplicative(&d, 5000, false).holds());
    }
}
