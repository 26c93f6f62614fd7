// SPDX-License-Identifier: Apache-2.0

//! Built-in automata used by the tests, the benches and the CLI.
//!
//! | name            | sequence                                           |
//! |-----------------|----------------------------------------------------|
//! | `mock-2-4-pos`  | `chi_4(odd part of n)`                             |
//! | `mock-2-4-neg`  | `(-1)^{nu_2(n)} chi_4(odd part of n)`              |
//! | `mock-3-3-zeta` | `zeta_3^{nu_3(n)} chi_3(n / 3^{nu_3(n)})`          |
//! | `pow-2`, `pow-3`, `pow-4` | indicator of the powers of `k`           |
//! | `thue-morse`    | `(-1)^{s_2(n)}`                                    |
//! | `chi5-base3`    | a character mod 5 of order 4, read in base 3       |
//! | `one-point`     | indicator of `{1}`                                 |
//! | `zero`, `const-1` | constant sequences                               |

use crate::automaton::Dfao;
use crate::numtheory::{characters_mod, MockCharacter};
use crate::value::{Root, Value};

pub const NAMES: [&str; 11] = [
    "mock-2-4-pos",
    "mock-2-4-neg",
    "mock-3-3-zeta",
    "pow-2",
    "pow-3",
    "pow-4",
    "thue-morse",
    "chi5-base3",
    "one-point",
    "zero",
    "const-1",
];

/// Every fixture, in [`NAMES`] order.
pub fn registry() -> Vec<(&'static str, Dfao)> {
    NAMES
        .iter()
        .map(|&n| (n, by_name(n).expect("registered fixture")))
        .collect()
}

pub fn by_name(name: &str) -> Option<Dfao> {
    Some(match name {
        "pow-2" => power_indicator(2),
        "pow-3" => power_indicator(3),
        "pow-4" => power_indicator(4),
        "thue-morse" => thue_morse(),
        "chi5-base3" => chi5_base3(),
        "one-point" => one_point(2),
        "zero" => constant(2, Value::ZERO),
        "const-1" => constant(2, Value::ONE),
        _ => return mock_character(name)?.to_dfao().ok(),
    })
}

/// The mock character behind a `mock-*` fixture.
pub fn mock_character(name: &str) -> Option<MockCharacter> {
    let (k, m, xi) = match name {
        "mock-2-4-pos" => (2, 4, Root::ONE),
        "mock-2-4-neg" => (2, 4, Root::MINUS_ONE),
        "mock-3-3-zeta" => (3, 3, Root::new(3, 1)),
        _ => return None,
    };
    let chi = characters_mod(m).ok()?.swap_remove(1);
    MockCharacter::new(k, chi, xi).ok()
}

/// Panics on names outside the `mock-*` fixtures.
pub fn mock(name: &str) -> Dfao {
    by_name(name)
        .filter(|_| name.starts_with("mock-"))
        .unwrap_or_else(|| panic!("no mock fixture `{name}`"))
}

pub fn constant(base: u32, v: Value) -> Dfao {
    Dfao::new(base, vec!["c".into()], 0, vec![vec![0; base as usize]], vec![v])
        .expect("well-formed constant automaton")
}

/// `1` on `k^l`, `0` elsewhere: zeros, then a single `1`, then zeros.
pub fn power_indicator(k: u32) -> Dfao {
    let mut a = vec![2; k as usize];
    a[0] = 0;
    a[1] = 1;
    let mut b = vec![2; k as usize];
    b[0] = 1;
    Dfao::new(
        k,
        vec!["a".into(), "b".into(), "dead".into()],
        0,
        vec![a, b, vec![2; k as usize]],
        vec![Value::ZERO, Value::ONE, Value::ZERO],
    )
    .expect("well-formed indicator")
}

/// `1` at `n = 1`, `0` elsewhere, including `n = 0`.
pub fn one_point(base: u32) -> Dfao {
    let k = base as usize;
    let mut a = vec![2; k];
    a[1] = 1;
    let mut b = vec![2; k];
    b[0] = 1;
    Dfao::new(
        base,
        vec!["a".into(), "b".into(), "dead".into()],
        0,
        vec![a, b, vec![2; k]],
        vec![Value::ZERO, Value::ONE, Value::ZERO],
    )
    .expect("well-formed one-point automaton")
}

pub fn thue_morse() -> Dfao {
    Dfao::new(
        2,
        vec!["even".into(), "odd".into()],
        0,
        vec![vec![0, 1], vec![1, 0]],
        vec![Value::ONE, Value::MINUS_ONE],
    )
    .expect("well-formed Thue-Morse automaton")
}

/// The character mod 5 with `chi(2) = i`, as a base-3 automaton.
pub fn chi5_base3() -> Dfao {
    let chi = characters_mod(5).expect("modulus 5").swap_remove(1);
    chi.to_dfao(3).expect("periodic automaton")
}

/// Outputs 1 at the initial state but 0 after a leading zero: rejected
/// by validation.
pub fn leading_zero_variant() -> Dfao {
    Dfao::new(
        2,
        vec!["s".into(), "t".into()],
        0,
        vec![vec![1, 0], vec![1, 1]],
        vec![Value::ONE, Value::ZERO],
    )
    .expect("structurally well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::validate;

    #[test]
    fn all_valid() {
        for (name, d) in registry() {
            assert!(validate(&d).is_ok(), "{name}");
        }
        assert_eq!(registry().len(), NAMES.len());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn closed_forms() {
        let pow3 = power_indicator(3);
        for n in 0..2000u64 {
            let mut m = n;
            while m > 1 && m % 3 == 0 {
                m /= 3;
            }
            assert_eq!(pow3.eval(n).is_one(), m == 1, "n = {n}");
        }
        let one = one_point(2);
        for n in 0..500u64 {
            assert_eq!(one.eval(n).is_one(), n == 1, "n = {n}");
        }
        let t = thue_morse();
        for n in 0..500u64 {
            let v = if n.count_ones() % 2 == 0 { Value::ONE } else { Value::MINUS_ONE };
            assert_eq!(t.eval(n), &v);
        }
        let c = chi5_base3();
        let expect = [Value::ZERO, Value::ONE, Value::zeta(4, 1), Value::zeta(4, 3), Value::MINUS_ONE];
        for n in 0..500u64 {
            assert_eq!(c.eval(n), &expect[(n % 5) as usize]);
        }
    }
}
