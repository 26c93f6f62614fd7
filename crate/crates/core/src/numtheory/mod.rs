// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic primitives, Dirichlet characters and mock Dirichlet
//! characters.

mod characters;
mod mock;

pub use characters::{characters_mod, periodic_dfao, DirichletCharacter};
pub use mock::MockCharacter;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// `nu_p(n)`, the exponent of the prime `p` in `n >= 1`.
pub fn nu_p(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::UndefinedValuation);
    }
    Ok(valuation(p, n))
}

/// `nu_p` for big integers.
pub fn nu_p_big(p: u64, n: &BigUint) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    Ok(valuation_big(p, n))
}

/// Exponent of `b >= 2` in `n >= 1` (no primality check).
pub fn valuation(b: u64, mut n: u64) -> u32 {
    debug_assert!(b >= 2 && n >= 1);
    let mut e = 0;
    while n.is_multiple_of(b) {
        n /= b;
        e += 1;
    }
    e
}

pub fn valuation_big(b: u64, n: &BigUint) -> u64 {
    debug_assert!(b >= 2 && !n.is_zero());
    let b = BigUint::from(b);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&b);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// `p^alpha || n`: `p^alpha` divides `n` and `p^(alpha+1)` does not.
pub fn exactly_divides(p: u64, alpha: u32, n: u64) -> Result<bool> {
    Ok(nu_p(p, n)? == alpha)
}

/// `gcd(m^inf, n)`: the largest divisor of `n` built from primes of `m`.
pub fn gcd_inf(m: u64, n: u64) -> u64 {
    assert!(m >= 1 && n >= 1, "gcd_inf needs positive arguments");
    let mut part = 1;
    let mut rest = n;
    loop {
        let g = m.gcd(&rest);
        if g == 1 {
            return part;
        }
        part *= g;
        rest /= g;
    }
}

pub fn gcd_inf_big(m: &BigUint, n: &BigUint) -> BigUint {
    let mut part = BigUint::one();
    let mut rest = n.clone();
    loop {
        let g = m.gcd(&rest);
        if g.is_one() {
            return part;
        }
        part *= &g;
        rest /= &g;
    }
}

/// Prime factorization in increasing order of primes; `factorize(1)` is
/// empty.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::OutOfRange("cannot factorize 0".into()));
    }
    Ok(num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect())
}

/// Primes `<= n`.
pub fn sieve(n: u64) -> Vec<u64> {
    let spf = smallest_prime_factors(n as usize);
    (2..spf.len())
        .filter(|&i| spf[i] as usize == i)
        .map(|i| i as u64)
        .collect()
}

/// `spf[i]` is the least prime factor of `i` for `i >= 2`; `spf[0]` and
/// `spf[1]` are 0.
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            let mut j = i.saturating_mul(i);
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Least prime factor; `None` for `n <= 1`.
pub fn least_prime_factor(n: u64) -> Option<u64> {
    if n <= 1 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return Some(p);
        }
        p += 1;
    }
    Some(n)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .expect("positive")
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Least `t >= 1` with `a^t = 1 (mod m)`; `None` unless `gcd(a, m) = 1`.
/// For `m = 1` the order is 1.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let mut t = euler_phi(m);
    for (q, _) in factorize(t).expect("positive") {
        while t.is_multiple_of(q) && pow_mod(a, t / q, m) == 1 {
            t /= q;
        }
    }
    Some(t)
}

/// Multiplicative order of `a` modulo `p^e` for a prime `p`.
pub fn multiplicative_order_prime_power(a: &BigUint, p: u64, e: u32) -> Result<Option<u64>> {
    let m = BigUint::from(p).pow(e);
    if e == 0 {
        return Ok(Some(1));
    }
    if (a % p).is_zero() {
        return Ok(None);
    }
    // phi(p^e) = (p - 1) p^(e-1); only its factorization is needed.
    let pe1 = p
        .checked_pow(e - 1)
        .and_then(|x| x.checked_mul(p - 1))
        .ok_or_else(|| Error::TooLarge(format!("order modulo {p}^{e}")))?;
    let mut t = pe1;
    let mut primes: Vec<u64> = factorize(p - 1)
        .unwrap_or_default()
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    if e > 1 && !primes.contains(&p) {
        primes.push(p);
    }
    let a = a % &m;
    for q in primes {
        while t % q == 0 && a.modpow(&BigUint::from(t / q), &m).is_one() {
            t /= q;
        }
    }
    Ok(Some(t))
}

pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut base = a as u128 % m128;
    let mut acc = 1u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn valuations() {
        assert_eq!(nu_p(2, 8), Ok(3));
        assert_eq!(nu_p(3, 18), Ok(2));
        assert_eq!(nu_p(5, 12), Ok(0));
        assert_eq!(nu_p(2, 0), Err(Error::UndefinedValuation));
        assert_eq!(nu_p(4, 16), Err(Error::NotPrime(4)));
        assert_eq!(exactly_divides(2, 2, 12), Ok(true));
        assert_eq!(exactly_divides(2, 1, 12), Ok(false));
        let big = BigUint::from(3u32).pow(100) * 10u32;
        assert_eq!(nu_p_big(3, &big), Ok(100));
        assert_eq!(nu_p_big(5, &big), Ok(1));
    }

    #[test]
    fn gcd_inf_examples() {
        assert_eq!(gcd_inf(6, 72), 72);
        assert_eq!(gcd_inf(2, 12), 4);
        assert_eq!(gcd_inf(35, 1), 1);
        assert_eq!(gcd_inf(10, 3 * 8 * 25), 200);
        assert_eq!(
            gcd_inf_big(&BigUint::from(10u32), &BigUint::from(600u32)),
            BigUint::from(200u32)
        );
    }

    #[test]
    fn factorization_and_sieve() {
        assert_eq!(factorize(1), Ok(vec![]));
        assert_eq!(factorize(360), Ok(vec![(2, 3), (3, 2), (5, 1)]));
        assert!(factorize(0).is_err());
        assert_eq!(sieve(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(sieve(1), Vec::<u64>::new());
        let n = 999_999_999_989u64 * 3;
        assert_eq!(factorize(n), Ok(vec![(3, 1), (999_999_999_989, 1)]));
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(10, 3), Some(1));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(multiplicative_order(5, 1), Some(1));
        for (a, p, e) in [(10u64, 3u64, 3u32), (2, 5, 2), (7, 2, 5), (3, 2, 1)] {
            let m = p.pow(e);
            assert_eq!(
                multiplicative_order_prime_power(&BigUint::from(a), p, e).unwrap(),
                multiplicative_order(a, m),
                "{a} mod {p}^{e}"
            );
        }
    }

    fn naive_lpf(n: u64) -> u64 {
        (2..=n).find(|d| n.is_multiple_of(*d)).unwrap()
    }

    proptest! {
        #[test]
        fn gcd_inf_splits(m in 1u64..500, n in 1u64..100_000) {
            let g = gcd_inf(m, n);
            prop_assert_eq!(n % g, 0);
            prop_assert_eq!(m.gcd(&(n / g)), 1);
            // every prime of g divides m
            for (p, _) in factorize(g).unwrap() {
                prop_assert_eq!(m % p, 0);
            }
        }

        #[test]
        fn factorization_reconstructs(n in 1u64..10_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
            prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }

        #[test]
        fn sieve_agrees_with_trial_division(n in 2u64..5000) {
            let spf = smallest_prime_factors(5000);
            prop_assert_eq!(spf[n as usize] as u64, naive_lpf(n));
            prop_assert_eq!(least_prime_factor(n), Some(naive_lpf(n)));
        }

        #[test]
        fn order_is_least(a in 1u64..200, m in 1u64..300) {
            let brute = (1..=m).find(|&t| pow_mod(a, t, m) == 1 % m);
            let expected = if a.gcd(&m) == 1 { brute } else { None };
            prop_assert_eq!(multiplicative_order(a, m), expected);
        }
    }
}
