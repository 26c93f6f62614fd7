// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::automaton::{equiv_pair_search, Dfao};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numtheory::{characters_mod, is_prime, sieve, smallest_prime_factors, DirichletCharacter};
use crate::value::Value;

/// Search bound handed to [`equiv_pair_search`] by [`thresholds`].
pub const EQUIV_PAIR_BOUND: u64 = 1 << 16;

/// Largest exponent accepted by [`prime_power_profile`].
pub const MAX_ALPHA: u32 = 500;

/// Tabulated sequence with least prime factors, shared by the scans.
pub(crate) struct Window {
    pub values: Vec<Value>,
    spf: Vec<u32>,
}

impl Window {
    pub fn new(exec: Exec, d: &Dfao, bound: u64) -> Window {
        Window {
            values: exec.tabulate(bound as usize + 1, |n| d.eval(n as u64).clone()),
            spf: smallest_prime_factors(bound as usize),
        }
    }

    pub fn bound(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// Least prime factor, `u64::MAX` for `n = 1`.
    fn lpf(&self, n: u64) -> u64 {
        if n <= 1 {
            u64::MAX
        } else {
            self.spf[n as usize] as u64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterRecovery {
    /// `a(n) = chi(n)` for all `1 <= n <= verified_n` with least prime
    /// factor at least `p_star`.
    Character {
        character: DirichletCharacter,
        p_star: u64,
        verified_n: u64,
    },
    /// `a(n) = 0` for all `1 < n <= verified_n` with least prime factor at
    /// least `p_star`. `n = 1` is excluded since `a(1) = 1`.
    Zero { p_star: u64, verified_n: u64 },
    NotFound {
        p_max: u64,
        m_max: u64,
        verified_n: u64,
    },
}

impl CharacterRecovery {
    pub fn p_star(&self) -> Option<u64> {
        match self {
            CharacterRecovery::Character { p_star, .. } | CharacterRecovery::Zero { p_star, .. } => {
                Some(*p_star)
            }
            CharacterRecovery::NotFound { .. } => None,
        }
    }
}

/// Finds the least prime `p_* <= p_max`, then the least modulus
/// `m <= m_max`, such that `a` agrees with a character mod `m` (or with
/// zero) on the integers of `[1, bound]` free of primes below `p_*`.
///
/// Among characters mod `m` the first in label order wins. Moduli are not
/// restricted to primes below `p_*`: a periodic sequence may need a
/// modulus with larger prime factors.
pub fn recover_character(d: &Dfao, bound: u64, m_max: u64, p_max: u64) -> Result<CharacterRecovery> {
    let w = Window::new(Exec::default(), d, bound);
    recover_in(Exec::default(), &w, m_max, p_max)
}

pub(crate) fn recover_in(
    exec: Exec,
    w: &Window,
    m_max: u64,
    p_max: u64,
) -> Result<CharacterRecovery> {
    let bound = w.bound();
    for p_star in sieve(p_max) {
        let zero = exec.all(2..bound + 1, |n| w.lpf(n) < p_star || w.values[n as usize].is_zero());
        if zero && bound >= 2 {
            return Ok(CharacterRecovery::Zero {
                p_star,
                verified_n: bound,
            });
        }
        for m in 1..=m_max {
            if let Some(character) = match_modulus(exec, w, p_star, m)? {
                return Ok(CharacterRecovery::Character {
                    character,
                    p_star,
                    verified_n: bound,
                });
            }
        }
    }
    Ok(CharacterRecovery::NotFound {
        p_max,
        m_max,
        verified_n: bound,
    })
}

/// Prefix length used to shortlist characters before the full scan.
fn prefix_len(m: u64) -> u64 {
    (64 * m).max(4096)
}

fn match_modulus(exec: Exec, w: &Window, p_star: u64, m: u64) -> Result<Option<DirichletCharacter>> {
    let bound = w.bound();
    let mut observed: Vec<Option<&Value>> = vec![None; m as usize];
    for n in 1..=bound.min(prefix_len(m)) {
        if w.lpf(n) < p_star {
            continue;
        }
        let v = &w.values[n as usize];
        let slot = &mut observed[(n % m) as usize];
        match slot {
            Some(prev) if *prev != v => return Ok(None),
            Some(_) => {}
            None => *slot = Some(v),
        }
    }
    for chi in characters_mod(m)? {
        let fits = observed
            .iter()
            .enumerate()
            .all(|(r, o)| o.is_none_or(|v| *v == chi.value_at_residue(r as u64)));
        if !fits {
            continue;
        }
        let table = chi.table();
        let agrees = exec.all(1..bound + 1, |n| {
            w.lpf(n) < p_star || w.values[n as usize] == table[(n % m) as usize]
        });
        if agrees {
            return Ok(Some(chi));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerProfile {
    pub p: u64,
    pub alpha_max: u32,
    /// `a(p^0), ..., a(p^alpha_max)`.
    pub values: Vec<Value>,
    /// All values nonzero and `a(p^{alpha+1}) = a(p) a(p^alpha)`.
    pub geometric: bool,
    pub ratio: Option<Value>,
    pub divides_base: bool,
    /// Least `(preperiod, period)` with `period <= alpha_max / 2` whose
    /// tail covers at least two periods; only computed when `p` does not
    /// divide the base.
    pub periodicity: Option<(u32, u32)>,
}

/// Exact values of `a(p^alpha)`, `0 <= alpha <= alpha_max`, from
/// big-integer digit expansions.
pub fn prime_power_profile(d: &Dfao, p: u64, alpha_max: u32) -> Result<PrimePowerProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha_max > MAX_ALPHA {
        return Err(Error::OutOfRange(format!(
            "alpha_max = {alpha_max} exceeds {MAX_ALPHA}"
        )));
    }
    let pb = BigUint::from(p);
    let mut power = BigUint::one();
    let mut values = Vec::with_capacity(alpha_max as usize + 1);
    for _ in 0..=alpha_max {
        values.push(d.eval_big(&power).clone());
        power *= &pb;
    }
    let a_p = values.get(1).cloned();
    let geometric = values.iter().all(|v| !v.is_zero())
        && a_p.as_ref().is_some_and(|a_p| {
            (0..alpha_max as usize).all(|i| values[i + 1] == a_p.mul(&values[i]))
        });
    let divides_base = (d.base() as u64).is_multiple_of(p);
    let periodicity = if divides_base {
        None
    } else {
        least_periodicity(&values)
    };
    Ok(PrimePowerProfile {
        p,
        alpha_max,
        ratio: if geometric { a_p } else { None },
        values,
        geometric,
        divides_base,
        periodicity,
    })
}

fn least_periodicity(values: &[Value]) -> Option<(u32, u32)> {
    let len = values.len();
    for q in 1..=(len - 1) / 2 {
        // positions i with values[i] != values[i + q]; preperiod is one past the last
        let s = (0..len - q)
            .rev()
            .find(|&i| values[i] != values[i + q])
            .map_or(0, |i| i + 1);
        if len - s >= 2 * q {
            return Some((s as u32, q as u32));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicMatch {
    pub period: u64,
    /// `b(r)`, `None` where no `n` coprime to the base is `= r (mod q)`.
    pub table: Vec<Option<Value>>,
    pub n0: u64,
    pub verified_n: u64,
}

/// Least `q <= period_max` with a table `b` and threshold `n_0` such that
/// `a(n) = b(n mod q)` for all `n_0 <= n <= bound` coprime to the base.
///
/// `b` is read off the top of the window and `n_0` is one past the last
/// disagreement; a match is only accepted when `2 n_0 <= bound`, so that
/// it is supported by at least half the window.
pub fn periodic_match(d: &Dfao, bound: u64, period_max: u64) -> Option<PeriodicMatch> {
    let w = Window::new(Exec::default(), d, bound);
    periodic_in(Exec::default(), &w, d.base() as u64, period_max)
}

pub(crate) fn periodic_in(exec: Exec, w: &Window, k: u64, period_max: u64) -> Option<PeriodicMatch> {
    let bound = w.bound();
    for q in 1..=period_max {
        let mut table: Vec<Option<Value>> = vec![None; q as usize];
        let mut missing = q;
        let mut n = bound;
        while missing > 0 && n > 0 && bound - n < q * k {
            let slot = &mut table[(n % q) as usize];
            if slot.is_none() && n.gcd(&k) == 1 {
                *slot = Some(w.values[n as usize].clone());
                missing -= 1;
            }
            n -= 1;
        }
        let half = bound / 2;
        let last_bad = exec.find_last(half..bound + 1, |n| {
            (n.gcd(&k) == 1 && table[(n % q) as usize].as_ref() != Some(&w.values[n as usize]))
                .then_some(n)
        });
        if last_bad.is_some() {
            continue;
        }
        let last_bad = exec.find_last(0..half, |n| {
            (n.gcd(&k) == 1 && table[(n % q) as usize].as_ref() != Some(&w.values[n as usize]))
                .then_some(n)
        });
        let n0 = last_bad.map_or(0, |n| n + 1);
        if 2 * n0 <= bound {
            return Some(PeriodicMatch {
                period: q,
                table,
                n0,
                verified_n: bound,
            });
        }
    }
    None
}

/// Empirical stand-ins for the prime thresholds: each is the least prime
/// consistent with the verified window, not a certified bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// Least prime `p_0` with `a(p^alpha) != 0` for all primes `p >= p_0`,
    /// `p^alpha <= verified_n`.
    pub p0: u64,
    /// The character threshold `p_*`.
    pub p1: Option<u64>,
    /// Least prime `p_2` with `a(p^alpha) = a(p)^alpha != 0` for all
    /// primes `p >= p_2`, `p^alpha <= verified_n`.
    pub p2: u64,
    /// Least prime `p_3` such that an equivalent pair `n1 != n2 (mod p)`
    /// below `equiv_bound` exists for all primes `p_3 <= p <= p_max`.
    pub p3: u64,
    pub verified_n: u64,
    pub p_max: u64,
    pub equiv_bound: u64,
}

pub fn thresholds(d: &Dfao, bound: u64, p_star: Option<u64>, p_max: u64) -> Thresholds {
    let w = Window::new(Exec::default(), d, bound);
    thresholds_in(Exec::default(), d, &w, p_star, p_max)
}

pub(crate) fn thresholds_in(
    exec: Exec,
    d: &Dfao,
    w: &Window,
    p_star: Option<u64>,
    p_max: u64,
) -> Thresholds {
    let bound = w.bound();
    let primes = sieve(bound);
    let prime_powers = |p: u64| {
        std::iter::successors(Some(p), move |&q| q.checked_mul(p).filter(|&r| r <= bound))
    };
    let nonzero_bad = exec.map_slice(&primes, |&p| {
        prime_powers(p).any(|q| w.values[q as usize].is_zero())
    });
    let geometric_bad = exec.map_slice(&primes, |&p| {
        let a_p = &w.values[p as usize];
        let mut expected = Value::ONE;
        prime_powers(p).any(|q| {
            expected = expected.mul(a_p);
            let v = &w.values[q as usize];
            v.is_zero() || *v != expected
        })
    });
    let small = sieve(p_max);
    let pair_bad = exec.map_slice(&small, |&p| equiv_pair_search(d, p, EQUIV_PAIR_BOUND).is_err());
    Thresholds {
        p0: past_last_bad(&primes, &nonzero_bad),
        p1: p_star,
        p2: past_last_bad(&primes, &geometric_bad),
        p3: past_last_bad(&small, &pair_bad),
        verified_n: bound,
        p_max,
        equiv_bound: EQUIV_PAIR_BOUND,
    }
}

/// The prime after the last flagged one, or 2.
fn past_last_bad(primes: &[u64], bad: &[bool]) -> u64 {
    match bad.iter().rposition(|&b| b) {
        None => 2,
        Some(i) => primes
            .get(i + 1)
            .copied()
            .unwrap_or_else(|| next_prime(primes[i])),
    }
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| is_prime(q)).expect("primes are unbounded")
}
