// SPDX-License-Identifier: Apache-2.0

//! Deterministic finite automata with output (DFAOs).
//!
//! Words act on states by `delta_{uv} = delta_u . delta_v`, so the
//! least-significant digit of `n` is consumed first and
//! `a(n) = tau(delta_{(n)_k}(s_0))`. Under this convention the `k`-kernel
//! of the produced sequence is exactly the set of states reachable from
//! `s_0`: `a(k^alpha n + r) = tau(delta_{(n)_k}(delta_{(r)_k^alpha}(s_0)))`.

mod growth;
mod io;
mod kernel;
mod monoid;

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::digits::{check_base, DigitWord};
use crate::error::{Error, Result};
use crate::value::Value;

pub use growth::{language_growth, slender_decomposition, ExponentialWitness, Growth};
pub use io::{dfao_hash, load_dfao, parse_dfao, save_dfao};
pub use kernel::{k_kernel, kernel_shift_pair, KernelElement};
pub use monoid::{
    equiv_pair_search, equivalence_class, idempotent_exponent, int_equiv, transition_monoid,
    transition_of_word, EquivPair, StateMap,
};

/// Upper bound on states produced by [`Dfao::explore`].
pub const MAX_STATES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    names: Vec<String>,
    initial: usize,
    // delta[s * base + d]
    delta: Vec<u32>,
    output: Vec<Value>,
    reachable: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// `base = root^exp` with `exp > 1`.
    PerfectPowerBase { root: u32, exp: u32 },
    UnreachableStates(usize),
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::PerfectPowerBase { root, exp } => {
                write!(f, "perfect-power base: {}^{}", root, exp)
            }
            Warning::UnreachableStates(n) => write!(f, "{n} unreachable state(s)"),
        }
    }
}

impl Dfao {
    /// Builds an automaton from per-state transition rows. Checks only
    /// structure (totality and ranges); see [`validate`] for the
    /// leading-zero condition.
    pub fn new(
        base: u32,
        names: Vec<String>,
        initial: usize,
        delta: Vec<Vec<usize>>,
        output: Vec<Value>,
    ) -> Result<Dfao> {
        check_base(base)?;
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("automaton has no states".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        if initial >= n {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        if delta.len() != n || output.len() != n {
            return Err(Error::Malformed(
                "transition and output tables must cover every state".into(),
            ));
        }
        let mut flat = Vec::with_capacity(n * base as usize);
        for (s, row) in delta.iter().enumerate() {
            if row.len() > base as usize {
                return Err(Error::DigitOutOfRange {
                    digit: row.len() as u32 - 1,
                    base,
                });
            }
            if row.len() < base as usize {
                return Err(Error::MissingTransition {
                    state: names[s].clone(),
                    digit: row.len() as u32,
                });
            }
            for &t in row {
                if t >= n {
                    return Err(Error::Malformed(format!("transition target {t} out of range")));
                }
                flat.push(t as u32);
            }
        }
        let mut dfao = Dfao {
            base,
            names,
            initial,
            delta: flat,
            output,
            reachable: Vec::new(),
        };
        dfao.reachable = dfao.reachable_from(initial);
        Ok(dfao)
    }

    /// Builds the automaton on the states reachable from `init` under
    /// `step`. States are named `q0, q1, ...` in breadth-first order.
    pub fn explore<T, S, O>(base: u32, init: T, step: S, out: O) -> Result<Dfao>
    where
        T: Clone + Eq + Hash,
        S: Fn(&T, u32) -> T,
        O: Fn(&T) -> Value,
    {
        check_base(base)?;
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut states = vec![init.clone()];
        index.insert(init, 0);
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(base as usize);
            for d in 0..base {
                let next = step(&states[i], d);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= MAX_STATES {
                            return Err(Error::TooLarge(format!(
                                "more than {MAX_STATES} states"
                            )));
                        }
                        let id = states.len();
                        index.insert(next.clone(), id);
                        states.push(next);
                        id
                    }
                };
                row.push(id);
            }
            rows.push(row);
            i += 1;
        }
        let output = states.iter().map(&out).collect();
        let names = (0..states.len()).map(|i| format!("q{i}")).collect();
        Dfao::new(base, names, 0, rows, output)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(s) = stack.pop() {
            for d in 0..self.base {
                let t = self.step(s, d);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn output(&self, state: usize) -> &Value {
        &self.output[state]
    }

    pub fn outputs(&self) -> &[Value] {
        &self.output
    }

    pub fn is_reachable(&self, state: usize) -> bool {
        self.reachable[state]
    }

    #[inline]
    pub fn step(&self, state: usize, digit: u32) -> usize {
        self.delta[state * self.base as usize + digit as usize] as usize
    }

    /// Same states, transitions and outputs, different initial state.
    pub fn with_initial(&self, initial: usize) -> Dfao {
        assert!(initial < self.num_states());
        let mut d = self.clone();
        d.initial = initial;
        d.reachable = d.reachable_from(initial);
        d
    }

    /// Same structure with the outputs mapped through `f`.
    pub fn map_outputs(&self, f: impl Fn(&Value) -> Value) -> Dfao {
        let mut d = self.clone();
        d.output = self.output.iter().map(f).collect();
        d
    }

    /// Feeds `word` (most-significant digit first) starting from `state`;
    /// the last digit is consumed first.
    pub fn run(&self, state: usize, word: &DigitWord) -> Result<usize> {
        let mut s = state;
        for d in word.lsb_digits() {
            if d >= self.base {
                return Err(Error::DigitOutOfRange {
                    digit: d,
                    base: self.base,
                });
            }
            s = self.step(s, d);
        }
        Ok(s)
    }

    pub fn run_u64(&self, state: usize, mut n: u64) -> usize {
        let k = self.base as u64;
        let mut s = state;
        while n > 0 {
            s = self.step(s, (n % k) as u32);
            n /= k;
        }
        s
    }

    pub fn eval_state(&self, n: u64) -> usize {
        self.run_u64(self.initial, n)
    }

    /// `tau(delta_{(n)_k}(s_0))`.
    pub fn eval(&self, n: u64) -> &Value {
        &self.output[self.eval_state(n)]
    }

    pub fn eval_big(&self, n: &BigUint) -> &Value {
        let mut s = self.initial;
        if n.bits() == 0 {
            return &self.output[s];
        }
        if self.base <= 256 {
            for d in n.to_radix_le(self.base) {
                s = self.step(s, d as u32);
            }
        } else {
            let w = crate::digits::int_to_word(n, self.base).expect("base checked");
            s = self.run(s, &w).expect("digits below base");
        }
        &self.output[s]
    }

    pub fn eval_word(&self, word: &DigitWord) -> Result<&Value> {
        Ok(&self.output[self.run(self.initial, word)?])
    }
}

/// Checks the leading-zero condition and reports advisory warnings.
///
/// Digits are read least-significant first, so leading zeros are applied
/// last: the produced sequence ignores them iff `tau(delta_0(s)) = tau(s)`
/// for every reachable state `s`.
pub fn validate(d: &Dfao) -> Result<Vec<Warning>> {
    for s in 0..d.num_states() {
        if d.is_reachable(s) && d.output(d.step(s, 0)) != d.output(s) {
            return Err(Error::LeadingZeroVariance {
                state: d.names[s].clone(),
            });
        }
    }
    let mut warnings = Vec::new();
    if let Some((root, exp)) = perfect_power(d.base) {
        warnings.push(Warning::PerfectPowerBase { root, exp });
    }
    let unreachable = d.reachable.iter().filter(|&&r| !r).count();
    if unreachable > 0 {
        warnings.push(Warning::UnreachableStates(unreachable));
    }
    Ok(warnings)
}

/// Smallest `root` with `root^exp = k`, `exp >= 2`, if any.
pub fn perfect_power(k: u32) -> Option<(u32, u32)> {
    (2..=k.ilog2()).rev().find_map(|exp| {
        let r = (k as f64).powf(1.0 / exp as f64).round() as u64;
        (r.saturating_sub(1)..=r + 1)
            .find(|&c| c >= 2 && c.checked_pow(exp) == Some(k as u64))
            .map(|c| (c as u32, exp))
    })
}
