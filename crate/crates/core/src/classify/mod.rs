// SPDX-License-Identifier: Apache-2.0

//! Sequence-level analysis of automatic sequences.
//!
//! - [`check_multiplicative`] scans all factorizations up to a bound.
//! - [`sparse_structure`] handles sequences with slender support, which
//!   must be a finite union of geometric progressions.
//! - [`recover_character`], [`prime_power_profile`] and
//!   [`periodic_match`] handle sequences with dense support.
//! - [`classify()`] runs the whole pipeline and produces a
//!   [`ClassificationReport`].
//!
//! Everything is verified on an explicit window `[0, N]`; `a(0)` is taken
//! as is from the automaton and never enters a multiplicativity check.

mod dense;
mod multiplicative;
mod report;
mod sparse;

pub use dense::{
    periodic_match, prime_power_profile, recover_character, thresholds, CharacterRecovery,
    PeriodicMatch, PrimePowerProfile, Thresholds, EQUIV_PAIR_BOUND, MAX_ALPHA,
};
pub use multiplicative::{
    check_multiplicative, check_multiplicative_with, Counterexample, Multiplicativity,
};
pub use report::{
    classify, classify_with, Bounds, CharacterInfo, ClassificationReport, CompleteCheck,
    DenseInfo, DfaoInfo, GrowthInfo, Mode, MultiplicativityInfo, SparseInfo, WitnessInfo, FORMAT,
};
pub use sparse::{sparse_structure, support, support_dfao, SparseOutcome};

use num_bigint::BigUint;

use crate::automaton::Dfao;
use crate::exec::Exec;
use crate::numtheory::{DirichletCharacter, MockCharacter};
use crate::value::Value;

/// A sequence that can be evaluated at any nonnegative integer.
pub trait Sequence: Sync {
    fn at(&self, n: u64) -> Value;

    fn at_big(&self, n: &BigUint) -> Value;
}

impl Sequence for Dfao {
    fn at(&self, n: u64) -> Value {
        self.eval(n).clone()
    }

    fn at_big(&self, n: &BigUint) -> Value {
        self.eval_big(n).clone()
    }
}

impl Sequence for DirichletCharacter {
    fn at(&self, n: u64) -> Value {
        self.eval_u64(n)
    }

    fn at_big(&self, n: &BigUint) -> Value {
        self.eval_big(n)
    }
}

impl Sequence for MockCharacter {
    fn at(&self, n: u64) -> Value {
        self.eval(n)
    }

    fn at_big(&self, n: &BigUint) -> Value {
        self.eval_big(n)
    }
}

/// `a(0), ..., a(n)`.
pub fn tabulate(seq: &dyn Sequence, n: u64, exec: Exec) -> Vec<Value> {
    exec.tabulate(n as usize + 1, |i| seq.at(i as u64))
}
