// SPDX-License-Identifier: Apache-2.0

//! Multiplicative automatic sequences.
//!
//! The crate bundles the machinery needed to decide, on a finite but
//! exhaustive window, whether a sequence produced by a base-`k` DFAO is
//! multiplicative and, if it is, whether it agrees with a Dirichlet
//! character (or with zero) away from small primes:
//!
//! - [`digits`]: exact base-`k` digit words.
//! - [`automaton`]: DFAOs, transition monoids, `k`-kernels, word
//!   equivalence and the polynomial/exponential growth test.
//! - [`numtheory`]: valuations, factorization, Dirichlet and mock
//!   Dirichlet characters.
//! - [`aridsets`]: arid sets, generalised geometric progressions and
//!   their digit encodings, `IP_r^+` residues, small-gcd certificates.
//! - [`classify`]: multiplicativity checks, sparse/dense analysis and the
//!   end-to-end [`classify::classify`] pipeline.
//!
//! All arithmetic on values is exact. Sequence values live in [`Value`],
//! a nonnegative rational magnitude times a root of unity.

pub mod aridsets;
pub mod automaton;
pub mod classify;
pub mod digits;
mod error;
pub mod exec;
pub mod fixtures;
pub mod numtheory;
mod value;

pub use automaton::Dfao;
pub use digits::DigitWord;
pub use error::{Error, Result};
pub use exec::Exec;
pub use value::{Root, Value};
