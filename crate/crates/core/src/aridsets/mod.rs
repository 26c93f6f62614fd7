// SPDX-License-Identifier: Apache-2.0

//! Arid sets, generalised geometric progressions and the supporting
//! finite lemmas.
//!
//! - [`pattern`]: basic arid sets and unions (membership, enumeration,
//!   forbidden families, containment on a window).
//! - [`progression`]: geometric progressions `{x k^{c l}}`.
//! - [`ggp`]: block encodings of `x_0 + sum x_i k^{alpha_i}`.
//! - [`ipr`]: residues of `IP_r^+` sets.
//! - [`cert`]: small-gcd certificates for `[w v^l u]_k`.
//! - [`partition`]: vanishing sums split into tight vanishing groups.

pub mod cert;
pub mod ggp;
pub mod ipr;
pub mod partition;
pub mod pattern;
pub mod progression;

pub use cert::{small_gcd_certificate, SmallGcdCertificate};
pub use ggp::{ggp_encode, ggp_encode_tight, nondegenerate, rank_of_basic, Ggp, GgpEncoding, RankCertificate};
pub use ipr::{ipr_residues, IprSet, IprStrategy};
pub use partition::{vanishing_partition, Group};
pub use pattern::{
    containment_oracle, forbidden_pattern_check, AridSet, BasicAridSet, Containment, PatternForm,
    Restriction,
};
pub use progression::{normalize, ExpSet, Progression};
