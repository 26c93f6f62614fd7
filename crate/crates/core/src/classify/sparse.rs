// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::multiplicative::{check_multiplicative_with, Multiplicativity};
use crate::aridsets::{forbidden_pattern_check, normalize, AridSet, PatternForm, Progression};
use crate::automaton::{language_growth, slender_decomposition, Dfao, ExponentialWitness, Growth};
use crate::digits::DigitWord;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::value::Value;

/// `{ n <= bound : a(n) != 0 }`, ascending.
pub fn support(d: &Dfao, bound: u64) -> Vec<u64> {
    support_with(Exec::default(), d, bound)
}

pub(crate) fn support_with(exec: Exec, d: &Dfao, bound: u64) -> Vec<u64> {
    let flags = exec.tabulate(bound as usize + 1, |n| !d.eval(n as u64).is_zero());
    (0..=bound).filter(|&n| flags[n as usize]).collect()
}

/// The same automaton with output 1 on nonzero values and 0 elsewhere.
pub fn support_dfao(d: &Dfao) -> Dfao {
    d.map_outputs(|v| if v.is_zero() { Value::ZERO } else { Value::ONE })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SparseOutcome {
    /// The support is `union of {x k^{c l}}`, checked against the
    /// automaton on `[0, verified_n]`.
    Sparse {
        progressions: Vec<Progression>,
        decomposition: AridSet,
        verified_n: u64,
    },
    /// The support language grows exponentially.
    NotSparse(ExponentialWitness),
    /// Polynomial support containing a family `[w v^l u]_k` that no
    /// multiplicative sequence can have; multiplicativity must fail
    /// beyond the checked window.
    Forbidden {
        w: DigitWord,
        v: DigitWord,
        u: DigitWord,
    },
}

/// Support structure of a multiplicative DFAO sequence.
///
/// Refuses (with [`Error::NotMultiplicative`]) sequences failing the
/// coprime check on `[0, bound]`.
pub fn sparse_structure(d: &Dfao, bound: u64) -> Result<SparseOutcome> {
    sparse_structure_with(Exec::default(), d, bound)
}

pub(crate) fn sparse_structure_with(exec: Exec, d: &Dfao, bound: u64) -> Result<SparseOutcome> {
    if let Multiplicativity::Fails(c) = check_multiplicative_with(exec, d, bound, false) {
        return Err(Error::NotMultiplicative { m: c.m, n: c.n });
    }
    sparse_unchecked(exec, d, bound)
}

pub(crate) fn sparse_unchecked(exec: Exec, d: &Dfao, bound: u64) -> Result<SparseOutcome> {
    let nonzero = |v: &Value| !v.is_zero();
    if let Growth::Exponential(w) = language_growth(d, nonzero) {
        return Ok(SparseOutcome::NotSparse(w));
    }
    let decomposition = slender_decomposition(d, nonzero)?;
    let mut progs = Vec::new();
    for part in decomposition.parts() {
        match forbidden_pattern_check(part) {
            PatternForm::Geometric(p) => progs.extend(p),
            PatternForm::Forbidden { w, v, u } => {
                return Ok(SparseOutcome::Forbidden { w, v, u });
            }
        }
    }
    let progressions = normalize(d.base(), &progs);
    let claimed: BTreeSet<u64> = progressions
        .iter()
        .flat_map(|p| p.enumerate(d.base(), bound))
        .collect();
    let actual = support_with(exec, d, bound);
    if !claimed.iter().copied().eq(actual.iter().copied()) {
        let n = claimed
            .symmetric_difference(&actual.iter().copied().collect())
            .next()
            .copied()
            .unwrap_or(0);
        return Err(Error::Hypothesis(format!(
            "progression cover disagrees with the support at n = {n}"
        )));
    }
    Ok(SparseOutcome::Sparse {
        progressions,
        decomposition,
        verified_n: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn progs(d: &Dfao, n: u64) -> Vec<(u64, u64)> {
        match sparse_structure(d, n).unwrap() {
            SparseOutcome::Sparse { progressions, .. } => progressions
                .iter()
                .map(|p| (u64::try_from(&p.x).unwrap(), p.c))
                .collect(),
            other => panic!("expected sparse, got {other:?}"),
        }
    }

    #[test]
    fn supports() {
        assert_eq!(support(&fixtures::power_indicator(2), 40), vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(support(&fixtures::constant(2, Value::ZERO), 40), Vec::<u64>::new());
        let mock = fixtures::mock("mock-2-4-neg");
        assert_eq!(support(&mock, 50), (1..=50).collect::<Vec<_>>());
        let s = support_dfao(&mock);
        assert_eq!(s.num_states(), mock.num_states());
        assert!((1..200).all(|n| s.eval(n).is_one()));
    }

    #[test]
    fn power_indicators_are_single_progressions() {
        for k in [2, 3, 4] {
            assert_eq!(progs(&fixtures::power_indicator(k), 10_000), vec![(1, 1)]);
        }
    }

    #[test]
    fn degenerate_and_empty() {
        assert_eq!(progs(&fixtures::one_point(2), 1000), vec![(1, 0)]);
        assert_eq!(progs(&fixtures::constant(3, Value::ZERO), 1000), vec![]);
    }

    #[test]
    fn dense_supports() {
        let mock = fixtures::mock("mock-3-3-zeta");
        assert!(matches!(
            sparse_structure(&mock, 5000).unwrap(),
            SparseOutcome::NotSparse(_)
        ));
    }

    #[test]
    fn refuses_non_multiplicative() {
        assert_eq!(
            sparse_structure(&fixtures::thue_morse(), 100),
            Err(Error::NotMultiplicative { m: 1, n: 1 })
        );
    }
}
