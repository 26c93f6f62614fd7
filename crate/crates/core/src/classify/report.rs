// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use super::dense::{
    periodic_in, prime_power_profile, recover_in, thresholds_in, CharacterRecovery,
    PeriodicMatch, PrimePowerProfile, Thresholds, Window, EQUIV_PAIR_BOUND,
};
use super::multiplicative::{check_multiplicative_with, Counterexample, Multiplicativity};
use super::sparse::{sparse_unchecked, SparseOutcome};
use crate::aridsets::{AridSet, Progression};
use crate::automaton::{dfao_hash, language_growth, validate, Dfao, Growth};
use crate::error::Result;
use crate::exec::Exec;
use crate::numtheory::{is_prime, sieve, DirichletCharacter};
use crate::value::Value;

pub const FORMAT: &str = "multauto-classification/1";

/// Search bounds for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Exhaustive window `[0, n]`.
    pub n: u64,
    pub m_max: u64,
    pub p_max: u64,
    pub alpha_max: u32,
    pub period_max: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            n: 1_000_000,
            m_max: 64,
            p_max: 50,
            alpha_max: 60,
            period_max: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sparse,
    Dense,
    Inconclusive,
    NotMultiplicative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DfaoInfo {
    pub hash: String,
    pub base: u32,
    pub states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityInfo {
    pub verified_n: u64,
    /// Least counterexample over coprime pairs, if any.
    pub counterexample: Option<Counterexample>,
    /// Least counterexample over all pairs; `None` when completely
    /// multiplicative on the window. Omitted for non-multiplicative input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<CompleteCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteCheck {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthInfo {
    /// `empty`, `polynomial` or `exponential`.
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_blocks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessInfo>,
}

/// Words are written most significant digit first, `,`-separated for
/// bases above 10.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessInfo {
    pub w: String,
    pub v1: String,
    pub v2: String,
    pub u: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseInfo {
    pub progressions: Vec<Progression>,
    pub verified_n: u64,
    pub decomposition: AridSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseInfo {
    /// `character`, `zero` or `not_found`.
    pub result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterInfo>,
    pub p_star: Option<u64>,
    pub verified_n: u64,
    /// `a(n) = chi(n)` (or `a(n) = 0` for `n > 1`) on every `n` in the
    /// window coprime to the base.
    pub agrees_coprime_to_base: Option<bool>,
    pub prime_power_tables: Vec<PrimePowerProfile>,
    pub periodic_match: Option<PeriodicMatch>,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterInfo {
    pub modulus: u64,
    pub label: Vec<u64>,
    /// `chi(0), ..., chi(m - 1)`.
    pub table: Vec<Value>,
    pub character: DirichletCharacter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub format: &'static str,
    pub dfao: DfaoInfo,
    pub bounds: Bounds,
    pub equiv_bound: u64,
    pub conventions: Vec<String>,
    pub warnings: Vec<String>,
    pub mode: Mode,
    pub multiplicativity: MultiplicativityInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sparse: Option<SparseInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense: Option<DenseInfo>,
    pub notes: Vec<String>,
}

/// Runs the full pipeline on the window `[0, bounds.n]`.
///
/// Validation errors are returned; every other outcome, including a
/// failed multiplicativity check, is a report.
pub fn classify(d: &Dfao, bounds: Bounds) -> Result<ClassificationReport> {
    classify_with(Exec::default(), d, bounds)
}

pub fn classify_with(exec: Exec, d: &Dfao, bounds: Bounds) -> Result<ClassificationReport> {
    let warnings = validate(d)?.iter().map(|w| w.to_string()).collect();
    let mut report = ClassificationReport {
        format: FORMAT,
        dfao: DfaoInfo {
            hash: dfao_hash(d),
            base: d.base(),
            states: d.num_states(),
        },
        bounds,
        equiv_bound: EQUIV_PAIR_BOUND,
        conventions: vec![
            "digits are read least significant first; a(n) is the output after reading (n)_k".into(),
            "a(0) is never used by a multiplicativity check; multiplicativity is tested for 1 <= m <= n, m*n <= N".into(),
            "a zero verdict covers n > 1 only, since a(1) = 1 for any multiplicative sequence with nonempty support".into(),
            "thresholds p0, p1, p2, p3 are empirical values consistent with the window, not certified bounds".into(),
        ],
        warnings,
        mode: Mode::Inconclusive,
        multiplicativity: MultiplicativityInfo {
            verified_n: bounds.n,
            counterexample: None,
            complete: None,
        },
        growth: None,
        sparse: None,
        dense: None,
        notes: Vec::new(),
    };

    if let Multiplicativity::Fails(c) = check_multiplicative_with(exec, d, bounds.n, false) {
        report.multiplicativity.counterexample = Some(c);
        report.mode = Mode::NotMultiplicative;
        return Ok(report);
    }
    let complete = check_multiplicative_with(exec, d, bounds.n, true);
    report.multiplicativity.complete = Some(match complete {
        Multiplicativity::Holds => CompleteCheck {
            holds: true,
            counterexample: None,
        },
        Multiplicativity::Fails(c) => CompleteCheck {
            holds: false,
            counterexample: Some(c),
        },
    });

    let growth = language_growth(d, |v| !v.is_zero());
    report.growth = Some(growth_info(&growth));
    let k = d.base() as u64;
    let composite = !is_prime(k);

    match sparse_unchecked(exec, d, bounds.n)? {
        SparseOutcome::Sparse {
            progressions,
            decomposition,
            verified_n,
        } => {
            if composite && matches!(growth, Growth::Polynomial { star_blocks } if star_blocks > 0) {
                report.notes.push(format!(
                    "base {k} is composite and the support is infinite; for composite bases the support is expected to be finite (not enforced)"
                ));
            }
            report.mode = Mode::Sparse;
            report.sparse = Some(SparseInfo {
                progressions,
                verified_n,
                decomposition,
            });
            return Ok(report);
        }
        SparseOutcome::Forbidden { w, v, u } => {
            report.notes.push(format!(
                "support contains [{} ({})^l {}]_k for all l, which excludes multiplicativity beyond the window",
                word_text(&w),
                word_text(&v),
                word_text(&u)
            ));
            report.mode = Mode::Inconclusive;
            return Ok(report);
        }
        SparseOutcome::NotSparse(_) => {}
    }

    if composite {
        report.notes.push(format!(
            "base {k} is composite and the support grows exponentially; for composite bases the support is expected to be finite (not enforced)"
        ));
    }
    let window = Window::new(exec, d, bounds.n);
    let recovery = recover_in(exec, &window, bounds.m_max, bounds.p_max)?;
    let p_star = recovery.p_star();
    // tabulate small primes: below p_star, or up to 10 when nothing was found
    let table_primes: Vec<u64> = match p_star {
        Some(p) => sieve(p.saturating_sub(1)),
        None => sieve(bounds.p_max.min(10)),
    };
    let prime_power_tables = table_primes
        .iter()
        .map(|&p| prime_power_profile(d, p, bounds.alpha_max))
        .collect::<Result<Vec<_>>>()?;
    let periodic = periodic_in(exec, &window, k, bounds.period_max);
    let thresholds = thresholds_in(exec, d, &window, p_star, bounds.p_max);
    let coprime = |n: u64| n.gcd(&k) == 1;

    let (result, character, agrees) = match &recovery {
        CharacterRecovery::Character { character, .. } => {
            let table = character.table();
            let m = character.modulus();
            let agrees = exec.all(1..bounds.n + 1, |n| {
                !coprime(n) || window.values[n as usize] == table[(n % m) as usize]
            });
            let info = CharacterInfo {
                modulus: m,
                label: character.label().to_vec(),
                table,
                character: character.clone(),
            };
            ("character", Some(info), Some(agrees))
        }
        CharacterRecovery::Zero { .. } => {
            let agrees =
                exec.all(2..bounds.n + 1, |n| !coprime(n) || window.values[n as usize].is_zero());
            ("zero", None, Some(agrees))
        }
        CharacterRecovery::NotFound { .. } => ("not_found", None, None),
    };
    report.mode = if p_star.is_some() {
        Mode::Dense
    } else {
        report.notes.push(format!(
            "no character mod m <= {} agrees with the sequence on integers free of primes below p for any prime p <= {}",
            bounds.m_max, bounds.p_max
        ));
        Mode::Inconclusive
    };
    report.dense = Some(DenseInfo {
        result,
        character,
        p_star,
        verified_n: bounds.n,
        agrees_coprime_to_base: agrees,
        prime_power_tables,
        periodic_match: periodic,
        thresholds,
    });
    Ok(report)
}

fn word_text(w: &crate::digits::DigitWord) -> String {
    w.to_string()
}

fn growth_info(g: &Growth) -> GrowthInfo {
    match g {
        Growth::Empty => GrowthInfo {
            kind: "empty",
            star_blocks: None,
            witness: None,
        },
        Growth::Polynomial { star_blocks } => GrowthInfo {
            kind: "polynomial",
            star_blocks: Some(*star_blocks),
            witness: None,
        },
        Growth::Exponential(w) => GrowthInfo {
            kind: "exponential",
            star_blocks: None,
            witness: Some(WitnessInfo {
                w: word_text(&w.w),
                v1: word_text(&w.v1),
                v2: word_text(&w.v2),
                u: word_text(&w.u),
                value: w.value.clone(),
            }),
        },
    }
}

impl ClassificationReport {
    /// Pretty-printed JSON; byte-identical for identical inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// True for `Sparse` and `Dense`.
    pub fn is_conclusive(&self) -> bool {
        matches!(self.mode, Mode::Sparse | Mode::Dense)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let b = &self.bounds;
        let _ = writeln!(s, "dfao      {} (base {}, {} states)", self.dfao.hash, self.dfao.base, self.dfao.states);
        let _ = writeln!(
            s,
            "bounds    N={} m_max={} p_max={} alpha_max={} period_max={}",
            b.n, b.m_max, b.p_max, b.alpha_max, b.period_max
        );
        for w in &self.warnings {
            let _ = writeln!(s, "warning   {w}");
        }
        let mode = match self.mode {
            Mode::Sparse => "sparse",
            Mode::Dense => "dense",
            Mode::Inconclusive => "inconclusive",
            Mode::NotMultiplicative => "not multiplicative",
        };
        let _ = writeln!(s, "mode      {mode}");
        let m = &self.multiplicativity;
        match &m.counterexample {
            Some(c) => {
                let _ = writeln!(
                    s,
                    "counter   a({}) = {} but a({}) a({}) = {} * {}",
                    c.m * c.n,
                    c.a_mn,
                    c.m,
                    c.n,
                    c.a_m,
                    c.a_n
                );
            }
            None => {
                let complete = m.complete.as_ref().is_some_and(|c| c.holds);
                let _ = writeln!(
                    s,
                    "mult      holds on [1, {}]{}",
                    m.verified_n,
                    if complete { " (completely)" } else { "" }
                );
            }
        }
        if let Some(g) = &self.growth {
            let _ = match g.star_blocks {
                Some(b) => writeln!(s, "support   {} growth, {} pumpable block(s)", g.kind, b),
                None => writeln!(s, "support   {} growth", g.kind),
            };
        }
        if let Some(sp) = &self.sparse {
            let list: Vec<String> = sp.progressions.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "progs     [{}] on [0, {}]", list.join(", "), sp.verified_n);
        }
        if let Some(d) = &self.dense {
            match &d.character {
                Some(c) => {
                    let table: Vec<String> = c.table.iter().map(|v| v.to_string()).collect();
                    let _ = writeln!(s, "character mod {} label {:?}: [{}]", c.modulus, c.label, table.join(", "));
                }
                None => {
                    let _ = writeln!(s, "character {}", d.result);
                }
            }
            if let Some(p) = d.p_star {
                let _ = writeln!(s, "p_star    {p} (n <= {} with no prime factor below p_star)", d.verified_n);
            }
            if let Some(a) = d.agrees_coprime_to_base {
                let _ = writeln!(s, "coprime   agreement on n coprime to the base: {a}");
            }
            for t in &d.prime_power_tables {
                let head: Vec<String> = t.values.iter().take(8).map(|v| v.to_string()).collect();
                let per = match t.periodicity {
                    Some((pre, q)) => format!("preperiod {pre}, period {q}"),
                    None if t.divides_base => "divides base".into(),
                    None => "no period found".into(),
                };
                let _ = writeln!(
                    s,
                    "p = {:<5}  a(p^a) = {}, ...; geometric {}; {per}",
                    t.p,
                    head.join(", "),
                    t.geometric
                );
            }
            if let Some(pm) = &d.periodic_match {
                let _ = writeln!(s, "periodic  period {} from n0 = {}", pm.period, pm.n0);
            }
            let t = &d.thresholds;
            let _ = writeln!(
                s,
                "thresh    p0={} p1={} p2={} p3={} (empirical)",
                t.p0,
                t.p1.map_or("-".to_string(), |p| p.to_string()),
                t.p2,
                t.p3
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note      {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn small() -> Bounds {
        Bounds {
            n: 20_000,
            m_max: 16,
            p_max: 20,
            alpha_max: 20,
            period_max: 16,
        }
    }

    #[test]
    fn modes() {
        let d = fixtures::mock("mock-2-4-neg");
        let r = classify(&d, small()).unwrap();
        assert_eq!(r.mode, Mode::Dense);
        let dense = r.dense.as_ref().unwrap();
        assert_eq!(dense.p_star, Some(3));
        assert_eq!(dense.character.as_ref().unwrap().modulus, 4);
        assert_eq!(dense.agrees_coprime_to_base, Some(true));
        assert_eq!(dense.prime_power_tables.len(), 1);

        let r = classify(&fixtures::power_indicator(2), small()).unwrap();
        assert_eq!(r.mode, Mode::Sparse);
        assert_eq!(r.sparse.unwrap().progressions, vec![Progression::new(1u32, 1)]);

        let r = classify(&fixtures::thue_morse(), small()).unwrap();
        assert_eq!(r.mode, Mode::NotMultiplicative);
        let c = r.multiplicativity.counterexample.unwrap();
        assert_eq!((c.m, c.n), (1, 1));
    }

    #[test]
    fn deterministic_across_strategies() {
        for (name, d) in fixtures::registry() {
            let a = classify_with(Exec::Sequential, &d, small()).unwrap().to_json();
            let b = classify_with(Exec::Parallel, &d, small()).unwrap().to_json();
            assert_eq!(a, b, "{name}");
            let _: serde_json::Value = serde_json::from_str(&a).unwrap();
        }
    }

    #[test]
    fn composite_base_note() {
        let r = classify(&fixtures::power_indicator(4), small()).unwrap();
        assert_eq!(r.mode, Mode::Sparse);
        assert!(r.notes.iter().any(|n| n.contains("composite")));
        assert!(r.warnings.iter().any(|w| w.contains("perfect-power")));
    }

    #[test]
    fn rejects_invalid() {
        assert!(classify(&fixtures::leading_zero_variant(), small()).is_err());
    }

    #[test]
    fn summary_mentions_mode() {
        let r = classify(&fixtures::power_indicator(3), small()).unwrap();
        assert!(r.summary().contains("mode      sparse"));
        assert!(r.summary().contains("(1, 1)"));
    }
}
