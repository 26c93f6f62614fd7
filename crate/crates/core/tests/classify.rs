// SPDX-License-Identifier: Apache-2.0

use num_integer::Integer;
use proptest::prelude::*;

use multauto::classify::{
    check_multiplicative_with, classify_with, Bounds, Mode, Multiplicativity,
};
use multauto::numtheory::characters_mod;
use multauto::{fixtures, Dfao, Exec, Value};

fn small_dfao(base: u32, delta: Vec<Vec<usize>>, out: Vec<i64>) -> Dfao {
    let names = (0..delta.len()).map(|i| format!("s{i}")).collect();
    Dfao::new(base, names, 0, delta, out.into_iter().map(Value::int).collect()).unwrap()
}

fn arb_dfao() -> impl Strategy<Value = Dfao> {
    (2u32..4, 1usize..4).prop_flat_map(|(base, states)| {
        (
            proptest::collection::vec(
                proptest::collection::vec(0..states, base as usize),
                states,
            ),
            proptest::collection::vec(-1i64..2, states),
        )
            .prop_map(move |(delta, out)| small_dfao(base, delta, out))
    })
}

/// Least `(m * n, m)` with `m <= n`, `gcd(m, n) = 1` (unless `complete`)
/// and `a(mn) != a(m) a(n)`.
fn brute_counterexample(d: &Dfao, bound: u64, complete: bool) -> Option<(u64, u64)> {
    for prod in 1..=bound {
        for m in 1..=prod {
            if m * m > prod {
                break;
            }
            if prod % m != 0 {
                continue;
            }
            let n = prod / m;
            if !complete && m.gcd(&n) != 1 {
                continue;
            }
            if *d.eval(prod) != d.eval(m).mul(d.eval(n)) {
                return Some((m, n));
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counterexample_is_least(d in arb_dfao(), complete in any::<bool>()) {
        let got = match check_multiplicative_with(Exec::Sequential, &d, 300, complete) {
            Multiplicativity::Holds => None,
            Multiplicativity::Fails(c) => {
                prop_assert_eq!(&c.a_m, d.eval(c.m));
                prop_assert_eq!(&c.a_mn, d.eval(c.m * c.n));
                Some((c.m, c.n))
            }
        };
        prop_assert_eq!(got, brute_counterexample(&d, 300, complete));
    }

    #[test]
    fn strategies_agree(d in arb_dfao()) {
        let seq = check_multiplicative_with(Exec::Sequential, &d, 2000, false);
        let par = check_multiplicative_with(Exec::Parallel, &d, 2000, false);
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn lifted_characters_classify_dense(m in 2u64..16, k in 2u32..6, pick in any::<prop::sample::Index>()) {
        let chars = characters_mod(m).unwrap();
        let chi = &chars[pick.index(chars.len())];
        let d = chi.to_dfao(k).unwrap();
        for n in 0..500u64 {
            prop_assert_eq!(d.eval(n), &chi.eval_u64(n));
        }
        let bounds = Bounds { n: 20_000, ..Bounds::default() };
        let report = classify_with(Exec::Parallel, &d, bounds).unwrap();
        prop_assert_eq!(report.mode, Mode::Dense);
        let dense = report.dense.unwrap();
        // the recovered character must reproduce a on integers coprime to k
        prop_assert_ne!(dense.agrees_coprime_to_base, Some(false));
    }
}

#[test]
fn multiplicative_sequences_start_at_one() {
    let bounds = Bounds { n: 20_000, ..Bounds::default() };
    for name in fixtures::NAMES {
        let d = fixtures::by_name(name).unwrap();
        let report = classify_with(Exec::Parallel, &d, bounds).unwrap();
        if report.mode != Mode::NotMultiplicative && !d.eval(1).is_zero() {
            assert!(d.eval(1).is_one(), "{name}");
        }
    }
}

#[test]
fn reports_do_not_depend_on_strategy() {
    let bounds = Bounds { n: 30_000, ..Bounds::default() };
    for name in fixtures::NAMES {
        let d = fixtures::by_name(name).unwrap();
        let seq = classify_with(Exec::Sequential, &d, bounds).unwrap();
        let par = classify_with(Exec::Parallel, &d, bounds).unwrap();
        assert_eq!(seq.to_json(), par.to_json(), "{name}");
    }
}

#[test]
fn fixture_modes() {
    let bounds = Bounds { n: 50_000, ..Bounds::default() };
    let expect = [
        ("mock-2-4-pos", Mode::Dense),
        ("mock-3-3-zeta", Mode::Dense),
        ("chi5-base3", Mode::Dense),
        ("pow-2", Mode::Sparse),
        ("pow-3", Mode::Sparse),
        ("one-point", Mode::Sparse),
        ("zero", Mode::Sparse),
    ];
    for (name, mode) in expect {
        let report = classify_with(Exec::Parallel, &fixtures::by_name(name).unwrap(), bounds).unwrap();
        assert_eq!(report.mode, mode, "{name}");
    }
}
