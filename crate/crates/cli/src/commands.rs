// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use multauto::aridsets::ggp::parse_rational;
use multauto::aridsets::{
    containment_oracle, forbidden_pattern_check, ggp_encode, ggp_encode_tight, ipr_residues,
    rank_of_basic, small_gcd_certificate, vanishing_partition, AridSet, Containment, Ggp, IprSet,
    IprStrategy, PatternForm, RankCertificate,
};
use multauto::automaton::{
    equiv_pair_search, k_kernel, kernel_shift_pair, language_growth, save_dfao, validate, Growth,
};
use multauto::classify::{classify_with, prime_power_profile, Bounds};
use multauto::numtheory::{characters_mod, DirichletCharacter, MockCharacter};
use multauto::{fixtures, DigitWord, Error, Exec, Value};

use crate::input::{load, read, Failure};
use crate::{AridCommand, CharacterCommand, Cli, Command, Format, GgpCommand};

type Run = Result<u8, Failure>;

/// Values without the `int:` / `rat:` tags.
fn plain(v: &Value) -> String {
    let s = v.to_string();
    match s.strip_prefix("int:").or_else(|| s.strip_prefix("rat:")) {
        Some(rest) => rest.to_string(),
        None => s,
    }
}

fn emit(cli: &Cli, doc: Json, human: impl FnOnce() -> String) {
    match cli.format {
        Format::Structured => println!("{}", serde_json::to_string_pretty(&doc).expect("json")),
        Format::Human => print!("{}", human()),
    }
}

fn rationals(list: &str) -> Result<Vec<BigRational>, Failure> {
    list.split(',')
        .map(|s| parse_rational(s.trim()).map_err(Failure::from))
        .collect()
}

pub fn run(cli: &Cli) -> Run {
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    };
    match &cli.command {
        Command::Eval { input, at } => eval(cli, input, at),
        Command::Classify {
            input,
            bounds,
            output,
        } => {
            let d = load(input)?;
            if bounds.n == 0 || bounds.m_max == 0 || bounds.p_max < 2 || bounds.period_max == 0 {
                return Err(Failure::usage("bounds must be positive (and --p-max >= 2)"));
            }
            let b = Bounds {
                n: bounds.n,
                m_max: bounds.m_max,
                p_max: bounds.p_max,
                alpha_max: bounds.alpha_max,
                period_max: bounds.period_max,
            };
            let report = classify_with(exec, &d, b)?;
            let json = report.to_json();
            if let Some(path) = output {
                std::fs::write(path, &json)?;
            }
            match cli.format {
                Format::Structured => print!("{json}"),
                Format::Human => print!("{}", report.summary()),
            }
            Ok(if report.is_conclusive() { 0 } else { 1 })
        }
        Command::Fixtures { emit: Some(name) } => {
            let d = fixtures::by_name(name)
                .ok_or_else(|| Failure::usage(format!("no fixture `{name}`")))?;
            print!("{}", save_dfao(&d));
            Ok(0)
        }
        Command::Fixtures { emit: None } => {
            let list: Vec<Json> = fixtures::registry()
                .iter()
                .map(|(n, d)| json!({"name": n, "base": d.base(), "states": d.num_states()}))
                .collect();
            emit(cli, json!({"command": "fixtures", "fixtures": list}), || {
                fixtures::registry()
                    .iter()
                    .map(|(n, d)| format!("{n:<14} base {} {:>3} states\n", d.base(), d.num_states()))
                    .collect()
            });
            Ok(0)
        }
        Command::Validate { input } => {
            let d = load(input)?;
            let warnings: Vec<String> = validate(&d)?.iter().map(|w| w.to_string()).collect();
            emit(cli, json!({"command": "validate", "valid": true, "warnings": warnings}), || {
                let mut s = String::from("valid\n");
                for w in &warnings {
                    s += &format!("warning: {w}\n");
                }
                s
            });
            Ok(0)
        }
        Command::Kernel { input } => {
            let d = load(input)?;
            let kernel = k_kernel(&d);
            let (alpha, beta) = kernel_shift_pair(&d);
            let rows: Vec<Json> = kernel
                .iter()
                .map(|e| {
                    json!({"state": d.names()[e.state], "alpha": e.alpha, "r": e.r.to_string()})
                })
                .collect();
            emit(
                cli,
                json!({"command": "kernel", "size": kernel.len(), "elements": rows,
                       "shift_pair": [alpha, beta]}),
                || {
                    let mut s = format!("{} kernel elements, shift pair ({alpha}, {beta})\n", kernel.len());
                    for e in &kernel {
                        s += &format!("{:<10} alpha {:<4} r {}\n", d.names()[e.state], e.alpha, e.r);
                    }
                    s
                },
            );
            Ok(0)
        }
        Command::Growth { input, value } => {
            let d = load(input)?;
            let target: Option<Value> = value.as_deref().map(str::parse).transpose()?;
            let accept = |v: &Value| match &target {
                Some(t) => v == t,
                None => !v.is_zero(),
            };
            let g = language_growth(&d, accept);
            let doc = match &g {
                Growth::Empty => json!({"command": "growth", "kind": "empty"}),
                Growth::Polynomial { star_blocks } => {
                    json!({"command": "growth", "kind": "polynomial", "star_blocks": star_blocks, "degree": g.degree()})
                }
                Growth::Exponential(w) => json!({"command": "growth", "kind": "exponential",
                    "witness": {"w": w.w.to_string(), "v1": w.v1.to_string(), "v2": w.v2.to_string(),
                                "u": w.u.to_string(), "value": w.value}}),
            };
            emit(cli, doc, || match &g {
                Growth::Empty => "empty\n".into(),
                Growth::Polynomial { star_blocks } => {
                    format!("polynomial, {star_blocks} pumpable block(s)\n")
                }
                Growth::Exponential(w) => format!(
                    "exponential: [{} {{{}, {}}}* {}]_k -> {}\n",
                    w.w,
                    w.v1,
                    w.v2,
                    w.u,
                    plain(&w.value)
                ),
            });
            Ok(0)
        }
        Command::Profile { input, p, alpha_max } => {
            let d = load(input)?;
            let prof = prime_power_profile(&d, *p, *alpha_max)?;
            emit(cli, json!({"command": "profile", "profile": prof}), || {
                let vals: Vec<String> = prof.values.iter().map(plain).collect();
                let mut s = format!("a({p}^alpha), alpha = 0..{alpha_max}: {}\n", vals.join(" "));
                s += &format!("geometric: {}", prof.geometric);
                if let Some(r) = &prof.ratio {
                    s += &format!(" (ratio {})", plain(r));
                }
                s += "\n";
                match prof.periodicity {
                    Some((pre, q)) => s += &format!("preperiod {pre}, period {q}\n"),
                    None if prof.divides_base => s += "p divides the base\n",
                    None => s += "no period found in range\n",
                }
                s
            });
            Ok(0)
        }
        Command::EquivPair { input, p, bound } => {
            let d = load(input)?;
            let pair = equiv_pair_search(&d, *p, *bound)?;
            emit(
                cli,
                json!({"command": "equiv-pair", "p": p, "n1": pair.n1, "n2": pair.n2}),
                || format!("n1 = {}, n2 = {}\n", pair.n1, pair.n2),
            );
            Ok(0)
        }
        Command::Arid { command } => arid(cli, command),
        Command::Ggp {
            command: GgpCommand::Encode { k, coeffs, alphas },
        } => {
            let g = Ggp::new(*k, rationals(coeffs)?)?;
            let (enc, certified) = match ggp_encode(&g, alphas) {
                Ok(e) => (e, true),
                Err(Error::SpacingTooSmall { required }) => match ggp_encode_tight(&g, alphas)? {
                    Some(e) => (e, false),
                    None => return Err(Error::SpacingTooSmall { required }.into()),
                },
                Err(e) => return Err(e.into()),
            };
            let required = g.constants()?.spacing;
            let value = enc.assemble().value();
            emit(
                cli,
                json!({"command": "ggp-encode", "encoding": enc, "certified": certified,
                       "required_spacing": required}),
                || {
                    let words = |ws: &[DigitWord]| {
                        ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
                    };
                    let mut s = format!("value {value}\nB = {}, l = {:?}\n", enc.block, enc.l);
                    s += &format!("u: {}\nv: {}\n", words(&enc.u), words(&enc.v));
                    if !certified {
                        s += &format!(
                            "note: exponents spaced below C = {required}; encoding verified directly\n"
                        );
                    }
                    s
                },
            );
            Ok(0)
        }
        Command::Ipr {
            n0,
            sides,
            modulus,
            enumerate,
        } => {
            let a = IprSet::new(*n0, sides.clone())?;
            let strategy = if *enumerate {
                IprStrategy::Enumerate
            } else {
                IprStrategy::Auto
            };
            let res = ipr_residues(&a, *modulus, strategy)?;
            let holds = a.hypothesis_holds(*modulus);
            let bound = a.residue_bound(*modulus);
            let ok = !holds || res.len() as u64 >= bound;
            emit(
                cli,
                json!({"command": "ipr", "residues": res, "count": res.len(),
                       "coprime_sides": holds, "bound": bound}),
                || {
                    let list: Vec<String> = res.iter().map(|r| r.to_string()).collect();
                    format!("{{{}}} ({} residues; bound {bound})\n", list.join(", "), res.len())
                },
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::Cert { k, w, v, u, primes } => {
            let word = |s: &str| DigitWord::parse(s, *k).map_err(Failure::from);
            let cert = small_gcd_certificate(&word(w)?, &word(v)?, &word(u)?, primes)?;
            let verified = cert.verify();
            emit(
                cli,
                json!({"command": "cert", "certificate": cert, "verified": verified.is_ok()}),
                || {
                    let mut s = format!("D0 = {}\nD1 = {}\nD = {}\n", cert.d0, cert.d1, cert.d);
                    for b in &cert.primes {
                        s += &format!("p = {:<4} Q = {:<8} nu_p(D) = {}\n", b.p, b.q, b.nu_d);
                    }
                    s += &match verified {
                        Ok(()) => "replay: ok\n".to_string(),
                        Err((p, l)) => format!("replay: fails at p = {p}, l = {l}\n"),
                    };
                    s
                },
            );
            Ok(if verified.is_ok() { 0 } else { 1 })
        }
        Command::Partition { k, x, alpha, c } => {
            let x = rationals(x)?;
            let groups = vanishing_partition(*k, &x, alpha, *c)?;
            emit(cli, json!({"command": "partition", "groups": groups}), || match &groups {
                Some(gs) => gs
                    .iter()
                    .map(|g| format!("gamma {:<4} terms {:?}\n", g.gamma, g.members))
                    .collect(),
                None => format!("no partition with diameter < {c}\n"),
            });
            Ok(if groups.is_some() { 0 } else { 1 })
        }
        Command::Character { command } => character(cli, command),
    }
}

fn eval(cli: &Cli, input: &str, at: &str) -> Run {
    let d = load(input)?;
    let bad = || Failure::usage(format!("bad position `{at}`: expected n or a..b"));
    let rows: Vec<(String, Value)> = match at.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            (a..=b).map(|n| (n.to_string(), d.eval(n).clone())).collect()
        }
        None => {
            let n: BigUint = at.trim().parse().map_err(|_| bad())?;
            vec![(n.to_string(), d.eval_big(&n).clone())]
        }
    };
    let list: Vec<Json> = rows.iter().map(|(n, v)| json!({"n": n, "value": v})).collect();
    emit(cli, json!({"command": "eval", "values": list}), || {
        rows.iter().map(|(_, v)| plain(v) + "\n").collect()
    });
    Ok(0)
}

fn arid_file(path: &str) -> Result<AridSet, Failure> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn arid(cli: &Cli, command: &AridCommand) -> Run {
    match command {
        AridCommand::Member { file, n } => {
            let a = arid_file(file)?;
            let n: BigUint = n
                .parse()
                .map_err(|_| Failure::usage(format!("bad integer `{n}`")))?;
            let member = a.member(&n);
            emit(cli, json!({"command": "arid-member", "n": n.to_string(), "member": member}), || {
                format!("{member}\n")
            });
            Ok(0)
        }
        AridCommand::Enumerate { file, n } => {
            let a = arid_file(file)?;
            let list = a.enumerate(*n);
            emit(cli, json!({"command": "arid-enumerate", "N": n, "members": list}), || {
                list.iter().map(|m| format!("{m}\n")).collect()
            });
            Ok(0)
        }
        AridCommand::Check { file } => {
            let a = arid_file(file)?;
            let mut forbidden = false;
            let parts: Vec<Json> = a
                .parts()
                .iter()
                .map(|p| match forbidden_pattern_check(p) {
                    PatternForm::Geometric(ps) => json!({"geometric": ps}),
                    PatternForm::Forbidden { w, v, u } => {
                        forbidden = true;
                        json!({"forbidden": {"w": w.to_string(), "v": v.to_string(), "u": u.to_string()}})
                    }
                })
                .collect();
            emit(cli, json!({"command": "arid-check", "parts": parts}), || {
                a.parts()
                    .iter()
                    .map(|p| match forbidden_pattern_check(p) {
                        PatternForm::Geometric(ps) => {
                            let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                            format!("geometric [{}]\n", list.join(", "))
                        }
                        PatternForm::Forbidden { w, v, u } => {
                            format!("forbidden [{w} ({v})^l {u}]_k\n")
                        }
                    })
                    .collect()
            });
            Ok(if forbidden { 1 } else { 0 })
        }
        AridCommand::Rank { file } => {
            let a = arid_file(file)?;
            let ranks = a
                .parts()
                .iter()
                .map(|p| rank_of_basic(p).map_err(Failure::from))
                .collect::<Result<Vec<_>, _>>()?;
            let as_json: Vec<Json> = ranks
                .iter()
                .map(|r| match r {
                    RankCertificate::Certified(n) => json!(n),
                    RankCertificate::NotCertified => Json::Null,
                })
                .collect();
            emit(cli, json!({"command": "arid-rank", "ranks": as_json}), || {
                ranks
                    .iter()
                    .map(|r| match r {
                        RankCertificate::Certified(n) => format!("rank {n}\n"),
                        RankCertificate::NotCertified => "not certified\n".into(),
                    })
                    .collect()
            });
            Ok(0)
        }
        AridCommand::Contain { a, b, n } => {
            let (a, b) = (arid_file(a)?, arid_file(b)?);
            let result = containment_oracle(&a, &b, *n);
            let witness = match result {
                Containment::Contained => None,
                Containment::Counterexample(m) => Some(m),
            };
            emit(
                cli,
                json!({"command": "arid-contain", "N": n, "contained": witness.is_none(),
                       "counterexample": witness}),
                || match witness {
                    None => format!("contained on [0, {n}]\n"),
                    Some(m) => format!("not contained: {m}\n"),
                },
            );
            Ok(if witness.is_none() { 0 } else { 1 })
        }
    }
}

fn pick(chars: Vec<DirichletCharacter>, index: Option<usize>) -> Result<DirichletCharacter, Failure> {
    let count = chars.len();
    let i = index.unwrap_or(if count > 1 { 1 } else { 0 });
    chars
        .into_iter()
        .nth(i)
        .ok_or_else(|| Failure::usage(format!("character index {i} out of range (0..{count})")))
}

fn character(cli: &Cli, command: &CharacterCommand) -> Run {
    match command {
        CharacterCommand::List { modulus } => {
            let chars = characters_mod(*modulus)?;
            emit(cli, json!({"command": "character-list", "characters": chars}), || {
                chars
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let t: Vec<String> = c.table().iter().map(plain).collect();
                        format!("{i:<4} label {:?} order {}: [{}]\n", c.label(), c.order(), t.join(", "))
                    })
                    .collect()
            });
            Ok(0)
        }
        CharacterCommand::Mock {
            k,
            modulus,
            xi,
            index,
            emit: dump,
        } => {
            let xi_value: Value = xi.parse()?;
            let root = xi_value
                .as_root()
                .ok_or_else(|| Failure::usage(format!("xi = {xi} is not a root of unity")))?;
            let chi = pick(characters_mod(*modulus)?, *index)?;
            let mock = MockCharacter::new(*k, chi, root)?;
            let d = mock.to_dfao()?;
            if *dump {
                print!("{}", save_dfao(&d));
            } else {
                emit(
                    cli,
                    json!({"command": "character-mock", "mock": mock, "states": d.num_states()}),
                    || format!("mock character base {k}, chi mod {modulus}, xi {}: {} states\n", plain(&xi_value), d.num_states()),
                );
            }
            Ok(0)
        }
        CharacterCommand::Lift { modulus, k, index } => {
            let chi = pick(characters_mod(*modulus)?, Some(*index))?;
            print!("{}", save_dfao(&chi.to_dfao(*k)?));
            Ok(0)
        }
    }
}
