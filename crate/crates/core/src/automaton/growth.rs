// SPDX-License-Identifier: Apache-2.0

//! Growth of a support language: polynomial (slender, a finite union of
//! digit patterns `u_r v_r^* ... v_1^* u_0`) or exponential (two distinct
//! equal-length pumps `v1`, `v2` that can be chained freely).
//!
//! The language is `{ (n)_k : accept(a(n)) }` over canonical expansions,
//! so the analysis runs on the product of the automaton with a
//! three-valued flag tracking the last digit read (start / zero /
//! nonzero); a word is canonical iff it is empty or its most significant
//! digit, read last, is nonzero. After trimming, the language is
//! polynomial iff every strongly connected component is a single cycle
//! or a lone vertex.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::Dfao;
use crate::aridsets::{AridSet, BasicAridSet};
use crate::digits::DigitWord;
use crate::error::{Error, Result};
use crate::value::Value;

/// Upper bound on patterns emitted by [`slender_decomposition`].
pub const MAX_PATTERNS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Growth {
    /// No word is accepted.
    Empty,
    /// At most polynomially many accepted words of each length.
    /// `star_blocks` is the largest number of pumpable blocks along an
    /// accepting path; the count of words of length `L` is
    /// `O(L^(star_blocks - 1))`, and the language is finite when it is 0.
    Polynomial { star_blocks: usize },
    Exponential(ExponentialWitness),
}

impl Growth {
    /// `star_blocks - 1`; `None` for finite or empty languages.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Growth::Polynomial { star_blocks } => star_blocks.checked_sub(1),
            _ => None,
        }
    }
}

/// Words with `|v1| = |v2|`, `v1 != v2` such that every `[w v u]_k`,
/// `v` in `{v1, v2}^*`, is accepted with the same output `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialWitness {
    pub w: DigitWord,
    pub v1: DigitWord,
    pub v2: DigitWord,
    pub u: DigitWord,
    pub value: Value,
}

impl ExponentialWitness {
    /// `w v u` with `v` the concatenation of `v1` (false) / `v2` (true).
    pub fn word(&self, choices: &[bool]) -> DigitWord {
        let mut word = self.w.clone();
        for &c in choices {
            word = word.concat(if c { &self.v2 } else { &self.v1 });
        }
        word.concat(&self.u)
    }

    /// Replays one member: the word evaluates to `self.value`, which the
    /// predicate accepts.
    pub fn replays(&self, d: &Dfao, accept: impl Fn(&Value) -> bool, choices: &[bool]) -> bool {
        match d.eval_word(&self.word(choices)) {
            Ok(v) => v == &self.value && accept(v),
            Err(_) => false,
        }
    }
}

const START: u8 = 0;
const ZERO: u8 = 1;
const NONZERO: u8 = 2;

/// Trimmed canonical-word acceptor.
struct Acceptor {
    base: u32,
    state_of: Vec<usize>,
    edges: Vec<Vec<(u32, usize)>>,
    accepting: Vec<bool>,
    comp_of: Vec<usize>,
    // components in topological order
    comps: Vec<Vec<usize>>,
}

impl Acceptor {
    fn build(d: &Dfao, accept: &dyn Fn(&Value) -> bool) -> Option<Acceptor> {
        let mut index: HashMap<(usize, u8), usize> = HashMap::new();
        let mut nodes = vec![(d.initial(), START)];
        index.insert(nodes[0], 0);
        let mut edges: Vec<Vec<(u32, usize)>> = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let (s, _) = nodes[i];
            let mut out = Vec::with_capacity(d.base() as usize);
            for c in 0..d.base() {
                let key = (d.step(s, c), if c == 0 { ZERO } else { NONZERO });
                let id = *index.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                out.push((c, id));
            }
            edges.push(out);
            i += 1;
        }
        let accepting: Vec<bool> = nodes
            .iter()
            .map(|&(s, flag)| flag != ZERO && accept(d.output(s)))
            .collect();

        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (src, out) in edges.iter().enumerate() {
            for &(_, dst) in out {
                reverse[dst].push(src);
            }
        }
        let mut live = accepting.clone();
        let mut stack: Vec<usize> = (0..nodes.len()).filter(|&n| accepting[n]).collect();
        while let Some(n) = stack.pop() {
            for &m in &reverse[n] {
                if !live[m] {
                    live[m] = true;
                    stack.push(m);
                }
            }
        }
        if !live[0] {
            return None;
        }
        let mut renumber = vec![usize::MAX; nodes.len()];
        let mut kept = Vec::new();
        for n in 0..nodes.len() {
            if live[n] {
                renumber[n] = kept.len();
                kept.push(n);
            }
        }
        let state_of: Vec<usize> = kept.iter().map(|&n| nodes[n].0).collect();
        let trimmed_edges: Vec<Vec<(u32, usize)>> = kept
            .iter()
            .map(|&n| {
                edges[n]
                    .iter()
                    .filter(|&&(_, t)| live[t])
                    .map(|&(c, t)| (c, renumber[t]))
                    .collect()
            })
            .collect();
        let trimmed_accepting: Vec<bool> = kept.iter().map(|&n| accepting[n]).collect();

        let mut graph = DiGraph::<(), ()>::new();
        let ids: Vec<_> = (0..kept.len()).map(|_| graph.add_node(())).collect();
        for (src, out) in trimmed_edges.iter().enumerate() {
            for &(_, dst) in out {
                graph.add_edge(ids[src], ids[dst], ());
            }
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                c.sort_unstable();
                c
            })
            .collect();
        comps.reverse();
        let mut comp_of = vec![0; kept.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for &n in comp {
                comp_of[n] = ci;
            }
        }
        Some(Acceptor {
            base: d.base(),
            state_of,
            edges: trimmed_edges,
            accepting: trimmed_accepting,
            comp_of,
            comps,
        })
    }

    fn internal_edges(&self, n: usize) -> impl Iterator<Item = (u32, usize)> + '_ {
        let c = self.comp_of[n];
        self.edges[n]
            .iter()
            .copied()
            .filter(move |&(_, t)| self.comp_of[t] == c)
    }

    fn is_cyclic(&self, comp: usize) -> bool {
        self.comps[comp]
            .iter()
            .any(|&n| self.internal_edges(n).next().is_some())
    }

    /// First node (by id) with two internal out-edges, if any.
    fn branching_node(&self) -> Option<usize> {
        (0..self.edges.len()).find(|&n| self.internal_edges(n).count() >= 2)
    }

    /// Shortest label path from `from` to a node satisfying `goal`,
    /// optionally confined to one component.
    fn shortest_path(
        &self,
        from: usize,
        goal: impl Fn(usize) -> bool,
        within: Option<usize>,
    ) -> (Vec<u32>, usize) {
        let mut prev: Vec<Option<(usize, u32)>> = vec![None; self.edges.len()];
        let mut seen = vec![false; self.edges.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(n) = queue.pop_front() {
            if goal(n) {
                let mut labels = Vec::new();
                let mut cur = n;
                while let Some((p, c)) = prev[cur] {
                    labels.push(c);
                    cur = p;
                }
                labels.reverse();
                return (labels, n);
            }
            for &(c, t) in &self.edges[n] {
                if within.is_some_and(|comp| self.comp_of[t] != comp) || seen[t] {
                    continue;
                }
                seen[t] = true;
                prev[t] = Some((n, c));
                queue.push_back(t);
            }
        }
        unreachable!("trimmed acceptor: goal always reachable")
    }

    fn witness(&self, d: &Dfao, q: usize) -> ExponentialWitness {
        let comp = self.comp_of[q];
        let mut cycles = self.internal_edges(q).take(2).map(|(c, t)| {
            let (mut rest, _) = self.shortest_path(t, |n| n == q, Some(comp));
            rest.insert(0, c);
            rest
        });
        let c1 = cycles.next().unwrap();
        let c2 = cycles.next().unwrap();
        let (prefix, _) = self.shortest_path(0, |n| n == q, None);
        let (suffix, end) = self.shortest_path(q, |n| self.accepting[n], None);
        let word = |labels: &[u32]| {
            let mut digits = labels.to_vec();
            digits.reverse();
            DigitWord::new(self.base, digits).expect("labels are digits")
        };
        ExponentialWitness {
            w: word(&suffix),
            v1: word(&c1).repeat(c2.len()),
            v2: word(&c2).repeat(c1.len()),
            u: word(&prefix),
            value: d.output(self.state_of[end]).clone(),
        }
    }

    fn star_blocks(&self) -> usize {
        let weight: Vec<usize> = (0..self.comps.len())
            .map(|c| usize::from(self.is_cyclic(c)))
            .collect();
        let mut best: Vec<Option<usize>> = vec![None; self.comps.len()];
        best[self.comp_of[0]] = Some(weight[self.comp_of[0]]);
        for c in 0..self.comps.len() {
            let Some(here) = best[c] else { continue };
            for &n in &self.comps[c] {
                for &(_, t) in &self.edges[n] {
                    let tc = self.comp_of[t];
                    if tc != c {
                        let cand = here + weight[tc];
                        if best[tc].is_none_or(|b| b < cand) {
                            best[tc] = Some(cand);
                        }
                    }
                }
            }
        }
        best.into_iter().flatten().max().unwrap_or(0)
    }

    /// Walks the cycle of `q`'s component starting at `q`.
    fn cycle_from(&self, q: usize) -> (Vec<usize>, Vec<u32>) {
        let mut nodes = vec![q];
        let mut labels = Vec::new();
        let mut cur = q;
        loop {
            let (c, t) = self.internal_edges(cur).next().expect("cyclic component");
            labels.push(c);
            if t == q {
                return (nodes, labels);
            }
            nodes.push(t);
            cur = t;
        }
    }

    fn decompose(&self, limit: usize) -> Result<Vec<Vec<Segment>>> {
        let mut out = Vec::new();
        self.visit(0, Vec::new(), &mut out, limit)?;
        Ok(out)
    }

    fn visit(
        &self,
        q: usize,
        pattern: Vec<Segment>,
        out: &mut Vec<Vec<Segment>>,
        limit: usize,
    ) -> Result<()> {
        let comp = self.comp_of[q];
        let (nodes, labels, head) = if self.is_cyclic(comp) {
            let (nodes, labels) = self.cycle_from(q);
            let mut head = pattern;
            head.push(Segment::Star(labels.clone()));
            (nodes, labels, head)
        } else {
            (vec![q], Vec::new(), pattern)
        };
        for (t, &x) in nodes.iter().enumerate() {
            let path = &labels[..t];
            if self.accepting[x] {
                if out.len() >= limit {
                    return Err(Error::TooLarge(format!(
                        "more than {limit} patterns in the decomposition"
                    )));
                }
                let mut p = head.clone();
                p.push(Segment::Lit(path.to_vec()));
                out.push(p);
            }
            for &(c, y) in &self.edges[x] {
                if self.comp_of[y] == comp {
                    continue;
                }
                let mut lit = path.to_vec();
                lit.push(c);
                let mut p = head.clone();
                p.push(Segment::Lit(lit));
                self.visit(y, p, out, limit)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
enum Segment {
    Lit(Vec<u32>),
    Star(Vec<u32>),
}

/// Converts a read-order (least significant first) segment list into
/// `u_r v_r^* ... v_1^* u_0`.
fn to_basic(base: u32, pattern: &[Segment]) -> BasicAridSet {
    let word = |labels: &[u32]| {
        let mut digits = labels.to_vec();
        digits.reverse();
        DigitWord::new(base, digits).expect("labels are digits")
    };
    let mut us = vec![Vec::new()];
    let mut vs = Vec::new();
    for seg in pattern {
        match seg {
            Segment::Lit(l) => us.last_mut().unwrap().extend_from_slice(l),
            Segment::Star(s) => {
                vs.push(word(s));
                us.push(Vec::new());
            }
        }
    }
    let us = us.iter().map(|l| word(l)).collect();
    BasicAridSet::new(base, us, vs).expect("consistent pattern shape")
}

/// Classifies the growth of `{ (n)_k : accept(a(n)) }`.
pub fn language_growth(d: &Dfao, accept: impl Fn(&Value) -> bool) -> Growth {
    let Some(acc) = Acceptor::build(d, &accept) else {
        return Growth::Empty;
    };
    match acc.branching_node() {
        Some(q) => Growth::Exponential(acc.witness(d, q)),
        None => Growth::Polynomial {
            star_blocks: acc.star_blocks(),
        },
    }
}

/// Writes a polynomial-growth language as a finite union of basic arid
/// sets, one per path through the condensation of the trimmed acceptor.
pub fn slender_decomposition(d: &Dfao, accept: impl Fn(&Value) -> bool) -> Result<AridSet> {
    let Some(acc) = Acceptor::build(d, &accept) else {
        return Ok(AridSet::new(d.base(), Vec::new()));
    };
    if acc.branching_node().is_some() {
        return Err(Error::Hypothesis(
            "support language grows exponentially".into(),
        ));
    }
    let parts = acc
        .decompose(MAX_PATTERNS)?
        .iter()
        .map(|p| to_basic(d.base(), p))
        .collect();
    Ok(AridSet::new(d.base(), parts))
}
