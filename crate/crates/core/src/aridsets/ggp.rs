// SPDX-License-Identifier: Apache-2.0

//! Generalised geometric progressions `x_0 + sum x_i k^{alpha_i}` and
//! their block encodings `[u_r v_r^{l_r} ... u_1 v_1^{l_1} u_0]_k`.
//!
//! The value is cut into blocks of `B` digits. `u_0` is the lowest block,
//! each `u_i` is the three blocks around the block containing position
//! `alpha_i`, and the blocks between `u_{i-1}` and `u_i` are `l_i` copies
//! of one block `v_i`. With `M` the common denominator of the `x_i`, the
//! digits between two terms repeat with the period of `1/M` in base `k`,
//! so `B` is taken as a multiple of that period large enough to hold the
//! integer part `M sum |x_i|` and the preperiod of each term; `C = 4B`.
//! The encoding is then checked exactly, and `B` doubled if the check
//! fails.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::pattern::{BasicAridSet, Restriction};
use crate::digits::DigitWord;
use crate::error::{Error, Result};
use crate::numtheory::{gcd_inf, multiplicative_order};

/// Doublings of `B` tried before giving up.
pub const MAX_DOUBLINGS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ggp {
    base: u32,
    coeffs: Vec<BigRational>,
    restrictions: Vec<Restriction>,
}

/// Constants derived from the coefficients alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GgpConstants {
    /// Least common denominator of the coefficients.
    pub denominator: u64,
    /// Period of the base-`k` expansion of `1/M`.
    pub period: u64,
    /// Least `e` with the `k`-part of `M` dividing `k^e`.
    pub preperiod: u64,
    /// Digit length of `M sum |x_i| + 1`.
    pub height: u64,
    pub block: u64,
    pub spacing: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GgpEncoding {
    pub base: u32,
    pub block: u64,
    pub spacing: u64,
    /// `u_0` (`B` digits), `u_1, ..., u_r` (`3B` digits each).
    pub u: Vec<DigitWord>,
    /// `v_1, ..., v_r` (`B` digits each).
    pub v: Vec<DigitWord>,
    /// `l_1, ..., l_r`.
    pub l: Vec<u64>,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Ggp {
    /// `coeffs = [x_0, x_1, ..., x_r]`, unrestricted exponents.
    pub fn new(base: u32, coeffs: Vec<BigRational>) -> Result<Ggp> {
        let r = coeffs.len().saturating_sub(1);
        Ggp::restricted(base, coeffs, vec![Restriction::ANY; r])
    }

    pub fn restricted(base: u32, coeffs: Vec<BigRational>, restrictions: Vec<Restriction>) -> Result<Ggp> {
        crate::digits::check_base(base)?;
        if coeffs.is_empty() {
            return Err(Error::Malformed("a progression needs x_0".into()));
        }
        if restrictions.len() + 1 != coeffs.len() {
            return Err(Error::Malformed("one restriction per exponent".into()));
        }
        Ok(Ggp {
            base,
            coeffs,
            restrictions,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Whether every `x_i`, `i >= 1`, is nonzero.
    pub fn all_nonzero(&self) -> bool {
        self.coeffs[1..].iter().all(|x| !x.is_zero())
    }

    pub fn value(&self, alphas: &[u64]) -> Result<BigRational> {
        if alphas.len() != self.rank() {
            return Err(Error::Malformed(format!(
                "expected {} exponents, got {}",
                self.rank(),
                alphas.len()
            )));
        }
        let k = BigInt::from(self.base);
        let mut sum = self.coeffs[0].clone();
        for (x, &a) in self.coeffs[1..].iter().zip(alphas) {
            let a = u32::try_from(a).map_err(|_| Error::TooLarge(format!("exponent {a}")))?;
            sum += x * BigRational::from_integer(k.pow(a));
        }
        Ok(sum)
    }

    pub fn constants(&self) -> Result<GgpConstants> {
        let mut m = BigInt::one();
        for x in &self.coeffs {
            m = m.lcm(x.denom());
        }
        let m = m
            .to_u64()
            .ok_or_else(|| Error::TooLarge(format!("denominator {m}")))?;
        let k = self.base as u64;
        let m_k = gcd_inf(k, m);
        let coprime = m / m_k;
        let period = multiplicative_order(k % coprime.max(1), coprime).expect("coprime part");
        let mut preperiod = 0u64;
        let mut pw = 1u64;
        while !pw.is_multiple_of(m_k) {
            pw = (pw % m_k) * k;
            preperiod += 1;
        }
        let total: BigRational = self.coeffs.iter().map(|x| x.abs()).sum();
        let scaled: BigInt = (total * BigRational::from_integer(BigInt::from(m))).to_integer() + 1;
        let height = scaled.to_biguint().expect("positive").to_radix_le(self.base).len() as u64;
        let block = period * (height + preperiod + 2 * period + 2).div_ceil(period);
        Ok(GgpConstants {
            denominator: m,
            period,
            preperiod,
            height,
            block,
            spacing: 4 * block,
        })
    }
}

fn check_spacing(alphas: &[u64], c: u64) -> bool {
    let mut prev = 0u64;
    alphas.iter().all(|&a| {
        let ok = a >= prev.saturating_add(c);
        prev = a;
        ok
    })
}

/// Encodes `g` at `alphas = [alpha_1, ..., alpha_r]`.
pub fn ggp_encode(g: &Ggp, alphas: &[u64]) -> Result<GgpEncoding> {
    let value = g.value(alphas)?;
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegral(rational_text(&value)));
    }
    for (i, (r, &a)) in g.restrictions.iter().zip(alphas).enumerate() {
        if !r.admits(a) {
            return Err(Error::Hypothesis(format!("alpha_{} = {a} not admissible", i + 1)));
        }
    }
    let consts = g.constants()?;
    let mut block = consts.block;
    for _ in 0..=MAX_DOUBLINGS {
        let spacing = 4 * block;
        if !check_spacing(alphas, spacing) {
            return Err(Error::SpacingTooSmall { required: spacing });
        }
        if let Some(enc) = try_encode(g, alphas, block)? {
            if enc.verify(&g.value(alphas)?, alphas, g.all_nonzero()) {
                return Ok(enc);
            }
        }
        block *= 2;
    }
    Err(Error::TooLarge(format!(
        "no verified encoding up to block length {block}"
    )))
}

/// Smallest block length `B` admitting a verified encoding, for
/// exponents spaced too tightly for [`ggp_encode`]. The result satisfies
/// reconstruction, alignment and (when all coefficients are nonzero)
/// nondegeneracy, but is not backed by the spacing hypothesis.
pub fn ggp_encode_tight(g: &Ggp, alphas: &[u64]) -> Result<Option<GgpEncoding>> {
    let value = g.value(alphas)?;
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegral(rational_text(&value)));
    }
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Hypothesis("exponents must increase".into()));
    }
    let limit = g.constants()?.block;
    for block in 1..=limit {
        if let Some(enc) = try_encode(g, alphas, block)? {
            if enc.verify(&value, alphas, g.all_nonzero()) {
                return Ok(Some(enc));
            }
        }
    }
    Ok(None)
}

fn try_encode(g: &Ggp, alphas: &[u64], block: u64) -> Result<Option<GgpEncoding>> {
    let value = g.value(alphas)?;
    if !value.is_integer() || value.is_negative() {
        return Ok(None);
    }
    let n = value.to_integer().to_biguint().expect("nonnegative");
    let k = g.base;
    let bl = block as usize;
    let r = alphas.len();
    let idx: Vec<u64> = alphas.iter().map(|a| a / block).collect();
    let total_blocks = if r == 0 { 1 } else { idx[r - 1] as usize + 2 };
    let mut digits = if n.is_zero() { Vec::new() } else { n.to_radix_le(k) };
    if digits.len() > total_blocks * bl {
        return Ok(None);
    }
    digits.resize(total_blocks * bl, 0);
    let blocks = |lo: usize, hi: usize| -> DigitWord {
        let mut d: Vec<u32> = digits[lo * bl..hi * bl].iter().map(|&x| x as u32).collect();
        d.reverse();
        DigitWord::new(k, d).expect("digits below base")
    };
    let mut l = Vec::with_capacity(r);
    let mut prev_top = 0usize; // last block of u_{i-1}
    for i in 0..r {
        let bi = idx[i] as usize;
        let first = prev_top + 1;
        if bi < first + 1 {
            return Ok(None);
        }
        l.push((bi - 1 - first) as u64);
        prev_top = bi + 1;
    }
    let mut u = vec![blocks(0, 1)];
    let mut v = Vec::with_capacity(r);
    let mut prev_top = 0usize;
    for i in 0..r {
        let bi = idx[i] as usize;
        u.push(blocks(bi - 1, bi + 2));
        let run: Vec<DigitWord> = (prev_top + 1..bi - 1).map(|j| blocks(j, j + 1)).collect();
        if let Some(first) = run.first() {
            if run.iter().any(|b| b != first) {
                return Ok(None);
            }
            v.push(first.clone());
        } else {
            // no copies present: read the block off a stretched instance
            let stretched: Vec<u64> = alphas
                .iter()
                .enumerate()
                .map(|(j, &a)| if j >= i { a + 2 * block } else { a })
                .collect();
            match try_encode(g, &stretched, block)? {
                Some(e) => v.push(e.v[i].clone()),
                None => return Ok(None),
            }
        }
        prev_top = bi + 1;
    }
    Ok(Some(GgpEncoding {
        base: k,
        block,
        spacing: 4 * block,
        u,
        v,
        l,
    }))
}

impl GgpEncoding {
    pub fn rank(&self) -> usize {
        self.v.len()
    }

    /// `u_r v_r^{l_r} ... u_1 v_1^{l_1} u_0`.
    pub fn assemble(&self) -> DigitWord {
        self.to_arid().word(&self.l)
    }

    pub fn to_arid(&self) -> BasicAridSet {
        BasicAridSet::new(self.base, self.u.clone(), self.v.clone()).expect("encoding shape")
    }

    /// `0 <= alpha_i - B (l_1 + ... + l_i + 3i - 1) < B` for every `i`.
    pub fn aligned(&self, alphas: &[u64]) -> bool {
        if alphas.len() != self.l.len() {
            return false;
        }
        let mut acc = 0u64;
        (0..alphas.len()).all(|i| {
            acc += self.l[i];
            let start = self.block * (acc + 3 * (i as u64 + 1) - 1);
            alphas[i] >= start && alphas[i] - start < self.block
        })
    }

    fn well_shaped(&self) -> bool {
        let b = self.block as usize;
        self.u.len() == self.v.len() + 1
            && self.l.len() == self.v.len()
            && self.u[0].len() == b
            && self.u[1..].iter().all(|w| w.len() == 3 * b)
            && self.v.iter().all(|w| w.len() == b)
    }

    fn verify(&self, value: &BigRational, alphas: &[u64], nonzero: bool) -> bool {
        self.well_shaped()
            && BigRational::from_integer(BigInt::from(self.assemble().value())) == *value
            && self.aligned(alphas)
            && (!nonzero || nondegenerate(self))
    }
}

/// `u_r` is not all zeros, and no `u_i` (`1 <= i < r`) is
/// indistinguishable from the runs on both sides of it, i.e. there is no
/// `i` with `v_{i+1}^3 = u_i = v_i^3`.
pub fn nondegenerate(enc: &GgpEncoding) -> bool {
    let r = enc.rank();
    if enc.u[r].is_zero() {
        return false;
    }
    (1..r).all(|i| !(enc.u[i] == enc.v[i].repeat(3) && enc.u[i] == enc.v[i - 1].repeat(3)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankCertificate {
    Certified(usize),
    NotCertified,
}

/// Certifies `rank A = r` for a basic arid set in block form (`u_0` of
/// length `B`, other `u_i` of length `3B`, `v_i` of length `B`) that is
/// nondegenerate; anything else in block form is `NotCertified`.
pub fn rank_of_basic(a: &BasicAridSet) -> Result<RankCertificate> {
    let b = a.u_words()[0].len();
    let shaped = b > 0
        && a.u_words()[1..].iter().all(|w| w.len() == 3 * b)
        && a.v_words().iter().all(|w| w.len() == b);
    if !shaped {
        return Err(Error::Malformed(
            "expected u_0 of length B, u_i of length 3B and v_i of length B".into(),
        ));
    }
    if a.restrictions().iter().any(|r| r.modulus == 0) {
        return Ok(RankCertificate::NotCertified);
    }
    let enc = GgpEncoding {
        base: a.base(),
        block: b as u64,
        spacing: 4 * b as u64,
        u: a.u_words().to_vec(),
        v: a.v_words().to_vec(),
        l: vec![0; a.rank()],
    };
    Ok(if nondegenerate(&enc) {
        RankCertificate::Certified(a.rank())
    } else {
        RankCertificate::NotCertified
    })
}

#[derive(Serialize, Deserialize)]
struct GgpRepr {
    base: u32,
    coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    restrictions: Option<Vec<Restriction>>,
}

impl Serialize for Ggp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let restricted = self.restrictions.iter().any(|r| *r != Restriction::ANY);
        GgpRepr {
            base: self.base,
            coeffs: self.coeffs.iter().map(rational_text).collect(),
            restrictions: restricted.then(|| self.restrictions.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ggp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GgpRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let r = coeffs.len().saturating_sub(1);
        let restrictions = repr.restrictions.unwrap_or_else(|| vec![Restriction::ANY; r]);
        Ggp::restricted(repr.base, coeffs, restrictions).map_err(D::Error::custom)
    }
}

impl Serialize for GgpEncoding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let words = |ws: &[DigitWord]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("GgpEncoding", 7)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("B", &self.block)?;
        st.serialize_field("C", &self.spacing)?;
        st.serialize_field("u", &words(&self.u))?;
        st.serialize_field("v", &words(&self.v))?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("value", &self.assemble().value().to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn word(s: &str, k: u32) -> DigitWord {
        DigitWord::parse(s, k).unwrap()
    }

    #[test]
    fn nines() {
        let g = Ggp::new(10, vec![q(-1, 1), q(1, 1)]).unwrap();
        let c = g.constants().unwrap();
        let err = ggp_encode(&g, &[6]);
        if c.spacing > 6 {
            assert_eq!(err, Err(Error::SpacingTooSmall { required: c.spacing }));
        }
        let alpha = c.spacing + 6;
        let enc = ggp_encode(&g, &[alpha]).unwrap();
        let expect = BigUint::from(10u32).pow(alpha as u32) - 1u32;
        assert_eq!(enc.assemble().value(), expect);
        assert_eq!(enc.v[0], word(&"9".repeat(enc.block as usize), 10));
        assert!(!enc.u[1].is_zero());
        assert!(nondegenerate(&enc));
        assert!(enc.aligned(&[alpha]));
    }

    #[test]
    fn tight_nines() {
        let g = Ggp::new(10, vec![q(-1, 1), q(1, 1)]).unwrap();
        let enc = ggp_encode_tight(&g, &[6]).unwrap().unwrap();
        assert_eq!(enc.assemble().value(), BigUint::from(999_999u32));
        assert_eq!(enc.block, 1);
        assert!(enc.aligned(&[6]) && nondegenerate(&enc));
    }

    #[test]
    fn direct_expansion() {
        let g = Ggp::new(10, vec![q(1, 1), q(2, 1)]).unwrap();
        let c = g.constants().unwrap();
        let alpha = c.spacing + 9;
        let enc = ggp_encode(&g, &[alpha]).unwrap();
        assert!(enc.v[0].is_zero());
        assert_eq!(*enc.u[0].digits().last().unwrap(), 1);
        assert!(enc.u[1].digits().contains(&2));
        let expect = BigUint::from(10u32).pow(alpha as u32) * 2u32 + 1u32;
        assert_eq!(enc.assemble().value(), expect);
    }

    #[test]
    fn rejects_non_integral() {
        let g = Ggp::new(10, vec![q(0, 1), q(1, 3)]).unwrap();
        assert!(matches!(ggp_encode(&g, &[100]), Err(Error::NonIntegral(_))));
        let g = Ggp::new(10, vec![q(-5, 1)]).unwrap();
        assert!(matches!(ggp_encode(&g, &[]), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn zero_copies_and_thirds() {
        // (2^a - 1)/3 in base 2 for even a: runs of "01"
        let g = Ggp::new(2, vec![q(-1, 3), q(1, 3)]).unwrap();
        let c = g.constants().unwrap();
        assert_eq!(c.period, 2);
        for extra in [0u64, 1, 2, 5] {
            let alpha = 2 * (c.spacing + extra);
            let enc = ggp_encode(&g, &[alpha]).unwrap();
            let expect = (BigUint::from(2u32).pow(alpha as u32) - 1u32) / 3u32;
            assert_eq!(enc.assemble().value(), expect);
            assert!(enc.aligned(&[alpha]));
        }
    }

    #[test]
    fn degenerate_examples() {
        let b = 2;
        let zero = |n| DigitWord::zeros(2, n);
        let enc = GgpEncoding {
            base: 2,
            block: b,
            spacing: 4 * b,
            u: vec![word("01", 2), zero(6)],
            v: vec![word("10", 2)],
            l: vec![0],
        };
        assert!(!nondegenerate(&enc));
        let enc = GgpEncoding {
            base: 2,
            block: b,
            spacing: 4 * b,
            u: vec![word("01", 2), zero(6), word("111111", 2)],
            v: vec![zero(2), zero(2)],
            l: vec![0, 0],
        };
        assert!(!nondegenerate(&enc));
        assert_eq!(rank_of_basic(&enc.to_arid()), Ok(RankCertificate::NotCertified));
        let good = BasicAridSet::new(2, vec![word("01", 2), word("000100", 2)], vec![word("00", 2)]).unwrap();
        assert_eq!(rank_of_basic(&good), Ok(RankCertificate::Certified(1)));
        let bad_shape = BasicAridSet::new(2, vec![word("01", 2), word("1", 2)], vec![word("00", 2)]).unwrap();
        assert!(rank_of_basic(&bad_shape).is_err());
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let k = [2u32, 3, 10][rng.gen_range(0..3)];
            let r = rng.gen_range(1..=3usize);
            let mut coeffs = vec![q(0, 1)];
            for i in 0..r {
                let num = rng.gen_range(1..20i64) * if i + 1 < r && rng.gen() { -1 } else { 1 };
                coeffs.push(q(num, rng.gen_range(1..=12)));
            }
            let g0 = Ggp::new(k, coeffs.clone()).unwrap();
            let spacing = g0.constants().unwrap().spacing + 2;
            let mut alphas = Vec::new();
            let mut prev = 0;
            for _ in 0..r {
                prev += spacing + rng.gen_range(0..50);
                alphas.push(prev);
            }
            // shift x_0 so the value is a nonnegative integer
            let v = g0.value(&alphas).unwrap();
            coeffs[0] = v.ceil() - v + q(rng.gen_range(0..5), 1);
            let g = Ggp::new(k, coeffs).unwrap();
            let required = g.constants().unwrap().spacing;
            if !check_spacing(&alphas, required) {
                continue;
            }
            let enc = ggp_encode(&g, &alphas).unwrap();
            let value = g.value(&alphas).unwrap();
            assert_eq!(BigRational::from_integer(BigInt::from(enc.assemble().value())), value);
            assert!(enc.aligned(&alphas));
            assert!(nondegenerate(&enc));
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = Ggp::new(10, vec![q(-1, 3), q(7, 12), q(2, 1)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Ggp>(&text).unwrap(), g);
    }
}
