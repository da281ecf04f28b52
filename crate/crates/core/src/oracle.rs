//! Brute-force ground truth. Everything here enumerates; nothing estimates.
//! Enumerations beyond the configured limits are refused.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{checked_count, walk_errors, walk_span, LinearCode};
use crate::construct::GccCode;
use crate::decode::gcc_decode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::metric::{WeightProfile, WeightedSpace};

/// Decoder checks enumerate every codeword up to this many.
pub const EXHAUSTIVE_CODEWORDS: u64 = 1 << 10;

/// Codewords sampled by decoder checks above [`EXHAUSTIVE_CODEWORDS`].
pub const SAMPLED_CODEWORDS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleLimits {
    pub max_codewords: u64,
    pub max_ambient: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_codewords: 1 << 20, max_ambient: 1 << 22 }
    }
}

fn check_code(code: &LinearCode, space: &WeightedSpace) -> Result<()> {
    if code.length() != space.length() {
        return Err(Error::param(format!(
            "code length {} does not match the space length {}",
            code.length(),
            space.length()
        )));
    }
    if code.field().order() != space.q() || !code.field().is_prime_field() {
        return Err(Error::param(format!("code is not over F_{}", space.q())));
    }
    if code.dimension() == 0 {
        return Err(Error::param("the zero code has no nonzero codewords"));
    }
    Ok(())
}

/// Streams every nonzero codeword.
fn for_each_nonzero<F: FnMut(&[u32]) -> ControlFlow<()>>(
    code: &LinearCode,
    limits: &OracleLimits,
    mut f: F,
) -> Result<()> {
    checked_count("codeword enumeration", code.field().order(), code.dimension(), limits.max_codewords)?;
    walk_span(code.field(), code.generator(), code.length(), |m, c| {
        if m.iter().all(|&x| x == 0) {
            ControlFlow::Continue(())
        } else {
            f(c)
        }
    });
    Ok(())
}

/// Minimum weighted weight over nonzero codewords.
pub fn exact_min_weighted_distance(code: &LinearCode, space: &WeightedSpace, limits: &OracleLimits) -> Result<u64> {
    check_code(code, space)?;
    let mut best = u64::MAX;
    for_each_nonzero(code, limits, |c| {
        best = best.min(space.vector_weight(c).expect("length checked"));
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// Minimum `tau` over nonzero codewords.
pub fn exact_capability(code: &LinearCode, space: &WeightedSpace, limits: &OracleLimits) -> Result<i64> {
    check_code(code, space)?;
    let mut best = i64::MAX;
    for_each_nonzero(code, limits, |c| {
        best = best.min(space.vector_tau(c).expect("length checked"));
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

/// Whether no nonzero codeword has `tau <= t - 1`, i.e. the code meets the
/// difference set of the radius-`t` ball only in zero.
pub fn exhaustive_unique_correction_check(
    code: &LinearCode,
    space: &WeightedSpace,
    t: u64,
    limits: &OracleLimits,
) -> Result<bool> {
    check_code(code, space)?;
    let mut ok = true;
    for_each_nonzero(code, limits, |c| {
        if space.vector_tau(c).expect("length checked") < t as i64 {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(ok)
}

/// Number of codewords of each block-weight profile.
pub fn block_weight_enumerator(
    code: &LinearCode,
    space: &WeightedSpace,
    limits: &OracleLimits,
) -> Result<BTreeMap<WeightProfile, u64>> {
    check_code(code, space)?;
    let mut out = BTreeMap::new();
    out.insert(WeightProfile::zero(space.block_count()), 1);
    for_each_nonzero(code, limits, |c| {
        *out.entry(space.block_profile(c).expect("length checked")).or_insert(0) += 1;
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

fn for_each_ambient<F: FnMut(&[u32])>(space: &WeightedSpace, limits: &OracleLimits, mut f: F) -> Result<()> {
    let n = space.length();
    checked_count("ambient enumeration", space.q(), n, limits.max_ambient)?;
    let q = space.q();
    let mut v = vec![0u32; n];
    loop {
        f(&v);
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

/// `|{v in F_q^N : wt(v) <= t}|` by enumerating the whole space.
pub fn ambient_ball_count(space: &WeightedSpace, t: u64, limits: &OracleLimits) -> Result<u64> {
    let mut count = 0;
    for_each_ambient(space, limits, |v| {
        if space.vector_weight(v).expect("length matches") <= t {
            count += 1;
        }
    })?;
    Ok(count)
}

/// Minimum over all splits `v = r + (v - r)` with `r_i in {0, v_i}` of the
/// larger weight, minus one. Exponential in the Hamming weight of `v`.
pub fn tau_by_splits(space: &WeightedSpace, v: &[u32]) -> Result<i64> {
    let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    if support.len() > 24 {
        return Err(Error::ExhaustionRefused {
            what: "split enumeration",
            needed: format!("2^{}", support.len()),
            limit: 1 << 24,
        });
    }
    let mut best = u64::MAX;
    for mask in 0u32..(1 << support.len()) {
        let mut r = vec![0u32; v.len()];
        for (b, &i) in support.iter().enumerate() {
            if mask >> b & 1 == 1 {
                r[i] = v[i];
            }
        }
        let rest: Vec<u32> = v.iter().zip(&r).map(|(&a, &b)| if b == 0 { a } else { 0 }).collect();
        best = best.min(space.vector_weight(&r)?.max(space.vector_weight(&rest)?));
    }
    Ok(best as i64 - 1)
}

/// Block profiles of all differences `x - y` with `wt(x), wt(y) <= t`.
pub fn diff_ball_profiles_by_pairs(
    space: &WeightedSpace,
    t: u64,
    limits: &OracleLimits,
) -> Result<BTreeSet<WeightProfile>> {
    let field = Field::prime(space.q())?;
    let mut ball: Vec<Vec<u32>> = Vec::new();
    // the weighted weight dominates the Hamming weight
    walk_errors(space.q(), space.length(), t as usize, |v| {
        if space.vector_weight(v).expect("length matches") <= t {
            ball.push(v.to_vec());
        }
        ControlFlow::Continue(())
    });
    let pairs = (ball.len() as u64).saturating_mul(ball.len() as u64);
    if pairs > limits.max_ambient {
        return Err(Error::ExhaustionRefused {
            what: "pair enumeration",
            needed: pairs.to_string(),
            limit: limits.max_ambient,
        });
    }
    let mut out = BTreeSet::new();
    for x in &ball {
        for y in &ball {
            out.insert(space.block_profile(&linalg::sub_vec(&field, x, y))?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub codeword: Vec<u32>,
    pub error: Vec<u32>,
    pub decoded: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecoderCheck {
    pub radius: u64,
    pub codewords: usize,
    pub sampled: bool,
    pub errors_per_codeword: usize,
    pub total: u64,
    pub failures: u64,
    pub first_counterexample: Option<Counterexample>,
}

/// Decodes `c + e` for every error of weighted weight at most `t` and every
/// codeword; above [`EXHAUSTIVE_CODEWORDS`] codewords, a seeded sample of
/// [`SAMPLED_CODEWORDS`] random codewords is used instead.
pub fn exhaustive_decoder_check(gcc: &GccCode, t: u64, seed: u64, limits: &OracleLimits) -> Result<DecoderCheck> {
    let space = gcc.space();
    let field = gcc.field();
    let mut errors: Vec<Vec<u32>> = Vec::new();
    walk_errors(space.q(), space.length(), t as usize, |v| {
        if space.vector_weight(v).expect("length matches") <= t {
            errors.push(v.to_vec());
        }
        ControlFlow::Continue(())
    });
    let k = gcc.dimension();
    let exhaustive = checked_count("codeword enumeration", space.q(), k, EXHAUSTIVE_CODEWORDS).is_ok();
    let messages: Vec<Vec<u32>> = if exhaustive {
        let full = LinearCode::full(field.clone(), k);
        full.codewords()?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_CODEWORDS).map(|_| (0..k).map(|_| rng.gen_range(0..space.q())).collect()).collect()
    };
    let work = (messages.len() as u64).saturating_mul(errors.len() as u64);
    if work > limits.max_ambient {
        return Err(Error::ExhaustionRefused {
            what: "decoder check",
            needed: work.to_string(),
            limit: limits.max_ambient,
        });
    }
    let mut report = DecoderCheck {
        radius: t,
        codewords: messages.len(),
        sampled: !exhaustive,
        errors_per_codeword: errors.len(),
        total: 0,
        failures: 0,
        first_counterexample: None,
    };
    for m in &messages {
        let c = gcc.encode_flat(m)?;
        for e in &errors {
            let r = linalg::add_vec(field, &c, e);
            let out = gcc_decode(gcc, &r)?;
            report.total += 1;
            if out.codeword != c {
                report.failures += 1;
                if report.first_counterexample.is_none() {
                    report.first_counterexample =
                        Some(Counterexample { codeword: c.clone(), error: e.clone(), decoded: out.codeword });
                }
            }
        }
    }
    Ok(report)
}
