//! Multistage decoding of generalized concatenated codes with GMD decoding of
//! the outer codes.

use std::fmt;

use serde::Serialize;

use crate::code::PolyalphabeticCode;
use crate::construct::GccCode;
use crate::error::{Error, Result};
use crate::linalg;

/// GMD decoding of a polyalphabetic code.
///
/// Positions are erased in order of ascending reliability (ties by index),
/// for every erasure count below the block distance. Among the distinct
/// candidates, the one with the largest correlation `sum alpha_l * sigma_l`
/// wins, `sigma_l = +1` where it agrees with `symbols` and `-1` elsewhere;
/// ties go to the earliest trial. Returns `None` when no trial succeeds.
pub fn gmd_decode(outer: &PolyalphabeticCode, symbols: &[u32], reliabilities: &[u64]) -> Result<Option<Vec<u32>>> {
    let n = outer.length();
    if reliabilities.len() != n {
        return Err(Error::param(format!("{} reliabilities for {n} symbols", reliabilities.len())));
    }
    if symbols.len() != outer.total_length() {
        return Err(Error::param(format!(
            "outer word has length {}, expected {}",
            symbols.len(),
            outer.total_length()
        )));
    }
    if outer.dimension() == 0 {
        return Ok(Some(vec![0; outer.total_length()]));
    }
    let d = outer.min_block_distance()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (reliabilities[i], i));
    let mut best: Option<(i128, Vec<u32>)> = None;
    let mut seen: Vec<Vec<u32>> = Vec::new();
    for theta in 0..d {
        let Some(cand) = outer.erasure_decode(symbols, &order[..theta])? else { continue };
        if seen.contains(&cand) {
            continue;
        }
        let score: i128 = (0..n)
            .map(|i| {
                let a = reliabilities[i] as i128;
                if outer.symbol(&cand, i) == outer.symbol(symbols, i) {
                    a
                } else {
                    -a
                }
            })
            .sum();
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, cand.clone()));
        }
        seen.push(cand);
    }
    Ok(best.map(|(_, c)| c))
}

/// Inner decoding result for one block at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerResult {
    /// The decoded inner codeword, `None` on failure.
    pub decoded: Option<Vec<u32>>,
    /// The outer symbol read off the decoded word (zero on failure).
    pub symbol: Vec<u32>,
    pub reliability: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub inner: Vec<InnerResult>,
    pub reliabilities: Vec<u64>,
    /// The outer decision, `None` when the outer decoder failed.
    pub outer: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Ok,
    /// First level (1-based) whose outer decoder failed.
    OuterFailure(usize),
}

impl fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeStatus::Ok => f.write_str("ok"),
            DecodeStatus::OuterFailure(j) => write!(f, "outer-failure-at-level-{j}"),
        }
    }
}

impl Serialize for DecodeStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    pub codeword: Vec<u32>,
    pub levels: Vec<LevelReport>,
    pub status: DecodeStatus,
}

impl DecodeReport {
    pub fn is_ok(&self) -> bool {
        self.status == DecodeStatus::Ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Multistage decoding: per level, bounded-distance decoding of every block
/// in that level's inner code, GMD decoding of the outer code with
/// reliabilities `lambda_l * max(0, d_H(B) - 2 d_H(r, b'))`, re-encoding, and
/// subtraction from the residual. A failed outer decode contributes zero and
/// is recorded in the status; later levels are still decoded.
pub fn gcc_decode(gcc: &GccCode, r: &[u32]) -> Result<DecodeReport> {
    let n = gcc.length();
    if r.len() != n {
        return Err(Error::param(format!("received word has length {}, code length is {n}", r.len())));
    }
    let field = gcc.field();
    if let Some(&bad) = r.iter().find(|&&x| !field.contains(x)) {
        return Err(Error::param(format!("symbol {bad} is not in F_{}", field.order())));
    }
    let ranges = gcc.space().block_ranges();
    let lambda = gcc.space().lambda();
    let mut residual = r.to_vec();
    let mut estimate = vec![0u32; n];
    let mut levels = Vec::with_capacity(gcc.levels());
    let mut status = DecodeStatus::Ok;
    for (j, outer) in gcc.outers().iter().enumerate() {
        let mut inner = Vec::with_capacity(ranges.len());
        let mut word = Vec::with_capacity(outer.total_length());
        for (l, (chain, range)) in gcc.chains().iter().zip(&ranges).enumerate() {
            let block = &residual[range.clone()];
            let code = chain.code(j);
            let res = if code.dimension() == 0 {
                InnerResult { decoded: Some(vec![0; block.len()]), symbol: Vec::new(), reliability: 0 }
            } else {
                match code.bmd_decode(block)? {
                    Some(b) => {
                        let dist = linalg::hamming_distance(block, &b);
                        let d = code.min_hamming_distance()?;
                        let reliability = lambda[l] * d.saturating_sub(2 * dist) as u64;
                        InnerResult { symbol: chain.quotient_decode_message(j, &b)?, decoded: Some(b), reliability }
                    }
                    None => InnerResult { decoded: None, symbol: vec![0; chain.quotient_dim(j)], reliability: 0 },
                }
            };
            word.extend_from_slice(&res.symbol);
            inner.push(res);
        }
        let reliabilities: Vec<u64> = inner.iter().map(|x| x.reliability).collect();
        let decision = gmd_decode(outer, &word, &reliabilities)?;
        if let Some(a) = &decision {
            let c = gcc.level_contribution(j, a)?;
            residual = linalg::sub_vec(field, &residual, &c);
            estimate = linalg::add_vec(field, &estimate, &c);
        } else if status == DecodeStatus::Ok {
            status = DecodeStatus::OuterFailure(j + 1);
        }
        levels.push(LevelReport { level: j + 1, inner, reliabilities, outer: decision });
    }
    Ok(DecodeReport { codeword: estimate, levels, status })
}
