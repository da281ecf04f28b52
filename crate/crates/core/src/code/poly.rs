use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::code::linear::walk_span;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// An `F_q`-linear code over `F_q^{m_1} x ... x F_q^{m_n}` measured in
/// block-Hamming distance (number of nonzero symbols). Zero-width symbols are
/// allowed and are never nonzero.
#[derive(Debug, Clone)]
pub struct PolyalphabeticCode {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    code: LinearCode,
    distance: OnceLock<usize>,
    /// Packed symbols of every codeword, `length()` entries per codeword.
    codebook: OnceLock<Vec<u64>>,
}

fn offsets_of(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

impl PolyalphabeticCode {
    pub fn new(field: Field, sizes: Vec<usize>, generator: &[Vec<u32>]) -> Result<Self> {
        let total: usize = sizes.iter().sum();
        if sizes.is_empty() || total == 0 {
            return Err(Error::param("polyalphabetic code needs at least one nonzero symbol size"));
        }
        if generator.iter().any(|r| r.len() != total) {
            return Err(Error::param(format!("generator rows must have length {total}")));
        }
        let code =
            if generator.is_empty() { LinearCode::zero(field, total) } else { LinearCode::new(field, generator)? };
        Self::from_code(sizes, code)
    }

    pub fn from_code(sizes: Vec<usize>, code: LinearCode) -> Result<Self> {
        let total: usize = sizes.iter().sum();
        if code.length() != total || total == 0 {
            return Err(Error::param(format!("symbol sizes {sizes:?} do not match code length {}", code.length())));
        }
        let order = code.field().order() as u128;
        if sizes.iter().any(|&s| order.checked_pow(s as u32).is_none_or(|v| v > u64::MAX as u128)) {
            return Err(Error::param("symbol alphabet too large"));
        }
        Ok(PolyalphabeticCode {
            offsets: offsets_of(&sizes),
            sizes,
            code,
            distance: OnceLock::new(),
            codebook: OnceLock::new(),
        })
    }

    /// The whole ambient space with the given symbol sizes.
    pub fn full(field: Field, sizes: Vec<usize>) -> Result<Self> {
        let total = sizes.iter().sum();
        if total == 0 {
            return Err(Error::param("polyalphabetic code needs at least one nonzero symbol size"));
        }
        Self::from_code(sizes, LinearCode::full(field, total))
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.code = self.code.with_limit(limit);
        self
    }

    pub fn field(&self) -> &Field {
        self.code.field()
    }

    /// Number of symbols.
    pub fn length(&self) -> usize {
        self.sizes.len()
    }

    /// Total `F_q`-length `M`.
    pub fn total_length(&self) -> usize {
        self.code.length()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    pub fn generator(&self) -> &Matrix {
        self.code.generator()
    }

    pub fn as_linear(&self) -> &LinearCode {
        &self.code
    }

    pub fn is_full_space(&self) -> bool {
        self.code.is_full()
    }

    pub fn symbol<'a>(&self, v: &'a [u32], i: usize) -> &'a [u32] {
        &v[self.offsets[i]..self.offsets[i] + self.sizes[i]]
    }

    pub fn split<'a>(&self, v: &'a [u32]) -> Vec<&'a [u32]> {
        (0..self.length()).map(|i| self.symbol(v, i)).collect()
    }

    /// Number of nonzero symbols.
    pub fn block_weight(&self, v: &[u32]) -> usize {
        (0..self.length()).filter(|&i| self.symbol(v, i).iter().any(|&x| x != 0)).count()
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.code.encode(message)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.code.contains(v)
    }

    /// Minimum number of nonzero symbols over nonzero codewords.
    pub fn min_block_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        if self.dimension() == 0 {
            return Err(Error::param("the zero code has no minimum distance"));
        }
        let d = if self.is_full_space() {
            1
        } else {
            let mut best = usize::MAX;
            self.code.for_each_codeword(|m, c| {
                if m.iter().any(|&x| x != 0) {
                    best = best.min(self.block_weight(c));
                    if best == 1 {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })?;
            best
        };
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Supplies a known distance, skipping the exhaustive scan.
    pub fn declare_distance(&self, d: usize) {
        let _ = self.distance.set(d);
    }

    fn pack(&self, v: &[u32], i: usize) -> u64 {
        let order = self.field().order() as u64;
        self.symbol(v, i).iter().rev().fold(0u64, |acc, &x| acc * order + x as u64)
    }

    fn unpack_into(&self, packed: &[u64], out: &mut [u32]) {
        let order = self.field().order() as u64;
        for (i, &p) in packed.iter().enumerate() {
            let mut p = p;
            for x in &mut out[self.offsets[i]..self.offsets[i] + self.sizes[i]] {
                *x = (p % order) as u32;
                p /= order;
            }
        }
    }

    fn codebook(&self) -> Result<&[u64]> {
        if let Some(cb) = self.codebook.get() {
            return Ok(cb);
        }
        let size = self.code.checked_size()?;
        let n = self.length();
        let mut cb = Vec::with_capacity(size as usize * n);
        walk_span(self.field(), self.generator(), self.total_length(), |_, c| {
            cb.extend((0..n).map(|i| self.pack(c, i)));
            ControlFlow::Continue(())
        });
        let _ = self.codebook.set(cb);
        Ok(self.codebook.get().unwrap())
    }

    /// Errors-and-erasures decoding over symbols: returns the codeword that
    /// agrees with `r` on all but `e` non-erased symbols with
    /// `2e + |erased| < d`, if one exists.
    pub fn erasure_decode(&self, r: &[u32], erased: &[usize]) -> Result<Option<Vec<u32>>> {
        if r.len() != self.total_length() {
            return Err(Error::param(format!(
                "received word has length {}, code length is {}",
                r.len(),
                self.total_length()
            )));
        }
        let n = self.length();
        if let Some(&bad) = erased.iter().find(|&&i| i >= n) {
            return Err(Error::param(format!("erased symbol {bad} out of range")));
        }
        let mut mask = vec![false; n];
        for &i in erased {
            mask[i] = true;
        }
        let s = mask.iter().filter(|&&b| b).count();
        let d = self.min_block_distance()?;
        if s >= d {
            return Ok(None);
        }
        let received: Vec<u64> = (0..n).map(|i| self.pack(r, i)).collect();
        if self.is_full_space() {
            // d = 1 forces s = 0 and e = 0
            return Ok(Some(r.to_vec()));
        }
        let cb = self.codebook()?;
        for cw in cb.chunks_exact(n) {
            let e = (0..n).filter(|&i| !mask[i] && cw[i] != received[i]).count();
            if 2 * e + s < d {
                let mut out = vec![0u32; self.total_length()];
                self.unpack_into(cw, &mut out);
                return Ok(Some(out));
            }
        }
        Ok(None)
    }
}
