use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

/// Default cap on `q^k` for codeword enumeration.
pub const DEFAULT_EXHAUSTION_LIMIT: u64 = 1 << 22;

/// Syndrome tables are used when `q^(n-k)` does not exceed this.
pub const SYNDROME_TABLE_LIMIT: u64 = 1 << 20;

/// `base^exp` if it does not exceed `limit`.
pub(crate) fn checked_count(what: &'static str, base: u32, exp: usize, limit: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u64) {
            Some(v) if v <= limit => v,
            _ => {
                return Err(Error::ExhaustionRefused {
                    what,
                    needed: format!("{base}^{exp} = {}", BigUint::from(base).pow(exp as u32)),
                    limit,
                })
            }
        };
    }
    if acc > limit {
        return Err(Error::ExhaustionRefused { what, needed: acc.to_string(), limit });
    }
    Ok(acc)
}

/// Calls `f(message, codeword)` for every `message * rows` in lexicographic
/// message order, updating the codeword incrementally.
pub(crate) fn walk_span<F>(field: &Field, rows: &[Vec<u32>], n: usize, mut f: F)
where
    F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
{
    let k = rows.len();
    let mut msg = vec![0u32; k];
    let mut cw = vec![0u32; n];
    loop {
        if f(&msg, &cw).is_break() {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let old = msg[i];
            let new = if old + 1 == field.order() { 0 } else { old + 1 };
            msg[i] = new;
            linalg::add_scaled(field, &mut cw, &rows[i], field.sub(new, old));
            if new != 0 {
                break;
            }
        }
    }
}

/// Calls `f` for every vector of length `n` and Hamming weight `<= t`, in
/// order of weight, then lexicographic support, then values.
pub(crate) fn walk_errors<F>(order: u32, n: usize, t: usize, mut f: F)
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let mut v = vec![0u32; n];
    for w in 0..=t.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            // all nonzero value assignments on this support
            for &s in &support {
                v[s] = 1;
            }
            loop {
                if f(&v).is_break() {
                    return;
                }
                let mut j = w;
                let mut done = true;
                while j > 0 {
                    j -= 1;
                    let s = support[j];
                    if v[s] + 1 < order {
                        v[s] += 1;
                        done = false;
                        break;
                    }
                    v[s] = 1;
                }
                if done {
                    break;
                }
            }
            for &s in &support {
                v[s] = 0;
            }
            // next combination
            let mut j = w;
            let mut advanced = false;
            while j > 0 {
                j -= 1;
                if support[j] < n - w + j {
                    support[j] += 1;
                    for i in j + 1..w {
                        support[i] = support[i - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

#[derive(Debug, Clone)]
struct SyndromeTable {
    leaders: HashMap<Vec<u32>, Vec<u32>>,
}

/// A linear code over a [`Field`], stored by a generator in reduced row
/// echelon form (systematic on its pivot columns).
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    generator: Matrix,
    info_set: Vec<usize>,
    parity_check: Matrix,
    limit: u64,
    distance: OnceLock<usize>,
    syndromes: OnceLock<Option<SyndromeTable>>,
}

impl LinearCode {
    /// Row-reduces `rows`, dropping dependent rows.
    pub fn new(field: Field, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::param("generator matrix is empty"));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::param("generator rows have different lengths"));
        }
        if let Some(bad) = rows.iter().flatten().find(|&&x| !field.contains(x)) {
            return Err(Error::param(format!("{bad} is not an element of {field:?}")));
        }
        Ok(Self::from_rows_unchecked(field, n, rows))
    }

    fn from_rows_unchecked(field: Field, n: usize, rows: &[Vec<u32>]) -> Self {
        let (generator, info_set) = linalg::rref(&field, rows);
        let parity_check = linalg::null_space(&field, &generator, n);
        LinearCode {
            field,
            n,
            generator,
            info_set,
            parity_check,
            limit: DEFAULT_EXHAUSTION_LIMIT,
            distance: OnceLock::new(),
            syndromes: OnceLock::new(),
        }
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(field: Field, n: usize) -> Self {
        Self::from_rows_unchecked(field, n, &[])
    }

    /// The full space `F^n`.
    pub fn full(field: Field, n: usize) -> Self {
        let rows: Matrix = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_rows_unchecked(field, n, &rows)
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    /// Pivot columns of the generator; the encoder is systematic on them.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.n
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.dimension() {
            return Err(Error::param(format!(
                "message has length {}, code dimension is {}",
                message.len(),
                self.dimension()
            )));
        }
        Ok(linalg::combine(&self.field, message, &self.generator, self.n))
    }

    /// Inverse of [`encode`](Self::encode) on codewords.
    pub fn message_of(&self, codeword: &[u32]) -> Result<Vec<u32>> {
        if !self.contains(codeword) {
            return Err(Error::NotInCode("linear code"));
        }
        Ok(self.info_set.iter().map(|&i| codeword[i]).collect())
    }

    pub fn syndrome(&self, v: &[u32]) -> Vec<u32> {
        self.parity_check
            .iter()
            .map(|h| h.iter().zip(v).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b))))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n && self.syndrome(v).iter().all(|&s| s == 0)
    }

    /// Number of codewords, refusing when above the exhaustion limit.
    pub fn checked_size(&self) -> Result<u64> {
        checked_count("codeword enumeration", self.field.order(), self.dimension(), self.limit)
    }

    /// Streams `(message, codeword)` pairs in lexicographic message order.
    pub fn for_each_codeword<F>(&self, f: F) -> Result<()>
    where
        F: FnMut(&[u32], &[u32]) -> ControlFlow<()>,
    {
        self.checked_size()?;
        walk_span(&self.field, &self.generator, self.n, f);
        Ok(())
    }

    pub fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.for_each_codeword(|_, c| {
            out.push(c.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Exact minimum Hamming distance by exhaustive scan.
    pub fn min_hamming_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        if self.dimension() == 0 {
            return Err(Error::param("the zero code has no minimum distance"));
        }
        let mut best = usize::MAX;
        self.for_each_codeword(|m, c| {
            if m.iter().any(|&x| x != 0) {
                best = best.min(linalg::hamming_weight(c));
                if best == 1 {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        let _ = self.distance.set(best);
        Ok(best)
    }

    /// Supplies a known minimum distance, skipping the exhaustive scan.
    pub fn declare_distance(&self, d: usize) {
        let _ = self.distance.set(d);
    }

    /// Guaranteed Hamming decoding radius `floor((d-1)/2)`.
    pub fn decoding_radius(&self) -> Result<usize> {
        Ok((self.min_hamming_distance()? - 1) / 2)
    }

    fn check_len(&self, r: &[u32]) -> Result<()> {
        if r.len() != self.n {
            return Err(Error::param(format!("received word has length {}, code length is {}", r.len(), self.n)));
        }
        Ok(())
    }

    fn syndrome_table(&self) -> Result<Option<&SyndromeTable>> {
        if let Some(t) = self.syndromes.get() {
            return Ok(t.as_ref());
        }
        let redundancy = self.n - self.dimension();
        let table = if checked_count("syndrome table", self.field.order(), redundancy, SYNDROME_TABLE_LIMIT).is_ok() {
            let radius = self.decoding_radius()?;
            let mut leaders = HashMap::new();
            walk_errors(self.field.order(), self.n, radius, |e| {
                // lexicographic walk: first leader wins
                leaders.entry(self.syndrome(e)).or_insert_with(|| e.to_vec());
                ControlFlow::Continue(())
            });
            Some(SyndromeTable { leaders })
        } else {
            None
        };
        let _ = self.syndromes.set(table);
        Ok(self.syndromes.get().unwrap().as_ref())
    }

    /// Bounded-minimum-distance decoding: the unique codeword within Hamming
    /// distance `floor((d-1)/2)` of `r`, or `None`.
    pub fn bmd_decode(&self, r: &[u32]) -> Result<Option<Vec<u32>>> {
        self.check_len(r)?;
        if self.dimension() == 0 {
            return Ok(Some(vec![0; self.n]));
        }
        if self.is_full() {
            return Ok(Some(r.to_vec()));
        }
        match self.syndrome_table()? {
            Some(table) => Ok(table.leaders.get(&self.syndrome(r)).map(|e| linalg::sub_vec(&self.field, r, e))),
            None => self.bmd_decode_exhaustive(r),
        }
    }

    /// Same contract as [`bmd_decode`](Self::bmd_decode), by scanning every
    /// codeword.
    pub fn bmd_decode_exhaustive(&self, r: &[u32]) -> Result<Option<Vec<u32>>> {
        self.check_len(r)?;
        if self.dimension() == 0 {
            return Ok(Some(vec![0; self.n]));
        }
        let radius = self.decoding_radius()?;
        let mut found = None;
        self.for_each_codeword(|_, c| {
            if linalg::hamming_distance(c, r) <= radius {
                found = Some(c.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    }

    /// Errors-and-erasures decoding: the codeword agreeing with `r` outside
    /// `erased` up to `e` errors, where `2e + |erased| < d`.
    pub fn erasure_decode(&self, r: &[u32], erased: &[usize]) -> Result<Option<Vec<u32>>> {
        self.check_len(r)?;
        if let Some(&bad) = erased.iter().find(|&&i| i >= self.n) {
            return Err(Error::param(format!("erased position {bad} out of range")));
        }
        let mut mask = vec![false; self.n];
        for &i in erased {
            mask[i] = true;
        }
        let s = mask.iter().filter(|&&b| b).count();
        let d = self.min_hamming_distance()?;
        if s >= d {
            return Ok(None);
        }
        let mut found = None;
        self.for_each_codeword(|_, c| {
            let e = (0..self.n).filter(|&i| !mask[i] && c[i] != r[i]).count();
            if 2 * e + s < d {
                found = Some(c.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn make_code_examples() {
        let rep = LinearCode::new(f2(), &[vec![1, 1, 1]]).unwrap();
        assert_eq!((rep.length(), rep.dimension(), rep.min_hamming_distance().unwrap()), (3, 1, 3));
        let dup = LinearCode::new(f2(), &[vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(dup.dimension(), 1);
        assert!(LinearCode::new(f2(), &[]).is_err());
        assert!(LinearCode::new(f2(), &[vec![1, 2]]).is_err());
    }

    #[test]
    fn vandermonde_over_f7() {
        let f = Field::prime(7).unwrap();
        let points = [1u32, 2, 3, 4, 5, 6];
        let rows: Vec<Vec<u32>> = (0..3).map(|i| points.iter().map(|&x| f.pow(x, i)).collect()).collect();
        let c = LinearCode::new(f, &rows).unwrap();
        assert_eq!(c.dimension(), 3);
        // brute force over all 343 messages
        let mut best = usize::MAX;
        for m in 1..343u32 {
            let msg = [m % 7, (m / 7) % 7, m / 49];
            best = best.min(linalg::hamming_weight(&c.encode(&msg).unwrap()));
        }
        assert_eq!(best, 4);
        assert_eq!(c.min_hamming_distance().unwrap(), 4);
    }

    #[test]
    fn distance_of_small_binary_code() {
        let c = LinearCode::new(f2(), &[vec![1, 1, 1, 1, 1, 1], vec![1, 1, 1, 0, 0, 0]]).unwrap();
        assert_eq!(c.min_hamming_distance().unwrap(), 3);
        let parity = LinearCode::new(f2(), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(parity.min_hamming_distance().unwrap(), 2);
    }

    #[test]
    fn exhaustion_is_refused() {
        let c = LinearCode::full(f2(), 30);
        assert!(matches!(c.min_hamming_distance(), Err(Error::ExhaustionRefused { .. })));
        let c = LinearCode::full(f2(), 4).with_limit(8);
        assert!(matches!(c.codewords(), Err(Error::ExhaustionRefused { .. })));
    }

    #[test]
    fn bmd_examples() {
        let rep = LinearCode::new(f2(), &[vec![1, 1, 1]]).unwrap();
        assert_eq!(rep.bmd_decode(&[1, 0, 1]).unwrap(), Some(vec![1, 1, 1]));
        assert_eq!(rep.bmd_decode(&[0, 0, 0]).unwrap(), Some(vec![0, 0, 0]));
        let f3 = Field::prime(3).unwrap();
        let rep3 = LinearCode::new(f3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(rep3.bmd_decode(&[1, 2, 0]).unwrap(), None);
        assert_eq!(rep3.bmd_decode_exhaustive(&[1, 2, 0]).unwrap(), None);
        assert!(rep.bmd_decode(&[1, 0]).is_err());
    }

    #[test]
    fn full_space_decodes_to_itself() {
        let full = LinearCode::full(f2(), 3);
        assert_eq!(full.min_hamming_distance().unwrap(), 1);
        assert_eq!(full.bmd_decode(&[1, 0, 1]).unwrap(), Some(vec![1, 0, 1]));
    }

    #[test]
    fn erasure_examples() {
        let parity = LinearCode::new(f2(), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(parity.erasure_decode(&[1, 0, 0], &[2]).unwrap(), Some(vec![1, 0, 1]));
        let rep = LinearCode::new(f2(), &[vec![1, 1, 1]]).unwrap();
        assert_eq!(rep.erasure_decode(&[1, 0, 0], &[1]).unwrap(), None);
        assert_eq!(rep.erasure_decode(&[1, 0, 1], &[]).unwrap(), rep.bmd_decode(&[1, 0, 1]).unwrap());
        assert!(rep.erasure_decode(&[1, 0, 1], &[5]).is_err());
    }

    #[test]
    fn message_roundtrip() {
        let c = LinearCode::new(f2(), &[vec![1, 1, 1, 1, 1, 1], vec![1, 1, 1, 0, 0, 0]]).unwrap();
        for m in [[0, 1], [1, 0], [1, 1]] {
            let cw = c.encode(&m).unwrap();
            assert_eq!(c.message_of(&cw).unwrap(), m.to_vec());
        }
        assert!(c.message_of(&[1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn error_walk_counts() {
        let mut count = 0;
        walk_errors(3, 4, 2, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        // 1 + 4*2 + 6*4
        assert_eq!(count, 33);
    }
}
