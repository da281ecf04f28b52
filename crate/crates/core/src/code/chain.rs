use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Nested inner codes `B_1 ⊇ B_2 ⊇ ... ⊇ B_s ⊇ {0}` on one block, with fixed
/// coset representatives for every quotient `B_j / B_{j+1}`.
///
/// Levels are indexed from 0 (`B_1`).
#[derive(Debug, Clone)]
pub struct NestedChain {
    length: usize,
    codes: Vec<LinearCode>,
    quotient_rows: Vec<Matrix>,
    /// Quotient rows of level `j` followed by a basis of `B_{j+1}`.
    stacked: Vec<Matrix>,
}

impl NestedChain {
    /// `codes` runs from the largest code `B_1` down to `B_s`.
    pub fn new(codes: Vec<LinearCode>) -> Result<Self> {
        let first = codes.first().ok_or_else(|| Error::param("a chain needs at least one code"))?;
        let length = first.length();
        let field = first.field().clone();
        for (j, c) in codes.iter().enumerate() {
            if c.length() != length || c.field() != &field {
                return Err(Error::Nesting {
                    level: j + 1,
                    detail: "codes in a chain must share length and field".into(),
                });
            }
        }
        for j in 1..codes.len() {
            if let Some(row) = codes[j].generator().iter().find(|r| !codes[j - 1].contains(r)) {
                return Err(Error::Nesting {
                    level: j + 1,
                    detail: format!("generator row {row:?} of level {} is not in level {j}", j + 1),
                });
            }
        }
        let mut quotient_rows = Vec::with_capacity(codes.len());
        let mut stacked = Vec::with_capacity(codes.len());
        for j in 0..codes.len() {
            let sub: Matrix = codes.get(j + 1).map(|c| c.generator().clone()).unwrap_or_default();
            let mut span = sub.clone();
            let mut quot = Vec::new();
            for row in codes[j].generator() {
                span.push(row.clone());
                if linalg::rank(&field, &span) == span.len() {
                    quot.push(row.clone());
                } else {
                    span.pop();
                }
            }
            let mut st = quot.clone();
            st.extend(sub);
            if st.len() != codes[j].dimension() {
                return Err(Error::defect(format!("quotient basis at level {} has wrong size", j + 1)));
            }
            quotient_rows.push(quot);
            stacked.push(st);
        }
        Ok(NestedChain { length, codes, quotient_rows, stacked })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn levels(&self) -> usize {
        self.codes.len()
    }

    pub fn code(&self, level: usize) -> &LinearCode {
        &self.codes[level]
    }

    pub fn codes(&self) -> &[LinearCode] {
        &self.codes
    }

    pub fn quotient_rows(&self, level: usize) -> &Matrix {
        &self.quotient_rows[level]
    }

    /// `k(B_j) - k(B_{j+1})`.
    pub fn quotient_dim(&self, level: usize) -> usize {
        self.quotient_rows[level].len()
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level >= self.levels() {
            return Err(Error::param(format!("chain has {} levels, asked for level {level}", self.levels())));
        }
        Ok(())
    }

    /// The fixed coset representative `sum_i a_i * (quotient row i)`.
    pub fn quotient_encode(&self, level: usize, a: &[u32]) -> Result<Vec<u32>> {
        self.check_level(level)?;
        if a.len() != self.quotient_dim(level) {
            return Err(Error::param(format!(
                "quotient message has length {}, expected {}",
                a.len(),
                self.quotient_dim(level)
            )));
        }
        let field = self.codes[level].field();
        Ok(linalg::combine(field, a, &self.quotient_rows[level], self.length))
    }

    /// The message `a` with `b = quotient_encode(a) + b''` for some `b''` in
    /// the next code of the chain.
    pub fn quotient_decode_message(&self, level: usize, b: &[u32]) -> Result<Vec<u32>> {
        self.check_level(level)?;
        let field = self.codes[level].field();
        if b.len() != self.length {
            return Err(Error::param("vector length does not match the chain"));
        }
        let x = linalg::solve_left(field, &self.stacked[level], b).ok_or(Error::NotInCode("chain level"))?;
        Ok(x[..self.quotient_dim(level)].to_vec())
    }
}
