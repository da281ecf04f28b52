use std::fmt;
use std::str::FromStr;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    Repetition,
    Parity,
    Full,
    Hamming,
    ReedSolomon,
    /// Given by an explicit generator matrix; cannot be built by name.
    Custom,
}

impl FromStr for CodeFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "repetition" | "rep" => CodeFamily::Repetition,
            "parity" | "spc" => CodeFamily::Parity,
            "full" => CodeFamily::Full,
            "hamming" => CodeFamily::Hamming,
            "reed_solomon" | "rs" => CodeFamily::ReedSolomon,
            "custom" => CodeFamily::Custom,
            other => return Err(Error::param(format!("unknown code family {other:?}"))),
        })
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeFamily::Repetition => "repetition",
            CodeFamily::Parity => "parity",
            CodeFamily::Full => "full",
            CodeFamily::Hamming => "hamming",
            CodeFamily::ReedSolomon => "reed_solomon",
            CodeFamily::Custom => "custom",
        })
    }
}

impl serde::Serialize for CodeFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl CodeFamily {
    /// The dimension this family has at length `n`, for families where it is
    /// forced.
    pub fn natural_dimension(self, field: &Field, n: usize) -> Option<usize> {
        match self {
            CodeFamily::Repetition => Some(1),
            CodeFamily::Parity => n.checked_sub(1),
            CodeFamily::Full => Some(n),
            CodeFamily::Hamming => hamming_redundancy(field.order(), n).map(|r| n - r),
            CodeFamily::ReedSolomon | CodeFamily::Custom => None,
        }
    }
}

/// `r` with `n = (Q^r - 1) / (Q - 1)`, `r >= 2`.
fn hamming_redundancy(order: u32, n: usize) -> Option<usize> {
    let mut r = 2;
    loop {
        let len = ((order as u64).pow(r as u32) - 1) / (order as u64 - 1);
        if len == n as u64 {
            return Some(r);
        }
        if len > n as u64 {
            return None;
        }
        r += 1;
    }
}

fn mismatch(family: CodeFamily, n: usize, k: usize) -> Error {
    Error::param(format!("no {family} code with n = {n}, k = {k}"))
}

/// Canonical generator for a named family.
pub fn named_code(family: CodeFamily, field: &Field, n: usize, k: usize) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::param("code length must be positive"));
    }
    let rows: Matrix = match family {
        CodeFamily::Repetition => {
            if k != 1 {
                return Err(mismatch(family, n, k));
            }
            vec![vec![1; n]]
        }
        CodeFamily::Parity => {
            if n < 2 || k + 1 != n {
                return Err(mismatch(family, n, k));
            }
            // [I | -1]: sum of coordinates is zero
            (0..k)
                .map(|i| {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r[n - 1] = field.neg(1);
                    r
                })
                .collect()
        }
        CodeFamily::Full => {
            if k != n {
                return Err(mismatch(family, n, k));
            }
            return Ok(LinearCode::full(field.clone(), n));
        }
        CodeFamily::Hamming => {
            let r = hamming_redundancy(field.order(), n).ok_or_else(|| mismatch(family, n, k))?;
            if k + r != n {
                return Err(mismatch(family, n, k));
            }
            let order = field.order() as u64;
            // columns: projective points with leading (lowest-index) nonzero 1
            let columns: Vec<Vec<u32>> = (1..order.pow(r as u32))
                .map(|mut idx| {
                    (0..r)
                        .map(|_| {
                            let d = (idx % order) as u32;
                            idx /= order;
                            d
                        })
                        .collect::<Vec<u32>>()
                })
                .filter(|col| col.iter().find(|&&x| x != 0) == Some(&1))
                .collect();
            let h: Matrix = (0..r).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
            linalg::null_space(field, &h, n)
        }
        CodeFamily::ReedSolomon => {
            if n > field.order() as usize || k == 0 || k > n {
                return Err(mismatch(family, n, k));
            }
            let points: Vec<u32> = (1..field.order()).chain(std::iter::once(0)).take(n).collect();
            (0..k).map(|i| points.iter().map(|&x| field.pow(x, i as u64)).collect()).collect()
        }
        CodeFamily::Custom => {
            return Err(Error::param("custom codes are given by a generator matrix, not by name"));
        }
    };
    let code = LinearCode::new(field.clone(), &rows)?;
    if code.dimension() != k {
        return Err(Error::defect(format!("{family} generator has rank {} instead of {k}", code.dimension())));
    }
    Ok(code)
}
