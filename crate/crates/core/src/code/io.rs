//! Plain-text generator matrices.
//!
//! The header line is `q n k` for prime fields or `q m n k` for `F_{q^m}`,
//! followed by `k` rows of `n` whitespace-separated field elements (integers
//! in `[0, q^m)`, base-`q` little-endian coefficient digits). Blank lines and
//! lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

fn parse_nums(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::param(format!("bad matrix entry {t:?}: {e}"))))
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<(Field, Matrix)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = parse_nums(lines.next().ok_or_else(|| Error::param("matrix file is empty"))?)?;
    let (q, m, n, k) = match header[..] {
        [q, n, k] => (q, 1, n, k),
        [q, m, n, k] => (q, m, n, k),
        _ => return Err(Error::param("matrix header must be `q n k` or `q m n k`")),
    };
    let q = u32::try_from(q).map_err(|_| Error::param("field characteristic too large"))?;
    let field = Field::extension(q, m as usize)?;
    let rows: Matrix = lines
        .map(|l| {
            let nums = parse_nums(l)?;
            if nums.len() as u64 != n {
                return Err(Error::param(format!("matrix row has {} entries, expected {n}", nums.len())));
            }
            nums.into_iter()
                .map(|x| {
                    u32::try_from(x)
                        .ok()
                        .filter(|&x| field.contains(x))
                        .ok_or_else(|| Error::param(format!("{x} is not an element of {field:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() as u64 != k {
        return Err(Error::param(format!("matrix has {} rows, header says {k}", rows.len())));
    }
    Ok((field, rows))
}

pub fn format_matrix(field: &Field, rows: &[Vec<u32>]) -> String {
    let n = rows.first().map_or(0, Vec::len);
    let mut out = if field.is_prime_field() {
        format!("{} {} {}\n", field.characteristic(), n, rows.len())
    } else {
        format!("{} {} {} {}\n", field.characteristic(), field.degree(), n, rows.len())
    };
    for r in rows {
        let line: Vec<String> = r.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_prime_and_extension() {
        let (f, rows) = parse_matrix("# repetition\n2 3 1\n1 1 1\n").unwrap();
        assert_eq!(f, Field::prime(2).unwrap());
        assert_eq!(rows, vec![vec![1, 1, 1]]);
        assert_eq!(format_matrix(&f, &rows), "2 3 1\n1 1 1\n");

        let text = "2 2 3 2\n1 0 3\n0 1 3\n";
        let (f4, rows) = parse_matrix(text).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(format_matrix(&f4, &rows), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2 3\n1 1 1").is_err());
        assert!(parse_matrix("2 3 1\n1 1").is_err());
        assert!(parse_matrix("2 3 1\n1 2 1").is_err());
        assert!(parse_matrix("2 3 2\n1 1 1").is_err());
        assert!(parse_matrix("4 3 1\n1 1 1").is_err());
    }
}
