//! Dense row-oriented linear algebra over a [`Field`].

use crate::field::Field;

pub type Matrix = Vec<Vec<u32>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns
/// (in increasing order).
pub fn rref(field: &Field, rows: &[Vec<u32>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{ v : rows * v^T = 0 }`.
pub fn null_space(field: &Field, rows: &[Vec<u32>], ncols: usize) -> Matrix {
    let (r, pivots) = rref(field, rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Coefficients `x` with `sum_i x_i * basis_i = target`, if any. `basis` must
/// be linearly independent for the answer to be unique.
pub fn solve_left(field: &Field, basis: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let k = basis.len();
    let n = target.len();
    if k == 0 {
        return target.iter().all(|&x| x == 0).then(Vec::new);
    }
    // Columns of the system are the basis rows; augment with the target and
    // eliminate on the transposed system.
    let mut sys: Matrix = (0..n)
        .map(|c| {
            let mut row: Vec<u32> = basis.iter().map(|b| b[c]).collect();
            row.push(target[c]);
            row
        })
        .collect();
    let (red, pivots) = {
        let (m, p) = rref(field, &sys);
        sys = m;
        (sys, p)
    };
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![0u32; k];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[k];
    }
    Some(x)
}

pub fn add_scaled(field: &Field, acc: &mut [u32], row: &[u32], c: u32) {
    if c == 0 {
        return;
    }
    for (a, &r) in acc.iter_mut().zip(row) {
        *a = field.add(*a, field.mul(c, r));
    }
}

/// `message * rows`.
pub fn combine(field: &Field, message: &[u32], rows: &[Vec<u32>], n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for (&c, row) in message.iter().zip(rows) {
        add_scaled(field, &mut out, row, c);
    }
    out
}

pub fn sub_vec(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn add_vec(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn hamming_weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn hamming_distance(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
