//! Bounds on the largest dimension of a code with a given weighted-Hamming
//! error-correction capability, and conversions between distance and
//! capability.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{WeightProfile, WeightedSpace};
use crate::ratlp::{self, LpOutcome, Rational, RationalLp, Relation};

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Hamming-metric Krawtchouk coefficient `K_j(i)` for length `n` over `F_q`.
pub fn krawtchouk(q: u32, n: usize, j: usize, i: usize) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    (0..=j)
        .map(|s| {
            let term = binom(n - i.min(n), j - s) * binom(i, s) * qm1.pow((j - s) as u32);
            if s % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// Largest `k` with `q^k * size <= q^N`.
fn largest_k_below(q: u32, n: usize, size: &BigUint) -> usize {
    let total = BigUint::from(q).pow(n as u32);
    let mut k = 0;
    let mut acc = size.clone();
    while k < n && &acc * q <= total {
        acc *= q;
        k += 1;
    }
    k
}

/// Sphere-packing bound: `floor(N - log_q |B(t)|)`.
pub fn packing_bound(space: &WeightedSpace, t: u64) -> usize {
    largest_k_below(space.q(), space.length(), &space.ball_size(t))
}

/// Covering (existence) bound: `ceil(N - log_q |ΔB(t)|)`, the least `k`
/// with `q^k * |ΔB(t)| >= q^N`.
pub fn covering_bound(space: &WeightedSpace, t: u64) -> usize {
    let total = space.ambient_size();
    let mut acc = space.diff_ball_size(t);
    let mut k = 0;
    while acc < total {
        acc *= space.q();
        k += 1;
    }
    k
}

/// Profile of the vector supported on the first `weight` coordinates.
fn leading_profile(space: &WeightedSpace, weight: usize) -> WeightProfile {
    let mut left = weight;
    WeightProfile(
        space
            .blocks()
            .iter()
            .map(|&n| {
                let w = n.min(left);
                left -= w;
                w
            })
            .collect(),
    )
}

/// Singleton-type bound: the capability of any `k`-dimensional code is at
/// most `tau` of a vector supported on the first `N - k + 1` coordinates.
pub fn singleton_bound(space: &WeightedSpace, k: usize) -> Result<i64> {
    let n = space.length();
    if k == 0 || k > n {
        return Err(Error::param(format!("dimension {k} outside 1..={n}")));
    }
    Ok(space.tau(&leading_profile(space, n - k + 1)))
}

/// Largest `k` whose Singleton bound admits capability `t` (0 if none).
pub fn singleton_k_for_t(space: &WeightedSpace, t: u64) -> usize {
    (1..=space.length())
        .rev()
        .find(|&k| space.tau(&leading_profile(space, space.length() - k + 1)) >= t as i64)
        .unwrap_or(0)
}

/// Builds the block-weight LP for capability `t`: one variable per profile
/// (in [`WeightedSpace::all_profiles`] order), `A_0 = 1`, `A_i = 0` on the
/// nonzero profiles of the difference set, and the Krawtchouk
/// non-negativity rows.
pub fn lp_program(space: &WeightedSpace, t: u64) -> (Vec<WeightProfile>, RationalLp) {
    let profiles = space.all_profiles();
    let forbidden: HashSet<WeightProfile> = space.diff_ball_profiles(t).into_iter().collect();
    let nv = profiles.len();
    let mut lp = RationalLp::new(nv).maximize(vec![Rational::one(); nv]);

    let unit = |idx: usize| {
        let mut v = vec![Rational::zero(); nv];
        v[idx] = Rational::one();
        v
    };
    lp.add(unit(0), Relation::Eq, Rational::one());
    for (idx, p) in profiles.iter().enumerate() {
        if !p.is_zero() && forbidden.contains(p) {
            lp.add(unit(idx), Relation::Eq, Rational::zero());
        }
    }

    // per block, K[l][j][i]
    let tables: Vec<Vec<Vec<BigInt>>> = space
        .blocks()
        .iter()
        .map(|&n| (0..=n).map(|j| (0..=n).map(|i| krawtchouk(space.q(), n, j, i)).collect()).collect())
        .collect();
    for j in &profiles {
        let row: Vec<Rational> = profiles
            .iter()
            .map(|i| {
                let prod: BigInt = (0..space.block_count()).map(|l| tables[l][j.0[l]][i.0[l]].clone()).product();
                Rational::from_integer(prod)
            })
            .collect();
        lp.add(row, Relation::Ge, Rational::zero());
    }
    (profiles, lp)
}

/// Exact optimum of the block-weight LP: an upper bound on `|C|`.
pub fn lp_optimum(space: &WeightedSpace, t: u64) -> Result<Rational> {
    let (_, lp) = lp_program(space, t);
    match ratlp::solve_max(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::defect("block-weight LP is infeasible")),
        LpOutcome::Unbounded => Err(Error::defect("block-weight LP is unbounded")),
    }
}

/// `floor(log_q x)` for a rational `x >= 1`.
pub fn floor_log(q: u32, x: &Rational) -> usize {
    let (num, den) = (x.numer().abs(), x.denom().clone());
    let mut k = 0;
    let mut power = BigInt::from(q);
    while &power * &den <= num {
        power *= q;
        k += 1;
    }
    k
}

/// Linear-programming bound on the dimension.
pub fn lp_bound(space: &WeightedSpace, t: u64) -> Result<usize> {
    Ok(floor_log(space.q(), &lp_optimum(space, t)?))
}

/// Range of capabilities compatible with minimum distance `d`:
/// `floor((d-1)/2) <= t <= floor((d + lambda_max)/2) - 1`.
pub fn t_interval_from_d(space: &WeightedSpace, d: u64) -> (u64, u64) {
    let low = d.saturating_sub(1) / 2;
    let high = ((d + space.lambda_max()) / 2).saturating_sub(1);
    (low, high)
}

/// Minimum distance that guarantees capability `t`.
pub fn d_required_for_t(t: u64) -> u64 {
    2 * t + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub t: u64,
    pub packing: usize,
    pub singleton: usize,
    pub lp: usize,
    pub covering: usize,
    /// Raw LP optimum as `num/den`.
    pub lp_optimum: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundTable {
    pub space: WeightedSpace,
    pub rows: Vec<BoundRow>,
}

pub fn bound_row(space: &WeightedSpace, t: u64) -> Result<BoundRow> {
    let opt = lp_optimum(space, t)?;
    Ok(BoundRow {
        t,
        packing: packing_bound(space, t),
        singleton: singleton_k_for_t(space, t),
        lp: floor_log(space.q(), &opt),
        covering: covering_bound(space, t),
        lp_optimum: opt.to_string(),
    })
}

impl BoundTable {
    pub fn compute(space: &WeightedSpace, ts: impl IntoIterator<Item = u64>) -> Result<Self> {
        let rows = ts.into_iter().map(|t| bound_row(space, t)).collect::<Result<_>>()?;
        Ok(BoundTable { space: space.clone(), rows })
    }

    pub const CSV_HEADER: &'static str = "t,packing,singleton,lp,covering";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.t, r.packing, r.singleton, r.lp, r.covering));
        }
        out
    }

    /// JSON array of row objects.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks_77(q: u32) -> WeightedSpace {
        WeightedSpace::new(q, vec![7, 7], vec![1, 2]).unwrap()
    }

    #[test]
    fn krawtchouk_values() {
        for j in 0..=7 {
            assert_eq!(krawtchouk(2, 7, j, 0), binom(7, j));
            assert_eq!(krawtchouk(7, 7, j, 0), binom(7, j) * BigInt::from(6).pow(j as u32));
        }
        for i in 0..=7 {
            assert_eq!(krawtchouk(2, 7, 1, i), BigInt::from(7 - 2 * i as i64));
        }
        assert_eq!(krawtchouk(2, 7, 1, 1), BigInt::from(5));
        assert_eq!(krawtchouk(2, 7, 1, 4), BigInt::from(-1));
        for q in [2u32, 7] {
            for i in 0..=7 {
                let s: BigInt = (0..=7).map(|j| krawtchouk(q, 7, j, i)).sum();
                let expected = if i == 0 { BigInt::from(q).pow(7) } else { BigInt::zero() };
                assert_eq!(s, expected);
            }
        }
    }

    #[test]
    fn packing_and_covering_points() {
        let s2 = blocks_77(2);
        assert_eq!(packing_bound(&s2, 0), 14);
        assert_eq!(packing_bound(&s2, 1), 11);
        assert_eq!(packing_bound(&s2, 2), 8);
        assert_eq!(packing_bound(&blocks_77(7), 5), 7);
        assert_eq!(covering_bound(&s2, 0), 14);
        assert_eq!(covering_bound(&s2, 1), 10);
        assert_eq!(covering_bound(&s2, 2), 6);
    }

    #[test]
    fn singleton_points() {
        let s = blocks_77(2);
        assert_eq!(singleton_bound(&s, 12).unwrap(), 1);
        assert_eq!(singleton_bound(&s, 10).unwrap(), 2);
        assert_eq!(singleton_bound(&s, 7).unwrap(), 4);
        assert_eq!(singleton_bound(&s, 14).unwrap(), 0);
        assert!(singleton_bound(&s, 0).is_err());
        for k in 1..=14 {
            assert_eq!(singleton_bound(&s, k).unwrap(), singleton_bound(&blocks_77(7), k).unwrap());
        }
        assert_eq!(singleton_k_for_t(&s, 11), 0);
    }

    #[test]
    fn lp_small_points() {
        assert_eq!(lp_bound(&blocks_77(2), 0).unwrap(), 14);
        assert_eq!(lp_bound(&blocks_77(2), 5).unwrap(), 3);
    }

    #[test]
    fn hamming_reduction() {
        // n = 7, q = 2: sphere packing 4 at t = 1 (Hamming code), GV 3 at t = 1
        let s = WeightedSpace::new(2, vec![7], vec![1]).unwrap();
        assert_eq!(packing_bound(&s, 1), 4);
        assert_eq!(covering_bound(&s, 1), 3);
        // classical Singleton: d = 2t + 1 <= n - k + 1
        for t in 0..=3u64 {
            assert_eq!(singleton_k_for_t(&s, t), 7 - 2 * t as usize);
        }
        assert_eq!(lp_bound(&s, 1).unwrap(), 4);
    }

    #[test]
    fn distance_conversions() {
        let s = WeightedSpace::new(2, vec![3, 3], vec![1, 2]).unwrap();
        assert_eq!(t_interval_from_d(&s, 5), (2, 2));
        assert_eq!(t_interval_from_d(&s, 2 * 3 + 1).0, 3);
        let h = WeightedSpace::new(2, vec![6], vec![1]).unwrap();
        for d in 1..8 {
            let (lo, hi) = t_interval_from_d(&h, d);
            assert_eq!(lo, hi);
            assert_eq!(lo, (d - 1) / 2);
        }
        assert_eq!(d_required_for_t(2), 5);
    }

    #[test]
    fn floor_log_exact() {
        assert_eq!(floor_log(2, &Rational::new(BigInt::from(16), BigInt::from(1))), 4);
        assert_eq!(floor_log(2, &Rational::new(BigInt::from(31), BigInt::from(2))), 3);
        assert_eq!(floor_log(7, &Rational::one()), 0);
    }

    #[test]
    fn csv_and_json() {
        let t = BoundTable::compute(&blocks_77(2), 0..2).unwrap();
        assert_eq!(t.to_csv(), "t,packing,singleton,lp,covering\n0,14,14,14,14\n1,11,12,11,10\n");
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[1]["covering"], 10);
        let empty = BoundTable::compute(&blocks_77(2), 0..0).unwrap();
        assert_eq!(empty.to_csv(), "t,packing,singleton,lp,covering\n");
    }
}
