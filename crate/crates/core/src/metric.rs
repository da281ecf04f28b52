//! Weighted-Hamming weights, block profiles, the splitting radius `tau`, and
//! enumeration of the weighted ball and its difference set by profile.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient space `F_q^N` split into `m` blocks of lengths `n_1..n_m`, block
/// `l` scaled by `lambda_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSpace {
    q: u32,
    blocks: Vec<usize>,
    lambda: Vec<u64>,
}

/// Per-block Hamming weights of a vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightProfile(pub Vec<usize>);

impl WeightProfile {
    pub fn zero(m: usize) -> Self {
        WeightProfile(vec![0; m])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Componentwise order: `self` is dominated by `other`.
    pub fn leq(&self, other: &WeightProfile) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

pub fn profile_leq(a: &WeightProfile, b: &WeightProfile) -> bool {
    a.leq(b)
}

impl fmt::Display for WeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for WeightProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::param(format!("bad profile {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(WeightProfile)
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl WeightedSpace {
    pub fn new(q: u32, blocks: Vec<usize>, lambda: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::param(format!("field order {q} must be at least 2")));
        }
        if blocks.is_empty() {
            return Err(Error::param("at least one block is required"));
        }
        if blocks.len() != lambda.len() {
            return Err(Error::param(format!(
                "{} block lengths but {} scaling coefficients",
                blocks.len(),
                lambda.len()
            )));
        }
        if blocks.contains(&0) {
            return Err(Error::param("block lengths must be positive"));
        }
        if lambda.contains(&0) {
            return Err(Error::param("scaling coefficients must be positive"));
        }
        if lambda.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::param(format!("scaling coefficients {lambda:?} are not sorted non-decreasing")));
        }
        Ok(WeightedSpace { q, blocks, lambda })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn lambda(&self) -> &[u64] {
        &self.lambda
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn lambda_max(&self) -> u64 {
        *self.lambda.last().unwrap()
    }

    /// Total length `N`.
    pub fn length(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Coordinate ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect()
    }

    pub fn check_profile(&self, p: &WeightProfile) -> Result<()> {
        if p.0.len() != self.blocks.len() || p.0.iter().zip(&self.blocks).any(|(w, n)| w > n) {
            return Err(Error::param(format!("profile ({p}) is not valid for blocks {:?}", self.blocks)));
        }
        Ok(())
    }

    pub fn block_profile(&self, v: &[u32]) -> Result<WeightProfile> {
        if v.len() != self.length() {
            return Err(Error::param(format!("vector has length {}, space has {}", v.len(), self.length())));
        }
        Ok(WeightProfile(self.block_ranges().into_iter().map(|r| v[r].iter().filter(|&&x| x != 0).count()).collect()))
    }

    pub fn weighted_weight(&self, p: &WeightProfile) -> u64 {
        p.0.iter().zip(&self.lambda).map(|(&w, &l)| w as u64 * l).sum()
    }

    pub fn vector_weight(&self, v: &[u32]) -> Result<u64> {
        Ok(self.weighted_weight(&self.block_profile(v)?))
    }

    pub fn weighted_distance(&self, a: &[u32], b: &[u32]) -> Result<u64> {
        if a.len() != b.len() {
            return Err(Error::param("length mismatch"));
        }
        let diff: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x != y) as u32).collect();
        self.vector_weight(&diff)
    }

    /// `tau` of any vector with this profile: the least achievable
    /// `max(wt(r), wt(v - r))` over splits, minus one. The zero profile gives
    /// `-1`.
    ///
    /// Splits only ever move whole coordinates, so the achievable values of
    /// `wt(r)` are exactly the sums `sum_l lambda_l * a_l` with
    /// `0 <= a_l <= w_l`; these are collected in a reachability table.
    pub fn tau(&self, p: &WeightProfile) -> i64 {
        let total = self.weighted_weight(p) as usize;
        let mut reach = vec![false; total + 1];
        reach[0] = true;
        for (&w, &l) in p.0.iter().zip(&self.lambda) {
            if w == 0 {
                continue;
            }
            let l = l as usize;
            let prev = reach.clone();
            for s in (0..=total).filter(|&s| prev[s]) {
                for a in 1..=w {
                    let t = s + a * l;
                    if t > total {
                        break;
                    }
                    reach[t] = true;
                }
            }
        }
        let best = (0..=total).filter(|&s| reach[s]).map(|s| s.max(total - s)).min().unwrap_or(0);
        best as i64 - 1
    }

    pub fn vector_tau(&self, v: &[u32]) -> Result<i64> {
        Ok(self.tau(&self.block_profile(v)?))
    }

    /// All profiles of the space, lexicographic.
    pub fn all_profiles(&self) -> Vec<WeightProfile> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.blocks.len()];
        loop {
            out.push(WeightProfile(cur.clone()));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.blocks[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Profiles attained by the ball `B(t)`, lexicographic.
    pub fn ball_profiles(&self, t: u64) -> Vec<WeightProfile> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.blocks.len());
        self.ball_dfs(0, t, &mut cur, &mut out);
        out
    }

    fn ball_dfs(&self, block: usize, budget: u64, cur: &mut Vec<usize>, out: &mut Vec<WeightProfile>) {
        if block == self.blocks.len() {
            out.push(WeightProfile(cur.clone()));
            return;
        }
        let l = self.lambda[block];
        let max_w = (self.blocks[block] as u64).min(budget / l) as usize;
        for w in 0..=max_w {
            cur.push(w);
            self.ball_dfs(block + 1, budget - w as u64 * l, cur, out);
            cur.pop();
        }
    }

    /// Profiles attained by the difference set of `B(t)`: those with
    /// `tau <= t - 1`.
    pub fn diff_ball_profiles(&self, t: u64) -> Vec<WeightProfile> {
        self.all_profiles().into_iter().filter(|p| self.tau(p) < t as i64).collect()
    }

    /// Number of vectors with the given profile.
    pub fn profile_volume(&self, p: &WeightProfile) -> BigUint {
        let qm1 = BigUint::from(self.q - 1);
        p.0.iter().zip(&self.blocks).map(|(&w, &n)| binomial(n, w) * qm1.pow(w as u32)).product()
    }

    pub fn ball_size(&self, t: u64) -> BigUint {
        self.ball_profiles(t).iter().map(|p| self.profile_volume(p)).sum()
    }

    pub fn diff_ball_size(&self, t: u64) -> BigUint {
        self.diff_ball_profiles(t).iter().map(|p| self.profile_volume(p)).sum()
    }

    /// `q^N`.
    pub fn ambient_size(&self) -> BigUint {
        BigUint::from(self.q).pow(self.length() as u32)
    }
}
