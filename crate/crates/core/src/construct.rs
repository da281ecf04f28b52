//! Polyalphabetic codes from monoalphabetic mother codes, and generalized
//! concatenated codes (GCC) with their designed distance and capability
//! bound.

use crate::code::{LinearCode, NestedChain, PolyalphabeticCode};
use crate::error::{Error, Result};
use crate::field::{gamma_expand_index, Field};
use crate::linalg::{self, Matrix};
use crate::metric::{WeightProfile, WeightedSpace};

pub mod search;

/// Polyalphabetic code over `F_q^{m_1} x ... x F_q^{m_n}` from a mother code
/// over `F_{q^{m_k}}`, where `m_k` is the size of the `k`-th symbol.
///
/// `sizes` must be sorted non-decreasing and the mother code systematic on
/// its first `k` positions. Message symbol `i <= k` is restricted to the
/// subspace `F_q^{m_i} x {0}`; the known zeros are punctured and parity
/// symbols are zero-padded to width `m_i`.
pub fn poly_from_mother(mother: &LinearCode, sizes: &[usize]) -> Result<PolyalphabeticCode> {
    let ext = mother.field();
    let base = Field::prime(ext.characteristic())?;
    let (n, k, mk) = (mother.length(), mother.dimension(), ext.degree());
    if sizes.len() != n {
        return Err(Error::param(format!("{} symbol sizes for a mother code of length {n}", sizes.len())));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::param(format!("symbol sizes {sizes:?} must be sorted non-decreasing")));
    }
    if k == 0 || sizes[k - 1] != mk {
        return Err(Error::param(format!(
            "the mother code's field has degree {mk}, but the size of symbol {k} is {}",
            sizes.get(k.wrapping_sub(1)).copied().unwrap_or(0)
        )));
    }
    if mother.info_set() != (0..k).collect::<Vec<_>>() {
        return Err(Error::param("mother code is not systematic on its first k positions"));
    }
    let total: usize = sizes.iter().sum();
    let mut rows: Matrix = Vec::new();
    for (i, &mi) in sizes.iter().enumerate().take(k) {
        for e in 0..mi {
            let mut msg = vec![0u32; k];
            msg[i] = ext.from_coeffs(&unit(mk, e));
            let cw = mother.encode(&msg)?;
            let mut row = Vec::with_capacity(total);
            for (j, (&c, &mj)) in cw.iter().zip(sizes).enumerate() {
                let g = gamma_expand_index(ext, c);
                if j < k {
                    if g[mj..].iter().any(|&x| x != 0) {
                        return Err(Error::defect("restricted message symbol leaked outside its subspace"));
                    }
                    row.extend_from_slice(&g[..mj]);
                } else {
                    row.extend_from_slice(&g);
                    row.resize(row.len() + (mj - mk), 0);
                }
            }
            rows.push(row);
        }
    }
    let code = PolyalphabeticCode::new(base, sizes.to_vec(), &rows)?;
    let expected: usize = sizes[..k].iter().sum();
    if code.dimension() != expected {
        return Err(Error::defect(format!("polyalphabetic code has dimension {} not {expected}", code.dimension())));
    }
    Ok(code)
}

fn unit(len: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// [`poly_from_mother`] for symbol sizes in any order: symbols are sorted
/// (stably) by size, constructed, then put back in their original order.
pub fn poly_from_mother_any_order(mother: &LinearCode, sizes: &[usize]) -> Result<PolyalphabeticCode> {
    let mut perm: Vec<usize> = (0..sizes.len()).collect();
    perm.sort_by_key(|&i| sizes[i]);
    let sorted: Vec<usize> = perm.iter().map(|&i| sizes[i]).collect();
    let poly = poly_from_mother(mother, &sorted)?;
    let mut offsets = vec![0; sizes.len()];
    for i in 1..sizes.len() {
        offsets[i] = offsets[i - 1] + sizes[i - 1];
    }
    let rows: Matrix = poly
        .generator()
        .iter()
        .map(|row| {
            let mut out = vec![0u32; row.len()];
            for (p, &orig) in perm.iter().enumerate() {
                out[offsets[orig]..offsets[orig] + sizes[orig]].copy_from_slice(poly.symbol(row, p));
            }
            out
        })
        .collect();
    PolyalphabeticCode::new(poly.field().clone(), sizes.to_vec(), &rows)
}

/// Hamming distances of the component codes of a GCC.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDistances {
    /// `inner[j][l]` = `d_H(B_{j,l})`, `None` for a zero code.
    pub inner: Vec<Vec<Option<usize>>>,
    /// `outer[j]` = `d_H(A_j)`, `None` for a zero outer code.
    pub outer: Vec<Option<usize>>,
}

impl ComponentDistances {
    /// Exact distances by exhaustive scan.
    pub fn exact(chains: &[NestedChain], outers: &[PolyalphabeticCode]) -> Result<Self> {
        let levels = outers.len();
        let inner = (0..levels)
            .map(|j| {
                chains
                    .iter()
                    .map(|c| {
                        let code = c.code(j);
                        if code.dimension() == 0 {
                            Ok(None)
                        } else {
                            code.min_hamming_distance().map(Some)
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let outer = outers
            .iter()
            .map(|a| if a.dimension() == 0 { Ok(None) } else { a.min_block_distance().map(Some) })
            .collect::<Result<_>>()?;
        Ok(ComponentDistances { inner, outer })
    }

    /// Designed distance: over levels, the sum of the `d_H(A_j)` smallest
    /// weighted inner distances `lambda_l * d_H(B_{j,l})`, minimized.
    pub fn designed_distance(&self, lambda: &[u64]) -> Option<u64> {
        self.outer
            .iter()
            .enumerate()
            .filter_map(|(j, da)| da.map(|da| (j, da)))
            .map(|(j, da)| {
                let mut w: Vec<u64> =
                    self.inner[j].iter().zip(lambda).filter_map(|(d, &l)| d.map(|d| d as u64 * l)).collect();
                w.sort_unstable();
                w.iter().take(da).sum::<u64>()
            })
            .min()
    }

    /// Capability bound: the least `tau` over profiles that put `d_H(B_{j,l})`
    /// on exactly `d_H(A_j)` blocks of level `j`.
    pub fn capability_bound(&self, space: &WeightedSpace) -> Option<i64> {
        let m = space.block_count();
        let mut best: Option<i64> = None;
        for (j, da) in self.outer.iter().enumerate() {
            let Some(da) = *da else { continue };
            let eligible: Vec<usize> = (0..m).filter(|&l| self.inner[j][l].is_some()).collect();
            for_each_subset(&eligible, da, |support| {
                let mut prof = vec![0usize; m];
                for &l in support {
                    prof[l] = self.inner[j][l].unwrap();
                }
                let t = space.tau(&WeightProfile(prof));
                best = Some(best.map_or(t, |b| b.min(t)));
            });
        }
        best
    }
}

fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], size: usize, mut f: F) {
    if size > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
        f(&chosen);
        let mut j = size;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if idx[j] < items.len() - size + j {
                idx[j] += 1;
                for i in j + 1..size {
                    idx[i] = idx[i - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A generalized concatenated code: one nested chain of inner codes per
/// block and one polyalphabetic outer code per level.
#[derive(Debug, Clone)]
pub struct GccCode {
    space: WeightedSpace,
    field: Field,
    chains: Vec<NestedChain>,
    outers: Vec<PolyalphabeticCode>,
    distances: ComponentDistances,
    dimension: usize,
    designed_distance: u64,
    capability_bound: i64,
}

impl GccCode {
    /// Assembles the code using exact component distances.
    pub fn build(space: WeightedSpace, chains: Vec<NestedChain>, outers: Vec<PolyalphabeticCode>) -> Result<Self> {
        Self::validate(&space, &chains, &outers)?;
        let distances = ComponentDistances::exact(&chains, &outers)?;
        Self::assemble(space, chains, outers, distances)
    }

    /// Assembles the code using caller-declared component distances.
    pub fn build_with_distances(
        space: WeightedSpace,
        chains: Vec<NestedChain>,
        outers: Vec<PolyalphabeticCode>,
        distances: ComponentDistances,
    ) -> Result<Self> {
        Self::validate(&space, &chains, &outers)?;
        if distances.outer.len() != outers.len()
            || distances.inner.len() != outers.len()
            || distances.inner.iter().any(|r| r.len() != chains.len())
        {
            return Err(Error::param("declared distances do not match the code's shape"));
        }
        Self::assemble(space, chains, outers, distances)
    }

    fn validate(space: &WeightedSpace, chains: &[NestedChain], outers: &[PolyalphabeticCode]) -> Result<()> {
        let field = Field::prime(space.q())?;
        if chains.len() != space.block_count() {
            return Err(Error::param(format!("{} chains for {} blocks", chains.len(), space.block_count())));
        }
        let levels = outers.len();
        if levels == 0 {
            return Err(Error::param("at least one level is required"));
        }
        for (l, (c, &n)) in chains.iter().zip(space.blocks()).enumerate() {
            if c.length() != n {
                return Err(Error::param(format!("chain {} has length {}, block has {n}", l + 1, c.length())));
            }
            if c.levels() != levels {
                return Err(Error::param(format!("chain {} has {} levels, expected {levels}", l + 1, c.levels())));
            }
            if c.code(0).field() != &field {
                return Err(Error::param(format!("chain {} is not over F_{}", l + 1, space.q())));
            }
        }
        for (j, a) in outers.iter().enumerate() {
            if a.field() != &field {
                return Err(Error::param(format!("outer code {} is not over F_{}", j + 1, space.q())));
            }
            let expected: Vec<usize> = chains.iter().map(|c| c.quotient_dim(j)).collect();
            if a.sizes() != expected.as_slice() {
                return Err(Error::param(format!(
                    "outer code {} has symbol sizes {:?}, the chains need {expected:?}",
                    j + 1,
                    a.sizes()
                )));
            }
        }
        Ok(())
    }

    fn assemble(
        space: WeightedSpace,
        chains: Vec<NestedChain>,
        outers: Vec<PolyalphabeticCode>,
        distances: ComponentDistances,
    ) -> Result<Self> {
        let dimension = outers.iter().map(PolyalphabeticCode::dimension).sum();
        if dimension == 0 {
            return Err(Error::param("every outer code is zero; the concatenated code is trivial"));
        }
        let designed_distance = distances.designed_distance(space.lambda()).unwrap();
        let capability_bound = distances.capability_bound(&space).unwrap();
        Ok(GccCode {
            field: Field::prime(space.q())?,
            space,
            chains,
            outers,
            distances,
            dimension,
            designed_distance,
            capability_bound,
        })
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn levels(&self) -> usize {
        self.outers.len()
    }

    pub fn chains(&self) -> &[NestedChain] {
        &self.chains
    }

    pub fn outers(&self) -> &[PolyalphabeticCode] {
        &self.outers
    }

    pub fn distances(&self) -> &ComponentDistances {
        &self.distances
    }

    pub fn length(&self) -> usize {
        self.space.length()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Lower bound on the minimum weighted distance.
    pub fn designed_distance(&self) -> u64 {
        self.designed_distance
    }

    /// Lower bound on the weighted error-correction capability.
    pub fn capability_bound(&self) -> i64 {
        self.capability_bound
    }

    /// Splits a flat message into per-level outer messages.
    pub fn split_message(&self, message: &[u32]) -> Result<Vec<Vec<u32>>> {
        if message.len() != self.dimension {
            return Err(Error::param(format!(
                "message has length {}, code dimension is {}",
                message.len(),
                self.dimension
            )));
        }
        let mut out = Vec::with_capacity(self.levels());
        let mut at = 0;
        for a in &self.outers {
            out.push(message[at..at + a.dimension()].to_vec());
            at += a.dimension();
        }
        Ok(out)
    }

    /// Re-encodes outer codewords (one per level, flat `F_q^M` form) through
    /// the quotient encoders; returns one vector per level.
    pub(crate) fn level_contribution(&self, level: usize, outer_word: &[u32]) -> Result<Vec<u32>> {
        let a = &self.outers[level];
        let mut out = Vec::with_capacity(self.length());
        for (l, chain) in self.chains.iter().enumerate() {
            out.extend(chain.quotient_encode(level, a.symbol(outer_word, l))?);
        }
        Ok(out)
    }

    /// Encodes one message per level.
    pub fn encode(&self, messages: &[Vec<u32>]) -> Result<Vec<u32>> {
        if messages.len() != self.levels() {
            return Err(Error::param(format!("{} messages for {} levels", messages.len(), self.levels())));
        }
        let mut c = vec![0u32; self.length()];
        for (j, (a, m)) in self.outers.iter().zip(messages).enumerate() {
            let outer_word = if a.dimension() == 0 {
                if !m.is_empty() {
                    return Err(Error::param(format!("level {} carries no message", j + 1)));
                }
                vec![0; a.total_length()]
            } else {
                a.encode(m)?
            };
            c = linalg::add_vec(&self.field, &c, &self.level_contribution(j, &outer_word)?);
        }
        Ok(c)
    }

    pub fn encode_flat(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.encode(&self.split_message(message)?)
    }

    /// Images of the unit messages.
    pub fn generator_matrix(&self) -> Result<Matrix> {
        (0..self.dimension)
            .map(|i| {
                let mut m = vec![0u32; self.dimension];
                m[i] = 1;
                self.encode_flat(&m)
            })
            .collect()
    }

    pub fn to_linear_code(&self) -> Result<LinearCode> {
        let code = LinearCode::new(self.field.clone(), &self.generator_matrix()?)?;
        if code.dimension() != self.dimension {
            return Err(Error::defect("concatenated encoder is not injective"));
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{named_code, CodeFamily};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn parity_mother_123(q: u32) -> PolyalphabeticCode {
        let ext = Field::extension(q, 2).unwrap();
        let mother = named_code(CodeFamily::Parity, &ext, 3, 2).unwrap();
        poly_from_mother(&mother, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn parity_mother_parameters() {
        for q in [2, 7] {
            let a = parity_mother_123(q);
            assert_eq!(a.dimension(), 3);
            assert_eq!(a.min_block_distance().unwrap(), 2);
        }
    }

    #[test]
    fn equal_sizes_is_plain_expansion() {
        let ext = Field::extension(2, 2).unwrap();
        let mother = named_code(CodeFamily::Parity, &ext, 3, 2).unwrap();
        let a = poly_from_mother(&mother, &[2, 2, 2]).unwrap();
        assert_eq!(a.dimension(), 4);
        assert!(a.min_block_distance().unwrap() >= 2);
        let b = poly_from_mother(&mother, &[1, 2, 2]).unwrap();
        assert_eq!(b.dimension(), 3);
        assert_eq!(b.min_block_distance().unwrap(), 2);
    }

    #[test]
    fn mother_preconditions() {
        let ext = Field::extension(2, 2).unwrap();
        let mother = named_code(CodeFamily::Parity, &ext, 3, 2).unwrap();
        assert!(poly_from_mother(&mother, &[2, 1, 3]).is_err());
        assert!(poly_from_mother(&mother, &[1, 3, 3]).is_err());
        assert!(poly_from_mother(&mother, &[1, 2]).is_err());
    }

    #[test]
    fn any_order_matches_sorted_distance() {
        let ext = Field::extension(2, 2).unwrap();
        let mother = named_code(CodeFamily::Parity, &ext, 3, 2).unwrap();
        let a = poly_from_mother_any_order(&mother, &[3, 1, 2]).unwrap();
        assert_eq!(a.sizes(), &[3, 1, 2]);
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.min_block_distance().unwrap(), 2);
    }

    fn rep_full_gcc() -> GccCode {
        let space = WeightedSpace::new(2, vec![3, 3], vec![1, 2]).unwrap();
        let rep = named_code(CodeFamily::Repetition, &f2(), 3, 1).unwrap();
        let chains =
            vec![NestedChain::new(vec![rep]).unwrap(), NestedChain::new(vec![LinearCode::full(f2(), 3)]).unwrap()];
        let outer = PolyalphabeticCode::full(f2(), vec![1, 3]).unwrap();
        GccCode::build(space, chains, vec![outer]).unwrap()
    }

    #[test]
    fn rep_full_parameters() {
        let c = rep_full_gcc();
        assert_eq!((c.length(), c.dimension()), (6, 4));
        assert_eq!(c.designed_distance(), 2);
        assert_eq!(c.capability_bound(), 1);
    }

    #[test]
    fn rep_full_encoder_is_injective() {
        let c = rep_full_gcc();
        let mut seen = std::collections::HashSet::new();
        for m in 0..16u32 {
            let msg: Vec<u32> = (0..4).map(|i| (m >> i) & 1).collect();
            let cw = c.encode_flat(&msg).unwrap();
            if m != 0 {
                assert!(c.space().vector_weight(&cw).unwrap() >= 2);
            } else {
                assert_eq!(cw, vec![0; 6]);
            }
            assert!(seen.insert(cw));
        }
        assert_eq!(c.to_linear_code().unwrap().dimension(), 4);
    }

    #[test]
    fn rep_parity_full_parameters() {
        let space = WeightedSpace::new(2, vec![3, 3, 3], vec![1, 2, 3]).unwrap();
        let chains = [CodeFamily::Repetition, CodeFamily::Parity, CodeFamily::Full]
            .iter()
            .zip([1, 2, 3])
            .map(|(&fam, k)| NestedChain::new(vec![named_code(fam, &f2(), 3, k).unwrap()]).unwrap())
            .collect();
        let c = GccCode::build(space, chains, vec![parity_mother_123(2)]).unwrap();
        assert_eq!(c.dimension(), 3);
        assert_eq!(c.designed_distance(), 6);
    }

    #[test]
    fn all_full_gives_zero_capability_bound() {
        let space = WeightedSpace::new(2, vec![2, 2], vec![1, 1]).unwrap();
        let chains = (0..2).map(|_| NestedChain::new(vec![LinearCode::full(f2(), 2)]).unwrap()).collect();
        let c = GccCode::build(space, chains, vec![PolyalphabeticCode::full(f2(), vec![2, 2]).unwrap()]).unwrap();
        assert_eq!(c.capability_bound(), 0);
        assert_eq!(c.designed_distance(), 1);
    }

    #[test]
    fn shape_errors() {
        let space = WeightedSpace::new(2, vec![3, 3], vec![1, 2]).unwrap();
        let rep = named_code(CodeFamily::Repetition, &f2(), 3, 1).unwrap();
        let chains = vec![NestedChain::new(vec![rep.clone()]).unwrap(), NestedChain::new(vec![rep]).unwrap()];
        let wrong = PolyalphabeticCode::full(f2(), vec![1, 3]).unwrap();
        assert!(GccCode::build(space.clone(), chains.clone(), vec![wrong]).is_err());
        assert!(GccCode::build(space, chains[..1].to_vec(), vec![]).is_err());
    }

    #[test]
    fn subsets() {
        let mut seen = Vec::new();
        for_each_subset(&[0, 2, 5], 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 2], vec![0, 5], vec![2, 5]]);
        let mut n = 0;
        for_each_subset(&[1, 2], 0, |_| n += 1);
        assert_eq!(n, 1);
    }
}
