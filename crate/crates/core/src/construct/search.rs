//! Exhaustive search over menus of named component codes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{poly_from_mother_any_order, ComponentDistances, GccCode};
use crate::code::{named_code, CodeFamily, LinearCode, NestedChain, PolyalphabeticCode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::metric::WeightedSpace;

/// How a level's outer code is built from its symbol sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OuterChoice {
    /// The whole space.
    Full,
    /// Expansion of a named mother code of forced dimension.
    Mother(CodeFamily),
    /// Expansion of a Reed-Solomon mother code of the given dimension.
    MotherRs(usize),
}

impl FromStr for OuterChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "full" {
            return Ok(OuterChoice::Full);
        }
        let Some(rest) = s.strip_prefix("mother:") else {
            return Err(Error::param(format!("unknown outer code {s:?}")));
        };
        let (fam, k) = match rest.split_once(':') {
            Some((f, k)) => (f, Some(k)),
            None => (rest, None),
        };
        let family: CodeFamily = fam.parse()?;
        match (family, k) {
            (CodeFamily::ReedSolomon, Some(k)) => k
                .parse()
                .map(OuterChoice::MotherRs)
                .map_err(|_| Error::param(format!("bad Reed-Solomon dimension {k:?}"))),
            (CodeFamily::ReedSolomon | CodeFamily::Custom, _) => {
                Err(Error::param(format!("outer code {s:?} needs an explicit dimension")))
            }
            (_, None) => Ok(OuterChoice::Mother(family)),
            (_, Some(_)) => Err(Error::param(format!("{family} mother codes take no dimension"))),
        }
    }
}

impl fmt::Display for OuterChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuterChoice::Full => f.write_str("full"),
            OuterChoice::Mother(fam) => write!(f, "mother:{fam}"),
            OuterChoice::MotherRs(k) => write!(f, "mother:rs:{k}"),
        }
    }
}

impl Serialize for OuterChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Builds the outer code for `sizes`, or `None` when the choice does not
/// apply to these sizes.
pub fn build_outer(field: &Field, choice: OuterChoice, sizes: &[usize]) -> Result<Option<PolyalphabeticCode>> {
    if sizes.iter().all(|&s| s == 0) {
        return Ok(None);
    }
    let n = sizes.len();
    let k = match choice {
        OuterChoice::Full => return PolyalphabeticCode::full(field.clone(), sizes.to_vec()).map(Some),
        OuterChoice::Mother(fam) => match fam.natural_dimension(field, n) {
            Some(k) if k > 0 => k,
            _ => return Ok(None),
        },
        OuterChoice::MotherRs(k) => k,
    };
    if k == 0 || k > n {
        return Ok(None);
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mk = sorted[k - 1];
    if mk == 0 {
        return Ok(None);
    }
    let ext = Field::extension(field.characteristic(), mk)?;
    let family = match choice {
        OuterChoice::Mother(fam) => fam,
        _ => CodeFamily::ReedSolomon,
    };
    if family == CodeFamily::ReedSolomon && n as u64 > ext.order() as u64 {
        return Ok(None);
    }
    let mother = match named_code(family, &ext, n, k) {
        Ok(m) => m,
        Err(Error::Parameter(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    poly_from_mother_any_order(&mother, sizes).map(Some)
}

/// Component-code menus for [`search`].
#[derive(Debug, Clone)]
pub struct SearchMenu {
    /// Inner families; each is used at its forced dimension.
    pub inner: Vec<CodeFamily>,
    pub outer: Vec<OuterChoice>,
    pub max_levels: usize,
}

/// One evaluated assembly.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    /// Per block, the chain's families from the largest code down;
    /// `None` stands for the zero code.
    pub chains: Vec<Vec<Option<CodeFamily>>>,
    pub outers: Vec<OuterChoice>,
    pub dimension: usize,
    pub designed_distance: u64,
    pub capability_bound: i64,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .chains
            .iter()
            .map(|c| {
                c.iter().map(|x| x.map_or_else(|| "zero".to_string(), |f| f.to_string())).collect::<Vec<_>>().join(">")
            })
            .collect();
        let outers: Vec<String> = self.outers.iter().map(ToString::to_string).collect();
        write!(f, "{} / {}", blocks.join(" | "), outers.join(","))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub evaluated: usize,
    pub candidates: Vec<Candidate>,
    /// `(t, k)`: the largest `k` with capability bound at least `t`,
    /// keeping only points not dominated by a larger `t`.
    pub t_frontier: Vec<(i64, usize)>,
    /// `(d, k)` likewise for the designed distance.
    pub d_frontier: Vec<(u64, usize)>,
}

type Code = (Option<CodeFamily>, LinearCode);

fn block_menu(field: &Field, n: usize, families: &[CodeFamily]) -> Result<Vec<Code>> {
    let mut out: Vec<Code> = Vec::new();
    for &fam in families {
        let Some(k) = fam.natural_dimension(field, n) else { continue };
        if k == 0 {
            continue;
        }
        let code = match named_code(fam, field, n, k) {
            Ok(c) => c,
            Err(Error::Parameter(_)) => continue,
            Err(e) => return Err(e),
        };
        if out.iter().any(|(_, c)| c.generator() == code.generator()) {
            continue;
        }
        code.min_hamming_distance()?;
        out.push((Some(fam), code));
    }
    Ok(out)
}

/// All chains of exactly `levels` codes from the menu, non-increasing under
/// inclusion, with a nonzero first code; the zero code may end a chain.
fn block_chains(menu: &[Code], field: &Field, n: usize, levels: usize) -> Vec<(Vec<Option<CodeFamily>>, NestedChain)> {
    let zero: Code = (None, LinearCode::zero(field.clone(), n));
    let mut out = Vec::new();
    let mut stack: Vec<&Code> = Vec::new();
    fn rec<'a>(
        menu: &'a [Code],
        zero: &'a Code,
        levels: usize,
        stack: &mut Vec<&'a Code>,
        out: &mut Vec<(Vec<Option<CodeFamily>>, NestedChain)>,
    ) {
        if stack.len() == levels {
            if let Ok(chain) = NestedChain::new(stack.iter().map(|c| c.1.clone()).collect()) {
                out.push((stack.iter().map(|c| c.0).collect(), chain));
            }
            return;
        }
        let options = menu.iter().chain((!stack.is_empty()).then_some(zero));
        for c in options {
            if let Some(prev) = stack.last() {
                if c.1.dimension() > prev.1.dimension() || c.1.generator().iter().any(|r| !prev.1.contains(r)) {
                    continue;
                }
            }
            stack.push(c);
            rec(menu, zero, levels, stack, out);
            stack.pop();
        }
    }
    rec(menu, &zero, levels, &mut stack, &mut out);
    out
}

/// Outer code (dimension, block distance) per choice and symbol sizes.
type OuterCache = HashMap<(OuterChoice, Vec<usize>), Option<(usize, usize)>>;

/// Evaluates every assembly from the menus with `1..=max_levels` levels and
/// returns the candidates and both frontiers. Deterministic.
pub fn search(space: &WeightedSpace, menu: &SearchMenu) -> Result<SearchResult> {
    if menu.inner.is_empty() || menu.outer.is_empty() || menu.max_levels == 0 {
        return Err(Error::param("search needs inner and outer menus and at least one level"));
    }
    let field = Field::prime(space.q())?;
    let menus: Vec<Vec<Code>> =
        space.blocks().iter().map(|&n| block_menu(&field, n, &menu.inner)).collect::<Result<_>>()?;
    if let Some(l) = menus.iter().position(Vec::is_empty) {
        return Err(Error::param(format!("no inner family in the menu fits block {}", l + 1)));
    }
    let mut outer_cache: OuterCache = HashMap::new();
    let mut candidates = Vec::new();
    let mut evaluated = 0;
    for levels in 1..=menu.max_levels {
        let chains: Vec<_> =
            menus.iter().zip(space.blocks()).map(|(m, &n)| block_chains(m, &field, n, levels)).collect();
        if chains.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; chains.len()];
        loop {
            let chosen: Vec<&(Vec<Option<CodeFamily>>, NestedChain)> =
                pick.iter().enumerate().map(|(l, &i)| &chains[l][i]).collect();
            let inner: Vec<Vec<Option<usize>>> = (0..levels)
                .map(|j| {
                    chosen
                        .iter()
                        .map(|(_, c)| {
                            let code = c.code(j);
                            (code.dimension() > 0).then(|| code.min_hamming_distance()).transpose()
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            let sizes: Vec<Vec<usize>> =
                (0..levels).map(|j| chosen.iter().map(|(_, c)| c.quotient_dim(j)).collect()).collect();
            let mut outs = vec![0usize; levels];
            'outer: loop {
                evaluated += 1;
                let mut outer = Vec::with_capacity(levels);
                let mut dimension = 0;
                let mut ok = true;
                for j in 0..levels {
                    let choice = menu.outer[outs[j]];
                    let key = (choice, sizes[j].clone());
                    let entry = match outer_cache.get(&key) {
                        Some(e) => *e,
                        None => {
                            let e = match build_outer(&field, choice, &sizes[j])? {
                                Some(a) => Some((a.dimension(), a.min_block_distance()?)),
                                None => None,
                            };
                            outer_cache.insert(key, e);
                            e
                        }
                    };
                    match entry {
                        Some((k, d)) => {
                            dimension += k;
                            outer.push(Some(d));
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && dimension > 0 {
                    let dist = ComponentDistances { inner: inner.clone(), outer };
                    candidates.push(Candidate {
                        chains: chosen.iter().map(|(f, _)| f.clone()).collect(),
                        outers: outs.iter().map(|&i| menu.outer[i]).collect(),
                        dimension,
                        designed_distance: dist.designed_distance(space.lambda()).unwrap(),
                        capability_bound: dist.capability_bound(space).unwrap(),
                    });
                }
                for j in (0..levels).rev() {
                    outs[j] += 1;
                    if outs[j] < menu.outer.len() {
                        continue 'outer;
                    }
                    outs[j] = 0;
                }
                break;
            }
            if !advance(&mut pick, &chains.iter().map(Vec::len).collect::<Vec<_>>()) {
                break;
            }
        }
    }
    let t_frontier = frontier(candidates.iter().map(|c| (c.capability_bound, c.dimension)));
    let d_frontier = frontier(candidates.iter().map(|c| (c.designed_distance, c.dimension)));
    Ok(SearchResult { evaluated, candidates, t_frontier, d_frontier })
}

fn advance(pick: &mut [usize], lens: &[usize]) -> bool {
    for i in (0..pick.len()).rev() {
        pick[i] += 1;
        if pick[i] < lens[i] {
            return true;
        }
        pick[i] = 0;
    }
    false
}

/// Pareto frontier of `(value, k)` pairs where both are to be maximized,
/// sorted by value.
pub fn frontier<T: Ord + Copy>(points: impl IntoIterator<Item = (T, usize)>) -> Vec<(T, usize)> {
    let mut pts: Vec<(T, usize)> = points.into_iter().collect();
    pts.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let mut out: Vec<(T, usize)> = Vec::new();
    for (v, k) in pts {
        if out.last().is_none_or(|&(_, best)| k > best) {
            out.push((v, k));
        }
    }
    out.reverse();
    out
}

/// Rebuilds a candidate as a full [`GccCode`].
pub fn assemble(space: &WeightedSpace, candidate: &Candidate) -> Result<GccCode> {
    let field = Field::prime(space.q())?;
    let chains: Vec<NestedChain> = candidate
        .chains
        .iter()
        .zip(space.blocks())
        .map(|(fams, &n)| {
            let codes = fams
                .iter()
                .map(|f| match f {
                    None => Ok(LinearCode::zero(field.clone(), n)),
                    Some(fam) => {
                        let k = fam
                            .natural_dimension(&field, n)
                            .ok_or_else(|| Error::param(format!("{fam} has no forced dimension at n = {n}")))?;
                        named_code(*fam, &field, n, k)
                    }
                })
                .collect::<Result<_>>()?;
            NestedChain::new(codes)
        })
        .collect::<Result<_>>()?;
    let mut outers = Vec::new();
    for (j, &choice) in candidate.outers.iter().enumerate() {
        let sizes: Vec<usize> = chains.iter().map(|c| c.quotient_dim(j)).collect();
        outers.push(
            build_outer(&field, choice, &sizes)?
                .ok_or_else(|| Error::param(format!("outer code {choice} does not fit sizes {sizes:?}")))?,
        );
    }
    GccCode::build(space.clone(), chains, outers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outer_choice_roundtrip() {
        for s in ["full", "mother:parity", "mother:repetition", "mother:rs:2"] {
            let c: OuterChoice = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("mother:rs".parse::<OuterChoice>().is_err());
        assert!("mother:parity:2".parse::<OuterChoice>().is_err());
        assert!("bogus".parse::<OuterChoice>().is_err());
    }

    #[test]
    fn frontier_drops_dominated() {
        let f = frontier([(0, 9), (1, 7), (1, 8), (2, 5), (3, 5), (4, 1)]);
        assert_eq!(f, vec![(0, 9), (1, 8), (3, 5), (4, 1)]);
    }

    #[test]
    fn mother_outer_with_zero_width_symbol() {
        let f2 = Field::prime(2).unwrap();
        let a = build_outer(&f2, OuterChoice::Mother(CodeFamily::Parity), &[0, 1, 2]).unwrap().unwrap();
        assert_eq!(a.dimension(), 1);
        assert_eq!(a.min_block_distance().unwrap(), 2);
        assert!(build_outer(&f2, OuterChoice::Mother(CodeFamily::Repetition), &[0, 1, 2]).unwrap().is_none());
    }

    #[test]
    fn small_search_finds_rep_full() {
        let space = WeightedSpace::new(2, vec![3, 3], vec![1, 2]).unwrap();
        let menu = SearchMenu {
            inner: vec![CodeFamily::Repetition, CodeFamily::Full],
            outer: vec![OuterChoice::Full],
            max_levels: 1,
        };
        let res = search(&space, &menu).unwrap();
        let ex4 = res
            .candidates
            .iter()
            .find(|c| c.chains == vec![vec![Some(CodeFamily::Repetition)], vec![Some(CodeFamily::Full)]])
            .unwrap();
        assert_eq!((ex4.dimension, ex4.designed_distance, ex4.capability_bound), (4, 2, 1));
        assert!(res.t_frontier.contains(&(1, 4)));
        let gcc = assemble(&space, ex4).unwrap();
        assert_eq!(gcc.dimension(), 4);
    }
}
