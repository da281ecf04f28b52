//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whm::code::{named_code, CodeFamily, LinearCode, NestedChain, PolyalphabeticCode};
use whm::construct::GccCode;
use whm::{Field, WeightProfile, WeightedSpace};

/// Blocks (7,7,7), weights (1,2,3): inner Hamming, full, full under a full outer code.
pub fn hamming_full_full() -> GccCode {
    let f2 = Field::prime(2).unwrap();
    let space = WeightedSpace::new(2, vec![7, 7, 7], vec![1, 2, 3]).unwrap();
    let chains = vec![
        NestedChain::new(vec![named_code(CodeFamily::Hamming, &f2, 7, 4).unwrap()]).unwrap(),
        NestedChain::new(vec![LinearCode::full(f2.clone(), 7)]).unwrap(),
        NestedChain::new(vec![LinearCode::full(f2.clone(), 7)]).unwrap(),
    ];
    GccCode::build(space, chains, vec![PolyalphabeticCode::full(f2, vec![4, 7, 7]).unwrap()]).unwrap()
}

/// Every block profile of `space`.
pub fn all_profiles(space: &WeightedSpace) -> Vec<WeightProfile> {
    let mut out = vec![Vec::new()];
    for &n in space.blocks() {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..=n).map(move |w| [p.clone(), vec![w]].concat())).collect();
    }
    out.into_iter().map(WeightProfile).collect()
}

/// Random words of length `n` over `F_q`, fixed by `seed`.
pub fn random_words(q: u32, n: usize, count: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect()
}
