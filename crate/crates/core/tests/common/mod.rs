#![allow(dead_code)]

use whm::code::{named_code, CodeFamily, LinearCode, NestedChain, PolyalphabeticCode};
use whm::construct::{poly_from_mother, GccCode};
use whm::{Field, WeightedSpace};

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

pub fn code(field: &Field, rows: &[&[u32]]) -> LinearCode {
    LinearCode::new(field.clone(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Parity-check [3,2,2] mother over F_{q^2}, symbol sizes (1,2,3).
pub fn parity_mother_123(q: u32) -> PolyalphabeticCode {
    let ext = Field::extension(q, 2).unwrap();
    let mother = named_code(CodeFamily::Parity, &ext, 3, 2).unwrap();
    poly_from_mother(&mother, &[1, 2, 3]).unwrap()
}

/// Blocks (3,3,3), weights (1,2,3), inner repetition/parity/full, outer from `parity_mother_123`.
pub fn rep_parity_full_gcc() -> GccCode {
    let space = WeightedSpace::new(2, vec![3, 3, 3], vec![1, 2, 3]).unwrap();
    let chains = [(CodeFamily::Repetition, 1), (CodeFamily::Parity, 2), (CodeFamily::Full, 3)]
        .iter()
        .map(|&(fam, k)| NestedChain::new(vec![named_code(fam, &f2(), 3, k).unwrap()]).unwrap())
        .collect();
    GccCode::build(space, chains, vec![parity_mother_123(2)]).unwrap()
}

/// Blocks (3,3), weights (1,2), inner repetition and full, outer the full space.
pub fn rep_full_gcc() -> GccCode {
    let space = WeightedSpace::new(2, vec![3, 3], vec![1, 2]).unwrap();
    let chains = vec![
        NestedChain::new(vec![named_code(CodeFamily::Repetition, &f2(), 3, 1).unwrap()]).unwrap(),
        NestedChain::new(vec![LinearCode::full(f2(), 3)]).unwrap(),
    ];
    GccCode::build(space, chains, vec![PolyalphabeticCode::full(f2(), vec![1, 3]).unwrap()]).unwrap()
}

/// Two-level binary [9,3] code on blocks (6,3) with weights (1,2).
pub fn two_level() -> GccCode {
    let f = f2();
    let space = WeightedSpace::new(2, vec![6, 3], vec![1, 2]).unwrap();
    let block1 =
        NestedChain::new(vec![code(&f, &[&[1, 1, 1, 1, 1, 1], &[1, 1, 1, 0, 0, 0]]), code(&f, &[&[1, 1, 1, 1, 1, 1]])])
            .unwrap();
    let block2 = NestedChain::new(vec![LinearCode::full(f.clone(), 3), code(&f, &[&[1, 1, 1]])]).unwrap();
    let a1 = PolyalphabeticCode::new(f.clone(), vec![1, 2], &[vec![1, 1, 0]]).unwrap();
    let a2 = PolyalphabeticCode::full(f, vec![1, 1]).unwrap();
    GccCode::build(space, vec![block1, block2], vec![a1, a2]).unwrap()
}

/// Blocks (7,7,7), weights (1,2,3), inner Hamming [7,4,3]/full/full, full outer.
pub fn hamming_full_full() -> GccCode {
    let space = WeightedSpace::new(2, vec![7, 7, 7], vec![1, 2, 3]).unwrap();
    let chains = vec![
        NestedChain::new(vec![named_code(CodeFamily::Hamming, &f2(), 7, 4).unwrap()]).unwrap(),
        NestedChain::new(vec![LinearCode::full(f2(), 7)]).unwrap(),
        NestedChain::new(vec![LinearCode::full(f2(), 7)]).unwrap(),
    ];
    GccCode::build(space, chains, vec![PolyalphabeticCode::full(f2(), vec![4, 7, 7]).unwrap()]).unwrap()
}

/// Reed-Solomon [6,3] over F_7 with its space (3,3), weights (1,2).
pub fn rs63() -> (LinearCode, WeightedSpace) {
    let f7 = Field::prime(7).unwrap();
    (named_code(CodeFamily::ReedSolomon, &f7, 6, 3).unwrap(), WeightedSpace::new(7, vec![3, 3], vec![1, 2]).unwrap())
}

/// The GCC instances used across the integration tests.
pub fn all_gccs() -> Vec<(&'static str, GccCode)> {
    vec![
        ("rep_parity_full", rep_parity_full_gcc()),
        ("rep_full", rep_full_gcc()),
        ("two_level", two_level()),
        ("hamming_full_full", hamming_full_full()),
    ]
}
