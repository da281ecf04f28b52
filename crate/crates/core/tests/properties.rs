mod common;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whm::bounds::{self, covering_bound, lp_bound, packing_bound, singleton_k_for_t};
use whm::code::{named_code, CodeFamily, LinearCode};
use whm::oracle::{self, OracleLimits};
use whm::ratlp::{self, rat, LpOutcome, Rational, RationalLp, Relation};
use whm::{Error, Field, WeightedSpace};

fn space_strategy(max_blocks: usize, max_len: usize) -> impl Strategy<Value = WeightedSpace> {
    (prop::sample::select(vec![2u32, 3, 7]), prop::collection::vec((1..=max_len, 1u64..=5), 1..=max_blocks)).prop_map(
        |(q, mut blocks)| {
            blocks.sort_by_key(|b| b.1);
            let (n, l): (Vec<usize>, Vec<u64>) = blocks.into_iter().unzip();
            WeightedSpace::new(q, n, l).unwrap()
        },
    )
}

fn space_and_vector(max_blocks: usize, max_len: usize) -> impl Strategy<Value = (WeightedSpace, Vec<u32>)> {
    space_strategy(max_blocks, max_len).prop_flat_map(|s| {
        let v = prop::collection::vec(0..s.q(), s.length());
        (Just(s), v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn tau_matches_split_enumeration((space, v) in space_and_vector(4, 3)) {
        prop_assert!(space.length() <= 12);
        prop_assert_eq!(space.vector_tau(&v).unwrap(), oracle::tau_by_splits(&space, &v).unwrap());
    }

    #[test]
    fn tau_bracket((space, v) in space_and_vector(4, 3)) {
        let w = space.vector_weight(&v).unwrap() as i64;
        let tau = space.vector_tau(&v).unwrap();
        if w == 0 {
            prop_assert_eq!(tau, -1);
        } else {
            prop_assert!((w - 1) / 2 <= tau);
            prop_assert!(tau < (w + space.lambda_max() as i64) / 2);
        }
    }
}

#[test]
fn ball_size_matches_ambient_enumeration() {
    let lim = OracleLimits::default();
    let shapes: &[(&[usize], &[u64])] =
        &[(&[10], &[1]), (&[5, 5], &[1, 2]), (&[3, 3, 4], &[1, 2, 3]), (&[2, 3, 5], &[1, 1, 4]), (&[7, 3], &[2, 3])];
    for q in [2, 3] {
        for &(n, l) in shapes {
            let space = WeightedSpace::new(q, n.to_vec(), l.to_vec()).unwrap();
            let top = space.weighted_weight(&whm::WeightProfile(n.to_vec()));
            for t in 0..=top + 1 {
                let count = oracle::ambient_ball_count(&space, t, &lim).unwrap();
                assert_eq!(space.ball_size(t), count.into(), "q={q} n={n:?} t={t}");
            }
        }
    }
}

#[test]
fn diff_ball_matches_pair_enumeration() {
    let lim = OracleLimits::default();
    let cases: &[(u32, &[usize], &[u64], u64)] = &[
        (2, &[4, 4], &[1, 2], 4),
        (2, &[3, 3, 2], &[1, 2, 3], 4),
        (2, &[8], &[1], 3),
        (3, &[4, 4], &[1, 2], 3),
        (3, &[2, 3, 3], &[1, 1, 3], 3),
        (7, &[3, 3], &[1, 2], 3),
        (7, &[2, 2, 2], &[1, 2, 3], 3),
        (7, &[4, 4], &[1, 3], 2),
    ];
    let mut checked = 0;
    for &(q, n, l, tmax) in cases {
        let space = WeightedSpace::new(q, n.to_vec(), l.to_vec()).unwrap();
        for t in 1..=tmax {
            let brute = match oracle::diff_ball_profiles_by_pairs(&space, t, &lim) {
                Ok(b) => b,
                Err(Error::ExhaustionRefused { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let fast: BTreeSet<_> = space.diff_ball_profiles(t).into_iter().collect();
            assert_eq!(fast, brute, "q={q} n={n:?} t={t}");
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} cases fit the limits");
}

#[test]
fn diff_ball_small_example() {
    let space = WeightedSpace::new(2, vec![7, 7], vec![1, 2]).unwrap();
    assert_eq!(space.diff_ball_size(1), 29u32.into());
}

fn random_code(rng: &mut ChaCha8Rng, field: &Field, n: usize, k: usize) -> LinearCode {
    loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..field.order())).collect()).collect();
        if let Ok(c) = LinearCode::new(field.clone(), &rows) {
            if c.dimension() > 0 {
                return c;
            }
        }
    }
}

#[test]
fn syndrome_decoder_agrees_with_exhaustive() {
    let f2 = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..n);
        let code = random_code(&mut rng, &f2, n, k);
        for r in 0u32..(1 << n) {
            let v: Vec<u32> = (0..n).map(|i| (r >> i) & 1).collect();
            assert_eq!(
                code.bmd_decode(&v).unwrap(),
                code.bmd_decode_exhaustive(&v).unwrap(),
                "{:?} {v:?}",
                code.generator()
            );
        }
    }
}

#[test]
fn bmd_round_trip_within_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [2u32, 3, 5, 7] {
        let field = Field::prime(q).unwrap();
        for _ in 0..15 {
            let n = rng.gen_range(3..=8);
            let k = rng.gen_range(1..n);
            let code = random_code(&mut rng, &field, n, k);
            let radius = code.decoding_radius().unwrap();
            for _ in 0..20 {
                let msg: Vec<u32> = (0..code.dimension()).map(|_| rng.gen_range(0..q)).collect();
                let c = code.encode(&msg).unwrap();
                let mut r = c.clone();
                let mut pos: Vec<usize> = (0..n).collect();
                for i in 0..radius {
                    let j = rng.gen_range(i..n);
                    pos.swap(i, j);
                    r[pos[i]] = (r[pos[i]] + rng.gen_range(1..q)) % q;
                }
                assert_eq!(code.bmd_decode(&r).unwrap(), Some(c));
            }
        }
    }
}

#[test]
fn krawtchouk_rows_nonnegative_on_true_enumerators() {
    let lim = OracleLimits::default();
    let (rs, rs_space) = common::rs63();
    let g = common::rep_full_gcc();
    let cases = vec![(rs, rs_space), (g.to_linear_code().unwrap(), g.space().clone())];
    for (code, space) in cases {
        let t = oracle::exact_capability(&code, &space, &lim).unwrap() as u64;
        let enumerator = oracle::block_weight_enumerator(&code, &space, &lim).unwrap();
        for tt in 0..=t {
            let (profiles, lp) = bounds::lp_program(&space, tt);
            let x: Vec<Rational> =
                profiles.iter().map(|p| rat(enumerator.get(p).copied().unwrap_or(0) as i64)).collect();
            assert!(lp.is_feasible(&x), "t={tt}");
            let size: u64 = enumerator.values().sum();
            assert!(bounds::lp_optimum(&space, tt).unwrap() >= rat(size as i64));
        }
    }
}

fn bound_grid() -> Vec<WeightedSpace> {
    vec![
        WeightedSpace::new(2, vec![7, 7], vec![1, 2]).unwrap(),
        WeightedSpace::new(7, vec![7, 7], vec![1, 2]).unwrap(),
        WeightedSpace::new(2, vec![3, 3, 3], vec![1, 2, 3]).unwrap(),
        WeightedSpace::new(3, vec![3, 3, 3], vec![1, 2, 3]).unwrap(),
        WeightedSpace::new(3, vec![2, 3], vec![1, 3]).unwrap(),
        WeightedSpace::new(2, vec![6], vec![1]).unwrap(),
    ]
}

#[test]
fn bound_orderings_and_monotonicity() {
    for space in bound_grid() {
        let top = space.weighted_weight(&whm::WeightProfile(space.blocks().to_vec()));
        let mut prev: Option<[usize; 4]> = None;
        for t in 0..=top / 2 + 1 {
            let row = [
                packing_bound(&space, t),
                singleton_k_for_t(&space, t),
                lp_bound(&space, t).unwrap(),
                covering_bound(&space, t),
            ];
            let [p, s, l, c] = row;
            assert!(c <= p && c <= s && c <= l, "{space:?} t={t}: {row:?}");
            if let Some(prev) = prev {
                assert!(prev.iter().zip(&row).all(|(a, b)| a >= b), "{space:?} t={t}: {prev:?} -> {row:?}");
            }
            prev = Some(row);
        }
    }
}

#[test]
fn singleton_is_independent_of_q() {
    for k in 1..=14 {
        let a = WeightedSpace::new(2, vec![7, 7], vec![1, 2]).unwrap();
        let b = WeightedSpace::new(7, vec![7, 7], vec![1, 2]).unwrap();
        assert_eq!(bounds::singleton_bound(&a, k).unwrap(), bounds::singleton_bound(&b, k).unwrap());
    }
}

#[test]
fn hamming_metric_reduction() {
    let space = WeightedSpace::new(2, vec![7], vec![1]).unwrap();
    // sphere packing, Gilbert-Varshamov and Singleton for binary length 7
    assert_eq!([packing_bound(&space, 1), covering_bound(&space, 1), singleton_k_for_t(&space, 1)], [4, 3, 5]);
    assert_eq!([packing_bound(&space, 2), covering_bound(&space, 2), singleton_k_for_t(&space, 2)], [2, 1, 3]);
    assert_eq!(lp_bound(&space, 1).unwrap(), 4);
}

#[test]
fn mds_codes_meet_singleton() {
    let f7 = Field::prime(7).unwrap();
    let space = WeightedSpace::new(7, vec![3, 3], vec![1, 2]).unwrap();
    for k in 1..=5 {
        let rs = named_code(CodeFamily::ReedSolomon, &f7, 6, k).unwrap();
        let t = oracle::exact_capability(&rs, &space, &OracleLimits::default()).unwrap();
        assert_eq!(t, bounds::singleton_bound(&space, k).unwrap(), "k={k}");
    }
}

// ---- exact LP solver against vertex enumeration ----

fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = Rational::one() / &m[col][col];
        for x in &mut m[col] {
            *x = &*x * &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Best objective over all basic feasible points, or `None` if there are none.
fn vertex_optimum(lp: &RationalLp) -> Option<Rational> {
    let n = lp.vars();
    let mut planes: Vec<(Vec<Rational>, Rational)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        planes.push((e, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            if lp.is_feasible(&x) {
                let v: Rational = lp.objective.iter().zip(&x).map(|(c, x)| c * x).sum();
                if best.as_ref().is_none_or(|b| &v > b) {
                    best = Some(v);
                }
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                return best;
            }
            j -= 1;
            if idx[j] < planes.len() - n + j {
                idx[j] += 1;
                for i in j + 1..n {
                    idx[i] = idx[i - 1] + 1;
                }
                break;
            }
        }
    }
}

fn random_lp(rng: &mut ChaCha8Rng) -> RationalLp {
    let vars = rng.gen_range(1..=8);
    let cons = rng.gen_range(1..=if vars <= 4 { 12 } else { 6 });
    let obj = (0..vars).map(|_| rat(rng.gen_range(-3..=6))).collect();
    let mut lp = RationalLp::new(vars).maximize(obj);
    for _ in 0..cons {
        let coeffs = (0..vars).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let relation = match rng.gen_range(0..10) {
            0 => Relation::Eq,
            1..=3 => Relation::Ge,
            _ => Relation::Le,
        };
        lp.add(coeffs, relation, rat(rng.gen_range(-10..=20)));
    }
    lp.add(vec![rat(1); vars], Relation::Le, rat(20));
    lp
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut optimal, mut infeasible) = (0, 0);
    for case in 0..200 {
        let lp = random_lp(&mut rng);
        let got = ratlp::solve_max(&lp).unwrap();
        match (vertex_optimum(&lp), got) {
            (Some(v), LpOutcome::Optimal { value, witness }) => {
                assert_eq!(value, v, "case {case}");
                assert!(lp.is_feasible(&witness));
                optimal += 1;
            }
            (None, LpOutcome::Infeasible) => infeasible += 1,
            (want, got) => panic!("case {case}: vertex enumeration {want:?}, solver {got:?}"),
        }
    }
    assert!(optimal >= 50 && infeasible >= 5, "{optimal} optimal, {infeasible} infeasible");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_invariant_under_row_scaling(seed in any::<u64>(), scales in prop::collection::vec((1i64..=9, 1i64..=9, any::<bool>()), 13)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lp = random_lp(&mut rng);
        let mut scaled = lp.clone();
        for (c, &(num, den, neg)) in scaled.constraints.iter_mut().zip(&scales) {
            let mut f = Rational::new(num.into(), den.into());
            if neg {
                f = -f;
                c.relation = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            prop_assert!(!f.is_negative() || neg);
            c.coeffs = c.coeffs.iter().map(|x| x * &f).collect();
            c.rhs = &c.rhs * &f;
        }
        let a = ratlp::solve_max(&lp).unwrap();
        let b = ratlp::solve_max(&scaled).unwrap();
        prop_assert_eq!(a.value(), b.value());
        prop_assert_eq!(matches!(a, LpOutcome::Infeasible), matches!(b, LpOutcome::Infeasible));
    }
}
