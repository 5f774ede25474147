mod common;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dioph::oracle::{box_search, BoxQuery, Domain};
use dioph::poly::Assignment;
use dioph::reduce::{
    integers_to_naturals, is_sum_of_three_squares, naturals_to_integers, sign_variant_witness, three_squares_plus,
    DEFAULT_SIGN_CAP,
};

use common::{preimage_triples, random_poly, target_roots};

fn check_three_squares_plus(m: &BigUint) {
    let (a, b, c) = three_squares_plus(m);
    assert_eq!(&a * &a + &b * &b + &c * &c + &c, BigInt::from(m.clone()), "m={m}");
}

proptest! {
    #[test]
    fn three_squares_plus_verifies(m in 0u64..=u64::MAX) {
        check_three_squares_plus(&BigUint::from(m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_squares_plus_verifies_beyond_64_bits(hi in 1u64..=1 << 20, lo in 0u64..=u64::MAX) {
        let m = (BigUint::from(hi) << 64u32) + BigUint::from(lo);
        check_three_squares_plus(&m);
    }
}

#[test]
fn legendre_matches_exhaustive_search() {
    const LIMIT: usize = 10_000;
    let mut hit = vec![false; LIMIT + 1];
    for a in 0..=100usize {
        for b in a..=100 {
            for c in b..=100 {
                let s = a * a + b * b + c * c;
                if s <= LIMIT {
                    hit[s] = true;
                }
            }
        }
    }
    for (x, expected) in hit.iter().enumerate() {
        assert_eq!(is_sum_of_three_squares(&BigUint::from(x)), *expected, "x={x}");
    }
}

#[test]
fn naturals_to_integers_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let full = preimage_triples(6, false);
    let small = preimage_triples(6, true);
    for _ in 0..150 {
        let nv = rng.gen_range(1..=3);
        let terms = rng.gen_range(1..=5);
        let p = random_poly(&mut rng, &["x", "y", "z"][..nv], 3, 5, terms);
        if p.num_vars() == 0 {
            continue;
        }
        let natural = !box_search(&BoxQuery::new(p.clone(), 6, Domain::Naturals).with_cap(1))
            .unwrap()
            .witnesses
            .is_empty();
        let triples = if p.num_vars() <= 2 { &full } else { &small };
        let roots = target_roots(&p, triples, usize::MAX);
        assert_eq!(natural, !roots.is_empty(), "{p}");
        let red = naturals_to_integers(&p);
        for t in roots.iter().take(20) {
            let s = red.lift_witness(t).unwrap();
            assert_eq!(p.evaluate(&s).unwrap(), BigInt::from(0));
            assert!(s.values().iter().all(|v| v >= &BigInt::from(0) && v <= &BigInt::from(6)));
        }
    }
}

#[test]
fn sign_variants_cover_the_integer_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let nv = rng.gen_range(1..=3);
        let terms = rng.gen_range(1..=5);
        let p = random_poly(&mut rng, &["x", "y", "z"][..nv], 3, 5, terms);
        if p.num_vars() == 0 {
            continue;
        }
        let direct: BTreeSet<Assignment> = box_search(&BoxQuery::new(p.clone(), 3, Domain::Integers))
            .unwrap()
            .witnesses
            .into_iter()
            .collect();
        let mut union = BTreeSet::new();
        for (i, q) in integers_to_naturals(&p, DEFAULT_SIGN_CAP).unwrap().iter().enumerate() {
            // Keep the variable order of p even if a variant dropped a variable.
            assert_eq!(q.var_names(), p.var_names());
            for w in box_search(&BoxQuery::new(q.clone(), 3, Domain::Naturals)).unwrap().witnesses {
                union.insert(sign_variant_witness(i, &w));
            }
        }
        assert_eq!(union, direct, "{p}");
    }
}
