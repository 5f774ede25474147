#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dioph::oracle::CompiledPoly;
use dioph::poly::{Assignment, Polynomial};
use dioph::reduce::naturals_to_integers;

/// A random polynomial with at most `terms` terms over `vars`, total degree
/// at most `max_degree` and coefficients in `[-coeff, coeff]`.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[&str], max_degree: u32, coeff: i64, terms: usize) -> Polynomial {
    let mut list: Vec<(BigInt, Vec<(&str, u32)>)> = Vec::new();
    for _ in 0..terms {
        let c = rng.gen_range(-coeff..=coeff);
        let mut left = rng.gen_range(0..=max_degree);
        let mut factors = Vec::new();
        for v in vars {
            if left == 0 {
                break;
            }
            let e = rng.gen_range(0..=left);
            left -= e;
            factors.push((*v, e));
        }
        list.push((BigInt::from(c), factors));
    }
    Polynomial::from_named_terms(list)
}

pub fn cube(v: i64) -> i64 {
    v * v * v
}

/// Integer triples `(a, b, c)` with `a² + b² + c² + c ≤ bound`.
pub fn preimage_triples(bound: i64, nonnegative: bool) -> Vec<[i64; 3]> {
    let r = (bound as f64).sqrt() as i64 + 1;
    let lo = if nonnegative { 0 } else { -r - 1 };
    let mut out = Vec::new();
    for a in lo..=r {
        for b in lo..=r {
            for c in lo..=r {
                if a * a + b * b + c * c + c <= bound {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Roots of the reduced target whose every lifted value lies in `[0, bound]`.
pub fn target_roots(p: &Polynomial, triples: &[[i64; 3]], cap: usize) -> Vec<Assignment> {
    let red = naturals_to_integers(p);
    let compiled = CompiledPoly::new(&red.target);
    let slots: Vec<[usize; 3]> = red
        .var_map
        .iter()
        .map(|names| names.each_ref().map(|n| red.target.var_index(n).unwrap()))
        .collect();
    let n = slots.len();
    let mut choice = vec![0usize; n];
    let mut point = vec![0i64; red.target.num_vars()];
    let mut found = Vec::new();
    loop {
        for (slot, &k) in slots.iter().zip(&choice) {
            for (i, v) in slot.iter().zip(triples[k]) {
                point[*i] = v;
            }
        }
        if compiled.is_root(&point) {
            found.push(Assignment::from_i64s(&point));
            if found.len() >= cap {
                return found;
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < triples.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
