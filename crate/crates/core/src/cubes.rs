//! Sums of three cubes `x³ + y³ + z³ = k`.
//!
//! Cubes are `0, ±1 (mod 9)`, so `k ≡ 4, 5 (mod 9)` has no solution. For
//! other `k` the search runs over `z` and uses
//! `x³ + y³ = (x + y)((x + y)² − 3xy)`: with `m = k − z³` and `s = x + y`,
//! `s` divides `m`, has the sign of `m`, satisfies `|s|³ ≤ 4|m|`, and
//! `xy = (s² − m/s)/3`, leaving a quadratic for `x`.
//!
//! The `bound` limits `|z|` only, and `z` may be any coordinate, so a
//! search with bound `B` finds every `k` having a solution with
//! `min(|x|, |y|, |z|) ≤ B`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{exact_sqrt, mod_floor, Factorizer};

pub fn mod9_obstructed(k: &BigInt) -> bool {
    let r = mod_floor(k, &BigInt::from(9));
    r == BigInt::from(4) || r == BigInt::from(5)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeOutcome {
    Obstructed,
    Found(BigInt, BigInt, BigInt),
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeResult {
    pub k: BigInt,
    pub outcome: CubeOutcome,
    pub bound: u64,
}

impl CubeResult {
    pub fn triple(&self) -> Option<(&BigInt, &BigInt, &BigInt)> {
        match &self.outcome {
            CubeOutcome::Found(x, y, z) => Some((x, y, z)),
            _ => None,
        }
    }
}

impl fmt::Display for CubeResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            CubeOutcome::Obstructed => write!(f, "k={}: obstructed (k = 4 or 5 mod 9)", self.k),
            CubeOutcome::Found(x, y, z) => write!(f, "k={}: ({x})^3 + ({y})^3 + ({z})^3", self.k),
            CubeOutcome::NotFound => write!(
                f,
                "k={}: no solution with min(|x|,|y|,|z|) <= {}",
                self.k, self.bound
            ),
        }
    }
}

/// `z = 0, −1, 1, −2, 2, …` up to `|z| ≤ bound`.
fn z_order(bound: u64) -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1..=bound).flat_map(|v| {
        let v = BigInt::from(v);
        [-v.clone(), v]
    }))
}

/// `(x, y)` with `x ≥ y` and `x³ + y³ = m ≠ 0`, trying `s = x + y` in
/// increasing `|s|`.
fn two_cubes(m: &BigInt, factorizer: &Factorizer) -> Option<(BigInt, BigInt)> {
    let limit = m.abs() * 4;
    for s in factorizer.divisors(m) {
        if &s * &s * &s > limit {
            break;
        }
        let s = if m.is_negative() { -s } else { s };
        let num = &s * &s - m / &s;
        if !num.is_multiple_of(&BigInt::from(3)) {
            continue;
        }
        let p = num / 3;
        let Some(r) = exact_sqrt(&(&s * &s - &p * 4)) else {
            continue;
        };
        let twice_x = &s + &r;
        if twice_x.is_odd() {
            continue;
        }
        let x = twice_x / 2;
        let y = &s - &x;
        return Some((x, y));
    }
    None
}

pub fn search_three_cubes(k: &BigInt, bound: u64) -> CubeResult {
    if mod9_obstructed(k) {
        return CubeResult {
            k: k.clone(),
            outcome: CubeOutcome::Obstructed,
            bound,
        };
    }
    let factorizer = Factorizer::default();
    for z in z_order(bound) {
        let m = k - &z * &z * &z;
        let found = if m.is_zero() {
            Some((BigInt::zero(), BigInt::zero()))
        } else {
            two_cubes(&m, &factorizer)
        };
        if let Some((x, y)) = found {
            debug_assert_eq!(&x * &x * &x + &y * &y * &y + &z * &z * &z, *k);
            return CubeResult {
                k: k.clone(),
                outcome: CubeOutcome::Found(x, y, z),
                bound,
            };
        }
    }
    CubeResult {
        k: k.clone(),
        outcome: CubeOutcome::NotFound,
        bound,
    }
}

/// One result per `k` in `1..=k_max`.
pub fn survey(k_max: u64, bound: u64) -> Vec<CubeResult> {
    (1..=k_max)
        .map(|k| search_three_cubes(&BigInt::from(k), bound))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn obstruction() {
        assert!(mod9_obstructed(&b(4)));
        assert!(!mod9_obstructed(&b(33)));
        assert!(mod9_obstructed(&b(-5)));
        let residues: std::collections::BTreeSet<i64> = (0..9i64)
            .flat_map(|a| (0..9i64).flat_map(move |b| (0..9i64).map(move |c| (a * a * a + b * b * b + c * c * c) % 9)))
            .collect();
        assert!(!residues.contains(&4) && !residues.contains(&5));
    }

    #[test]
    fn small_searches() {
        let r = search_three_cubes(&b(29), 10);
        assert_eq!(r.outcome, CubeOutcome::Found(b(3), b(1), b(1)));
        let r = search_three_cubes(&b(1), 10);
        assert_eq!(r.outcome, CubeOutcome::Found(b(1), b(0), b(0)));
        let r = search_three_cubes(&b(3), 10);
        assert_eq!(r.outcome, CubeOutcome::Found(b(1), b(1), b(1)));
        let r = search_three_cubes(&b(6), 100);
        let (x, y, z) = r.triple().unwrap();
        let mut got = vec![x.clone(), y.clone(), z.clone()];
        got.sort();
        assert_eq!(got, vec![b(-1), b(-1), b(2)]);
        assert_eq!(search_three_cubes(&b(0), 1).outcome, CubeOutcome::Found(b(0), b(0), b(0)));
        assert_eq!(search_three_cubes(&b(13), 1).outcome, CubeOutcome::Obstructed);
    }

    #[test]
    fn thirty_three_is_out_of_reach() {
        assert_eq!(search_three_cubes(&b(33), 10_000).outcome, CubeOutcome::NotFound);
    }

    #[test]
    fn small_survey() {
        let s = survey(10, 100);
        assert_eq!(s.len(), 10);
        assert_eq!(s[3].outcome, CubeOutcome::Obstructed);
        assert_eq!(s[4].outcome, CubeOutcome::Obstructed);
        assert_eq!(s[2].outcome, CubeOutcome::Found(b(1), b(1), b(1)));
        assert!(survey(0, 10).is_empty());
    }

    #[test]
    fn negative_targets() {
        let r = search_three_cubes(&b(-29), 10);
        let (x, y, z) = r.triple().unwrap();
        assert_eq!(x * x * x + y * y * y + z * z * z, b(-29));
    }

    #[test]
    fn matches_naive_loop() {
        let r = 12i64;
        let cube = |v: i64| v * v * v;
        for k in -60i64..=60 {
            let naive = (-r..=r).any(|x| (-r..=r).any(|y| (-r..=r).any(|z| cube(x) + cube(y) + cube(z) == k)));
            let res = search_three_cubes(&b(k), r as u64);
            if naive {
                assert!(res.triple().is_some(), "k={k}");
            }
            if let Some((x, y, z)) = res.triple() {
                assert_eq!(x * x * x + y * y * y + z * z * z, b(k));
            }
        }
    }
}
