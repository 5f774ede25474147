//! Reductions between solvability over ℕ and over ℤ.
//!
//! ℕ → ℤ: every natural number has the form `a² + b² + c² + c`, and every
//! value of that form is natural, so `p(x₁,…,xₙ)` has a root in ℕ iff the
//! substituted polynomial in `3n` variables has a root in ℤ.
//!
//! ℤ → ℕ: `p` has an integer root iff one of its `2ⁿ` sign variants
//! `p(±x₁,…,±xₙ)` has a natural root.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::Factorizer;
use crate::poly::{Assignment, Polynomial};

/// Default bound on the variable count for [`integers_to_naturals`].
pub const DEFAULT_SIGN_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("expected an assignment of {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the assignment is not a root of the target polynomial (value {0})")]
    NotARoot(BigInt),
    #[error("{vars} variables would produce 2^{vars} sign variants (cap is {cap})")]
    TooManyVariables { vars: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NtoZReduction {
    pub source: Polynomial,
    pub target: Polynomial,
    /// For each source variable (in source order), its three target variables.
    pub var_map: Vec<[String; 3]>,
}

/// `a² + b² + c² + c` over the named variables.
fn three_squares_form(names: &[String; 3]) -> Polynomial {
    let [a, b, c] = names;
    let va = Polynomial::var(a);
    let vb = Polynomial::var(b);
    let vc = Polynomial::var(c);
    &(&(&(&va * &va) + &(&vb * &vb)) + &(&vc * &vc)) + &vc
}

pub fn naturals_to_integers(p: &Polynomial) -> NtoZReduction {
    let var_map: Vec<[String; 3]> = p
        .var_names()
        .iter()
        .map(|v| [1, 2, 3].map(|k| format!("{v}_{k}")))
        .collect();
    // Placeholders cannot clash with parsed names, which start with a letter.
    let placeholders: Vec<String> = (0..p.num_vars()).map(|i| format!("_{i}")).collect();
    let mut target = p.rename(|name| {
        let i = p.var_index(name).expect("renaming only visits occurring names");
        placeholders[i].clone()
    });
    for (slot, triple) in placeholders.iter().zip(&var_map) {
        target = target
            .substitute(slot, &three_squares_form(triple))
            .expect("placeholder occurs in the renamed polynomial");
    }
    NtoZReduction {
        source: p.clone(),
        target,
        var_map,
    }
}

impl NtoZReduction {
    /// Maps a target assignment (in target variable order) to the source.
    pub fn lift_witness(&self, t: &Assignment) -> Result<Assignment, ReduceError> {
        let names = self.target.var_names();
        if t.len() != names.len() {
            return Err(ReduceError::DimensionMismatch {
                expected: names.len(),
                got: t.len(),
            });
        }
        let value = self.target.evaluate(t).expect("dimension checked above");
        if !value.is_zero() {
            return Err(ReduceError::NotARoot(value));
        }
        Ok(Assignment::new(
            self.var_map
                .iter()
                .map(|triple| {
                    let [a, b, c] = triple.each_ref().map(|name| {
                        let i = self.target.var_index(name).expect("target uses every triple");
                        &t.values()[i]
                    });
                    a * a + b * b + c * c + c
                })
                .collect(),
        ))
    }

    /// Target assignment for a source assignment with natural entries.
    pub fn lower_witness(&self, s: &Assignment) -> Result<Assignment, ReduceError> {
        if s.len() != self.var_map.len() {
            return Err(ReduceError::DimensionMismatch {
                expected: self.var_map.len(),
                got: s.len(),
            });
        }
        let mut t = vec![BigInt::zero(); self.target.num_vars()];
        for (value, triple) in s.values().iter().zip(&self.var_map) {
            let m = value
                .to_biguint()
                .ok_or_else(|| ReduceError::NotARoot(value.clone()))?;
            let (x1, x2, x3) = three_squares_plus(&m);
            for (name, v) in triple.iter().zip([x1, x2, x3]) {
                t[self.target.var_index(name).expect("target uses every triple")] = v;
            }
        }
        Ok(Assignment::new(t))
    }
}

/// The `2ⁿ` sign variants of `p` in binary counting order; bit `i` of the
/// index (most significant first) negates the `i`-th variable.
pub fn integers_to_naturals(p: &Polynomial, cap: usize) -> Result<Vec<Polynomial>, ReduceError> {
    let n = p.num_vars();
    if n > cap || n >= usize::BITS as usize {
        return Err(ReduceError::TooManyVariables { vars: n, cap });
    }
    let names = p.var_names().to_vec();
    let mut out = Vec::with_capacity(1 << n);
    for index in 0..(1usize << n) {
        let mut q = p.clone();
        for (i, name) in names.iter().enumerate() {
            if sign_bit(index, i, n) {
                q = q
                    .substitute(name, &-Polynomial::var(name))
                    .expect("variable occurs in p");
            }
        }
        out.push(q);
    }
    Ok(out)
}

fn sign_bit(index: usize, i: usize, n: usize) -> bool {
    (index >> (n - 1 - i)) & 1 == 1
}

/// Maps a natural root of variant `index` back to an integer root of `p`.
///
/// Sign variants keep every variable of `p`, so the assignment is in
/// `p`'s variable order.
pub fn sign_variant_witness(index: usize, w: &Assignment) -> Assignment {
    let n = w.len();
    Assignment::new(
        w.values()
            .iter()
            .enumerate()
            .map(|(i, v)| if sign_bit(index, i, n) { -v } else { v.clone() })
            .collect(),
    )
}

/// Legendre: `x` is a sum of three squares iff it is not `4ᵃ(8b + 7)`.
pub fn is_sum_of_three_squares(x: &BigUint) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut y = x.clone();
    let four = BigUint::from(4u32);
    while (&y % &four).is_zero() {
        y /= &four;
    }
    &y % 8u32 != BigUint::from(7u32)
}

/// Some `(x₁, x₂, x₃)` with `x₁² + x₂² + x₃² + x₃ = m`.
///
/// Writes `4m + 1 = (2x₁)² + (2x₂)² + z²` with `z = 2x₃ + 1` odd, trying
/// `z = 1, 3, 5, …` and, for each, `x₂ = 0, 1, …` up to `x₁ ≥ x₂`. The
/// first hit is returned, so the answer is deterministic.
pub fn three_squares_plus(m: &BigUint) -> (BigInt, BigInt, BigInt) {
    let target = m * 4u32 + 1u32;
    let mut z = BigUint::one();
    loop {
        let zz = &z * &z;
        if zz > target {
            unreachable!("every natural number has the form a^2 + b^2 + c^2 + c");
        }
        let rest = &target - &zz;
        // z is odd, so 4m + 1 - z^2 is divisible by 4.
        let half = &rest >> 2usize;
        if let Some((x1, x2)) = two_squares(&half) {
            let x3 = (&z - 1u32) >> 1usize;
            return (BigInt::from(x1), BigInt::from(x2), BigInt::from(x3));
        }
        z += 2u32;
    }
}

/// Values below this are split by a direct scan over `x₂`.
const TWO_SQUARES_SCAN_LIMIT: u64 = 1 << 24;

/// `n = x₁² + x₂²` with `x₁ ≥ x₂ ≥ 0`, smallest `x₂` first.
fn two_squares(n: &BigUint) -> Option<(BigUint, BigUint)> {
    if *n < BigUint::from(TWO_SQUARES_SCAN_LIMIT) {
        return two_squares_scan(n);
    }
    if has_odd_three_mod_four_part(n) {
        return None;
    }
    all_two_squares(n)
        .into_iter()
        .min_by(|a, b| a.1.cmp(&b.1))
}

const SMALL_ODD_PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Cheap sufficient test for `n` not being a sum of two squares: a small
/// prime `p ≡ 3 (mod 4)` to an odd power, or a cofactor `≡ 3 (mod 4)` left
/// after removing small primes.
fn has_odd_three_mod_four_part(n: &BigUint) -> bool {
    let mut m = n >> n.trailing_zeros().unwrap_or(0) as usize;
    for p in SMALL_ODD_PRIMES {
        let mut e = 0u32;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if p % 4 == 3 && e % 2 == 1 {
            return true;
        }
    }
    &m % 4u32 == BigUint::from(3u32)
}

fn two_squares_scan(n: &BigUint) -> Option<(BigUint, BigUint)> {
    let mut x2 = BigUint::zero();
    loop {
        let x2sq = &x2 * &x2;
        if &x2sq * 2u32 > *n {
            return None;
        }
        let rest = n - &x2sq;
        let x1 = rest.sqrt();
        if &x1 * &x1 == rest {
            return Some((x1, x2));
        }
        x2 += 1u32;
    }
}

/// Every `(x₁, x₂)` with `x₁ ≥ x₂ ≥ 0` and `x₁² + x₂² = n`, built from the
/// factorization of `n` as products of Gaussian primes.
fn all_two_squares(n: &BigUint) -> Vec<(BigUint, BigUint)> {
    if n.is_zero() {
        return vec![(BigUint::zero(), BigUint::zero())];
    }
    let factors = Factorizer::default().factor(&BigInt::from(n.clone()));
    let mut reps: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero())];
    for (p, e) in factors {
        let residue = (&p % 4u32).to_u32().expect("residue below 4");
        let choices: Vec<(BigInt, BigInt)> = match residue {
            2 => vec![gauss_pow(&(BigInt::one(), BigInt::one()), e)],
            3 => {
                if e % 2 == 1 {
                    return Vec::new();
                }
                vec![(BigInt::from(p.pow(e / 2)), BigInt::zero())]
            }
            _ => {
                let pi = prime_as_two_squares(&p);
                let conj = (pi.0.clone(), -pi.1.clone());
                (0..=e)
                    .map(|k| gauss_mul(&gauss_pow(&pi, k), &gauss_pow(&conj, e - k)))
                    .collect()
            }
        };
        reps = reps
            .iter()
            .flat_map(|r| choices.iter().map(move |c| gauss_mul(r, c)))
            .collect();
    }
    let mut out: Vec<(BigUint, BigUint)> = reps
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (a.magnitude().clone(), b.magnitude().clone());
            if a >= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn gauss_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gauss_pow(a: &(BigInt, BigInt), e: u32) -> (BigInt, BigInt) {
    (0..e).fold((BigInt::one(), BigInt::zero()), |acc, _| gauss_mul(&acc, a))
}

/// `(a, b)` with `a² + b² = p` for a prime `p ≡ 1 (mod 4)` (Hermite-Serret).
fn prime_as_two_squares(p: &BigUint) -> (BigInt, BigInt) {
    let exp = (p - 1u32) >> 2usize;
    let minus_one = p - 1u32;
    let mut c = BigUint::from(2u32);
    let t = loop {
        let t = c.modpow(&exp, p);
        if (&t * &t) % p == minus_one {
            break t;
        }
        c += 1u32;
    };
    let (mut r0, mut r1) = (p.clone(), t);
    while &r1 * &r1 > *p {
        let r2 = &r0 % &r1;
        r0 = r1;
        r1 = r2;
    }
    let b = (p - &r1 * &r1).sqrt();
    (BigInt::from(r1), BigInt::from(b))
}
