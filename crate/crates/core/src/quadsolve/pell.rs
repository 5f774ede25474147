//! Pell and Pell-like equations `T² − D·U² = N` for non-square `D > 0`.
//!
//! Solutions come in classes `{±ρ·εᵏ : k ∈ ℤ}` where `ε = t₁ + u₁√D` is the
//! fundamental unit of norm 1. Class representatives are found with the
//! Lagrange-Matthews-Mollin method: for every `f` with `f² | N` and every
//! square root `z` of `D` modulo `|N/f²|`, the PQa continued fraction
//! started at `(z + √D)/|N/f²|` either reaches `Qᵢ = ±1`, yielding a
//! solution, or proves the class empty.
//!
//! Each class is reported by its canonical element: minimal `|U|`, then
//! `U ≥ 0` (or `T > 0` when `U = 0`), then largest `T`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{ext_gcd, isqrt, mod_floor, Factorizer};

pub type Pair = (BigInt, BigInt);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("D = {0} must be a positive non-square integer")]
    BadDiscriminant(BigInt),
}

fn check_discriminant(d: &BigInt) -> Result<BigInt, PellError> {
    if *d < BigInt::from(2) {
        return Err(PellError::BadDiscriminant(d.clone()));
    }
    let s = isqrt(d);
    if &s * &s == *d {
        return Err(PellError::BadDiscriminant(d.clone()));
    }
    Ok(s)
}

/// `(a₀, [a₁, …, a_ℓ])`: the continued fraction of `√D` with its period.
pub fn sqrt_continued_fraction(d: &BigInt) -> Result<(BigInt, Vec<BigInt>), PellError> {
    let a0 = check_discriminant(d)?;
    let two_a0 = &a0 * 2;
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut period = Vec::new();
    while a != two_a0 {
        m = &a * &q - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        period.push(a.clone());
    }
    Ok((a0, period))
}

/// The `k`-th convergent `p_k / q_k` of `√D`.
fn convergent(a0: &BigInt, period: &[BigInt], k: usize) -> Pair {
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for i in 1..=k {
        let a = &period[(i - 1) % period.len()];
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    (p, q)
}

/// Least `(t₁, u₁)` with `u₁ ≥ 1` and `t₁² − D·u₁² = 1`.
pub fn pell_fundamental(d: &BigInt) -> Result<Pair, PellError> {
    let (a0, period) = sqrt_continued_fraction(d)?;
    let l = period.len();
    let k = if l % 2 == 0 { l - 1 } else { 2 * l - 1 };
    Ok(convergent(&a0, &period, k))
}

/// Least positive solution of `t² − D·u² = −1`, if any.
pub fn negative_pell(d: &BigInt) -> Result<Option<Pair>, PellError> {
    let (a0, period) = sqrt_continued_fraction(d)?;
    let l = period.len();
    Ok((l % 2 == 1).then(|| convergent(&a0, &period, l - 1)))
}

/// `(T, U)·(t, u)` in `ℤ[√D]`.
pub fn mul(d: &BigInt, a: &Pair, b: &Pair) -> Pair {
    (&a.0 * &b.0 + d * &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `(T, U)·(t, u)ᵏ` for any integer `k` and a unit `(t, u)` of norm 1.
pub fn mul_pow(d: &BigInt, base: &Pair, unit: &Pair, k: i64) -> Pair {
    let step = if k >= 0 {
        unit.clone()
    } else {
        (unit.0.clone(), -&unit.1)
    };
    let mut acc = base.clone();
    let mut power = step;
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(d, &acc, &power);
        }
        e >>= 1;
        if e > 0 {
            power = mul(d, &power, &power);
        }
    }
    acc
}

/// Where a solution sits in its class: `input = sign·rep·εᵏ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPosition {
    pub rep: Pair,
    pub negated: bool,
    pub k: i64,
}

fn canonical_key(p: &Pair) -> (bool, BigInt) {
    let upper = p.1.is_positive() || (p.1.is_zero() && p.0.is_positive());
    (upper, p.0.clone())
}

/// Canonical class element of a solution with `N ≠ 0`.
///
/// `|U|` is unimodal along an orbit, so walking downhill from the input
/// reaches the minimum, which spans at most two consecutive elements.
pub fn canonicalize(d: &BigInt, unit: &Pair, p: &Pair) -> ClassPosition {
    if p.0.is_zero() && p.1.is_zero() {
        return ClassPosition {
            rep: p.clone(),
            negated: false,
            k: 0,
        };
    }
    let inverse = (unit.0.clone(), -&unit.1);
    let mut cur = p.clone();
    let mut k: i64 = 0;
    let (up, down) = loop {
        let up = mul(d, &cur, unit);
        let down = mul(d, &cur, &inverse);
        if up.1.magnitude() < cur.1.magnitude() {
            cur = up;
            k += 1;
        } else if down.1.magnitude() < cur.1.magnitude() {
            cur = down;
            k -= 1;
        } else {
            break (up, down);
        }
    };
    let mut candidates = vec![(cur.clone(), k)];
    if up.1.magnitude() == cur.1.magnitude() {
        candidates.push((up, k + 1));
    }
    if down.1.magnitude() == cur.1.magnitude() {
        candidates.push((down, k - 1));
    }
    let mut best: Option<(Pair, bool, i64)> = None;
    for (e, j) in candidates {
        for negated in [false, true] {
            let v = if negated { (-&e.0, -&e.1) } else { e.clone() };
            let better = match &best {
                None => true,
                Some((b, _, _)) => canonical_key(&v) > canonical_key(b),
            };
            if better {
                best = Some((v, negated, j));
            }
        }
    }
    let (rep, negated, j) = best.expect("at least one candidate");
    ClassPosition { rep, negated, k: -j }
}

/// Canonical representatives of every solution class of `T² − D·U² = N`.
pub fn solve_pell_like(d: &BigInt, n: &BigInt) -> Result<Vec<Pair>, PellError> {
    check_discriminant(d)?;
    if n.is_zero() {
        return Ok(vec![(BigInt::zero(), BigInt::zero())]);
    }
    let unit = pell_fundamental(d)?;
    let negative = negative_pell(d)?;
    let mut reps: Vec<Pair> = Vec::new();
    for f in square_divisors(n) {
        let m = n / (&f * &f);
        let am = m.abs();
        for z0 in sqrt_mod_all(d, &am) {
            let z = if &z0 * 2 > am { &z0 - &am } else { z0 };
            let Some((r, s)) = pqa_search(&z, &am, d) else {
                continue;
            };
            let value = &r * &r - d * &s * &s;
            let (r, s) = if value == m {
                (r, s)
            } else if let Some(neg) = &negative {
                mul(d, &(r, s), neg)
            } else {
                continue;
            };
            let rep = canonicalize(d, &unit, &(&f * r, &f * s)).rep;
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
    }
    reps.sort();
    Ok(reps)
}

/// Runs PQa from `(P₀ + √D)/Q₀` until the first `i ≥ 1` with `Qᵢ = ±1`
/// (returning `(G_{i−1}, B_{i−1})`) or until the `(P, Q)` sequence repeats.
fn pqa_search(p0: &BigInt, q0: &BigInt, d: &BigInt) -> Option<Pair> {
    let s = isqrt(d);
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let (mut b_prev2, mut b_prev) = (BigInt::one(), BigInt::zero());
    let (mut g_prev2, mut g_prev) = (-p0, q0.clone());
    let mut seen: HashSet<Pair> = HashSet::new();
    loop {
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            -((&p + &s).div_floor(&-&q) + BigInt::one())
        };
        let b = &a * &b_prev + &b_prev2;
        let g = &a * &g_prev + &g_prev2;
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        if q_next.magnitude().is_one() {
            return Some((g, b));
        }
        if !seen.insert((p_next.clone(), q_next.clone())) {
            return None;
        }
        b_prev2 = std::mem::replace(&mut b_prev, b);
        g_prev2 = std::mem::replace(&mut g_prev, g);
        p = p_next;
        q = q_next;
    }
}

/// All `f ≥ 1` with `f² | n`, ascending.
fn square_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in Factorizer::default().factor(n) {
        let p = BigInt::from(p);
        let mut next = Vec::new();
        for f in &out {
            let mut g = f.clone();
            for _ in 0..=e / 2 {
                next.push(g.clone());
                g *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

const SQRT_MOD_SCAN_LIMIT: u64 = 1 << 20;

/// All `z ∈ [0, m)` with `z² ≡ d (mod m)`, ascending; `m ≥ 1`.
pub fn sqrt_mod_all(d: &BigInt, m: &BigInt) -> Vec<BigInt> {
    if let Some(small) = m.to_u64().filter(|&v| v <= SQRT_MOD_SCAN_LIMIT) {
        let dm = mod_floor(d, m).to_u64().expect("residue below m");
        return (0..small)
            .filter(|z| z * z % small == dm)
            .map(BigInt::from)
            .collect();
    }
    let mut roots = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    for (p, e) in Factorizer::default().factor(m) {
        let pe = BigInt::from(p.pow(e));
        let local = roots_mod_prime_power(d, &p, e);
        let mut combined = Vec::with_capacity(roots.len() * local.len());
        for r in &roots {
            for s in &local {
                combined.push(crt(r, &modulus, s, &pe));
            }
        }
        roots = combined;
        modulus *= pe;
        if roots.is_empty() {
            break;
        }
    }
    roots.sort();
    roots
}

fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    let (_, inv, _) = ext_gcd(m1, m2);
    let t = mod_floor(&((r2 - r1) * inv), m2);
    mod_floor(&(r1 + m1 * t), &(m1 * m2))
}

fn roots_mod_prime_power(d: &BigInt, p: &BigUint, e: u32) -> Vec<BigInt> {
    let pb = BigInt::from(p.clone());
    let dp = mod_floor(d, &pb);
    let small_prime = p.to_u64().filter(|&v| v < 1 << 16);
    let mut roots: Vec<BigInt> = match small_prime {
        Some(ps) => (0..ps)
            .map(BigInt::from)
            .filter(|z| mod_floor(&(z * z - &dp), &pb).is_zero())
            .collect(),
        None if dp.is_zero() => vec![BigInt::zero()],
        None => match tonelli_shanks(&dp, &pb) {
            Some(r) => {
                let other = &pb - &r;
                let mut v = vec![r, other];
                v.sort();
                v
            }
            None => Vec::new(),
        },
    };
    let hensel = p != &BigUint::from(2u32) && !dp.is_zero();
    let mut pj = pb.clone();
    for _ in 1..e {
        let next_mod = &pj * &pb;
        let mut lifted = Vec::new();
        for r in &roots {
            if hensel {
                let (_, inv, _) = ext_gcd(&(r * 2), &next_mod);
                let c = mod_floor(&(r - (r * r - d) * inv), &next_mod);
                lifted.push(c);
            } else {
                let mut t = BigInt::zero();
                while t < pb {
                    let c = r + &t * &pj;
                    if mod_floor(&(&c * &c - d), &next_mod).is_zero() {
                        lifted.push(c);
                    }
                    t += 1;
                }
            }
        }
        roots = lifted;
        pj = next_mod;
    }
    roots.sort();
    roots
}

/// A square root of `n` modulo an odd prime `p`, if `n` is a residue.
fn tonelli_shanks(n: &BigInt, p: &BigInt) -> Option<BigInt> {
    let n = n.to_biguint()?;
    let p = p.to_biguint()?;
    let one = BigUint::one();
    let pm1 = &p - &one;
    if n.modpow(&(&pm1 >> 1usize), &p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1usize;
        s += 1;
    }
    let mut z = BigUint::from(2u32);
    while z.modpow(&(&pm1 >> 1usize), &p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, &p);
    let mut t = n.modpow(&q, &p);
    let mut r = n.modpow(&((&q + 1u32) >> 1usize), &p);
    while t != one {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = &t2 * &t2 % &p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1) as usize), &p);
        m = i;
        c = &b * &b % &p;
        t = t * &c % &p;
        r = r * b % &p;
    }
    Some(BigInt::from_biguint(Sign::Plus, r))
}

/// Multiplicative order of the unit modulo `m` (as a 2×2 automorph).
pub fn unit_order_mod(d: &BigInt, unit: &Pair, m: &BigInt) -> u64 {
    let reduce = |p: Pair| (mod_floor(&p.0, m), mod_floor(&p.1, m));
    let one = reduce((BigInt::one(), BigInt::zero()));
    let step = reduce(unit.clone());
    let mut cur = step.clone();
    let mut order = 1u64;
    while cur != one {
        cur = reduce(mul(d, &cur, &step));
        order += 1;
    }
    order
}
