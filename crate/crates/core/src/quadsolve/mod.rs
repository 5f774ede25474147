//! Binary quadratic Diophantine equations
//! `a x² + b xy + c y² + d x + e y + f = 0`.
//!
//! Over ℤ the solution set is described completely. Writing
//! `D = b² − 4ac`, `u = 2ax + by + d`, `λ = 4ae − 2bd` and `ν = 4af − d²`,
//! multiplying by `4a` gives `u² − D y² + λ y + ν = 0`, and with
//! `T = 2Dy − λ`, `U = 2u` one gets `T² − D U² = N` where `N = λ² + 4Dν`.
//! The cases are:
//!
//! - `D < 0`: `y` ranges over a bounded interval; scan it.
//! - `D = 0`: `u² = −λy − ν`. For `λ = 0` this is a pair of lines; otherwise
//!   `u` runs through residue classes and `(x, y)` are quadratic in a parameter.
//! - `D` a positive square: `T² − D U²` factors; enumerate divisor pairs of `N`
//!   (or two lines when `N = 0`).
//! - `D` a positive non-square: a generalized Pell equation, solved by
//!   class representatives and unit orbits, filtered by the integrality of
//!   the back map (periodic modulo `4|a|D`).
//!
//! `a = 0` is reduced to `a ≠ 0` by exchanging `x` and `y` when `c ≠ 0`;
//! `a = c = 0` with `b ≠ 0` factors as `(bx + e)(by + d) = ed − bf`.

mod description;
mod naturals;
pub mod pell;

pub use description::{BackMap, Family, LinearFamily, PellOrbit, Point, SolutionDescription};
pub use naturals::{integer_witness, natural_witness, solve_quadratic_n, NaturalOutcome};
pub use pell::{pell_fundamental, solve_pell_like, PellError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{exact_sqrt, ext_gcd, floor_div, isqrt, mod_floor, Factorizer};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("a binary quadratic has at most 2 variables, found {0}")]
    TooManyVariables(usize),
    #[error("degree {0} exceeds 2")]
    DegreeTooHigh(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticEquation {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub e: BigInt,
    pub f: BigInt,
    disc: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conic {
    DegenerateLinear,
    Elliptic,
    Parabolic,
    HyperbolicSquare,
    HyperbolicNonsquare,
}

impl QuadraticEquation {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt, e: BigInt, f: BigInt) -> Self {
        let disc = &b * &b - &a * &c * 4;
        QuadraticEquation { a, b, c, d, e, f, disc }
    }

    pub fn from_i64s(coeffs: [i64; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs.map(BigInt::from);
        Self::new(a, b, c, d, e, f)
    }

    /// Reads the coefficients of a polynomial in at most two variables;
    /// the first variable (in the polynomial's order) is `x`.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, QuadError> {
        if p.num_vars() > 2 {
            return Err(QuadError::TooManyVariables(p.num_vars()));
        }
        if p.degree() > 2 {
            return Err(QuadError::DegreeTooHigh(p.degree()));
        }
        let coeff = |ex: u32, ey: u32| -> BigInt {
            match p.num_vars() {
                0 => {
                    if ex == 0 && ey == 0 {
                        p.constant_term()
                    } else {
                        BigInt::zero()
                    }
                }
                1 => {
                    if ey == 0 {
                        p.coefficient(&[ex])
                    } else {
                        BigInt::zero()
                    }
                }
                _ => p.coefficient(&[ex, ey]),
            }
        };
        Ok(Self::new(
            coeff(2, 0),
            coeff(1, 1),
            coeff(0, 2),
            coeff(1, 0),
            coeff(0, 1),
            coeff(0, 0),
        ))
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y + &self.d * x + &self.e * y + &self.f
    }

    fn swapped(&self) -> Self {
        Self::new(
            self.c.clone(),
            self.b.clone(),
            self.a.clone(),
            self.e.clone(),
            self.d.clone(),
            self.f.clone(),
        )
    }

    fn lambda(&self) -> BigInt {
        &self.a * &self.e * 4 - &self.b * &self.d * 2
    }

    fn nu(&self) -> BigInt {
        &self.a * &self.f * 4 - &self.d * &self.d
    }

    fn is_zero(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
            .iter()
            .all(|v| v.is_zero())
    }
}

pub fn classify(q: &QuadraticEquation) -> Conic {
    if q.a.is_zero() && q.b.is_zero() && q.c.is_zero() {
        return Conic::DegenerateLinear;
    }
    match q.disc.sign() {
        num_bigint::Sign::Minus => Conic::Elliptic,
        num_bigint::Sign::NoSign => Conic::Parabolic,
        num_bigint::Sign::Plus => {
            if exact_sqrt(&q.disc).is_some() {
                Conic::HyperbolicSquare
            } else {
                Conic::HyperbolicNonsquare
            }
        }
    }
}

/// The complete set of integer solutions.
pub fn solve_quadratic_z(q: &QuadraticEquation) -> SolutionDescription {
    if q.is_zero() {
        return SolutionDescription::All;
    }
    if q.a.is_zero() && q.b.is_zero() && q.c.is_zero() {
        return families(line(&q.d, &q.e, &-&q.f).into_iter().collect());
    }
    if q.a.is_zero() {
        if !q.c.is_zero() {
            return solve_with_a(&q.swapped()).swapped();
        }
        return solve_bilinear(q);
    }
    solve_with_a(q)
}

fn families(f: Vec<LinearFamily>) -> SolutionDescription {
    if f.is_empty() {
        SolutionDescription::Empty
    } else {
        SolutionDescription::Families(f.into_iter().map(Family::Linear).collect())
    }
}

fn finite(mut pts: Vec<Point>) -> SolutionDescription {
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        SolutionDescription::Empty
    } else {
        SolutionDescription::Finite(pts)
    }
}

/// Integer points of `c₁x + c₂y = r` (not both coefficients zero).
fn line(c1: &BigInt, c2: &BigInt, r: &BigInt) -> Option<LinearFamily> {
    if c1.is_zero() && c2.is_zero() {
        return None;
    }
    let (g, s, w) = ext_gcd(c1, c2);
    if !r.is_multiple_of(&g) {
        return None;
    }
    let k = r / &g;
    let (mut x0, mut y0) = (s * &k, w * &k);
    let (dx, dy) = (c2 / &g, -(c1 / &g));
    // Normalize the base point so it does not depend on the gcd routine.
    let shift = if !dx.is_zero() {
        floor_div(&x0, &dx.abs()) * dx.signum()
    } else {
        floor_div(&y0, &dy.abs()) * dy.signum()
    };
    x0 -= &shift * &dx;
    y0 -= &shift * &dy;
    Some(LinearFamily {
        x: [x0, dx, BigInt::zero()],
        y: [y0, dy, BigInt::zero()],
    })
}

/// `a = c = 0`, `b ≠ 0`: `(bx + e)(by + d) = ed − bf`.
fn solve_bilinear(q: &QuadraticEquation) -> SolutionDescription {
    let (b, d, e) = (&q.b, &q.d, &q.e);
    let r = e * d - b * &q.f;
    if r.is_zero() {
        let mut out = Vec::new();
        if e.is_multiple_of(b) {
            out.push(LinearFamily {
                x: [-(e / b), BigInt::zero(), BigInt::zero()],
                y: [BigInt::zero(), BigInt::one(), BigInt::zero()],
            });
        }
        if d.is_multiple_of(b) {
            out.push(LinearFamily {
                x: [BigInt::zero(), BigInt::one(), BigInt::zero()],
                y: [-(d / b), BigInt::zero(), BigInt::zero()],
            });
        }
        return families(out);
    }
    let mut pts = Vec::new();
    for p in signed_divisors(&r) {
        let other = &r / &p;
        let (xn, yn) = (&p - e, other - d);
        if xn.is_multiple_of(b) && yn.is_multiple_of(b) {
            pts.push((xn / b, yn / b));
        }
    }
    finite(pts)
}

fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let pos = Factorizer::default().divisors(n);
    let mut out: Vec<BigInt> = pos.iter().map(|d| -d).collect();
    out.extend(pos);
    out
}

fn solve_with_a(q: &QuadraticEquation) -> SolutionDescription {
    match classify(q) {
        Conic::Elliptic => solve_elliptic(q),
        Conic::Parabolic => solve_parabolic(q),
        Conic::HyperbolicSquare => solve_hyperbolic_square(q),
        Conic::HyperbolicNonsquare => solve_hyperbolic_nonsquare(q),
        Conic::DegenerateLinear => unreachable!("a is nonzero"),
    }
}

/// `x` values with `ax² + (by + d)x + (cy² + ey + f) = 0` for a fixed `y`.
fn roots_in_x(q: &QuadraticEquation, y: &BigInt) -> Vec<BigInt> {
    let lin = &q.b * y + &q.d;
    let disc = &q.disc * y * y - q.lambda() * y - q.nu();
    let Some(s) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let den = &q.a * 2;
    let mut out = Vec::new();
    for num in [-&lin + &s, -&lin - &s] {
        if num.is_multiple_of(&den) {
            out.push(num / &den);
        }
    }
    out
}

fn solve_elliptic(q: &QuadraticEquation) -> SolutionDescription {
    let lambda = q.lambda();
    let n: BigInt = &lambda * &lambda + &q.disc * q.nu() * 4;
    if n.is_negative() {
        return SolutionDescription::Empty;
    }
    let two_d = &q.disc * 2;
    let center = floor_div(&lambda, &two_d);
    let half = isqrt(&n) / two_d.abs() + 2;
    let mut pts = Vec::new();
    let mut y = &center - &half;
    let end = &center + &half;
    while y <= end {
        for x in roots_in_x(q, &y) {
            pts.push((x, y.clone()));
        }
        y += 1;
    }
    finite(pts)
}

fn solve_parabolic(q: &QuadraticEquation) -> SolutionDescription {
    let lambda = q.lambda();
    let nu = q.nu();
    let two_a = &q.a * 2;
    if lambda.is_zero() {
        // u² = −ν with u = 2ax + by + d.
        let Some(s) = exact_sqrt(&-&nu) else {
            return SolutionDescription::Empty;
        };
        let mut out = Vec::new();
        for u in [s.clone(), -&s] {
            if let Some(fam) = line(&two_a, &q.b, &(&u - &q.d)) {
                if !out.contains(&fam) {
                    out.push(fam);
                }
            }
        }
        return families(out);
    }
    // y = −(u² + ν)/λ; x = (u − by − d)/(2a). Both are periodic in u mod L.
    let l = two_a.abs() * lambda.abs();
    let y_of = |u: &BigInt| -> Option<BigInt> {
        let num = -(u * u + &nu);
        num.is_multiple_of(&lambda).then(|| num / &lambda)
    };
    let admissible = |u: &BigInt| -> bool {
        match y_of(u) {
            Some(y) => (u - &q.b * y - &q.d).is_multiple_of(&two_a),
            None => false,
        }
    };
    let mut residues = Vec::new();
    let mut r = BigInt::zero();
    while r < l {
        if admissible(&r) {
            residues.push(r.clone());
        }
        r += 1;
    }
    if residues.is_empty() {
        return SolutionDescription::Empty;
    }
    let family_for = |r: &BigInt, period: &BigInt| -> Option<LinearFamily> {
        // u = r + period·t.
        let y0 = -(r * r + &nu);
        let y1: BigInt = -(r * period * BigInt::from(2));
        let y2 = -(period * period);
        if !(y0.is_multiple_of(&lambda) && y1.is_multiple_of(&lambda) && y2.is_multiple_of(&lambda)) {
            return None;
        }
        let y = [y0 / &lambda, y1 / &lambda, y2 / &lambda];
        let x0 = r - &q.b * &y[0] - &q.d;
        let x1 = period - &q.b * &y[1];
        let x2 = -(&q.b * &y[2]);
        if !(x0.is_multiple_of(&two_a) && x1.is_multiple_of(&two_a) && x2.is_multiple_of(&two_a)) {
            return None;
        }
        Some(LinearFamily {
            x: [x0 / &two_a, x1 / &two_a, x2 / &two_a],
            y,
        })
    };
    for period in Factorizer::default().divisors(&l) {
        let closed = residues
            .iter()
            .all(|r| residues.binary_search(&mod_floor(&(r + &period), &l)).is_ok());
        if !closed {
            continue;
        }
        let fams: Option<Vec<LinearFamily>> = residues
            .iter()
            .filter(|r| **r < period)
            .map(|r| family_for(r, &period))
            .collect();
        if let Some(f) = fams {
            return families(f);
        }
    }
    unreachable!("the full period always yields integral families")
}

fn solve_hyperbolic_square(q: &QuadraticEquation) -> SolutionDescription {
    let k = exact_sqrt(&q.disc).expect("square discriminant");
    let lambda = q.lambda();
    let n: BigInt = &lambda * &lambda + &q.disc * q.nu() * 4;
    let back = BackMap {
        a: q.a.clone(),
        b: q.b.clone(),
        d: q.d.clone(),
        lambda: lambda.clone(),
        disc: q.disc.clone(),
        swapped: false,
    };
    if n.is_zero() {
        // T = ±kU, i.e. 2Dy − λ = ±2k(2ax + by + d).
        let mut out = Vec::new();
        for s in [1i64, -1] {
            let c1: BigInt = -(&q.a * &k * BigInt::from(4 * s));
            let c2 = &q.disc * 2 - &k * &q.b * 2 * s;
            let r = &lambda + &k * &q.d * 2 * s;
            if let Some(fam) = line(&c1, &c2, &r) {
                if !out.contains(&fam) {
                    out.push(fam);
                }
            }
        }
        return families(out);
    }
    let mut pts = Vec::new();
    for p in signed_divisors(&n) {
        let other = &n / &p;
        let t2 = &p + &other;
        let u2k = &other - &p;
        if t2.is_odd() || !u2k.is_multiple_of(&(&k * 2)) {
            continue;
        }
        let t = t2 / 2;
        let u = u2k / (&k * 2);
        if let Some(pt) = back.to_point(&t, &u) {
            pts.push(pt);
        }
    }
    finite(pts)
}

fn solve_hyperbolic_nonsquare(q: &QuadraticEquation) -> SolutionDescription {
    let disc = q.disc.clone();
    let lambda = q.lambda();
    let n: BigInt = &lambda * &lambda + &disc * q.nu() * 4;
    let back = BackMap {
        a: q.a.clone(),
        b: q.b.clone(),
        d: q.d.clone(),
        lambda,
        disc: disc.clone(),
        swapped: false,
    };
    if n.is_zero() {
        return finite(back.to_point(&BigInt::zero(), &BigInt::zero()).into_iter().collect());
    }
    let unit = pell_fundamental(&disc).expect("non-square positive discriminant");
    let reps = solve_pell_like(&disc, &n).expect("non-square positive discriminant");
    let modulus = q.a.abs() * &disc * 4;
    let full = pell::unit_order_mod(&disc, &unit, &modulus);
    let reduce = |p: &pell::Pair| (mod_floor(&p.0, &modulus), mod_floor(&p.1, &modulus));
    let unit_mod = reduce(&unit);
    let mut out = Vec::new();
    for rep in &reps {
        for negated in [false, true] {
            let start = if negated {
                (-&rep.0, -&rep.1)
            } else {
                rep.clone()
            };
            let mut cur = reduce(&start);
            let mut integral = Vec::with_capacity(full as usize);
            for _ in 0..full {
                integral.push(back.to_point(&cur.0, &cur.1).is_some());
                cur = reduce(&pell::mul(&disc, &cur, &unit_mod));
            }
            let period = (1..=full)
                .filter(|p| full % p == 0)
                .find(|&p| (0..full).all(|i| integral[i as usize] == integral[(i % p) as usize]))
                .expect("the full order is a period");
            let step = pell::mul_pow(&disc, &(BigInt::one(), BigInt::zero()), &unit, period as i64);
            let half = (period / 2) as i64;
            for o in (0..period as i64).filter(|&o| integral[o as usize]) {
                let offset = if o > half { o - period as i64 } else { o };
                let seed_pell = pell::mul_pow(&disc, &start, &unit, offset);
                let seed = back
                    .to_point(&seed_pell.0, &seed_pell.1)
                    .expect("integrality is periodic modulo 4|a|D");
                out.push(Family::Pell(PellOrbit {
                    disc: disc.clone(),
                    norm: n.clone(),
                    back: back.clone(),
                    unit: unit.clone(),
                    period,
                    step: step.clone(),
                    rep: rep.clone(),
                    negated,
                    offset,
                    seed_pell,
                    seed,
                }));
            }
        }
    }
    if out.is_empty() {
        SolutionDescription::Empty
    } else {
        SolutionDescription::Families(out)
    }
}
