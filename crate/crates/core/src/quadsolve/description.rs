//! Complete descriptions of integer solution sets of binary quadratics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::pell::{canonicalize, mul, mul_pow, Pair};
use crate::arith::{exact_sqrt, floor_div, isqrt};

pub type Point = (BigInt, BigInt);

/// `x = x₀ + x₁t + x₂t²`, `y = y₀ + y₁t + y₂t²` for `t ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFamily {
    pub x: [BigInt; 3],
    pub y: [BigInt; 3],
}

pub(crate) fn eval_quadratic(c: &[BigInt; 3], t: &BigInt) -> BigInt {
    &c[0] + t * (&c[1] + t * &c[2])
}

fn is_constant(c: &[BigInt; 3]) -> bool {
    c[1].is_zero() && c[2].is_zero()
}

/// Integer roots of `c₀ + c₁t + c₂t²` (not identically zero).
pub(crate) fn integer_roots_quadratic(c: &[BigInt; 3]) -> Vec<BigInt> {
    let [c0, c1, c2] = c;
    if c2.is_zero() {
        if c1.is_zero() {
            return Vec::new();
        }
        return if (-c0).is_multiple_of(c1) {
            vec![-c0 / c1]
        } else {
            Vec::new()
        };
    }
    let disc: BigInt = c1 * c1 - c2 * c0 * 4;
    let Some(s) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let den = c2 * 2;
    let mut out: Vec<BigInt> = [-c1 - &s, -c1 + &s]
        .into_iter()
        .filter(|num| num.is_multiple_of(&den))
        .map(|num| num / &den)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Integers near the real roots and the vertex of `c₀ + c₁t + c₂t²`.
pub(crate) fn critical_points(c: &[BigInt; 3]) -> Vec<BigInt> {
    let [c0, c1, c2] = c;
    let mut centers = Vec::new();
    if c2.is_zero() {
        if !c1.is_zero() {
            centers.push(floor_div(&-c0, c1));
        }
    } else {
        let den = c2 * 2;
        centers.push(floor_div(&-c1, &den));
        let disc: BigInt = c1 * c1 - c2 * c0 * 4;
        if !disc.is_negative() {
            let s = isqrt(&disc);
            centers.push(floor_div(&(-c1 - &s), &den));
            centers.push(floor_div(&(-c1 + &s), &den));
        }
    }
    let mut out = Vec::new();
    for c in centers {
        for delta in -1i64..=2 {
            out.push(&c + delta);
        }
    }
    out
}

impl LinearFamily {
    pub fn at(&self, t: &BigInt) -> Point {
        (eval_quadratic(&self.x, t), eval_quadratic(&self.y, t))
    }

    /// The parameter `t` producing `(x, y)`, if any.
    pub fn parameter_of(&self, x: &BigInt, y: &BigInt) -> Option<BigInt> {
        let pick = |c: &[BigInt; 3], v: &BigInt| {
            let shifted = [&c[0] - v, c[1].clone(), c[2].clone()];
            integer_roots_quadratic(&shifted)
        };
        let candidates = if !is_constant(&self.x) {
            pick(&self.x, x)
        } else if !is_constant(&self.y) {
            pick(&self.y, y)
        } else {
            vec![BigInt::zero()]
        };
        candidates.into_iter().find(|t| self.at(t) == (x.clone(), y.clone()))
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        self.parameter_of(x, y).is_some()
    }

    pub(crate) fn swapped(self) -> Self {
        LinearFamily {
            x: self.y,
            y: self.x,
        }
    }
}

/// Affine map between `(x, y)` and the Pell coordinates
/// `T = 2Dy − λ`, `U = 2(2ax + by + d)` of the (possibly swapped) equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackMap {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub lambda: BigInt,
    pub disc: BigInt,
    /// The equation was solved with `x` and `y` exchanged.
    pub swapped: bool,
}

impl BackMap {
    fn unswapped_point(&self, t: &BigInt, u: &BigInt) -> Option<Point> {
        let y_num = t + &self.lambda;
        let y_den = &self.disc * 2;
        if !y_num.is_multiple_of(&y_den) || u.is_odd() {
            return None;
        }
        let y = y_num / y_den;
        let x_num: BigInt = u / 2 - &self.b * &y - &self.d;
        let x_den = &self.a * 2;
        if !x_num.is_multiple_of(&x_den) {
            return None;
        }
        Some((x_num / x_den, y))
    }

    /// `(x, y)` for Pell coordinates `(T, U)` when integral.
    pub fn to_point(&self, t: &BigInt, u: &BigInt) -> Option<Point> {
        let (x, y) = self.unswapped_point(t, u)?;
        Some(if self.swapped { (y, x) } else { (x, y) })
    }

    /// Pell coordinates of `(x, y)`.
    pub fn to_pell(&self, x: &BigInt, y: &BigInt) -> Pair {
        let (x, y) = if self.swapped { (y, x) } else { (x, y) };
        let t = &self.disc * y * 2 - &self.lambda;
        let u = (&self.a * x * 2 + &self.b * y + &self.d) * 2;
        (t, u)
    }

    /// Signs of `(x, y)` far along an orbit whose dominant term is `ρ`
    /// (`forward`) or its conjugate (`!forward`), where `ρ_sign` is the
    /// sign of that dominant term.
    fn asymptotic_signs(&self, rho_sign: Ordering, forward: bool) -> (Ordering, Ordering) {
        let y_sign = rho_sign;
        // sign of √D − b (forward) or √D + b (backward); never zero.
        let root_vs_b = |b: &BigInt| -> Ordering {
            if !b.is_positive() {
                Ordering::Greater
            } else if self.disc > b * b {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        };
        let factor = if forward {
            root_vs_b(&self.b)
        } else {
            root_vs_b(&-&self.b).reverse()
        };
        let a_sign = self.a.sign_cmp();
        let x_sign = mul_signs(mul_signs(rho_sign, factor), a_sign);
        if self.swapped {
            (y_sign, x_sign)
        } else {
            (x_sign, y_sign)
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn mul_signs(a: Ordering, b: Ordering) -> Ordering {
    match (a, b) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
        (x, y) if x == y => Ordering::Greater,
        _ => Ordering::Less,
    }
}

/// Sign of `T + U√D` (`conjugate = false`) or `T − U√D`.
fn surd_sign(d: &BigInt, p: &Pair, conjugate: bool) -> Ordering {
    let t = &p.0;
    let u = if conjugate { -&p.1 } else { p.1.clone() };
    match (t.sign_cmp(), u.sign_cmp()) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (st, su) if st == su => st,
        (st, _) => {
            if t * t > d * &u * &u {
                st
            } else {
                st.reverse()
            }
        }
    }
}

/// Solutions `(x, y)` whose Pell coordinates are `seed·stepʲ`, `j ∈ ℤ`,
/// where `step = εᵖ` and `ε` is the fundamental unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellOrbit {
    pub disc: BigInt,
    pub norm: BigInt,
    pub back: BackMap,
    pub unit: Pair,
    pub period: u64,
    pub step: Pair,
    /// Canonical class representative and the seed's position `sign·rep·εᵒ`.
    pub rep: Pair,
    pub negated: bool,
    pub offset: i64,
    pub seed_pell: Pair,
    pub seed: Point,
}

impl PellOrbit {
    pub fn pell_at(&self, j: i64) -> Pair {
        mul_pow(&self.disc, &self.seed_pell, &self.step, j)
    }

    pub fn at(&self, j: i64) -> Point {
        let (t, u) = self.pell_at(j);
        self.back
            .to_point(&t, &u)
            .expect("orbit elements satisfy the integrality conditions")
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        let p = self.back.to_pell(x, y);
        if &p.0 * &p.0 - &self.disc * &p.1 * &p.1 != self.norm {
            return false;
        }
        let pos = canonicalize(&self.disc, &self.unit, &p);
        let period = i64::try_from(self.period).expect("period fits in i64");
        pos.rep == self.rep
            && pos.negated == self.negated
            && (pos.k - self.offset).rem_euclid(period) == 0
    }

    /// Eventual signs of `(x, y)` as `j → +∞` (`forward`) or `j → −∞`.
    pub fn asymptotic_signs(&self, forward: bool) -> (Ordering, Ordering) {
        let rho = surd_sign(&self.disc, &self.seed_pell, !forward);
        self.back.asymptotic_signs(rho, forward)
    }

    /// Successive points from the seed in one direction, stopping once both
    /// `|x|` and `|y|` have grown strictly for two steps with the eventual
    /// sign pattern. Further points only grow in absolute value.
    pub fn walk(&self, forward: bool) -> Vec<Point> {
        let (sx, sy) = self.asymptotic_signs(forward);
        let step = if forward {
            self.step.clone()
        } else {
            (self.step.0.clone(), -&self.step.1)
        };
        let mut pell = self.seed_pell.clone();
        let mut out = vec![self.seed.clone()];
        let mut growth = 0;
        loop {
            pell = mul(&self.disc, &pell, &step);
            let p = self.back.to_point(&pell.0, &pell.1).expect("orbit stays integral");
            let prev = out.last().expect("non-empty");
            let grows = p.0.magnitude() > prev.0.magnitude() && p.1.magnitude() > prev.1.magnitude();
            let settled = p.0.sign_cmp() == sx && p.1.sign_cmp() == sy;
            let same_signs = p.0.sign_cmp() == prev.0.sign_cmp() && p.1.sign_cmp() == prev.1.sign_cmp();
            growth = if grows && settled && same_signs { growth + 1 } else { 0 };
            out.push(p);
            if growth >= 2 {
                return out;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Linear(LinearFamily),
    Pell(PellOrbit),
}

impl Family {
    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        match self {
            Family::Linear(l) => l.contains(x, y),
            Family::Pell(p) => p.contains(x, y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionDescription {
    Empty,
    /// Every pair is a solution (the zero equation).
    All,
    Finite(Vec<Point>),
    Families(Vec<Family>),
}

impl SolutionDescription {
    pub fn is_empty(&self) -> bool {
        match self {
            SolutionDescription::Empty => true,
            SolutionDescription::Finite(v) => v.is_empty(),
            SolutionDescription::Families(f) => f.is_empty(),
            SolutionDescription::All => false,
        }
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        match self {
            SolutionDescription::Empty => false,
            SolutionDescription::All => true,
            SolutionDescription::Finite(v) => v.iter().any(|(a, b)| a == x && b == y),
            SolutionDescription::Families(f) => f.iter().any(|fam| fam.contains(x, y)),
        }
    }

    /// Explicit points: finite sets in full, linear families at
    /// `|t| ≤ radius`, Pell orbits at `|j| ≤ depth`.
    pub fn samples(&self, radius: i64, depth: i64) -> Vec<Point> {
        match self {
            SolutionDescription::Empty | SolutionDescription::All => Vec::new(),
            SolutionDescription::Finite(v) => v.clone(),
            SolutionDescription::Families(f) => f
                .iter()
                .flat_map(|fam| -> Vec<Point> {
                    match fam {
                        Family::Linear(l) => (-radius..=radius).map(|t| l.at(&BigInt::from(t))).collect(),
                        Family::Pell(p) => (-depth..=depth).map(|j| p.at(j)).collect(),
                    }
                })
                .collect(),
        }
    }

    pub(crate) fn swapped(self) -> Self {
        match self {
            SolutionDescription::Finite(v) => {
                let mut v: Vec<Point> = v.into_iter().map(|(x, y)| (y, x)).collect();
                v.sort();
                SolutionDescription::Finite(v)
            }
            SolutionDescription::Families(f) => SolutionDescription::Families(
                f.into_iter()
                    .map(|fam| match fam {
                        Family::Linear(l) => Family::Linear(l.swapped()),
                        Family::Pell(mut p) => {
                            p.back.swapped = !p.back.swapped;
                            p.seed = (p.seed.1, p.seed.0);
                            Family::Pell(p)
                        }
                    })
                    .collect(),
            ),
            other => other,
        }
    }
}

fn fmt_quadratic(c: &[BigInt; 3]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, coeff) in c.iter().enumerate().rev() {
        if coeff.is_zero() {
            continue;
        }
        let mag = coeff.magnitude();
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let var = if k == 1 { "t".to_string() } else { "t^2".to_string() };
                if mag == &num_bigint::BigUint::from(1u32) {
                    var
                } else {
                    format!("{mag}*{var}")
                }
            }
        };
        parts.push((coeff.is_negative(), body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for LinearFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}, y = {} (t in Z)", fmt_quadratic(&self.x), fmt_quadratic(&self.y))
    }
}

impl fmt::Display for PellOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orbit through (x, y) = ({}, {}): T^2 - {}*U^2 = {} with (T, U) = ({}, {}) * ({} + {}*sqrt({}))^j (j in Z)",
            self.seed.0,
            self.seed.1,
            self.disc,
            self.norm,
            self.seed_pell.0,
            self.seed_pell.1,
            self.step.0,
            self.step.1,
            self.disc
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Linear(l) => l.fmt(f),
            Family::Pell(p) => p.fmt(f),
        }
    }
}

impl fmt::Display for SolutionDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionDescription::Empty => f.write_str("no integer solutions"),
            SolutionDescription::All => f.write_str("every integer pair"),
            SolutionDescription::Finite(v) => {
                let pts: Vec<String> = v.iter().map(|(x, y)| format!("({x}, {y})")).collect();
                write!(f, "finitely many: {}", pts.join(", "))
            }
            SolutionDescription::Families(fams) => {
                for (i, fam) in fams.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{fam}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn family_membership() {
        let fam = LinearFamily {
            x: [b(0), b(2), b(0)],
            y: [b(0), b(0), b(2)],
        };
        assert_eq!(fam.parameter_of(&b(6), &b(18)), Some(b(3)));
        assert!(!fam.contains(&b(6), &b(17)));
        assert!(!fam.contains(&b(5), &b(12)));
        assert_eq!(fam.to_string(), "x = 2*t, y = 2*t^2 (t in Z)");
        let vertical = LinearFamily {
            x: [b(4), b(0), b(0)],
            y: [b(0), b(1), b(0)],
        };
        assert_eq!(vertical.parameter_of(&b(4), &b(-9)), Some(b(-9)));
        assert!(!vertical.contains(&b(3), &b(0)));
        let point = LinearFamily {
            x: [b(1), b(0), b(0)],
            y: [b(2), b(0), b(0)],
        };
        assert!(point.contains(&b(1), &b(2)));
    }

    #[test]
    fn quadratic_root_helpers() {
        assert_eq!(integer_roots_quadratic(&[b(-6), b(1), b(1)]), vec![b(-3), b(2)]);
        assert!(integer_roots_quadratic(&[b(-2), b(0), b(1)]).is_empty());
        assert_eq!(integer_roots_quadratic(&[b(4), b(-2), b(0)]), vec![b(2)]);
        let pts = critical_points(&[b(-2), b(0), b(1)]);
        assert!(pts.contains(&b(1)) && pts.contains(&b(-2)));
    }

    #[test]
    fn surd_signs() {
        let d = b(2);
        assert_eq!(surd_sign(&d, &(b(1), b(1)), false), Ordering::Greater);
        assert_eq!(surd_sign(&d, &(b(1), b(1)), true), Ordering::Less);
        assert_eq!(surd_sign(&d, &(b(-3), b(2)), false), Ordering::Less);
        assert_eq!(surd_sign(&d, &(b(-3), b(2)), true), Ordering::Less);
        assert_eq!(surd_sign(&d, &(b(3), b(-2)), false), Ordering::Greater);
    }
}
