//! Complete procedures for the single-variable and degree-one cells:
//! integer roots of univariate polynomials, linear equations over ℤ, and
//! linear equations over ℕ via Frobenius descriptors of the generator sets.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{ceil_div, ext_gcd, Factorizer};
use crate::poly::Polynomial;

/// Largest smallest-generator accepted by the residue-graph construction.
pub const MAX_RESIDUE_GRAPH: u64 = 1 << 22;
/// Largest threshold for which the exception set is materialized.
pub const MAX_THRESHOLD: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinsolveError {
    #[error("expected at most one variable, found {0}")]
    NotUnivariate(usize),
    #[error("expected a polynomial of degree at most 1, found degree {0}")]
    NotLinear(u64),
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("generator {0} is too large for the residue-graph method")]
    GeneratorTooLarge(BigInt),
    #[error("Frobenius threshold {0} is too large to tabulate")]
    ThresholdTooLarge(u64),
}

/// Integer root set of a univariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSet {
    /// The zero polynomial: every integer is a root.
    All,
    Finite(BTreeSet<BigInt>),
}

/// Integer roots by the rational root test: strip powers of the variable
/// (root 0), then try every signed divisor of the remaining constant term.
pub fn integer_roots(p: &Polynomial) -> Result<RootSet, LinsolveError> {
    if p.num_vars() > 1 {
        return Err(LinsolveError::NotUnivariate(p.num_vars()));
    }
    if p.is_zero() {
        return Ok(RootSet::All);
    }
    let mut roots = BTreeSet::new();
    if p.num_vars() == 0 {
        return Ok(RootSet::Finite(roots));
    }
    let deg = p.degree() as usize;
    let coeffs: Vec<BigInt> = (0..=deg).map(|k| p.coefficient(&[k as u32])).collect();
    let shift = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    if shift > 0 {
        roots.insert(BigInt::zero());
    }
    let reduced = &coeffs[shift..];
    if reduced.len() > 1 {
        for d in Factorizer::default().divisors(&reduced[0]) {
            for r in [d.clone(), -d] {
                if horner(reduced, &r).is_zero() {
                    roots.insert(r);
                }
            }
        }
    }
    Ok(RootSet::Finite(roots))
}

/// Evaluates `sum coeffs[k] * x^k`.
fn horner(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearOutcome {
    /// Witness values, one per coefficient, in input order.
    Solvable(Vec<BigInt>),
    Unsolvable(String),
}

impl LinearOutcome {
    pub fn witness(&self) -> Option<&[BigInt]> {
        match self {
            LinearOutcome::Solvable(w) => Some(w),
            LinearOutcome::Unsolvable(_) => None,
        }
    }
}

/// `coeffs · x = rhs`, read off a polynomial of degree at most one
/// (`p = coeffs · x - rhs`), with coefficients in `p`'s variable order.
pub fn linear_form(p: &Polynomial) -> Result<(Vec<BigInt>, BigInt), LinsolveError> {
    if p.degree() > 1 {
        return Err(LinsolveError::NotLinear(p.degree()));
    }
    let n = p.num_vars();
    let coeffs = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            p.coefficient(&e)
        })
        .collect();
    Ok((coeffs, -p.constant_term()))
}

/// Decides `sum a_i x_i = b` over ℤ. Solvable iff `gcd(a) | b`; the
/// witness scales a Bézout combination for the gcd by `b / gcd`.
pub fn solve_linear_z(coeffs: &[BigInt], b: &BigInt) -> LinearOutcome {
    let mut g = BigInt::zero();
    let mut combo: Vec<BigInt> = vec![BigInt::zero(); coeffs.len()];
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let (ng, s, t) = ext_gcd(&g, a);
        for c in combo.iter_mut().take(i) {
            *c *= &s;
        }
        combo[i] = t;
        g = ng;
    }
    if g.is_zero() {
        return if b.is_zero() {
            LinearOutcome::Solvable(combo)
        } else {
            LinearOutcome::Unsolvable(format!("all coefficients are zero but the constant is {b}"))
        };
    }
    if !(b % &g).is_zero() {
        return LinearOutcome::Unsolvable(format!("gcd {g} does not divide {b}"));
    }
    let scale = b / &g;
    LinearOutcome::Solvable(combo.into_iter().map(|c| c * &scale).collect())
}

/// Sylvester's bound `a1*a2 - a1 - a2`: the largest integer that is not a
/// nonnegative combination of coprime `a1, a2` (`-1` when nothing is missed).
pub fn frobenius_number(a1: u64, a2: u64) -> Result<BigInt, LinsolveError> {
    if a1 == 0 || a2 == 0 {
        return Err(LinsolveError::ZeroGenerator);
    }
    if a1.gcd(&a2) != 1 {
        return Err(LinsolveError::NotCoprime(a1, a2));
    }
    let (a, b) = (BigInt::from(a1), BigInt::from(a2));
    Ok(&a * &b - &a - &b)
}

/// Describes `FROB(a) = { sum a_i x_i : x_i ∈ ℕ }` as
/// `exceptions ∪ { g·x : x ≥ threshold }`.
///
/// `threshold` is minimal: `g·(threshold − 1)` is not representable (when
/// `threshold > 0`). `exceptions` is exactly the set of representable values
/// below `g·threshold`. Both are computed from the Apéry set of the reduced
/// generators with respect to the smallest one, found by shortest paths over
/// residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusDescriptor {
    generators: Vec<u64>,
    gcd: u64,
    threshold: u64,
    exceptions: BTreeSet<u64>,
    /// Index in `generators` of the smallest one (the Apéry modulus).
    base: usize,
    /// `apery[r]`: least reduced value ≡ r modulo the reduced base generator.
    apery: Vec<u64>,
    /// Shortest-path tree: previous residue and the generator used.
    pred: Vec<Option<(usize, usize)>>,
}

impl FrobeniusDescriptor {
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn exceptions(&self) -> &BTreeSet<u64> {
        &self.exceptions
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Largest non-representable multiple of `gcd`, in reduced units
    /// (`threshold - 1`; `-1` when every multiple is representable).
    pub fn reduced_frobenius_number(&self) -> i64 {
        self.threshold as i64 - 1
    }

    /// Membership read from the `(gcd, exceptions, threshold)` form.
    pub fn contains(&self, v: &BigInt) -> bool {
        if v.is_negative() || !(v % BigInt::from(self.gcd)).is_zero() {
            return false;
        }
        let reduced = v / BigInt::from(self.gcd);
        if reduced >= BigInt::from(self.threshold) {
            return true;
        }
        self.exceptions.contains(&v.to_u64().expect("below threshold"))
    }

    /// Nonnegative multiplicities, one per generator, summing to `v`.
    pub fn represent(&self, v: &BigInt) -> Option<Vec<BigInt>> {
        if v.is_negative() {
            return None;
        }
        let g = BigInt::from(self.gcd);
        if !(v % &g).is_zero() {
            return None;
        }
        let reduced = v / &g;
        let m = self.generators[self.base] / self.gcd;
        let r = (&reduced % BigInt::from(m)).to_usize().expect("residue");
        let floor = BigInt::from(self.apery[r]);
        if floor > reduced {
            return None;
        }
        let mut counts = vec![BigInt::zero(); self.generators.len()];
        let mut at = r;
        while let Some((prev, gi)) = self.pred[at] {
            counts[gi] += 1;
            at = prev;
        }
        counts[self.base] += (reduced - floor) / BigInt::from(m);
        Some(counts)
    }
}

pub fn frobenius_descriptor(coeffs: &[u64]) -> Result<FrobeniusDescriptor, LinsolveError> {
    if coeffs.is_empty() {
        return Err(LinsolveError::NoGenerators);
    }
    if coeffs.contains(&0) {
        return Err(LinsolveError::ZeroGenerator);
    }
    let g = coeffs.iter().fold(0u64, |acc, &a| acc.gcd(&a));
    let (base, &smallest) = coeffs
        .iter()
        .enumerate()
        .min_by_key(|(_, a)| **a)
        .expect("nonempty");
    let m = smallest / g;
    if m > MAX_RESIDUE_GRAPH {
        return Err(LinsolveError::GeneratorTooLarge(BigInt::from(smallest)));
    }
    let m_us = m as usize;
    let mut apery = vec![u64::MAX; m_us];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; m_us];
    apery[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((dist, r))) = heap.pop() {
        if dist > apery[r] {
            continue;
        }
        for (gi, &a) in coeffs.iter().enumerate() {
            if gi == base {
                continue;
            }
            let step = a / g;
            let nd = dist + step;
            let nr = ((r as u64 + step) % m) as usize;
            if nd < apery[nr] {
                apery[nr] = nd;
                pred[nr] = Some((r, gi));
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let largest = *apery.iter().max().expect("nonempty");
    // Largest non-representable reduced value is max(apery) - m.
    let threshold = (largest + 1).saturating_sub(m);
    if threshold > MAX_THRESHOLD {
        return Err(LinsolveError::ThresholdTooLarge(threshold));
    }
    let exceptions = (0..threshold)
        .filter(|&v| apery[(v % m) as usize] <= v)
        .map(|v| v * g)
        .collect();
    Ok(FrobeniusDescriptor {
        generators: coeffs.to_vec(),
        gcd: g,
        threshold,
        exceptions,
        base,
        apery,
        pred,
    })
}

fn to_generator(c: &BigInt) -> Result<u64, LinsolveError> {
    c.abs()
        .to_u64()
        .filter(|&v| v <= MAX_RESIDUE_GRAPH * 1024)
        .ok_or_else(|| LinsolveError::GeneratorTooLarge(c.clone()))
}

/// Decides `sum c_i x_i = k` over ℕ.
///
/// Positive and negated negative coefficients give two generator sets `a`,
/// `b`; the equation reads `a·x = k + b·y`. The least common value
/// `v ∈ FROB(a) ∩ (k + FROB(b))` is located from the two descriptors
/// (finite parts against the other set, and the two tails by a congruence),
/// and both sides are then represented constructively.
pub fn solve_linear_n(coeffs: &[BigInt], k: &BigInt) -> Result<LinearOutcome, LinsolveError> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_positive() {
            pos.push((i, to_generator(c)?));
        } else if c.is_negative() {
            neg.push((i, to_generator(c)?));
        }
    }
    let describe = |side: &[(usize, u64)]| -> Result<Option<FrobeniusDescriptor>, LinsolveError> {
        if side.is_empty() {
            Ok(None)
        } else {
            let gens: Vec<u64> = side.iter().map(|(_, a)| *a).collect();
            frobenius_descriptor(&gens).map(Some)
        }
    };
    let left = describe(&pos)?;
    let right = describe(&neg)?;
    let Some(v) = least_common_value(left.as_ref(), right.as_ref(), k) else {
        return Ok(LinearOutcome::Unsolvable(format!(
            "no nonnegative combination reaches {k}"
        )));
    };
    let w = &v - k;
    let mut witness = vec![BigInt::zero(); coeffs.len()];
    if let Some(desc) = &left {
        let counts = desc.represent(&v).expect("certified representable");
        for ((i, _), c) in pos.iter().zip(counts) {
            witness[*i] = c;
        }
    }
    if let Some(desc) = &right {
        let counts = desc.represent(&w).expect("certified representable");
        for ((i, _), c) in neg.iter().zip(counts) {
            witness[*i] = c;
        }
    }
    Ok(LinearOutcome::Solvable(witness))
}

/// Membership in `FROB(side)`, with an empty side generating `{0}`.
fn side_contains(side: Option<&FrobeniusDescriptor>, v: &BigInt) -> bool {
    match side {
        Some(d) => d.contains(v),
        None => v.is_zero(),
    }
}

/// Least `v` with `v ∈ FROB(left)` and `v - k ∈ FROB(right)`.
fn least_common_value(
    left: Option<&FrobeniusDescriptor>,
    right: Option<&FrobeniusDescriptor>,
    k: &BigInt,
) -> Option<BigInt> {
    let (l, r) = match (left, right) {
        (None, None) => return k.is_zero().then(BigInt::zero),
        (None, Some(_)) => return side_contains(right, &-k).then(BigInt::zero),
        (Some(_), None) => return side_contains(left, k).then(|| k.clone()),
        (Some(l), Some(r)) => (l, r),
    };
    let mut best: Option<BigInt> = None;
    let mut offer = |v: BigInt| {
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    };
    for &e in l.exceptions() {
        let v = BigInt::from(e);
        if r.contains(&(&v - k)) {
            offer(v);
            break;
        }
    }
    for &e in r.exceptions() {
        let v = BigInt::from(e) + k;
        if l.contains(&v) {
            offer(v);
            break;
        }
    }
    // Tails: g_l·x = k + g_r·y with x ≥ M_l, y ≥ M_r.
    let gl = BigInt::from(l.gcd());
    let gr = BigInt::from(r.gcd());
    let (h, s, _) = ext_gcd(&gl, &gr);
    if (k % &h).is_zero() {
        let period = &gr / &h;
        // gl·s ≡ h (mod gr), so x0 = s·k/h solves gl·x ≡ k (mod gr).
        let x0 = (&s * (k / &h)).mod_floor(&period);
        let need_y = ceil_div(&(k + &gr * BigInt::from(r.threshold())), &gl);
        let lower = need_y.max(BigInt::from(l.threshold()));
        let x = &lower + (&x0 - &lower).mod_floor(&period);
        offer(&gl * x);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    fn roots(s: &str) -> RootSet {
        integer_roots(&parse_polynomial(s).unwrap()).unwrap()
    }

    fn finite(v: &[i64]) -> RootSet {
        RootSet::Finite(v.iter().map(|&x| big(x)).collect())
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(roots("x^2 - 4"), finite(&[-2, 2]));
        assert_eq!(roots("2*x - 3"), finite(&[]));
        assert_eq!(roots("x^3 - x^2"), finite(&[0, 1]));
        assert_eq!(roots("0"), RootSet::All);
        assert_eq!(roots("5"), finite(&[]));
        assert_eq!(roots("x^5"), finite(&[0]));
        assert_eq!(
            integer_roots(&parse_polynomial("x*y").unwrap()),
            Err(LinsolveError::NotUnivariate(2))
        );
    }

    #[test]
    fn linear_z_examples() {
        assert_eq!(
            solve_linear_z(&bigs(&[3, 5]), &big(1)),
            LinearOutcome::Solvable(bigs(&[2, -1]))
        );
        match solve_linear_z(&bigs(&[2, 4]), &big(7)) {
            LinearOutcome::Unsolvable(reason) => assert!(reason.contains("gcd 2")),
            other => panic!("{other:?}"),
        }
        assert_eq!(solve_linear_z(&[], &big(0)), LinearOutcome::Solvable(vec![]));
        assert!(matches!(solve_linear_z(&[], &big(3)), LinearOutcome::Unsolvable(_)));
        assert_eq!(
            solve_linear_z(&bigs(&[0, 0]), &big(0)),
            LinearOutcome::Solvable(bigs(&[0, 0]))
        );
    }

    #[test]
    fn linear_z_witnesses_verify() {
        for a in -6..=6 {
            for b in -6..=6 {
                for c in -6..=6 {
                    for rhs in -10..=10 {
                        let coeffs = bigs(&[a, b, c]);
                        if let LinearOutcome::Solvable(w) = solve_linear_z(&coeffs, &big(rhs)) {
                            let lhs: BigInt = coeffs.iter().zip(&w).map(|(a, x)| a * x).sum();
                            assert_eq!(lhs, big(rhs));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(frobenius_number(3, 5).unwrap(), big(7));
        assert_eq!(frobenius_number(2, 3).unwrap(), big(1));
        assert_eq!(frobenius_number(1, 7).unwrap(), big(-1));
        assert_eq!(frobenius_number(4, 6), Err(LinsolveError::NotCoprime(4, 6)));
        assert_eq!(frobenius_number(0, 6), Err(LinsolveError::ZeroGenerator));
    }

    #[test]
    fn descriptor_examples() {
        let d = frobenius_descriptor(&[3, 5]).unwrap();
        assert_eq!((d.gcd(), d.threshold()), (1, 8));
        assert_eq!(d.exceptions().iter().copied().collect::<Vec<_>>(), vec![0, 3, 5, 6]);

        let d = frobenius_descriptor(&[4, 6]).unwrap();
        assert_eq!((d.gcd(), d.threshold()), (2, 2));
        assert_eq!(d.exceptions().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert!(!d.contains(&big(2)));
        assert!(d.contains(&big(4)) && d.contains(&big(6)) && d.contains(&big(8)));

        let d = frobenius_descriptor(&[1]).unwrap();
        assert_eq!((d.gcd(), d.threshold()), (1, 0));
        assert!(d.exceptions().is_empty());

        assert_eq!(frobenius_descriptor(&[]), Err(LinsolveError::NoGenerators));
        assert_eq!(frobenius_descriptor(&[3, 0]), Err(LinsolveError::ZeroGenerator));
    }

    /// Representable values by dynamic programming up to `limit`.
    fn representable_table(gens: &[u64], limit: usize) -> Vec<bool> {
        let mut ok = vec![false; limit + 1];
        ok[0] = true;
        for v in 1..=limit {
            ok[v] = gens.iter().any(|&a| a as usize <= v && ok[v - a as usize]);
        }
        ok
    }

    #[test]
    fn descriptor_matches_dynamic_programming() {
        for gens in [
            vec![3u64, 5],
            vec![6, 10, 15],
            vec![4, 6],
            vec![7, 11, 13],
            vec![9, 12],
            vec![5],
            vec![8, 12, 20, 30],
        ] {
            let d = frobenius_descriptor(&gens).unwrap();
            let limit = (d.gcd() * (d.threshold() + 10)) as usize;
            let table = representable_table(&gens, limit);
            for (v, &expected) in table.iter().enumerate() {
                let v = big(v as i64);
                assert_eq!(d.contains(&v), expected, "{gens:?} at {v}");
                match d.represent(&v) {
                    Some(counts) => {
                        let total: BigInt = counts
                            .iter()
                            .zip(&gens)
                            .map(|(c, &a)| c * BigInt::from(a))
                            .sum();
                        assert_eq!(total, v);
                        assert!(counts.iter().all(|c| !c.is_negative()));
                    }
                    None => assert!(!expected),
                }
            }
            if d.threshold() > 0 {
                let last = (d.gcd() * (d.threshold() - 1)) as usize;
                assert!(!table[last], "threshold not minimal for {gens:?}");
            }
            assert!(d
                .exceptions()
                .iter()
                .all(|&e| e % d.gcd() == 0 && e < d.gcd() * d.threshold()));
        }
    }

    #[test]
    fn linear_n_examples() {
        assert!(matches!(
            solve_linear_n(&bigs(&[3, 5]), &big(7)).unwrap(),
            LinearOutcome::Unsolvable(_)
        ));
        assert_eq!(
            solve_linear_n(&bigs(&[3, 5]), &big(8)).unwrap(),
            LinearOutcome::Solvable(bigs(&[1, 1]))
        );
        assert_eq!(
            solve_linear_n(&bigs(&[3, -2]), &big(1)).unwrap(),
            LinearOutcome::Solvable(bigs(&[1, 1]))
        );
    }

    #[test]
    fn linear_n_degenerate_cases() {
        assert_eq!(solve_linear_n(&[], &big(0)).unwrap(), LinearOutcome::Solvable(vec![]));
        assert!(matches!(solve_linear_n(&[], &big(2)).unwrap(), LinearOutcome::Unsolvable(_)));
        assert_eq!(
            solve_linear_n(&bigs(&[0, 0]), &big(0)).unwrap(),
            LinearOutcome::Solvable(bigs(&[0, 0]))
        );
        // One-signed sides.
        assert!(matches!(
            solve_linear_n(&bigs(&[2, 4]), &big(-2)).unwrap(),
            LinearOutcome::Unsolvable(_)
        ));
        assert_eq!(
            solve_linear_n(&bigs(&[-2, -3]), &big(-7)).unwrap(),
            LinearOutcome::Solvable(bigs(&[2, 1]))
        );
        // Tails only: 4x - 6y = 2 needs the congruence branch.
        let w = solve_linear_n(&bigs(&[4, -6]), &big(2)).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(big(4) * &w[0] - big(6) * &w[1], big(2));
        assert!(matches!(
            solve_linear_n(&bigs(&[4, -6]), &big(3)).unwrap(),
            LinearOutcome::Unsolvable(_)
        ));
    }

    #[test]
    fn linear_form_extraction() {
        let p = parse_polynomial("3*x - 2*y + 7").unwrap();
        assert_eq!(linear_form(&p).unwrap(), (bigs(&[3, -2]), big(-7)));
        assert_eq!(
            linear_form(&parse_polynomial("x*y").unwrap()),
            Err(LinsolveError::NotLinear(2))
        );
    }
}
