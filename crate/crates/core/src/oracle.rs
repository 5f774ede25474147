//! Exhaustive box search: the ground truth the solvers are tested against.
//!
//! Deliberately dumb. Every point of `[-r, r]^n` (or `[0, r]^n`) is visited in
//! lexicographic order and the polynomial is evaluated exactly. Evaluation
//! runs in checked `i128` and falls back to the arbitrary-precision path on
//! overflow, so results never depend on word size.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{Assignment, Polynomial};

/// Default evaluation budget for a single query.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Naturals,
    Integers,
}

#[derive(Debug, Clone)]
pub struct BoxQuery {
    pub poly: Polynomial,
    pub radius: u64,
    pub domain: Domain,
    /// Maximum number of witnesses returned (at least 1).
    pub cap: usize,
}

impl BoxQuery {
    pub fn new(poly: Polynomial, radius: u64, domain: Domain) -> Self {
        BoxQuery {
            poly,
            radius,
            domain,
            cap: usize::MAX,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    /// Number of points in the box.
    pub fn size(&self) -> u128 {
        let side = match self.domain {
            Domain::Naturals => u128::from(self.radius) + 1,
            Domain::Integers => 2 * u128::from(self.radius) + 1,
        };
        let mut total: u128 = 1;
        for _ in 0..self.poly.num_vars() {
            total = total.saturating_mul(side);
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxResult {
    pub witnesses: Vec<Assignment>,
    /// True iff every point of the box was examined.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("box of {size} points exceeds the evaluation budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("box radius {0} does not fit in a machine word")]
    RadiusTooLarge(u64),
}

pub fn box_search(q: &BoxQuery) -> Result<BoxResult, OracleError> {
    box_search_with_budget(q, DEFAULT_BUDGET)
}

pub fn box_search_with_budget(q: &BoxQuery, budget: u128) -> Result<BoxResult, OracleError> {
    let size = q.size();
    if size > budget {
        return Err(OracleError::BudgetExceeded { size, budget });
    }
    let r = i64::try_from(q.radius).map_err(|_| OracleError::RadiusTooLarge(q.radius))?;
    let (lo, hi) = match q.domain {
        Domain::Naturals => (0, r),
        Domain::Integers => (-r, r),
    };
    let ranges = vec![(lo, hi); q.poly.num_vars()];
    Ok(search_product(&q.poly, &ranges, q.cap.max(1)))
}

/// Scans the product of per-variable inclusive ranges in lexicographic order.
pub fn search_product(p: &Polynomial, ranges: &[(i64, i64)], cap: usize) -> BoxResult {
    let n = p.num_vars();
    assert_eq!(ranges.len(), n, "one range per variable");
    let eval = CompiledPoly::new(p);
    let mut witnesses = Vec::new();
    if ranges.iter().any(|(a, b)| a > b) {
        return BoxResult {
            witnesses,
            exhausted: true,
        };
    }
    let mut point: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if eval.is_root(&point) {
            witnesses.push(Assignment::from_i64s(&point));
            if witnesses.len() >= cap {
                let last = point.iter().zip(ranges).all(|(v, r)| *v == r.1);
                return BoxResult {
                    witnesses,
                    exhausted: last,
                };
            }
        }
        // Odometer increment, last coordinate fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return BoxResult {
                    witnesses,
                    exhausted: true,
                };
            }
            i -= 1;
            if point[i] < ranges[i].1 {
                point[i] += 1;
                break;
            }
            point[i] = ranges[i].0;
        }
    }
}

/// Scans an explicit list of candidate values per variable (product order).
pub fn search_candidates(p: &Polynomial, candidates: &[Vec<i64>], cap: usize) -> BoxResult {
    let n = p.num_vars();
    assert_eq!(candidates.len(), n, "one candidate list per variable");
    let eval = CompiledPoly::new(p);
    let mut witnesses = Vec::new();
    if candidates.iter().any(Vec::is_empty) {
        return BoxResult {
            witnesses,
            exhausted: true,
        };
    }
    let mut idx = vec![0usize; n];
    let mut point: Vec<i64> = candidates.iter().map(|c| c[0]).collect();
    loop {
        if eval.is_root(&point) {
            witnesses.push(Assignment::from_i64s(&point));
            if witnesses.len() >= cap {
                let last = idx.iter().zip(candidates).all(|(i, c)| *i + 1 == c.len());
                return BoxResult {
                    witnesses,
                    exhausted: last,
                };
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return BoxResult {
                    witnesses,
                    exhausted: true,
                };
            }
            i -= 1;
            if idx[i] + 1 < candidates[i].len() {
                idx[i] += 1;
                point[i] = candidates[i][idx[i]];
                break;
            }
            idx[i] = 0;
            point[i] = candidates[i][0];
        }
    }
}

/// A polynomial flattened for repeated evaluation at small points.
pub struct CompiledPoly<'a> {
    source: &'a Polynomial,
    small: Option<Vec<(i128, Vec<(usize, u32)>)>>,
}

impl<'a> CompiledPoly<'a> {
    pub fn new(p: &'a Polynomial) -> Self {
        let small = p
            .terms()
            .map(|(m, c)| {
                let factors = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| (i, *e))
                    .collect();
                c.to_i128().map(|c| (c, factors))
            })
            .collect::<Option<Vec<_>>>();
        CompiledPoly { source: p, small }
    }

    fn eval_small(terms: &[(i128, Vec<(usize, u32)>)], point: &[i64]) -> Option<i128> {
        let mut total: i128 = 0;
        for (c, factors) in terms {
            let mut t = *c;
            for &(i, e) in factors {
                let v = i128::from(point[i]);
                for _ in 0..e {
                    t = t.checked_mul(v)?;
                }
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    pub fn evaluate(&self, point: &[i64]) -> BigInt {
        if let Some(terms) = &self.small {
            if let Some(v) = Self::eval_small(terms, point) {
                return BigInt::from(v);
            }
        }
        let values: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        self.source.eval_slice(&values)
    }

    pub fn is_root(&self, point: &[i64]) -> bool {
        if let Some(terms) = &self.small {
            if let Some(v) = Self::eval_small(terms, point) {
                return v == 0;
            }
        }
        let values: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        self.source.eval_slice(&values).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn circle_of_radius_sqrt2() {
        let r = box_search(&BoxQuery::new(p("x^2 + y^2 - 2"), 2, Domain::Integers)).unwrap();
        assert!(r.exhausted);
        let expected: Vec<Assignment> = [[-1, -1], [-1, 1], [1, -1], [1, 1]]
            .iter()
            .map(|v| Assignment::from_i64s(v))
            .collect();
        assert_eq!(r.witnesses, expected);
    }

    #[test]
    fn no_natural_root_within_three() {
        let r = box_search(&BoxQuery::new(p("x - 5"), 3, Domain::Naturals)).unwrap();
        assert!(r.exhausted);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn twenty_nine_as_three_cubes() {
        let q = p("x^3 + y^3 + z^3 - 29");
        let r = box_search(&BoxQuery::new(q.clone(), 4, Domain::Integers)).unwrap();
        for perm in [[1, 1, 3], [1, 3, 1], [3, 1, 1]] {
            assert!(r.witnesses.contains(&Assignment::from_i64s(&perm)));
        }
        for w in &r.witnesses {
            assert!(q.evaluate(w).unwrap().is_zero());
        }
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_truncates_and_marks_unexhausted() {
        let q = BoxQuery::new(p("x*y"), 2, Domain::Integers).with_cap(3);
        let r = box_search(&q).unwrap();
        assert_eq!(r.witnesses.len(), 3);
        assert!(!r.exhausted);
    }

    #[test]
    fn budget_guard() {
        let q = BoxQuery::new(p("x + y + z - 1"), 1000, Domain::Integers);
        assert!(matches!(
            box_search_with_budget(&q, 1_000_000),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn constant_polynomials() {
        let r = box_search(&BoxQuery::new(p("0"), 5, Domain::Integers)).unwrap();
        assert_eq!(r.witnesses, vec![Assignment::default()]);
        let r = box_search(&BoxQuery::new(p("3"), 5, Domain::Integers)).unwrap();
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn overflowing_points_use_exact_fallback() {
        let q = p(&format!("x^15 - 1{}", "0".repeat(45)));
        let c = CompiledPoly::new(&q);
        assert_eq!(c.evaluate(&[1000]), BigInt::zero());
        assert!(c.is_root(&[1000]));
        assert!(!c.is_root(&[999]));
    }
}
