//! Natural-number solutions and preferred witnesses.
//!
//! Witnesses are chosen deterministically: the least pair under
//! `(|x| + |y|, |x|, x < 0, y < 0)`, so `(1, 0)` beats `(-1, 0)` and
//! `(0, 2)` beats `(2, 0)`. Over ℕ this is `(x + y, x)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::description::{critical_points, eval_quadratic, Family, LinearFamily, Point, SolutionDescription};
use super::{solve_quadratic_z, QuadraticEquation};
use crate::arith::{ceil_div, floor_div, isqrt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaturalOutcome {
    Solvable(Point),
    Unsolvable,
}

pub fn solve_quadratic_n(q: &QuadraticEquation) -> NaturalOutcome {
    match natural_witness(&solve_quadratic_z(q)) {
        Some(p) => NaturalOutcome::Solvable(p),
        None => NaturalOutcome::Unsolvable,
    }
}

fn key(p: &Point) -> (BigInt, BigInt, bool, bool) {
    (p.0.abs() + p.1.abs(), p.0.abs(), p.0.is_negative(), p.1.is_negative())
}

fn best(points: impl IntoIterator<Item = Point>) -> Option<Point> {
    points.into_iter().min_by_key(key)
}

fn is_natural(p: &Point) -> bool {
    !p.0.is_negative() && !p.1.is_negative()
}

/// The least natural solution, if any.
pub fn natural_witness(desc: &SolutionDescription) -> Option<Point> {
    match desc {
        SolutionDescription::Empty => None,
        SolutionDescription::All => Some((BigInt::zero(), BigInt::zero())),
        SolutionDescription::Finite(v) => best(v.iter().filter(|p| is_natural(p)).cloned()),
        SolutionDescription::Families(fams) => best(fams.iter().filter_map(|f| match f {
            Family::Linear(l) => natural_on_family(l),
            Family::Pell(p) => best(
                p.walk(true)
                    .into_iter()
                    .chain(p.walk(false))
                    .filter(is_natural),
            ),
        })),
    }
}

/// The least integer solution, if any.
pub fn integer_witness(desc: &SolutionDescription) -> Option<Point> {
    match desc {
        SolutionDescription::Empty => None,
        SolutionDescription::All => Some((BigInt::zero(), BigInt::zero())),
        SolutionDescription::Finite(v) => best(v.iter().cloned()),
        SolutionDescription::Families(fams) => best(fams.iter().filter_map(|f| match f {
            Family::Linear(l) => {
                let sum = add(&l.x, &l.y);
                let diff = sub(&l.x, &l.y);
                let mut ts = vec![BigInt::zero()];
                for c in [&l.x, &l.y, &sum, &diff] {
                    ts.extend(critical_points(c));
                }
                best(ts.iter().map(|t| l.at(t)))
            }
            Family::Pell(p) => best(p.walk(true).into_iter().chain(p.walk(false))),
        })),
    }
}

fn add(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

fn sub(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

/// Inclusive integer interval; `None` is unbounded on that side.
type Interval = (Option<BigInt>, Option<BigInt>);

fn in_interval(t: &BigInt, iv: &Interval) -> bool {
    iv.0.as_ref().is_none_or(|lo| t >= lo) && iv.1.as_ref().is_none_or(|hi| t <= hi)
}

/// `{t ∈ ℤ : c₀ + c₁t + c₂t² ≥ 0}` as a union of intervals.
fn nonnegative_set(c: &[BigInt; 3]) -> Vec<Interval> {
    let [c0, c1, c2] = c;
    let q = |t: &BigInt| eval_quadratic(c, t);
    if c2.is_zero() {
        if c1.is_zero() {
            return if c0.is_negative() { vec![] } else { vec![(None, None)] };
        }
        return if c1.is_positive() {
            vec![(Some(ceil_div(&-c0, c1)), None)]
        } else {
            vec![(None, Some(floor_div(c0, &-c1)))]
        };
    }
    let disc: BigInt = c1 * c1 - c2 * c0 * 4;
    if disc.is_negative() {
        return if c2.is_positive() { vec![(None, None)] } else { vec![] };
    }
    let den = c2 * 2;
    let s = isqrt(&disc);
    let v_floor = floor_div(&-c1, &den);
    let v_ceil: BigInt = &v_floor + 1;
    // Approximate roots, within one of the true boundaries.
    let (r_lo, r_hi) = {
        let a = floor_div(&(-c1 - &s), &den);
        let b = floor_div(&(-c1 + &s), &den);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    if c2.is_positive() {
        // q decreases up to the vertex and increases after it.
        let mut left = (&r_lo).min(&v_floor).clone();
        while q(&left).is_negative() {
            left -= 1;
        }
        while left < v_floor && !q(&(&left + 1)).is_negative() {
            left += 1;
        }
        let mut right = (&r_hi + BigInt::from(1)).max(v_ceil.clone());
        while q(&right).is_negative() {
            right += 1;
        }
        while right > v_ceil && !q(&(&right - 1)).is_negative() {
            right -= 1;
        }
        vec![(None, Some(left)), (Some(right), None)]
    } else {
        let top = if !q(&v_floor).is_negative() {
            v_floor
        } else if !q(&v_ceil).is_negative() {
            v_ceil
        } else {
            return vec![];
        };
        let mut lo = (&r_lo).min(&top).clone();
        while lo < top && q(&lo).is_negative() {
            lo += 1;
        }
        while !q(&(&lo - 1)).is_negative() {
            lo -= 1;
        }
        let mut hi = (&r_hi + BigInt::from(1)).max(top.clone());
        while hi > top && q(&hi).is_negative() {
            hi -= 1;
        }
        while !q(&(&hi + 1)).is_negative() {
            hi += 1;
        }
        vec![(Some(lo), Some(hi))]
    }
}

fn intersect(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let lo = match (&x.0, &y.0) {
                (Some(p), Some(q)) => Some(p.max(q).clone()),
                (p, q) => p.clone().or(q.clone()),
            };
            let hi = match (&x.1, &y.1) {
                (Some(p), Some(q)) => Some(p.min(q).clone()),
                (p, q) => p.clone().or(q.clone()),
            };
            if let (Some(l), Some(h)) = (&lo, &hi) {
                if l > h {
                    continue;
                }
            }
            out.push((lo, hi));
        }
    }
    out
}

fn natural_on_family(l: &LinearFamily) -> Option<Point> {
    let allowed = intersect(&nonnegative_set(&l.x), &nonnegative_set(&l.y));
    let sum = add(&l.x, &l.y);
    let mut ts: Vec<BigInt> = Vec::new();
    for c in [&l.x, &l.y, &sum] {
        ts.extend(critical_points(c));
    }
    let mut pts = Vec::new();
    for iv in &allowed {
        let mut cands: Vec<BigInt> = ts.iter().filter(|t| in_interval(t, iv)).cloned().collect();
        cands.extend(iv.0.iter().cloned());
        cands.extend(iv.1.iter().cloned());
        if cands.is_empty() {
            cands.push(BigInt::zero());
        }
        pts.extend(cands.iter().map(|t| l.at(t)).filter(is_natural));
    }
    best(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn brute(c: &[BigInt; 3]) -> Vec<i64> {
        (-60i64..=60).filter(|t| !eval_quadratic(c, &b(*t)).is_negative()).collect()
    }

    #[test]
    fn nonnegative_sets_match_brute_force() {
        for c2 in -3i64..=3 {
            for c1 in -7i64..=7 {
                for c0 in -12i64..=12 {
                    let c = [b(c0), b(c1), b(c2)];
                    let set = nonnegative_set(&c);
                    let got: Vec<i64> = (-60i64..=60)
                        .filter(|t| set.iter().any(|iv| in_interval(&b(*t), iv)))
                        .collect();
                    assert_eq!(got, brute(&c), "{c0} + {c1} t + {c2} t^2");
                }
            }
        }
    }

    #[test]
    fn family_witnesses() {
        let line = LinearFamily {
            x: [b(-7), b(1), b(0)],
            y: [b(10), b(-1), b(0)],
        };
        assert_eq!(natural_on_family(&line), Some((b(0), b(3))));
        let neg = LinearFamily {
            x: [b(-1), b(-1), b(0)],
            y: [b(0), b(1), b(0)],
        };
        assert_eq!(natural_on_family(&neg), None);
    }
}
