//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each with its timing.
//! Exits nonzero when any criterion fails or overruns its time limit.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dioph::arith::{exact_sqrt, is_square};
use dioph::cubes::{mod9_obstructed, survey, CubeOutcome};
use dioph::kbase::{DegreeBound, KnowledgeBase, Problem, Status, VarBound};
use dioph::linsolve::{
    frobenius_descriptor, frobenius_number, integer_roots, solve_linear_n, solve_linear_z, LinearOutcome, RootSet,
};
use dioph::oracle::{box_search, BoxQuery, Domain};
use dioph::poly::Polynomial;
use dioph::quadsolve::{pell_fundamental, solve_quadratic_z, QuadraticEquation};
use dioph::reduce::naturals_to_integers;

use common::{preimage_triples, random_poly, target_roots};

type Outcome = Result<String, String>;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn grid_reproduction() -> Outcome {
    let kb = KnowledgeBase::builtin();
    let base_u = kb.base_facts().iter().filter(|f| f.status == Status::Undecidable).count();
    if base_u != 17 {
        return Err(format!("expected 17 undecidable base facts, found {base_u}"));
    }
    let e = |m: u64, k: u32| BigUint::from(m) * BigUint::from(10u32).pow(k);
    let printed = [
        (BigUint::from(8u32), 174u64),
        (BigUint::from(16u32), 114),
        (BigUint::from(24u32), 96),
        (BigUint::from(32u32), 87),
        (BigUint::from(40u32), 84),
        (BigUint::from(48u32), 78),
        (BigUint::from(56u32), 75),
        (BigUint::from(72u32), 72),
        (BigUint::from(192u32), 63),
        (BigUint::from(5336u32), 57),
        (BigUint::from(400000u32), 42),
        (BigUint::from(31u32) << 14u32, 30),
        (e(132, 42), 28),
        (e(26, 43), 36),
        (e(92, 43), 24),
        (e(172, 43), 22),
        (e(32, 44), 20),
    ];
    let derived: BTreeSet<(BigUint, u64)> = kb
        .derived_facts()
        .iter()
        .filter(|f| f.fact.problem == Problem::OverZ)
        .filter_map(|f| match (&f.fact.degree, f.fact.vars) {
            (DegreeBound::Exact(d), VarBound::Exact(n)) => Some((d.clone(), n)),
            _ => None,
        })
        .collect();
    let missing: Vec<String> = printed
        .iter()
        .filter(|p| !derived.contains(p))
        .map(|(d, n)| format!("HZ({d},{n})"))
        .collect();
    if !missing.is_empty() {
        return Err(format!("not derived: {}", missing.join(", ")));
    }
    Ok(format!("{} printed pairs among {} derived HZ facts", printed.len(), derived.len()))
}

fn frobenius() -> Outcome {
    let mut pairs = 0;
    for a1 in 1..=40u64 {
        for a2 in 1..=40u64 {
            if a1.gcd(&a2) != 1 {
                continue;
            }
            let sylvester = (a1 * a2) as i64 - a1 as i64 - a2 as i64;
            let d = frobenius_descriptor(&[a1, a2]).map_err(|e| e.to_string())?;
            if d.reduced_frobenius_number() != sylvester {
                return Err(format!("({a1},{a2}): descriptor gives {}", d.reduced_frobenius_number()));
            }
            pairs += 1;
        }
    }
    let f = frobenius_number(3, 5).map_err(|e| e.to_string())?;
    if f != b(7) {
        return Err(format!("frobenius_number(3,5) = {f}"));
    }
    Ok(format!("{pairs} coprime pairs; frobenius_number(3,5) = 7"))
}

fn quadratic_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut witnesses = 0usize;
    let mut samples = 0usize;
    const RUNS: usize = 2000;
    for _ in 0..RUNS {
        let c: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-8..=8));
        let [a, bb, cc, d, e, f] = c;
        let q = QuadraticEquation::from_i64s(c);
        let desc = solve_quadratic_z(&q);
        for x in -100i64..=100 {
            for y in -100i64..=100 {
                if a * x * x + bb * x * y + cc * y * y + d * x + e * y + f == 0 {
                    witnesses += 1;
                    if !desc.contains(&b(x), &b(y)) {
                        return Err(format!("{c:?}: ({x},{y}) is missing from {desc}"));
                    }
                }
            }
        }
        for (x, y) in desc.samples(5, 3) {
            samples += 1;
            if !q.evaluate(&x, &y).is_zero() {
                return Err(format!("{c:?}: emitted ({x},{y}) is not a root"));
            }
        }
    }
    Ok(format!("{RUNS} equations, {witnesses} oracle witnesses contained, {samples} samples verified"))
}

fn pell() -> Outcome {
    let mut checked = 0;
    for d in 2i64..=50 {
        if is_square(&b(d)) {
            continue;
        }
        let mut y = 1i64;
        let brute = loop {
            let xx = b(d) * y * y + 1;
            if let Some(x) = exact_sqrt(&xx) {
                break (x, b(y));
            }
            y += 1;
        };
        let got = pell_fundamental(&b(d)).map_err(|e| e.to_string())?;
        if got != brute {
            return Err(format!("D={d}: solver {got:?}, brute force {brute:?}"));
        }
        checked += 1;
    }
    let (t, u) = pell_fundamental(&b(61)).map_err(|e| e.to_string())?;
    if &t * &t - &u * &u * 61 != b(1) || u >= b(300_000_000) || !u.is_positive() {
        return Err(format!("D=61: ({t}, {u}) fails"));
    }
    Ok(format!("{checked} values of D match; D=61 gives ({t}, {u})"))
}

fn reduction_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let full = preimage_triples(6, false);
    let nonnegative = preimage_triples(6, true);
    let mut solvable = 0;
    let mut lifted = 0;
    const RUNS: usize = 500;
    for _ in 0..RUNS {
        let nv = rng.gen_range(1..=3);
        let terms = rng.gen_range(1..=5);
        let p = random_poly(&mut rng, &["x", "y", "z"][..nv], 3, 5, terms);
        let natural = if p.num_vars() == 0 {
            p.is_zero()
        } else {
            !box_search(&BoxQuery::new(p.clone(), 6, Domain::Naturals).with_cap(1))
                .map_err(|e| e.to_string())?
                .witnesses
                .is_empty()
        };
        let red = naturals_to_integers(&p);
        let roots = if p.num_vars() == 0 {
            if red.target.is_zero() {
                vec![dioph::poly::Assignment::new(vec![])]
            } else {
                vec![]
            }
        } else {
            let triples = if p.num_vars() <= 2 { &full } else { &nonnegative };
            target_roots(&p, triples, usize::MAX)
        };
        if natural != !roots.is_empty() {
            return Err(format!("{p}: natural witness {natural}, reduced witness {}", !roots.is_empty()));
        }
        solvable += usize::from(natural);
        for t in &roots {
            let s = red.lift_witness(t).map_err(|e| e.to_string())?;
            if !p.evaluate(&s).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("{p}: lifted {s} is not a root"));
            }
            lifted += 1;
        }
    }
    Ok(format!("{RUNS} polynomials ({solvable} solvable in the box), {lifted} lifted witnesses verified"))
}

fn three_cubes() -> Outcome {
    let results = survey(100, 5000);
    let mut not_found = Vec::new();
    let mut found = 0;
    for r in &results {
        let k = &r.k;
        let residue = k.mod_floor(&b(9));
        let expect_obstructed = residue == b(4) || residue == b(5);
        if mod9_obstructed(k) != expect_obstructed || (r.outcome == CubeOutcome::Obstructed) != expect_obstructed {
            return Err(format!("k={k}: mod-9 filter disagrees"));
        }
        match &r.outcome {
            CubeOutcome::Found(x, y, z) => {
                if &(x * x * x + y * y * y + z * z * z) != k {
                    return Err(format!("k={k}: ({x},{y},{z}) does not verify"));
                }
                found += 1;
            }
            CubeOutcome::NotFound => not_found.push(k.to_string()),
            CubeOutcome::Obstructed => {}
        }
    }
    for k in ["33", "42", "74"] {
        if !not_found.iter().any(|n| n == k) {
            return Err(format!("k={k} was unexpectedly found"));
        }
    }
    Ok(format!("{found} found and verified; not found: {}", not_found.join(", ")))
}

fn univariate_polynomial(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_named_terms(coeffs.iter().enumerate().map(|(k, c)| (b(*c), vec![("x", k as u32)])))
}

/// Brute force for `a·v = k` with the last variable solved exactly and the
/// others ranging over `range`.
fn linear_brute(a: &[i64], k: i64, range: (i64, i64), naturals: bool) -> bool {
    fn rec(a: &[i64], k: i64, range: (i64, i64), naturals: bool) -> bool {
        match a {
            [] => k == 0,
            [last] => {
                if *last == 0 {
                    k == 0
                } else {
                    k % last == 0 && (!naturals || k / last >= 0)
                }
            }
            [first, rest @ ..] => (range.0..=range.1).any(|v| rec(rest, k - first * v, range, naturals)),
        }
    }
    rec(a, k, range, naturals)
}

fn univariate_and_linear() -> Outcome {
    let mut polys = 0;
    let span: Vec<i64> = (-12..=12).collect();
    for &c0 in &span {
        for &c1 in &span {
            for &c2 in &span {
                for &c3 in &span {
                    let coeffs = [c0, c1, c2, c3];
                    let p = univariate_polynomial(&coeffs);
                    if p.is_zero() {
                        continue;
                    }
                    let got = match integer_roots(&p).map_err(|e| e.to_string())? {
                        RootSet::Finite(s) => s,
                        RootSet::All => return Err("nonzero polynomial reported as zero".into()),
                    };
                    let expected: BTreeSet<BigInt> = (-13i64..=13)
                        .filter(|x| c0 + c1 * x + c2 * x * x + c3 * x * x * x == 0)
                        .map(BigInt::from)
                        .collect();
                    if got != expected {
                        return Err(format!("{p}: roots {got:?}, oracle {expected:?}"));
                    }
                    polys += 1;
                }
            }
        }
    }

    let mut equations = 0;
    let mut check = |a: &[i64], k: i64| -> Result<(), String> {
        let coeffs: Vec<BigInt> = a.iter().map(|v| b(*v)).collect();
        for naturals in [false, true] {
            let got = if naturals {
                solve_linear_n(&coeffs, &b(k)).map_err(|e| e.to_string())?
            } else {
                solve_linear_z(&coeffs, &b(k))
            };
            let range = if naturals { (0, 50) } else { (-30, 30) };
            let expected = linear_brute(a, k, range, naturals);
            if let LinearOutcome::Solvable(w) = &got {
                let total: BigInt = coeffs.iter().zip(w).map(|(c, x)| c * x).sum();
                if total != b(k) || (naturals && w.iter().any(|x| x.is_negative())) {
                    return Err(format!("{a:?} = {k}: bad witness {w:?}"));
                }
            }
            if got.witness().is_some() != expected {
                let domain = if naturals { "N" } else { "Z" };
                return Err(format!("{a:?} = {k} over {domain}: solver {got:?}, oracle {expected}"));
            }
            equations += 1;
        }
        Ok(())
    };
    for &k in &span {
        for &a1 in &span {
            check(&[a1], k)?;
            for &a2 in &span {
                check(&[a1, a2], k)?;
            }
        }
    }
    let small: Vec<i64> = (-6..=6).collect();
    for &k in &span {
        for &a1 in &small {
            for &a2 in &small {
                for &a3 in &small {
                    check(&[a1, a2, a3], k)?;
                }
            }
        }
    }
    Ok(format!("{polys} univariate polynomials, {equations} linear equations"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("AC1 grid reproduction", Duration::from_secs(1), grid_reproduction),
        ("AC2 Frobenius", Duration::from_secs(5), frobenius),
        ("AC3 binary quadratic oracle equivalence", Duration::from_secs(300), quadratic_oracle),
        ("AC4 Pell", Duration::from_secs(60), pell),
        ("AC5 reduction round trip", Duration::from_secs(120), reduction_round_trip),
        ("AC6 three cubes", Duration::from_secs(300), three_cubes),
        ("AC7 univariate and linear solvers", Duration::from_secs(60), univariate_and_linear),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded the {limit:?} limit")),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        println!(
            "[{}] {name} ({:.2?}, limit {limit:?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
