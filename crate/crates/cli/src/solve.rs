use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use dioph::kbase::{KnowledgeBase, Problem, Status, StatusReport};
use dioph::linsolve::{integer_roots, linear_form, solve_linear_n, solve_linear_z, LinearOutcome, RootSet};
use dioph::oracle::{box_search, BoxQuery, Domain};
use dioph::poly::{parse_polynomial, Assignment, Polynomial};
use dioph::quadsolve::{integer_witness, natural_witness, solve_quadratic_z, QuadraticEquation};

use crate::verdict::{GridSummary, Verdict, VerdictStatus, WitnessEntry};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveDomain {
    N,
    Z,
}

impl SolveDomain {
    fn problem(self) -> Problem {
        match self {
            SolveDomain::N => Problem::OverN,
            SolveDomain::Z => Problem::OverZ,
        }
    }

    fn oracle(self) -> Domain {
        match self {
            SolveDomain::N => Domain::Naturals,
            SolveDomain::Z => Domain::Integers,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub probe: Option<u64>,
    pub verify: Option<u64>,
}

/// A solved equation together with the grid cell it belongs to.
#[derive(Debug, Clone)]
pub struct Solution {
    pub verdict: Verdict,
    pub cell: String,
}

enum Outcome {
    Solved(Vec<BigInt>),
    NoSolution,
    Open,
    Undecidable,
    Unimplemented,
}

pub fn solve(kb: &KnowledgeBase, text: &str, domain: SolveDomain, opts: &SolveOptions) -> Result<Solution, CliError> {
    let p = parse_polynomial(text)?;
    let (d, n) = p.metrics();
    let problem = domain.problem();
    let degree = BigUint::from(d);
    let report = kb.status(problem, &degree, n as u64);
    let cell = problem.cell_label(&d, &n);
    let mut notes = report.caveats.clone();

    let mut outcome = dispatch(&p, d, n, domain, &report, &mut notes);
    let unsolved = matches!(outcome, Outcome::Open | Outcome::Undecidable | Outcome::Unimplemented);
    if unsolved {
        if let Some(r) = opts.probe {
            if let Some(w) = probe(&p, r, domain, &mut notes) {
                outcome = Outcome::Solved(w);
            }
        }
    }

    let (status, witness) = match outcome {
        Outcome::Solved(w) => {
            let value = p
                .evaluate(&Assignment::new(w.clone()))
                .map_err(|e| CliError::Internal(e.to_string()))?;
            if !value.is_zero() {
                return Err(CliError::Internal(format!("witness evaluates to {value}, not 0")));
            }
            let entries = p
                .var_names()
                .iter()
                .zip(&w)
                .map(|(var, v)| WitnessEntry {
                    var: var.clone(),
                    value: v.to_string(),
                })
                .collect();
            (VerdictStatus::Solved, Some(entries))
        }
        Outcome::NoSolution => (VerdictStatus::NoSolution, None),
        Outcome::Open => (VerdictStatus::UnknownOpen, None),
        Outcome::Undecidable => (VerdictStatus::UndecidableClass, None),
        Outcome::Unimplemented => (VerdictStatus::DecidableUnimplemented, None),
    };

    if let Some(r) = opts.verify {
        cross_check(&p, r, domain, status, &mut notes)?;
    }

    Ok(Solution {
        verdict: Verdict {
            status,
            witness,
            grid: GridSummary::from_report(&report),
            notes,
        },
        cell,
    })
}

fn dispatch(
    p: &Polynomial,
    d: u64,
    n: usize,
    domain: SolveDomain,
    report: &StatusReport,
    notes: &mut Vec<String>,
) -> Outcome {
    if p.is_zero() {
        notes.push("the zero polynomial vanishes everywhere".into());
        return Outcome::Solved(vec![BigInt::zero(); n]);
    }
    if n == 0 {
        notes.push(format!("nonzero constant {p}"));
        return Outcome::NoSolution;
    }
    if n == 1 {
        notes.push("method: rational root test over the divisors of the constant term".into());
        return roots(p, domain, notes);
    }
    if d <= 1 {
        return linear(p, domain, notes);
    }
    if d == 2 && n == 2 {
        return quadratic(p, domain, notes);
    }
    if d == 2 {
        notes.push(format!(
            "quadratic equations in {n} variables are decidable (Siegel), but no procedure is implemented here"
        ));
        return Outcome::Unimplemented;
    }
    match report.status {
        Status::Undecidable => Outcome::Undecidable,
        Status::Open => Outcome::Open,
        Status::Decidable => Outcome::Unimplemented,
    }
}

fn roots(p: &Polynomial, domain: SolveDomain, notes: &mut Vec<String>) -> Outcome {
    let set = match integer_roots(p) {
        Ok(RootSet::Finite(s)) => s,
        Ok(RootSet::All) => return Outcome::Solved(vec![BigInt::zero()]),
        Err(e) => {
            notes.push(e.to_string());
            return Outcome::Unimplemented;
        }
    };
    let listed: Vec<String> = set.iter().map(|r| r.to_string()).collect();
    notes.push(format!("integer roots: {{{}}}", listed.join(", ")));
    let pick = set
        .into_iter()
        .filter(|r| domain == SolveDomain::Z || !r.is_negative())
        .min_by_key(|r| (r.abs(), r.is_negative()));
    match pick {
        Some(r) => Outcome::Solved(vec![r]),
        None => Outcome::NoSolution,
    }
}

fn linear(p: &Polynomial, domain: SolveDomain, notes: &mut Vec<String>) -> Outcome {
    let (coeffs, rhs) = match linear_form(p) {
        Ok(f) => f,
        Err(e) => {
            notes.push(e.to_string());
            return Outcome::Unimplemented;
        }
    };
    let result = match domain {
        SolveDomain::Z => {
            notes.push("method: gcd test with an extended Euclid witness".into());
            solve_linear_z(&coeffs, &rhs)
        }
        SolveDomain::N => {
            notes.push("method: Frobenius descriptors of the positive and negative parts".into());
            match solve_linear_n(&coeffs, &rhs) {
                Ok(r) => r,
                Err(e) => {
                    notes.push(format!("linear solver limit: {e}"));
                    return Outcome::Unimplemented;
                }
            }
        }
    };
    match result {
        LinearOutcome::Solvable(w) => Outcome::Solved(w),
        LinearOutcome::Unsolvable(why) => {
            notes.push(why);
            Outcome::NoSolution
        }
    }
}

fn quadratic(p: &Polynomial, domain: SolveDomain, notes: &mut Vec<String>) -> Outcome {
    let q = match QuadraticEquation::from_polynomial(p) {
        Ok(q) => q,
        Err(e) => {
            notes.push(e.to_string());
            return Outcome::Unimplemented;
        }
    };
    let desc = solve_quadratic_z(&q);
    notes.push(format!("integer solutions: {desc}"));
    let w = match domain {
        SolveDomain::Z => integer_witness(&desc),
        SolveDomain::N => natural_witness(&desc),
    };
    match w {
        Some((x, y)) => Outcome::Solved(vec![x, y]),
        None => Outcome::NoSolution,
    }
}

fn probe(p: &Polynomial, radius: u64, domain: SolveDomain, notes: &mut Vec<String>) -> Option<Vec<BigInt>> {
    let q = BoxQuery::new(p.clone(), radius, domain.oracle()).with_cap(1);
    match box_search(&q) {
        Ok(res) => match res.witnesses.into_iter().next() {
            Some(w) => {
                notes.push(format!("witness found by a bounded probe of radius {radius}"));
                Some(w.values().to_vec())
            }
            None => {
                notes.push(format!(
                    "a bounded probe of radius {radius} found no witness; this does not rule out solutions"
                ));
                None
            }
        },
        Err(e) => {
            notes.push(format!("probe skipped: {e}"));
            None
        }
    }
}

fn cross_check(
    p: &Polynomial,
    radius: u64,
    domain: SolveDomain,
    status: VerdictStatus,
    notes: &mut Vec<String>,
) -> Result<(), CliError> {
    let q = BoxQuery::new(p.clone(), radius, domain.oracle()).with_cap(1);
    let res = box_search(&q).map_err(|e| CliError::Usage(format!("--verify: {e}")))?;
    match (res.witnesses.first(), status) {
        (Some(w), VerdictStatus::NoSolution) => Err(CliError::Internal(format!(
            "box oracle found {w} although the solver reported no solution"
        ))),
        (Some(w), _) => {
            notes.push(format!("box oracle (radius {radius}): first witness {w}"));
            Ok(())
        }
        (None, _) => {
            notes.push(format!("box oracle (radius {radius}): no witness in the box"));
            Ok(())
        }
    }
}
