//! The non-solving subcommands: grid status, reductions, cubes, Frobenius.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use dioph::cubes::{search_three_cubes, survey, CubeOutcome, CubeResult};
use dioph::kbase::{KnowledgeBase, Problem};
use dioph::linsolve::frobenius_descriptor;
use dioph::poly::parse_polynomial;
use dioph::reduce::{integers_to_naturals, naturals_to_integers, DEFAULT_SIGN_CAP};

use crate::verdict::{cell_status_name, CellVerdict, GridSummary};
use crate::CliError;

pub fn status(kb: &KnowledgeBase, problem: Problem, degree: &BigUint, vars: u64) -> (CellVerdict, String) {
    let report = kb.status(problem, degree, vars);
    let mut notes = report.caveats.clone();
    // The first line restates the cell; citation, derivation and note lines
    // repeat the report fields.
    notes.extend(
        kb.explain(problem, degree, vars)
            .lines()
            .skip(1)
            .map(str::trim)
            .filter(|l| {
                !l.is_empty()
                    && !["citation: ", "derivation: ", "note: "].iter().any(|p| l.starts_with(p))
            })
            .map(String::from),
    );
    let cell = CellVerdict {
        status: cell_status_name(report.status).to_string(),
        grid: GridSummary::from_report(&report),
        notes,
    };
    (cell, problem.cell_label(degree, &vars))
}

pub fn reduce_n2z(text: &str) -> Result<String, CliError> {
    let p = parse_polynomial(text)?;
    let r = naturals_to_integers(&p);
    let mut out = String::new();
    writeln!(out, "target: {}", r.target).expect("write to String");
    for (v, [a, b, c]) in p.var_names().iter().zip(&r.var_map) {
        writeln!(out, "{v} = {a}^2 + {b}^2 + {c}^2 + {c}").expect("write to String");
    }
    Ok(out)
}

pub fn reduce_z2n(text: &str) -> Result<String, CliError> {
    let p = parse_polynomial(text)?;
    let variants = integers_to_naturals(&p, DEFAULT_SIGN_CAP)?;
    let names = p.var_names();
    let n = names.len();
    let mut out = String::new();
    for (index, q) in variants.iter().enumerate() {
        let signs: Vec<String> = names
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if (index >> (n - 1 - i)) & 1 == 1 {
                    format!("{v} -> -{v}")
                } else {
                    format!("{v} -> {v}")
                }
            })
            .collect();
        writeln!(out, "variant {index} [{}]: {q}", signs.join(", ")).expect("write to String");
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct CubeJson {
    k: String,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<[String; 3]>,
    bound: u64,
}

impl From<&CubeResult> for CubeJson {
    fn from(r: &CubeResult) -> Self {
        let (outcome, triple) = match &r.outcome {
            CubeOutcome::Obstructed => ("obstructed", None),
            CubeOutcome::Found(x, y, z) => ("found", Some([x.to_string(), y.to_string(), z.to_string()])),
            CubeOutcome::NotFound => ("not_found", None),
        };
        CubeJson {
            k: r.k.to_string(),
            outcome,
            triple,
            bound: r.bound,
        }
    }
}

pub fn cubes_search(k: &BigInt, bound: u64) -> String {
    format!("{}\n", search_three_cubes(k, bound))
}

pub fn cubes_survey(k_max: u64, bound: u64, json: bool) -> String {
    let results = survey(k_max, bound);
    if json {
        let rows: Vec<CubeJson> = results.iter().map(CubeJson::from).collect();
        return serde_json::to_string_pretty(&rows).expect("serializable") + "\n";
    }
    let mut out = String::new();
    for r in &results {
        writeln!(out, "{r}").expect("write to String");
    }
    let missing: Vec<String> = results
        .iter()
        .filter(|r| r.outcome == CubeOutcome::NotFound)
        .map(|r| r.k.to_string())
        .collect();
    let obstructed = results.iter().filter(|r| r.outcome == CubeOutcome::Obstructed).count();
    writeln!(
        out,
        "found {}, obstructed {}, not found {}: [{}]",
        results.len() - obstructed - missing.len(),
        obstructed,
        missing.len(),
        missing.join(", ")
    )
    .expect("write to String");
    out
}

pub fn frobenius(generators: &[u64]) -> Result<String, CliError> {
    let desc = frobenius_descriptor(generators)?;
    let g = desc.gcd();
    let t = desc.threshold();
    let gaps = t - desc.exceptions().len() as u64;
    let largest = if t == 0 { -1 } else { (g as i128) * (t as i128 - 1) };
    let strs: Vec<String> = desc.generators().iter().map(|a| a.to_string()).collect();
    let mut out = String::new();
    writeln!(out, "generators: {}", strs.join(" ")).expect("write to String");
    writeln!(out, "gcd: {g}").expect("write to String");
    if g == 1 {
        writeln!(out, "frobenius number: {largest}").expect("write to String");
    } else {
        writeln!(out, "largest non-representable multiple of {g}: {largest}").expect("write to String");
    }
    writeln!(out, "every multiple of {g} from {} on is representable", g as u128 * t as u128)
        .expect("write to String");
    writeln!(out, "non-representable multiples of {g} below that: {gaps}").expect("write to String");
    Ok(out)
}
