//! Decidability grid for `HN(d,n)` / `HZ(d,n)`: the problem of deciding
//! solvability over ℕ / ℤ for polynomials of degree ≤ d in ≤ n variables.
//!
//! Base facts are loaded from a tab-separated fact file (the shipped one is
//! compiled in). Two reductions turn every undecidable ℕ-cell `(d, n)` into
//! undecidable ℤ-cells:
//!
//! - substituting `x = a² + b² + c² + c` for each variable: `(2d, 3n)`,
//! - Sun's reduction: `(max{2d, (2n+3)·2ⁿ}, 2n + 2)`,
//!
//! and sign splitting turns every undecidable ℤ-cell into the same
//! ℕ-cell. Undecidable facts are upward closed and decidable facts are
//! downward closed; a query is `U`, `D`, or `OPEN` accordingly.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

const BUILTIN_FACTS: &str = include_str!("../data/facts.tsv");
const FORMAT_HEADER: &str = "# dioph-facts v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Problem {
    OverN,
    OverZ,
    /// Solutions in ℚ: reported as open without grid facts.
    OverQ,
}

impl Problem {
    pub fn cell_label(self, d: &impl fmt::Display, n: &impl fmt::Display) -> String {
        match self {
            Problem::OverN => format!("HN({d},{n})"),
            Problem::OverZ => format!("HZ({d},{n})"),
            Problem::OverQ => format!("HQ({d},{n})"),
        }
    }

    fn code(self) -> &'static str {
        match self {
            Problem::OverN => "N",
            Problem::OverZ => "Z",
            Problem::OverQ => "Q",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Decidable,
    Undecidable,
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Decidable => "D",
            Status::Undecidable => "U",
            Status::Open => "OPEN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DegreeBound {
    Exact(BigUint),
    /// "for some d": the degree exists but is not stated.
    Unstated,
    /// Every degree.
    All,
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::Exact(d) => write!(f, "{d}"),
            DegreeBound::Unstated => f.write_str("d"),
            DegreeBound::All => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarBound {
    Exact(u64),
    All,
}

impl VarBound {
    fn covers(self, n: u64) -> bool {
        match self {
            VarBound::Exact(m) => n <= m,
            VarBound::All => true,
        }
    }
}

impl fmt::Display for VarBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarBound::Exact(n) => write!(f, "{n}"),
            VarBound::All => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFact {
    pub problem: Problem,
    pub degree: DegreeBound,
    pub vars: VarBound,
    /// `Decidable` or `Undecidable`.
    pub status: Status,
    pub citation: String,
    pub caveat: Option<String>,
}

impl GridFact {
    pub fn label(&self) -> String {
        self.problem.cell_label(&self.degree, &self.vars)
    }
}

/// How a derived fact follows from its source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// ℕ → ℤ by `x ↦ a² + b² + c² + c`: `(d, n) ↦ (2d, 3n)`.
    SquaresSubstitution,
    /// Sun's ℕ → ℤ reduction: `(d, n) ↦ (max{2d, (2n+3)2ⁿ}, 2n + 2)`.
    SunReduction,
    /// ℤ → ℕ by splitting over the 2ⁿ sign patterns: same cell.
    SignSplit,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::SquaresSubstitution => {
                "substituting x = a^2 + b^2 + c^2 + c for every variable maps (d,n) to (2d,3n)"
            }
            Rule::SunReduction => "Sun's reduction maps (d,n) to (max{2d,(2n+3)2^n}, 2n+2)",
            Rule::SignSplit => "splitting over the 2^n sign patterns reduces HZ(d,n) to HN(d,n)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedFact {
    pub fact: GridFact,
    /// Index into [`KnowledgeBase::base_facts`].
    pub source: usize,
    pub rule: Rule,
}

/// Which fact settled a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Base(usize),
    Derived(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusReport {
    pub status: Status,
    pub citations: Vec<String>,
    pub derivation: Option<String>,
    pub caveats: Vec<String>,
    /// The fact that settled the query, when one did.
    pub support: Option<Support>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactFileError {
    #[error("fact file must start with `{FORMAT_HEADER}`")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("inconsistent facts: {0} is both decidable and undecidable")]
    Inconsistent(String),
    #[error("cannot read fact file: {0}")]
    Io(String),
}

#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    base: Vec<GridFact>,
    derived: Vec<DerivedFact>,
}

/// Sun's degree bound `max{2d, (2n+3)·2ⁿ}`.
pub fn sun_degree(d: &BigUint, n: u64) -> BigUint {
    let twice = d * 2u32;
    let shift = usize::try_from(n).expect("variable bound fits in usize");
    let other = (BigUint::one() << shift) * (2 * n + 3);
    twice.max(other)
}

impl KnowledgeBase {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_FACTS).expect("shipped fact file is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self, FactFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| FactFileError::Io(e.to_string()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, FactFileError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim_end() == FORMAT_HEADER => {}
            _ => return Err(FactFileError::MissingHeader),
        }
        let mut base = Vec::new();
        for (i, raw) in lines {
            let line = raw.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            base.push(parse_row(i + 1, line)?);
        }
        let kb = KnowledgeBase {
            derived: derive(&base),
            base,
        };
        kb.check_consistency()?;
        Ok(kb)
    }

    pub fn base_facts(&self) -> &[GridFact] {
        &self.base
    }

    pub fn derived_facts(&self) -> &[DerivedFact] {
        &self.derived
    }

    fn fact(&self, s: Support) -> &GridFact {
        match s {
            Support::Base(i) => &self.base[i],
            Support::Derived(i) => &self.derived[i].fact,
        }
    }

    fn all_facts(&self) -> impl Iterator<Item = (Support, &GridFact)> {
        self.base
            .iter()
            .enumerate()
            .map(|(i, f)| (Support::Base(i), f))
            .chain(
                self.derived
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (Support::Derived(i), &f.fact)),
            )
    }

    fn decidable_cover(&self, problem: Problem, d: &BigUint, n: u64) -> Vec<Support> {
        self.all_facts()
            .filter(|(_, f)| f.problem == problem && f.status == Status::Decidable)
            .filter(|(_, f)| {
                f.vars.covers(n)
                    && match &f.degree {
                        DegreeBound::Exact(m) => d <= m,
                        DegreeBound::All => true,
                        DegreeBound::Unstated => false,
                    }
            })
            .map(|(s, _)| s)
            .collect()
    }

    /// Concrete undecidable corners `(d0, n0) ≤ (d, n)`.
    fn undecidable_cover(&self, problem: Problem, d: &BigUint, n: u64) -> Vec<Support> {
        self.all_facts()
            .filter(|(_, f)| f.problem == problem && f.status == Status::Undecidable)
            .filter(|(_, f)| match (&f.degree, f.vars) {
                (DegreeBound::Exact(d0), VarBound::Exact(n0)) => d0 <= d && n0 <= n,
                _ => false,
            })
            .map(|(s, _)| s)
            .collect()
    }

    fn check_consistency(&self) -> Result<(), FactFileError> {
        for (_, f) in self.all_facts() {
            if f.status != Status::Undecidable {
                continue;
            }
            if let (DegreeBound::Exact(d0), VarBound::Exact(n0)) = (&f.degree, f.vars) {
                if !self.decidable_cover(f.problem, d0, n0).is_empty() {
                    return Err(FactFileError::Inconsistent(f.label()));
                }
            }
        }
        Ok(())
    }

    /// Undecidable corners for `problem` with a concrete degree.
    pub fn undecidable_corners(&self, problem: Problem) -> Vec<(BigUint, u64, Support)> {
        self.all_facts()
            .filter(|(_, f)| f.problem == problem && f.status == Status::Undecidable)
            .filter_map(|(s, f)| match (&f.degree, f.vars) {
                (DegreeBound::Exact(d), VarBound::Exact(n)) => Some((d.clone(), n, s)),
                _ => None,
            })
            .collect()
    }

    fn citations_for(&self, s: Support) -> Vec<String> {
        match s {
            Support::Base(i) => vec![self.base[i].citation.clone()],
            Support::Derived(i) => {
                let d = &self.derived[i];
                vec![self.base[d.source].citation.clone()]
            }
        }
    }

    fn caveats_for(&self, s: Support) -> Vec<String> {
        let mut out = Vec::new();
        let src = match s {
            Support::Base(i) => &self.base[i],
            Support::Derived(i) => &self.base[self.derived[i].source],
        };
        if let Some(c) = &src.caveat {
            out.push(format!("{}: {c}", src.label()));
        }
        out
    }

    fn derivation_for(&self, s: Support) -> String {
        match s {
            Support::Base(i) => format!("{} is a base fact", self.base[i].label()),
            Support::Derived(i) => {
                let d = &self.derived[i];
                format!(
                    "{} [base] => {} ({})",
                    self.base[d.source].label(),
                    d.fact.label(),
                    d.rule.describe()
                )
            }
        }
    }

    pub fn status(&self, problem: Problem, d: &BigUint, n: u64) -> StatusReport {
        if problem == Problem::OverQ {
            return StatusReport {
                status: Status::Open,
                citations: Vec::new(),
                derivation: None,
                caveats: vec![
                    "decidability of Hilbert's tenth problem over Q is open; no grid facts are known"
                        .into(),
                ],
                support: None,
            };
        }
        let cell = problem.cell_label(d, &n);
        let dec = self.decidable_cover(problem, d, n);
        if let Some(first) = dec.into_iter().min_by_key(|s| {
            let f = self.fact(*s);
            (f.degree.clone(), f.vars)
        }) {
            let citations = self.citations_for(first);
            let caveats = self.caveats_for(first);
            let f = self.fact(first);
            let mut derivation = format!("{cell} is covered by {}=D", f.label());
            if d.is_zero() || n == 0 {
                derivation.push_str("; degree 0 or no variables: a constant, decided by inspection");
            }
            return StatusReport {
                status: Status::Decidable,
                citations,
                derivation: Some(derivation),
                caveats,
                support: Some(first),
            };
        }
        let und = self.undecidable_cover(problem, d, n);
        if let Some(&best) = und.iter().min_by_key(|s| {
            let f = self.fact(**s);
            let derived = matches!(s, Support::Derived(_));
            (derived, f.vars, f.degree.clone())
        }) {
            let f = self.fact(best);
            let derivation = if f.degree == DegreeBound::Exact(d.clone()) && f.vars == VarBound::Exact(n)
            {
                self.derivation_for(best)
            } else {
                format!(
                    "{}; {cell} contains {}=U (larger degree and variable bounds)",
                    self.derivation_for(best),
                    f.label()
                )
            };
            return StatusReport {
                status: Status::Undecidable,
                citations: self.citations_for(best),
                derivation: Some(derivation),
                caveats: self.caveats_for(best),
                support: Some(best),
            };
        }
        let mut caveats = Vec::new();
        let mut citations = Vec::new();
        for f in &self.base {
            if f.problem == problem
                && f.status == Status::Undecidable
                && f.degree == DegreeBound::Unstated
                && f.vars.covers_from_below(n)
            {
                caveats.push(format!(
                    "{}=U for sufficiently large degree (degree not stated), so {cell} is U once d is large enough",
                    f.label()
                ));
                citations.push(f.citation.clone());
            }
        }
        for df in &self.derived {
            let f = &df.fact;
            if f.problem == problem
                && f.status == Status::Undecidable
                && f.degree == DegreeBound::Unstated
                && f.vars.covers_from_below(n)
            {
                caveats.push(format!(
                    "{}=U for sufficiently large degree ({} from {})",
                    f.label(),
                    df.rule.describe(),
                    self.base[df.source].label()
                ));
                let c = self.base[df.source].citation.clone();
                if !citations.contains(&c) {
                    citations.push(c);
                }
            }
        }
        if *d == BigUint::from(3u32) && n == 2 {
            caveats.push(
                "absolutely irreducible cubics in two variables are solved (Baker-Coates, Poulakis): \
                 an algorithm determines all integer solutions; the reducible case is still open"
                    .into(),
            );
        }
        StatusReport {
            status: Status::Open,
            citations,
            derivation: None,
            caveats,
            support: None,
        }
    }

    /// Human-readable account of a status answer.
    pub fn explain(&self, problem: Problem, d: &BigUint, n: u64) -> String {
        let report = self.status(problem, d, n);
        let cell = problem.cell_label(d, &n);
        let mut out = format!("{cell} = {}\n", report.status);
        if let Some(dv) = &report.derivation {
            out.push_str(&format!("derivation: {dv}\n"));
        }
        for c in &report.citations {
            out.push_str(&format!("citation: {c}\n"));
        }
        for c in &report.caveats {
            out.push_str(&format!("note: {c}\n"));
        }
        if report.status == Status::Open && problem != Problem::OverQ {
            let corners = self.undecidable_corners(problem);
            let by_degree = corners
                .iter()
                .filter(|(_, n0, _)| *n0 <= n)
                .min_by(|a, b| a.0.cmp(&b.0));
            let by_vars = corners
                .iter()
                .filter(|(d0, _, _)| d0 <= d)
                .min_by_key(|c| c.1);
            match by_degree {
                Some((d0, n0, _)) => out.push_str(&format!(
                    "nearest undecidable corner at this variable bound: {} (raise the degree to {d0})\n",
                    problem.cell_label(d0, n0)
                )),
                None => out.push_str(
                    "no undecidable corner with a concrete degree is known at this variable bound\n",
                ),
            }
            match by_vars {
                Some((d0, n0, _)) => out.push_str(&format!(
                    "nearest undecidable corner at this degree: {} (raise the variable count to {n0})\n",
                    problem.cell_label(d0, n0)
                )),
                None => {
                    if let Some((d0, n0, _)) = corners.iter().min_by(|a, b| a.0.cmp(&b.0)) {
                        out.push_str(&format!(
                            "smallest-degree undecidable corner: {}\n",
                            problem.cell_label(d0, n0)
                        ));
                    }
                }
            }
            out.push_str(&format!(
                "decidable region: {}\n",
                self.decidable_region(problem)
            ));
        }
        out
    }

    /// Describes the union of the decidable facts, e.g. `n<=1 or d<=2`.
    pub fn decidable_region(&self, problem: Problem) -> String {
        let facts: Vec<&GridFact> = self
            .base
            .iter()
            .filter(|f| f.problem == problem && f.status == Status::Decidable)
            .collect();
        let subsumed = |f: &GridFact, g: &GridFact| {
            let deg = match (&f.degree, &g.degree) {
                (_, DegreeBound::All) => true,
                (DegreeBound::Exact(a), DegreeBound::Exact(b)) => a <= b,
                _ => false,
            };
            let vars = match (f.vars, g.vars) {
                (_, VarBound::All) => true,
                (VarBound::Exact(a), VarBound::Exact(b)) => a <= b,
                _ => false,
            };
            deg && vars
        };
        let parts: Vec<String> = facts
            .iter()
            .enumerate()
            .filter(|(i, f)| {
                !facts
                    .iter()
                    .enumerate()
                    .any(|(j, g)| j != *i && subsumed(f, g) && (!subsumed(g, f) || j < *i))
            })
            .map(|(_, f)| f)
            .map(|f| match (&f.degree, f.vars) {
                (DegreeBound::All, VarBound::Exact(n)) => format!("n<={n}"),
                (DegreeBound::Exact(d), VarBound::All) => format!("d<={d}"),
                (DegreeBound::Exact(d), VarBound::Exact(n)) => format!("(d<={d} and n<={n})"),
                _ => "everything".to_string(),
            })
            .collect();
        parts.join(" or ")
    }
}

impl VarBound {
    /// An undecidable fact at variable bound `self` also applies at `n`.
    fn covers_from_below(self, n: u64) -> bool {
        match self {
            VarBound::Exact(m) => m <= n,
            VarBound::All => false,
        }
    }
}

fn parse_row(line: usize, text: &str) -> Result<GridFact, FactFileError> {
    let bad = |message: String| FactFileError::Malformed { line, message };
    let cols: Vec<&str> = text.split('\t').collect();
    if cols.len() != 6 {
        return Err(bad(format!("expected 6 tab-separated columns, found {}", cols.len())));
    }
    let problem = match cols[0].trim() {
        "N" => Problem::OverN,
        "Z" => Problem::OverZ,
        other => return Err(bad(format!("unknown problem `{other}`"))),
    };
    let degree = match cols[1].trim() {
        "SOME" => DegreeBound::Unstated,
        "ALL" => DegreeBound::All,
        s => DegreeBound::Exact(
            s.parse()
                .map_err(|_| bad(format!("bad degree `{s}`")))?,
        ),
    };
    let vars = match cols[2].trim() {
        "ALL" => VarBound::All,
        s => VarBound::Exact(s.parse().map_err(|_| bad(format!("bad variable bound `{s}`")))?),
    };
    let status = match cols[3].trim() {
        "U" => Status::Undecidable,
        "D" => Status::Decidable,
        other => return Err(bad(format!("status must be U or D, found `{other}`"))),
    };
    if status == Status::Undecidable && (degree == DegreeBound::All || vars == VarBound::All) {
        return Err(bad("undecidable facts need a concrete corner".into()));
    }
    if status == Status::Decidable && degree == DegreeBound::Unstated {
        return Err(bad("decidable facts cannot use SOME".into()));
    }
    let citation = cols[4].trim().to_string();
    if citation.is_empty() {
        return Err(bad("missing citation".into()));
    }
    let caveat = match cols[5].trim() {
        "" | "-" => None,
        s => Some(s.to_string()),
    };
    Ok(GridFact {
        problem,
        degree,
        vars,
        status,
        citation,
        caveat,
    })
}

fn derive(base: &[GridFact]) -> Vec<DerivedFact> {
    let mut out = Vec::new();
    for (i, f) in base.iter().enumerate() {
        if f.status != Status::Undecidable {
            continue;
        }
        match (f.problem, &f.degree, f.vars) {
            (Problem::OverN, DegreeBound::Exact(d), VarBound::Exact(n)) => {
                out.push(DerivedFact {
                    fact: GridFact {
                        problem: Problem::OverZ,
                        degree: DegreeBound::Exact(d * 2u32),
                        vars: VarBound::Exact(3 * n),
                        ..f.clone()
                    },
                    source: i,
                    rule: Rule::SquaresSubstitution,
                });
                out.push(DerivedFact {
                    fact: GridFact {
                        problem: Problem::OverZ,
                        degree: DegreeBound::Exact(sun_degree(d, n)),
                        vars: VarBound::Exact(2 * n + 2),
                        ..f.clone()
                    },
                    source: i,
                    rule: Rule::SunReduction,
                });
            }
            (Problem::OverZ, degree, vars) => out.push(DerivedFact {
                fact: GridFact {
                    problem: Problem::OverN,
                    degree: degree.clone(),
                    vars,
                    ..f.clone()
                },
                source: i,
                rule: Rule::SignSplit,
            }),
            _ => {}
        }
    }
    out
}

impl fmt::Display for GridFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.problem.code(),
            match &self.degree {
                DegreeBound::Exact(d) => d.to_string(),
                DegreeBound::Unstated => "SOME".into(),
                DegreeBound::All => "ALL".into(),
            },
            match self.vars {
                VarBound::Exact(n) => n.to_string(),
                VarBound::All => "ALL".into(),
            },
            match self.status {
                Status::Undecidable => "U",
                _ => "D",
            },
            self.citation,
            self.caveat.as_deref().unwrap_or("-")
        )
    }
}
