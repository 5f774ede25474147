//! Report types and their text and JSON renderings.

use std::fmt;

use dioph::kbase::{Status, StatusReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    Solved,
    NoSolution,
    UnknownOpen,
    UndecidableClass,
    DecidableUnimplemented,
}

impl VerdictStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictStatus::Solved | VerdictStatus::NoSolution => 0,
            _ => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Solved => "SOLVED",
            VerdictStatus::NoSolution => "NO_SOLUTION",
            VerdictStatus::UnknownOpen => "UNKNOWN_OPEN",
            VerdictStatus::UndecidableClass => "UNDECIDABLE_CLASS",
            VerdictStatus::DecidableUnimplemented => "DECIDABLE_UNIMPLEMENTED",
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One variable of a witness. Values are decimal strings so that
/// arbitrarily large integers survive JSON parsers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub var: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub status: String,
    pub citations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<String>,
}

impl GridSummary {
    pub fn from_report(r: &StatusReport) -> Self {
        GridSummary {
            status: r.status.to_string(),
            citations: r.citations.clone(),
            derivation: r.derivation.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    pub grid: GridSummary,
    pub notes: Vec<String>,
}

/// Answer to a `status` query: the grid cell alone, without an equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVerdict {
    pub status: String,
    pub grid: GridSummary,
    pub notes: Vec<String>,
}

pub fn cell_status_name(s: Status) -> &'static str {
    match s {
        Status::Decidable => "DECIDABLE",
        Status::Undecidable => "UNDECIDABLE_CLASS",
        Status::Open => "UNKNOWN_OPEN",
    }
}

fn write_grid(f: &mut fmt::Formatter<'_>, label: &str, g: &GridSummary) -> fmt::Result {
    writeln!(f, "grid: {label} = {}", g.status)?;
    for c in &g.citations {
        writeln!(f, "citation: {c}")?;
    }
    if let Some(d) = &g.derivation {
        writeln!(f, "derivation: {d}")?;
    }
    Ok(())
}

/// Text rendering of a verdict for the cell `label`.
pub struct TextVerdict<'a> {
    pub verdict: &'a Verdict,
    pub label: &'a str,
}

impl fmt::Display for TextVerdict<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.verdict;
        writeln!(f, "status: {}", v.status)?;
        if let Some(w) = &v.witness {
            let parts: Vec<String> = w.iter().map(|e| format!("{} = {}", e.var, e.value)).collect();
            if parts.is_empty() {
                writeln!(f, "witness: (no variables)")?;
            } else {
                writeln!(f, "witness: {}", parts.join(", "))?;
            }
        }
        write_grid(f, self.label, &v.grid)?;
        for n in &v.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

pub struct TextCell<'a> {
    pub cell: &'a CellVerdict,
    pub label: &'a str,
}

impl fmt::Display for TextCell<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", self.cell.status)?;
        write_grid(f, self.label, &self.cell.grid)?;
        for n in &self.cell.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
