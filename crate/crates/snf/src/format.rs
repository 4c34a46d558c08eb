//! Text formats.
//!
//! A spec file starts with `snf k=<k>` (optionally followed by ` partial`)
//! and lists one `cell c0 c1 … c{k-1}` line per cell. Lines starting with
//! `#` are comments. Verdicts are written as `GLP` followed by
//! `offset <cell> <r>` lines, or `NOGLP` followed by one `cycle …` line.

use std::fmt::Write as _;

use snf_core::cyclotomic::MAX_ORDER;
use snf_core::glp::Verdict;
use snf_core::model::{Axiom, CenterFailure, SymmetryFailure, ValidationReport};
use snf_core::{CycInt, FractalSpec, ModelError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: expected {expected} coefficients, found {found}")]
    CoefficientCount { line: usize, expected: usize, found: usize },
    #[error("k = {0} is outside 3..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("missing `snf k=<k>` header")]
    MissingHeader,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, bool), FormatError> {
    let mut words = line.split(' ');
    if words.next() != Some("snf") {
        return Err(syntax(line_no, "expected `snf k=<k>`"));
    }
    let k = words
        .next()
        .and_then(|w| w.strip_prefix("k="))
        .ok_or_else(|| syntax(line_no, "expected `k=<k>`"))?;
    let k: usize = k.parse().map_err(|_| syntax(line_no, format!("bad order {k:?}")))?;
    let partial = match words.next() {
        None => false,
        Some("partial") => true,
        Some(other) => return Err(syntax(line_no, format!("unexpected {other:?}"))),
    };
    if let Some(extra) = words.next() {
        return Err(syntax(line_no, format!("unexpected {extra:?}")));
    }
    if !(3..=MAX_ORDER).contains(&k) {
        return Err(FormatError::OrderOutOfRange(k));
    }
    Ok((k, partial))
}

pub fn parse_spec(text: &str) -> Result<FractalSpec, FormatError> {
    let mut header = None;
    let mut cells = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some((k, _)) = header else {
            header = Some(parse_header(line_no, line)?);
            continue;
        };
        let rest = line
            .strip_prefix("cell ")
            .ok_or_else(|| syntax(line_no, "expected `cell c0 … c{k-1}`"))?;
        let coeffs = rest
            .split(' ')
            .map(|w| w.parse::<i64>().map_err(|_| syntax(line_no, format!("bad coefficient {w:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != k {
            return Err(FormatError::CoefficientCount {
                line: line_no,
                expected: k,
                found: coeffs.len(),
            });
        }
        cells.push(CycInt::new(coeffs).map_err(ModelError::from)?);
    }
    let (k, partial) = header.ok_or(FormatError::MissingHeader)?;
    Ok(FractalSpec::new(k, cells, partial)?)
}

/// Canonical text of a spec, preceded by the given comment lines.
pub fn serialize_spec_with_comments(spec: &FractalSpec, comments: &[String]) -> String {
    let mut out = String::new();
    for comment in comments {
        out.push_str(comment);
        out.push('\n');
    }
    let _ = writeln!(out, "snf k={}{}", spec.k(), if spec.is_partial() { " partial" } else { "" });
    for b in spec.barycenters() {
        out.push_str("cell");
        for c in b.coeffs() {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn serialize_spec(spec: &FractalSpec) -> String {
    serialize_spec_with_comments(spec, &[])
}

pub fn serialize_verdict(verdict: &Verdict) -> String {
    let mut out = String::new();
    match verdict {
        Verdict::Glp(labeling) => {
            out.push_str("GLP\n");
            for (i, r) in labeling.offsets.iter().enumerate() {
                let _ = writeln!(out, "offset {i} {r}");
            }
        }
        Verdict::NoGlp(cycle) => {
            out.push_str("NOGLP\ncycle");
            for i in cycle {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
        }
    }
    out
}

/// A verdict read back from text: offsets or the witness cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictRecord {
    Glp(Vec<usize>),
    NoGlp(Vec<usize>),
}

pub fn parse_verdict(text: &str) -> Result<VerdictRecord, FormatError> {
    let mut lines = text.lines().enumerate();
    let numbers = |line_no: usize, words: std::str::Split<'_, char>| {
        words
            .map(|w| w.parse::<usize>().map_err(|_| syntax(line_no, format!("bad number {w:?}"))))
            .collect::<Result<Vec<_>, _>>()
    };
    match lines.next() {
        Some((_, "GLP")) => {
            let mut offsets = Vec::new();
            for (i, line) in lines {
                let rest = line.strip_prefix("offset ").ok_or_else(|| syntax(i + 1, "expected `offset`"))?;
                let pair = numbers(i + 1, rest.split(' '))?;
                if pair.len() != 2 || pair[0] != offsets.len() {
                    return Err(syntax(i + 1, "expected `offset <next cell> <r>`"));
                }
                offsets.push(pair[1]);
            }
            Ok(VerdictRecord::Glp(offsets))
        }
        Some((_, "NOGLP")) => {
            let (i, line) = lines.next().ok_or_else(|| syntax(2, "missing cycle"))?;
            let rest = line.strip_prefix("cycle ").ok_or_else(|| syntax(i + 1, "expected `cycle`"))?;
            let cycle = numbers(i + 1, rest.split(' '))?;
            if let Some((i, _)) = lines.next() {
                return Err(syntax(i + 1, "trailing line"));
            }
            Ok(VerdictRecord::NoGlp(cycle))
        }
        _ => Err(syntax(1, "expected GLP or NOGLP")),
    }
}

fn axiom_text<T>(axiom: &Axiom<T>, fail: impl Fn(&T) -> String) -> String {
    match axiom {
        Axiom::Pass => "pass".into(),
        Axiom::Skipped => "skipped".into(),
        Axiom::Fail(w) => format!("fail {}", fail(w)),
    }
}

/// One `name value` line per field.
pub fn report_text(report: &ValidationReport) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(out, "valid {}", yes_no(report.is_valid()));
    let _ = writeln!(out, "k {}", report.k);
    let _ = writeln!(out, "cells {}", report.cells);
    let _ = writeln!(out, "partial {}", yes_no(report.partial));
    let _ = writeln!(out, "components {}", report.components);
    let _ = writeln!(out, "connectivity {}", axiom_text(&report.connectivity, |n| n.to_string()));
    let _ = writeln!(out, "nesting {}", axiom_text(&report.nesting, |(a, b)| format!("{a} {b}")));
    let _ = writeln!(
        out,
        "symmetry {}",
        axiom_text(&report.symmetry, |f| match f {
            SymmetryFailure::Rotation(j) => format!("rotation {j}"),
            SymmetryFailure::Reflection(m) => format!("reflection {m}"),
        })
    );
    let _ = writeln!(out, "corner-coverage {}", axiom_text(&report.corner_coverage, |j| j.to_string()));
    let _ = writeln!(
        out,
        "odd-adjacency-classes {}",
        axiom_text(&report.odd_adjacency_classes, |a| format!("{} {}", a.a, a.b))
    );
    match report.central_cell {
        Some(i) => {
            let _ = writeln!(out, "central-cell {i}");
        }
        None => out.push_str("central-cell none\n"),
    }
    let _ = writeln!(
        out,
        "center {}",
        axiom_text(&report.center, |f| match f {
            CenterFailure::ForbiddenCentralCell(i) => format!("central-cell {i}"),
            CenterFailure::VertexAtCenter { cell, vertex } => format!("vertex-at-center {cell} {vertex}"),
        })
    );
    out
}
