//! `.hstruct` structure documents.
//!
//! A document is a JSON object with a required `kind` tag:
//!
//! ```text
//! {
//!   "bot": 0,
//!   "kind": "bjoin",
//!   "size": 2,
//!   "table": [
//!     [0, 1],
//!     [1, 1]
//!   ]
//! }
//! ```
//!
//! L-mosaics use `"kind": "lmosaic"`, `e` and `rho` instead of `bot`, and
//! list cells: `[[[0], [1]], [[1], [0, 1]]]`. `labels` is optional for both.
//! Output is deterministic: keys sorted, one table row per line, set cells
//! ascending.

use std::fmt::Write as _;

use hyperkit_core::{
    BJoinSemilattice, BinOpTable, Carrier, ElemSet, HyperOpTable, LMosaic, Structure,
    StructureError,
};
use serde::Deserialize;
use thiserror::Error;

pub const EXTENSION: &str = "hstruct";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its messages
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Bjoin,
    Lmosaic,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Index(usize),
    Set(Vec<usize>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: Kind,
    size: usize,
    labels: Option<Vec<String>>,
    bot: Option<usize>,
    e: Option<usize>,
    rho: Option<Vec<usize>>,
    table: Vec<Vec<Cell>>,
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// Parse a document into a shape-valid structure. No axioms are checked.
pub fn parse_structure(text: &str) -> Result<Structure, FormatError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    let n = raw.size;
    let carrier = match raw.labels {
        Some(l) => Carrier::with_labels(n, l)?,
        None => Carrier::new(n)?,
    };
    if raw.table.len() != n {
        return Err(invalid(format!(
            "table has {} rows, expected {n}",
            raw.table.len()
        )));
    }
    for (x, row) in raw.table.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(format!(
                "table row {x} has {} cells, expected {n}",
                row.len()
            )));
        }
    }
    let cells = raw
        .table
        .iter()
        .enumerate()
        .flat_map(|(x, row)| row.iter().enumerate().map(move |(y, c)| (x, y, c)));

    match raw.kind {
        Kind::Bjoin => {
            if raw.e.is_some() || raw.rho.is_some() {
                return Err(invalid("fields `e` and `rho` belong to lmosaic documents"));
            }
            let bot = raw.bot.ok_or_else(|| invalid("missing field `bot`"))?;
            let mut values = Vec::with_capacity(n * n);
            for (x, y, c) in cells {
                match c {
                    Cell::Index(v) if *v < n => values.push(*v),
                    Cell::Index(v) => {
                        return Err(invalid(format!("index {v} out of range at ({x},{y})")))
                    }
                    Cell::Set(_) => {
                        return Err(invalid(format!(
                            "expected an index at ({x},{y}), found a list"
                        )))
                    }
                }
            }
            Ok(Structure::BJoin(BJoinSemilattice::new(
                carrier,
                BinOpTable::new(n, values)?,
                bot,
            )?))
        }
        Kind::Lmosaic => {
            if raw.bot.is_some() {
                return Err(invalid("field `bot` belongs to bjoin documents"));
            }
            let e = raw.e.ok_or_else(|| invalid("missing field `e`"))?;
            let rho = raw.rho.ok_or_else(|| invalid("missing field `rho`"))?;
            let mut sets = Vec::with_capacity(n * n);
            for (x, y, c) in cells {
                match c {
                    Cell::Set(items) => {
                        if items.is_empty() {
                            return Err(StructureError::EmptyCell(x, y).into());
                        }
                        if let Some(v) = items.iter().find(|&&v| v >= n) {
                            return Err(invalid(format!("index {v} out of range at ({x},{y})")));
                        }
                        sets.push(items.iter().copied().collect::<ElemSet>());
                    }
                    Cell::Index(_) => {
                        return Err(invalid(format!(
                            "expected a list at ({x},{y}), found an index"
                        )))
                    }
                }
            }
            Ok(Structure::LMosaic(LMosaic::new(
                carrier,
                HyperOpTable::new(n, sets)?,
                e,
                rho,
            )?))
        }
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn list(items: impl Iterator<Item = String>) -> String {
    format!("[{}]", items.collect::<Vec<_>>().join(", "))
}

fn write_rows(out: &mut String, rows: Vec<String>) {
    out.push_str("  \"table\": [\n");
    let last = rows.len() - 1;
    for (i, r) in rows.into_iter().enumerate() {
        let _ = writeln!(out, "    {r}{}", if i == last { "" } else { "," });
    }
    out.push_str("  ]\n");
}

/// Deterministic document text for a structure.
pub fn serialize_structure(s: &Structure) -> String {
    let mut out = String::from("{\n");
    let labels = s
        .carrier()
        .labels()
        .map(|l| list(l.iter().map(|x| json_string(x))));
    match s {
        Structure::BJoin(j) => {
            let _ = writeln!(out, "  \"bot\": {},", j.bot());
            out.push_str("  \"kind\": \"bjoin\",\n");
            if let Some(l) = labels {
                let _ = writeln!(out, "  \"labels\": {l},");
            }
            let _ = writeln!(out, "  \"size\": {},", j.size());
            let rows = j
                .table()
                .rows()
                .map(|r| list(r.iter().map(|v| v.to_string())))
                .collect();
            write_rows(&mut out, rows);
        }
        Structure::LMosaic(m) => {
            let _ = writeln!(out, "  \"e\": {},", m.e());
            out.push_str("  \"kind\": \"lmosaic\",\n");
            if let Some(l) = labels {
                let _ = writeln!(out, "  \"labels\": {l},");
            }
            let _ = writeln!(
                out,
                "  \"rho\": {},",
                list(m.rho().iter().map(|v| v.to_string()))
            );
            let _ = writeln!(out, "  \"size\": {},", m.size());
            let rows = m
                .table()
                .rows()
                .map(|r| list(r.iter().map(|s| list(s.iter().map(|v| v.to_string())))))
                .collect();
            write_rows(&mut out, rows);
        }
    }
    out.push_str("}\n");
    out
}
