//! CSV input and output: count tables, point lists and curves.
//!
//! Input kind is decided by the header:
//!
//! | header contains            | kind                              |
//! |----------------------------|-----------------------------------|
//! | `x`, `y`                   | raw points for a power fit        |
//! | `cum_tokens`, `cum_types`  | cumulative table (a growth curve) |
//! | `types`, `tokens`          | per-fragment table                |
//!
//! Row labels come from a `fragment`, `fragments` or `label` column when
//! present. A fragment-table row labelled `whole` is the whole-text row.
//! A `ttr_printed` column carries the ratio as printed in a source table.
//! Any `ttr` column is ignored on input; it is recomputed.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::growth::{Granularity, GrowthCurve};
use crate::lexstats::{FreqTable, StatsError, TypeTokenCounts};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("unrecognized header {0:?}; expected x,y or cum_tokens,cum_types or types,tokens")]
    UnknownHeader(Vec<String>),
    #[error("row {row}: bad value {value:?} in column `{column}`")]
    BadValue { row: usize, column: String, value: String },
    #[error("a per-fragment table has no cumulative type counts")]
    NotCumulative,
    #[error(transparent)]
    Stats(#[from] StatsError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    pub label: String,
    pub counts: TypeTokenCounts,
    pub printed_ttr: Option<f64>,
}

impl CountRow {
    pub fn is_whole(&self) -> bool {
        self.label.eq_ignore_ascii_case("whole")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Fragments,
    Cumulative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountsTable {
    pub kind: TableKind,
    pub rows: Vec<CountRow>,
}

impl CountsTable {
    /// Rows that describe fragments (for fragment tables, excludes the whole row).
    pub fn fragment_rows(&self) -> Vec<&CountRow> {
        match self.kind {
            TableKind::Fragments => self.rows.iter().filter(|r| !r.is_whole()).collect(),
            TableKind::Cumulative => self.rows.iter().collect(),
        }
    }

    /// Whole-text row: the `whole` row of a fragment table, or the last point
    /// of a cumulative one.
    pub fn whole(&self) -> Option<&CountRow> {
        match self.kind {
            TableKind::Fragments => self.rows.iter().find(|r| r.is_whole()),
            TableKind::Cumulative => self.rows.last(),
        }
    }

    pub fn curve(&self) -> Result<GrowthCurve, TableError> {
        if self.kind != TableKind::Cumulative {
            return Err(TableError::NotCumulative);
        }
        let pts = self.rows.iter().map(|r| (r.counts.tokens, r.counts.types));
        Ok(GrowthCurve::from_counts(pts, Granularity::Table)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Points(Vec<(f64, f64)>),
    Counts(CountsTable),
}

impl Table {
    /// (x, y) pairs for a power fit: raw points, or (tokens, types) of a
    /// cumulative table.
    pub fn fit_points(&self) -> Result<Vec<(f64, f64)>, TableError> {
        match self {
            Table::Points(p) => Ok(p.clone()),
            Table::Counts(t) if t.kind == TableKind::Cumulative => Ok(t
                .rows
                .iter()
                .map(|r| (r.counts.tokens as f64, r.counts.types as f64))
                .collect()),
            Table::Counts(_) => Err(TableError::NotCumulative),
        }
    }
}

fn column(headers: &[String], names: &[&str]) -> Option<usize> {
    names.iter().find_map(|n| headers.iter().position(|h| h == n))
}

fn parse<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, row: usize, name: &str) -> Result<T, TableError> {
    let raw = rec.get(idx).unwrap_or("").trim();
    raw.parse().map_err(|_| TableError::BadValue {
        row,
        column: name.to_owned(),
        value: raw.to_owned(),
    })
}

pub fn read_table<R: Read>(reader: R) -> Result<Table, TableError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(|h| h.to_ascii_lowercase()).collect();

    if let (Some(xi), Some(yi)) = (column(&headers, &["x"]), column(&headers, &["y"])) {
        let mut pts = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            pts.push((parse(&rec, xi, i + 1, "x")?, parse(&rec, yi, i + 1, "y")?));
        }
        return Ok(Table::Points(pts));
    }

    let (kind, tok_col, typ_col) = if let (Some(t), Some(y)) = (
        column(&headers, &["cum_tokens"]),
        column(&headers, &["cum_types"]),
    ) {
        (TableKind::Cumulative, t, y)
    } else if let (Some(t), Some(y)) = (column(&headers, &["tokens"]), column(&headers, &["types"])) {
        (TableKind::Fragments, t, y)
    } else {
        return Err(TableError::UnknownHeader(headers));
    };
    let label_col = column(&headers, &["fragment", "fragments", "label"]);
    let printed_col = column(&headers, &["ttr_printed"]);

    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        let tokens: u64 = parse(&rec, tok_col, row, &headers[tok_col])?;
        let types: u64 = parse(&rec, typ_col, row, &headers[typ_col])?;
        let printed_ttr = match printed_col {
            Some(c) if !rec.get(c).unwrap_or("").is_empty() => Some(parse(&rec, c, row, "ttr_printed")?),
            _ => None,
        };
        rows.push(CountRow {
            label: label_col
                .and_then(|c| rec.get(c))
                .map(str::to_owned)
                .unwrap_or_else(|| row.to_string()),
            counts: TypeTokenCounts::new(types, tokens)?,
            printed_ttr,
        });
    }
    Ok(Table::Counts(CountsTable { kind, rows }))
}

pub fn read_table_path(path: impl AsRef<Path>) -> Result<Table, TableError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_table(file)
}

/// Writes `cum_tokens,cum_types,ttr` rows.
pub fn write_curve_csv<W: Write>(curve: &GrowthCurve, writer: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["cum_tokens", "cum_types", "ttr"])?;
    for p in &curve.points {
        w.write_record([p.cum_tokens.to_string(), p.cum_types.to_string(), p.ttr.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `rank,type,frequency` rows.
pub fn write_ranked_csv<W: Write>(table: &FreqTable, writer: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["rank", "type", "frequency"])?;
    for r in &table.ranked {
        w.write_record([r.rank.to_string(), r.word.clone(), r.frequency.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
