//! Type/token summaries and rank-frequency tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fitting::{power_fit, FitError, PowerFit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("empty unit")]
    EmptyUnit,
    #[error("fragment {0} has no tokens")]
    EmptyFragment(usize),
    #[error("no fragments")]
    NoFragments,
    #[error("token step must be at least 1")]
    ZeroStep,
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
}

/// Formats a ratio to two decimals, the precision of the printed tables.
pub fn display_ratio(x: f64) -> String {
    format!("{x:.2}")
}

/// Raw (types, tokens) pair, e.g. one row of a published table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTokenCounts {
    pub types: u64,
    pub tokens: u64,
}

impl TypeTokenCounts {
    pub fn new(types: u64, tokens: u64) -> Result<Self, StatsError> {
        if tokens == 0 {
            return Err(StatsError::EmptyUnit);
        }
        if types == 0 || types > tokens {
            return Err(StatsError::InconsistentCounts(format!(
                "{types} types for {tokens} tokens"
            )));
        }
        Ok(TypeTokenCounts { types, tokens })
    }

    pub fn ttr(&self) -> f64 {
        self.types as f64 / self.tokens as f64
    }
}

/// Lexical summary of one text unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexSummary {
    pub type_count: u64,
    pub token_count: u64,
    pub ttr: f64,
    pub hapax_count: u64,
    pub hapax_share: f64,
}

impl LexSummary {
    pub fn from_counts(type_count: u64, token_count: u64, hapax_count: u64) -> Result<Self, StatsError> {
        let counts = TypeTokenCounts::new(type_count, token_count)?;
        if hapax_count > type_count {
            return Err(StatsError::InconsistentCounts(format!(
                "{hapax_count} hapaxes for {type_count} types"
            )));
        }
        Ok(LexSummary {
            type_count,
            token_count,
            ttr: counts.ttr(),
            hapax_count,
            hapax_share: hapax_count as f64 / type_count as f64,
        })
    }

    pub fn counts(&self) -> TypeTokenCounts {
        TypeTokenCounts {
            types: self.type_count,
            tokens: self.token_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedType {
    pub rank: usize,
    #[serde(rename = "type")]
    pub word: String,
    pub frequency: u64,
}

/// Word type frequencies plus their rank ordering.
///
/// Ranks run 1..=type_count by descending frequency; ties are ordered
/// lexicographically and still get distinct ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreqTable {
    pub entries: BTreeMap<String, u64>,
    pub ranked: Vec<RankedType>,
}

impl FreqTable {
    pub fn token_count(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn type_count(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn summary(&self) -> Result<LexSummary, StatsError> {
        let hapax = self.entries.values().filter(|&&f| f == 1).count() as u64;
        LexSummary::from_counts(self.type_count(), self.token_count(), hapax)
    }
}

fn count<S: AsRef<str>>(tokens: &[S]) -> HashMap<&str, u64> {
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in tokens {
        *counts.entry(t.as_ref()).or_default() += 1;
    }
    counts
}

pub fn frequency_table<S: AsRef<str>>(tokens: &[S]) -> Result<FreqTable, StatsError> {
    if tokens.is_empty() {
        return Err(StatsError::EmptyUnit);
    }
    let entries: BTreeMap<String, u64> = count(tokens)
        .into_iter()
        .map(|(w, f)| (w.to_owned(), f))
        .collect();

    let mut order: Vec<(&String, &u64)> = entries.iter().collect();
    // BTreeMap iteration is already lexicographic; a stable sort keeps it for ties.
    order.sort_by(|a, b| b.1.cmp(a.1));
    let ranked = order
        .into_iter()
        .enumerate()
        .map(|(i, (w, &f))| RankedType {
            rank: i + 1,
            word: w.clone(),
            frequency: f,
        })
        .collect();

    Ok(FreqTable { entries, ranked })
}

pub fn summary<S: AsRef<str>>(tokens: &[S]) -> Result<LexSummary, StatsError> {
    if tokens.is_empty() {
        return Err(StatsError::EmptyUnit);
    }
    let counts = count(tokens);
    let hapax = counts.values().filter(|&&f| f == 1).count() as u64;
    LexSummary::from_counts(counts.len() as u64, tokens.len() as u64, hapax)
}

/// Fits `frequency = a * rank^b` over the ranked table; `b` is negative for
/// Zipf-like text.
pub fn zipf_fit(table: &FreqTable) -> Result<PowerFit, FitError> {
    if table.ranked.len() < 2 {
        return Err(FitError::TooFewPoints(table.ranked.len()));
    }
    let first = table.ranked[0].frequency;
    if table.ranked.iter().all(|r| r.frequency == first) {
        return Err(FitError::DegenerateResponse("all frequencies are equal"));
    }
    let points: Vec<(f64, f64)> = table
        .ranked
        .iter()
        .map(|r| (r.rank as f64, r.frequency as f64))
        .collect();
    power_fit(&points)
}
