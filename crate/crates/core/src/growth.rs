//! Per-fragment tables and cumulative vocabulary-growth curves.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::fitting::{power_fit, FitError, PowerFit};
use crate::ingest::Fragment;
use crate::lexstats::{summary, LexSummary, StatsError, TypeTokenCounts};

/// One point of a growth curve: tokens read so far, distinct types seen so far.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub cum_tokens: u64,
    pub cum_types: u64,
    pub ttr: f64,
}

impl CurvePoint {
    pub fn new(cum_tokens: u64, cum_types: u64) -> Result<Self, StatsError> {
        let c = TypeTokenCounts::new(cum_types, cum_tokens)?;
        Ok(CurvePoint {
            cum_tokens,
            cum_types,
            ttr: c.ttr(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    Fragments,
    TokenStep(usize),
    /// Points read back from a table rather than computed from tokens.
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthCurve {
    pub granularity: Granularity,
    pub points: Vec<CurvePoint>,
}

impl GrowthCurve {
    /// Builds a curve from (cum_tokens, cum_types) pairs, checking monotonicity.
    pub fn from_counts(
        counts: impl IntoIterator<Item = (u64, u64)>,
        granularity: Granularity,
    ) -> Result<Self, StatsError> {
        let mut points: Vec<CurvePoint> = Vec::new();
        for (tokens, types) in counts {
            let p = CurvePoint::new(tokens, types)?;
            if let Some(prev) = points.last() {
                if p.cum_tokens <= prev.cum_tokens || p.cum_types < prev.cum_types {
                    return Err(StatsError::InconsistentCounts(format!(
                        "curve point ({}, {}) does not extend ({}, {})",
                        p.cum_tokens, p.cum_types, prev.cum_tokens, prev.cum_types
                    )));
                }
            }
            points.push(p);
        }
        if points.is_empty() {
            return Err(StatsError::NoFragments);
        }
        Ok(GrowthCurve { granularity, points })
    }

    pub fn last(&self) -> &CurvePoint {
        // non-empty by construction
        self.points.last().expect("growth curve has at least one point")
    }

    pub fn ttr_series(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ttr).collect()
    }

    /// Heaps fit of types against tokens.
    pub fn heaps_fit(&self) -> Result<PowerFit, FitError> {
        let pts: Vec<(f64, f64)> = self
            .points
            .iter()
            .map(|p| (p.cum_tokens as f64, p.cum_types as f64))
            .collect();
        power_fit(&pts)
    }
}

/// Independent summary of every fragment, in order.
pub fn fragment_table(fragments: &[Fragment]) -> Result<Vec<LexSummary>, StatsError> {
    fragments
        .iter()
        .map(|f| summary(&f.tokens).map_err(|_| StatsError::EmptyFragment(f.index)))
        .collect()
}

/// Cumulative (union) growth over fragments 1..=k for each k.
pub fn cumulative_curve(fragments: &[Fragment]) -> Result<GrowthCurve, StatsError> {
    if fragments.is_empty() {
        return Err(StatsError::NoFragments);
    }
    let mut seen: HashSet<&str> = HashSet::new();
    let mut tokens = 0u64;
    let mut points = Vec::with_capacity(fragments.len());
    for f in fragments {
        if f.tokens.is_empty() {
            return Err(StatsError::EmptyFragment(f.index));
        }
        seen.extend(f.tokens.iter().map(String::as_str));
        tokens += f.tokens.len() as u64;
        points.push(CurvePoint::new(tokens, seen.len() as u64)?);
    }
    Ok(GrowthCurve {
        granularity: Granularity::Fragments,
        points,
    })
}

/// Prefix growth sampled every `step` tokens, always ending at the full text.
pub fn growth_curve<S: AsRef<str>>(tokens: &[S], step: usize) -> Result<GrowthCurve, StatsError> {
    if step == 0 {
        return Err(StatsError::ZeroStep);
    }
    if tokens.is_empty() {
        return Err(StatsError::EmptyUnit);
    }
    let mut seen: HashSet<&str> = HashSet::new();
    let mut points = Vec::with_capacity(tokens.len() / step + 1);
    for (i, t) in tokens.iter().enumerate() {
        seen.insert(t.as_ref());
        let n = i + 1;
        if n % step == 0 || n == tokens.len() {
            points.push(CurvePoint::new(n as u64, seen.len() as u64)?);
        }
    }
    Ok(GrowthCurve {
        granularity: Granularity::TokenStep(step),
        points,
    })
}
