//! Source/translation comparison and cohort dispersion of Heaps coefficients.
//!
//! Reports carry numbers only. A narrower target spread is described, never
//! turned into a verdict.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fitting::{pearson, FitError, PowerFit, PowerLaw};
use crate::growth::GrowthCurve;
use crate::lexstats::{LexSummary, TypeTokenCounts};

/// High TTR correlation also shows up between texts that are not a
/// source/translation pair, so it says little about the pair itself.
pub const CORRELATION_CAVEAT: &str = "TTR-series correlation is typically high for unrelated \
     text pairs as well; a high value is not specific to this source/translation pair";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompareError {
    #[error("point count mismatch: source has {source_points}, target has {target_points}")]
    PointCountMismatch { source_points: usize, target_points: usize },
    #[error("need at least {needed} aligned points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("cohort sizes differ: {source_fits} source fits vs {target_fits} target fits")]
    CohortSizeMismatch { source_fits: usize, target_fits: usize },
    #[error("need at least 2 fits per cohort, got {0}")]
    CohortTooSmall(usize),
    #[error(transparent)]
    Fit(#[from] FitError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub ttr_correlation: f64,
    pub source_fit: PowerFit,
    pub target_fit: PowerFit,
    pub delta_a: f64,
    pub delta_b: f64,
    pub token_ratio: f64,
    pub note: String,
}

/// Compares two index-aligned growth curves.
pub fn compare_pair(source_curve: &GrowthCurve, target_curve: &GrowthCurve) -> Result<PairReport, CompareError> {
    let (ns, nt) = (source_curve.points.len(), target_curve.points.len());
    if ns != nt {
        return Err(CompareError::PointCountMismatch { source_points: ns, target_points: nt });
    }
    if ns < 3 {
        return Err(CompareError::TooFewPoints { needed: 3, got: ns });
    }
    let ttr_correlation = pearson(&source_curve.ttr_series(), &target_curve.ttr_series())?;
    let source_fit = source_curve.heaps_fit()?;
    let target_fit = target_curve.heaps_fit()?;
    Ok(PairReport {
        ttr_correlation,
        delta_a: target_fit.a - source_fit.a,
        delta_b: target_fit.b - source_fit.b,
        source_fit,
        target_fit,
        token_ratio: target_curve.last().cum_tokens as f64 / source_curve.last().cum_tokens as f64,
        note: CORRELATION_CAVEAT.to_owned(),
    })
}

/// Comparison of two per-fragment tables (no cumulative types available).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragmentComparison {
    pub n_fragments: usize,
    /// Pearson r of the per-fragment TTR series.
    pub ttr_correlation: f64,
    /// Target tokens over source tokens, summed over fragments.
    pub token_ratio: f64,
    pub note: String,
}

pub fn compare_fragments(
    source: &[TypeTokenCounts],
    target: &[TypeTokenCounts],
) -> Result<FragmentComparison, CompareError> {
    if source.len() != target.len() {
        return Err(CompareError::PointCountMismatch {
            source_points: source.len(),
            target_points: target.len(),
        });
    }
    if source.len() < 3 {
        return Err(CompareError::TooFewPoints { needed: 3, got: source.len() });
    }
    let ttr = |rows: &[TypeTokenCounts]| rows.iter().map(TypeTokenCounts::ttr).collect::<Vec<_>>();
    let tokens = |rows: &[TypeTokenCounts]| rows.iter().map(|r| r.tokens).sum::<u64>() as f64;
    Ok(FragmentComparison {
        n_fragments: source.len(),
        ttr_correlation: pearson(&ttr(source), &ttr(target))?,
        token_ratio: tokens(target) / tokens(source),
        note: CORRELATION_CAVEAT.to_owned(),
    })
}

pub fn length_ratio(source: &LexSummary, target: &LexSummary) -> f64 {
    target.token_count as f64 / source.token_count as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevellingReport {
    pub cohort_size: usize,
    pub spread_source_a: f64,
    pub spread_target_a: f64,
    pub spread_source_b: f64,
    pub spread_target_b: f64,
    /// `None` when the source spread is zero.
    pub spread_ratio_a: Option<f64>,
    pub spread_ratio_b: Option<f64>,
    /// Sample standard deviations; only for cohorts of 3 or more.
    pub sd_source_a: Option<f64>,
    pub sd_target_a: Option<f64>,
    pub sd_source_b: Option<f64>,
    pub sd_target_b: Option<f64>,
    pub note: String,
}

fn range(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

fn sample_sd(values: &[f64]) -> Option<f64> {
    if values.len() < 3 {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    Some((ss / (n - 1.0)).sqrt())
}

fn ratio(target: f64, source: f64) -> Option<f64> {
    (source > 0.0).then(|| target / source)
}

/// Range of the Heaps coefficients within each cohort.
pub fn levelling_out(source_fits: &[PowerLaw], target_fits: &[PowerLaw]) -> Result<LevellingReport, CompareError> {
    let smallest = source_fits.len().min(target_fits.len());
    if smallest < 2 {
        return Err(CompareError::CohortTooSmall(smallest));
    }
    if source_fits.len() != target_fits.len() {
        return Err(CompareError::CohortSizeMismatch {
            source_fits: source_fits.len(),
            target_fits: target_fits.len(),
        });
    }
    let coef = |fits: &[PowerLaw], f: fn(&PowerLaw) -> f64| fits.iter().map(f).collect::<Vec<f64>>();
    let (sa, sb) = (coef(source_fits, |p| p.a), coef(source_fits, |p| p.b));
    let (ta, tb) = (coef(target_fits, |p| p.a), coef(target_fits, |p| p.b));

    let spread_source_a = range(&sa);
    let spread_target_a = range(&ta);
    let spread_source_b = range(&sb);
    let spread_target_b = range(&tb);
    let spread_ratio_a = ratio(spread_target_a, spread_source_a);
    let spread_ratio_b = ratio(spread_target_b, spread_source_b);

    let note = match (spread_ratio_a, spread_ratio_b) {
        (Some(ra), Some(rb)) if ra < 1.0 && rb < 1.0 => {
            "target spread is narrower than source spread for both a and b (consistent with levelling out)"
        }
        (Some(_), Some(_)) => "target spread is not narrower than source spread for both a and b",
        _ => "source spread is zero for at least one coefficient; ratio undefined",
    };

    Ok(LevellingReport {
        cohort_size: source_fits.len(),
        spread_source_a,
        spread_target_a,
        spread_source_b,
        spread_target_b,
        spread_ratio_a,
        spread_ratio_b,
        sd_source_a: sample_sd(&sa),
        sd_target_a: sample_sd(&ta),
        sd_source_b: sample_sd(&sb),
        sd_target_b: sample_sd(&tb),
        note: note.to_owned(),
    })
}
