//! Seeded Zipf-distributed synthetic corpora.
//!
//! The stream is fully specified so other implementations can reproduce it:
//!
//! 1. RNG: ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with
//!    `SeedableRng::seed_from_u64(seed)` from `rand_core` 0.6.
//! 2. Each draw takes one `next_u64()` and maps it to `u = (x >> 11) * 2^-53`
//!    in `[0, 1)`.
//! 3. The drawn rank is the smallest `r` with `cdf[r] > u`; `cdf` is the
//!    running sum of `r^-s / H` in rank order, its last entry pinned to 1.
//! 4. Rank `r` is written as `w` followed by `r` in bijective base 26 over
//!    `a..z` (1 -> `wa`, 26 -> `wz`, 27 -> `waa`). Labels are letters only so
//!    generated text survives tokenization unchanged.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("vocabulary size must be at least 2, got {0}")]
    VocabTooSmall(usize),
    #[error("exponent must be a positive finite number, got {0}")]
    BadExponent(f64),
    #[error("token count must be at least 1")]
    NoTokens,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZipfSpec {
    pub vocab_size: usize,
    pub exponent: f64,
    pub n_tokens: usize,
    pub seed: u64,
}

impl ZipfSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.vocab_size < 2 {
            return Err(GenError::VocabTooSmall(self.vocab_size));
        }
        if !(self.exponent > 0.0 && self.exponent.is_finite()) {
            return Err(GenError::BadExponent(self.exponent));
        }
        if self.n_tokens == 0 {
            return Err(GenError::NoTokens);
        }
        Ok(())
    }
}

/// Generalized harmonic number `sum_{r=1..=v} r^-s`, summed smallest term first.
pub fn harmonic(v: usize, s: f64) -> f64 {
    (1..=v).rev().map(|r| (r as f64).powf(-s)).sum()
}

/// Rank probabilities `p[r-1] = r^-s / H(v, s)`.
pub fn zipf_probabilities(v: usize, s: f64) -> Vec<f64> {
    let h = harmonic(v, s);
    (1..=v).map(|r| (r as f64).powf(-s) / h).collect()
}

/// Inverse-CDF sampler over ranks `1..=v`.
#[derive(Debug, Clone)]
pub struct ZipfSampler {
    cdf: Vec<f64>,
}

impl ZipfSampler {
    pub fn new(v: usize, s: f64) -> Self {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = zipf_probabilities(v, s)
            .into_iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        ZipfSampler { cdf }
    }

    /// Rank (1-based) for a uniform draw `u` in `[0, 1)`.
    pub fn rank_for(&self, u: f64) -> usize {
        let i = self.cdf.partition_point(|&c| c <= u);
        i.min(self.cdf.len() - 1) + 1
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> usize {
        self.rank_for(unit_f64(rng.next_u64()))
    }
}

fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Ranks drawn for `spec`, before mapping to token strings.
pub fn zipf_ranks(spec: &ZipfSpec) -> Result<Vec<usize>, GenError> {
    spec.validate()?;
    let sampler = ZipfSampler::new(spec.vocab_size, spec.exponent);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok((0..spec.n_tokens).map(|_| sampler.sample(&mut rng)).collect())
}

/// Letter-only label of a rank.
pub fn type_label(rank: usize) -> String {
    assert!(rank >= 1, "ranks start at 1");
    let mut digits = Vec::new();
    let mut n = rank;
    while n > 0 {
        n -= 1;
        digits.push(b'a' + (n % 26) as u8);
        n /= 26;
    }
    digits.push(b'w');
    digits.reverse();
    String::from_utf8(digits).expect("ascii")
}

pub fn zipf_text(spec: &ZipfSpec) -> Result<Vec<String>, GenError> {
    Ok(zipf_ranks(spec)?.into_iter().map(type_label).collect())
}

/// Lays tokens out as plain text, `words_per_line` space-separated tokens per line.
pub fn render_corpus<S: AsRef<str>>(tokens: &[S], words_per_line: usize) -> String {
    let per_line = words_per_line.max(1);
    let mut out = String::new();
    for line in tokens.chunks(per_line) {
        for (i, t) in line.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(t.as_ref());
        }
        out.push('\n');
    }
    out
}
