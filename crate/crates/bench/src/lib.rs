//! Shared inputs for the criterion benches.

use lexdyn_core::{zipf_text, ZipfSpec};

/// Synthetic corpus with `n_tokens` Zipf(1.1) tokens over a 10k vocabulary.
pub fn corpus(n_tokens: usize) -> Vec<String> {
    zipf_text(&ZipfSpec {
        vocab_size: 10_000,
        exponent: 1.1,
        n_tokens,
        seed: 42,
    })
    .expect("valid spec")
}
