use std::collections::BTreeSet;

use lexdyn_core::synthgen::{harmonic, render_corpus};
use lexdyn_core::{
    chunk_by_lines, cumulative_curve, frequency_table, growth_curve, zipf_fit, zipf_text, Document, ZipfSpec,
};

fn spec(vocab_size: usize, exponent: f64, n_tokens: usize, seed: u64) -> ZipfSpec {
    ZipfSpec { vocab_size, exponent, n_tokens, seed }
}

#[test]
fn frequency_table_conserves_generated_tokens() {
    let tokens = zipf_text(&spec(100, 1.0, 1000, 5)).unwrap();
    let table = frequency_table(&tokens).unwrap();
    assert_eq!(table.token_count(), 1000);
    assert!(table.type_count() <= 100);
}

#[test]
fn zipf_fit_on_50k_sample() {
    let tokens = zipf_text(&spec(10_000, 1.1, 50_000, 42)).unwrap();
    let fit = zipf_fit(&frequency_table(&tokens).unwrap()).unwrap();
    assert!((-1.4..=-0.8).contains(&fit.b), "b = {}", fit.b);
    assert!(fit.r2 >= 0.9, "r2 = {}", fit.r2);
}

#[test]
fn zipf_exponent_recovered_when_sample_dwarfs_vocabulary() {
    for (v, s) in [(100, 1.1), (100, 0.9), (200, 1.3)] {
        let tokens = zipf_text(&spec(v, s, 100 * v, 42)).unwrap();
        let fit = zipf_fit(&frequency_table(&tokens).unwrap()).unwrap();
        assert!((fit.b + s).abs() <= 0.15, "V={v} s={s}: b = {}", fit.b);
    }
}

#[test]
fn rank_one_share() {
    let tokens = zipf_text(&spec(1000, 1.0, 100_000, 42)).unwrap();
    let share = tokens.iter().filter(|t| *t == "wa").count() as f64 / 1e5;
    let expected = 1.0 / harmonic(1000, 1.0);
    assert!((share - expected).abs() <= 0.1 * expected, "{share} vs {expected}");
}

#[test]
fn growth_curve_matches_prefix_sets() {
    let tokens = zipf_text(&spec(10_000, 1.1, 50_000, 42)).unwrap();
    let curve = growth_curve(&tokens, 1000).unwrap();
    assert_eq!(curve.points.len(), 50);
    for p in &curve.points {
        let n = p.cum_tokens as usize;
        let set: BTreeSet<&String> = tokens[..n].iter().collect();
        assert_eq!(p.cum_types, set.len() as u64, "at {n}");
    }
    let fit = curve.heaps_fit().unwrap();
    assert!(fit.b < 1.0);
}

#[test]
fn generated_text_round_trips_through_ingest() {
    let tokens = zipf_text(&spec(500, 1.0, 3000, 9)).unwrap();
    let doc = Document::from_text("synthetic", &render_corpus(&tokens, 10));
    assert_eq!(doc.tokens, tokens);
    assert_eq!(doc.line_count(), 300);

    let frags = chunk_by_lines(&doc, 30).unwrap();
    assert_eq!(frags.len(), 10);
    let curve = cumulative_curve(&frags).unwrap();
    assert_eq!(curve.last().cum_tokens, 3000);
    assert_eq!(curve.last().cum_types, growth_curve(&tokens, 3000).unwrap().last().cum_types);
}
