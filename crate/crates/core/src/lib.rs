//! Lexical dynamics of texts and parallel corpora.
//!
//! The pipeline runs `ingest` (normalize, tokenize, fragment) into
//! `lexstats` (type/token summaries, rank-frequency) and `growth`
//! (per-fragment tables, cumulative vocabulary curves), then `fitting`
//! (log-log power regression, Pearson r) and `compare` (source/translation
//! pairs, cohort dispersion of Heaps coefficients). `synthgen` produces
//! seeded Zipf corpora for checking the estimators. `table` reads and
//! writes the CSV formats.

pub mod compare;
pub mod fitting;
pub mod growth;
pub mod ingest;
pub mod lexstats;
pub mod synthgen;
pub mod table;

pub use compare::{
    compare_fragments, compare_pair, length_ratio, levelling_out, CompareError, FragmentComparison,
    LevellingReport, PairReport,
};
pub use fitting::{pearson, power_fit, predict, FitError, PowerFit, PowerLaw};
pub use growth::{cumulative_curve, fragment_table, growth_curve, CurvePoint, Granularity, GrowthCurve};
pub use ingest::{
    chunk_by_delimiter, chunk_by_lines, normalize, tokenize, Document, Fragment, IngestError,
};
pub use lexstats::{
    display_ratio, frequency_table, summary, zipf_fit, FreqTable, LexSummary, RankedType, StatsError,
    TypeTokenCounts,
};
pub use synthgen::{zipf_text, GenError, ZipfSpec};
pub use table::{read_table, read_table_path, CountRow, CountsTable, Table, TableError, TableKind};

/// Directory holding the published-table fixtures shipped with this crate.
pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
