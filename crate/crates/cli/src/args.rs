use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Lexical dynamics of texts and parallel corpora.
///
/// Inputs ending in `.csv` are read as tables (header `x,y`, a curve
/// `cum_tokens,cum_types[,ttr]`, or a fragment table `fragment,types,tokens`);
/// anything else is read as UTF-8 text.
///
/// Exit codes: 0 ok, 1 invalid input or arguments, 2 I/O or undecodable
/// input, 3 empty input, 4 degenerate fit, 5 comparison mismatch.
#[derive(Debug, Parser)]
#[command(name = "lexdyn", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type/token/hapax summary of a text, optionally per fragment.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        chunk: ChunkArgs,
        /// Also write the rank-frequency table (rank,type,frequency) here.
        #[arg(long, value_name = "PATH")]
        ranks: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Vocabulary growth curve: cumulative over fragments, or every N tokens.
    Curve {
        input: PathBuf,
        #[command(flatten)]
        chunk: ChunkArgs,
        #[command(flatten)]
        step: StepArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Power-law fit: Heaps (types vs tokens) by default, Zipf with --zipf.
    Fit {
        input: PathBuf,
        #[command(flatten)]
        chunk: ChunkArgs,
        #[command(flatten)]
        step: StepArg,
        /// Fit frequency against rank instead of the growth curve.
        #[arg(long, conflicts_with_all = ["chunk_lines", "chunk_pattern", "step"])]
        zipf: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare a source text with its translation.
    Compare {
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        chunk: ChunkArgs,
        #[command(flatten)]
        step: StepArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spread of Heaps coefficients in a source cohort vs a target cohort.
    ///
    /// Each manifest lists one input per line (relative to the manifest);
    /// `.json` entries hold fitted coefficients `{"a": .., "b": ..}`.
    Levelling {
        source_manifest: PathBuf,
        target_manifest: PathBuf,
        #[command(flatten)]
        chunk: ChunkArgs,
        #[command(flatten)]
        step: StepArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a seeded Zipf corpus as plain text.
    Synth {
        #[arg(long, value_name = "N")]
        vocab: usize,
        #[arg(long, value_name = "X")]
        exponent: f64,
        #[arg(long, value_name = "N")]
        tokens: usize,
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "N", default_value_t = 12)]
        words_per_line: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct ChunkArgs {
    /// Split into fragments of N lines.
    #[arg(long, value_name = "N", conflicts_with = "chunk_pattern")]
    pub chunk_lines: Option<usize>,
    /// Start a new fragment at each line matching REGEX.
    #[arg(long, value_name = "REGEX")]
    pub chunk_pattern: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct StepArg {
    /// Emit a curve point every N tokens.
    #[arg(long, value_name = "N", conflicts_with_all = ["chunk_lines", "chunk_pattern"])]
    pub step: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
