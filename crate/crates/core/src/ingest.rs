//! Text loading, normalization, tokenization and fragmenting.
//!
//! Normalization applies simple case folding and collapses `\r\n` / `\r`
//! line endings to `\n`. No lemmatization is done: `джон` and `джона`
//! remain two word types.
//!
//! Tokens are maximal runs of letters. A single apostrophe (`'`, or `’`
//! which is mapped to `'`) or hyphen-minus is kept inside a token when a
//! letter sits on both sides of it. Digits, punctuation and symbols
//! separate tokens.

use std::ops::Range;

use regex::Regex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidEncoding { offset: usize },
    #[error("document `{0}` has no lines")]
    EmptyDocument(String),
    #[error("chunk size must be at least one line")]
    ZeroChunkSize,
    #[error("invalid chapter pattern: {0}")]
    InvalidPattern(String),
}

/// Decodes raw bytes as UTF-8, reporting the offset of the first bad byte.
pub fn decode(bytes: &[u8]) -> Result<&str, IngestError> {
    std::str::from_utf8(bytes).map_err(|e| IngestError::InvalidEncoding {
        offset: e.valid_up_to(),
    })
}

/// Case-folds `raw_text` and normalizes line endings to `\n`.
pub fn normalize(raw_text: &str) -> String {
    let mut out = String::with_capacity(raw_text.len());
    let mut chars = raw_text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    chars.next();
                }
                out.push('\n');
            }
            _ => out.push(fold_char(c)),
        }
    }
    out
}

/// Decodes and normalizes in one step.
pub fn normalize_bytes(bytes: &[u8]) -> Result<String, IngestError> {
    decode(bytes).map(normalize)
}

/// Simple (single code point) case folding.
fn fold_char(c: char) -> char {
    // Entries of CaseFolding.txt status C where folding differs from lowercase.
    match c {
        '\u{00B5}' => '\u{03BC}',
        '\u{017F}' => 's',
        '\u{0345}' | '\u{1FBE}' => '\u{03B9}',
        '\u{03C2}' => '\u{03C3}',
        '\u{03D0}' => '\u{03B2}',
        '\u{03D1}' => '\u{03B8}',
        '\u{03D5}' => '\u{03C6}',
        '\u{03D6}' => '\u{03C0}',
        '\u{03F0}' => '\u{03BA}',
        '\u{03F1}' => '\u{03C1}',
        '\u{03F5}' => '\u{03B5}',
        '\u{1E9B}' => '\u{1E61}',
        '\u{1E9E}' => '\u{00DF}',
        _ => {
            let mut lower = c.to_lowercase();
            match (lower.next(), lower.next()) {
                (Some(l), None) => l,
                _ => c,
            }
        }
    }
}

fn is_letter(c: char) -> bool {
    c.is_alphabetic() && !c.is_numeric()
}

/// Splits normalized text into word tokens.
pub fn tokenize(normalized_text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut joiner: Option<char> = None;

    for c in normalized_text.chars() {
        let c = if c == '\u{2019}' { '\'' } else { c };
        if is_letter(c) {
            if let Some(j) = joiner.take() {
                current.push(j);
            }
            current.push(c);
        } else if (c == '\'' || c == '-') && !current.is_empty() && joiner.is_none() {
            joiner = Some(c);
        } else {
            joiner = None;
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// A tokenized text with line structure kept for fragmenting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub lines: Vec<String>,
    pub tokens: Vec<String>,
    // line_starts[i] is the index of the first token of line i;
    // line_starts[lines.len()] == tokens.len().
    line_starts: Vec<usize>,
}

impl Document {
    pub fn from_text(id: impl Into<String>, raw_text: &str) -> Self {
        let mut lines = Vec::new();
        let mut tokens = Vec::new();
        let mut line_starts = Vec::new();
        for line in split_lines(raw_text) {
            line_starts.push(tokens.len());
            tokens.extend(tokenize(&normalize(line)));
            lines.push(line.to_owned());
        }
        line_starts.push(tokens.len());
        Document {
            id: id.into(),
            lines,
            tokens,
            line_starts,
        }
    }

    pub fn from_bytes(id: impl Into<String>, bytes: &[u8]) -> Result<Self, IngestError> {
        Ok(Self::from_text(id, decode(bytes)?))
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Tokens of the lines in `lines`.
    pub fn line_tokens(&self, lines: Range<usize>) -> &[String] {
        &self.tokens[self.line_starts[lines.start]..self.line_starts[lines.end]]
    }

    fn fragment(&self, index: usize, lines: Range<usize>) -> Fragment {
        Fragment {
            index,
            tokens: self.line_tokens(lines.clone()).to_vec(),
            lines,
        }
    }
}

// `\n`, `\r\n` and lone `\r` all end a line; a trailing terminator does not
// open an extra empty line.
fn split_lines(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\n' => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            b'\r' => {
                out.push(&text[start..i]);
                if bytes.get(i + 1) == Some(&b'\n') {
                    i += 1;
                }
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if start < text.len() {
        out.push(&text[start..]);
    }
    out
}

/// An ordered slice of a document. `index` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub index: usize,
    pub lines: Range<usize>,
    pub tokens: Vec<String>,
}

impl Fragment {
    /// Wraps a bare token list, e.g. for fragments that did not come from a
    /// [`Document`].
    pub fn from_tokens(index: usize, tokens: Vec<String>) -> Self {
        Fragment {
            index,
            lines: 0..0,
            tokens,
        }
    }
}

/// Consecutive groups of `n_lines` lines; the last group holds the remainder.
pub fn chunk_by_lines(doc: &Document, n_lines: usize) -> Result<Vec<Fragment>, IngestError> {
    if n_lines == 0 {
        return Err(IngestError::ZeroChunkSize);
    }
    if doc.lines.is_empty() {
        return Err(IngestError::EmptyDocument(doc.id.clone()));
    }
    let n = doc.line_count();
    Ok((0..n)
        .step_by(n_lines)
        .enumerate()
        .map(|(i, start)| doc.fragment(i + 1, start..(start + n_lines).min(n)))
        .collect())
}

/// Starts a new fragment at every line matching `pattern`.
///
/// The matching line opens (and belongs to) its fragment. Lines before the
/// first match form fragment 1 only if they contain tokens. With no match the
/// whole document is one fragment. Adjacent headings yield fragments that may
/// have no tokens; those are kept.
pub fn chunk_by_delimiter(doc: &Document, pattern: &str) -> Result<Vec<Fragment>, IngestError> {
    let re = Regex::new(pattern).map_err(|e| IngestError::InvalidPattern(e.to_string()))?;
    chunk_by_regex(doc, &re)
}

pub fn chunk_by_regex(doc: &Document, re: &Regex) -> Result<Vec<Fragment>, IngestError> {
    if doc.lines.is_empty() {
        return Err(IngestError::EmptyDocument(doc.id.clone()));
    }
    let n = doc.line_count();
    let mut starts: Vec<usize> = doc
        .lines
        .iter()
        .enumerate()
        .filter(|(_, line)| re.is_match(line))
        .map(|(i, _)| i)
        .collect();

    match starts.first() {
        None => return Ok(vec![doc.fragment(1, 0..n)]),
        Some(&first) if first > 0 && !doc.line_tokens(0..first).is_empty() => starts.insert(0, 0),
        Some(_) => {}
    }

    let mut fragments = Vec::with_capacity(starts.len());
    for (i, &start) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(n);
        fragments.push(doc.fragment(i + 1, start..end));
    }
    // A token-free preamble is dropped; keep its lines reachable by widening
    // fragment 1 back to line 0.
    if let Some(first) = fragments.first_mut() {
        first.lines.start = 0;
    }
    Ok(fragments)
}
