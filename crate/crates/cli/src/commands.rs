use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lexdyn_core::synthgen::render_corpus;
use lexdyn_core::table::{write_curve_csv, write_ranked_csv};
use lexdyn_core::{
    chunk_by_delimiter, chunk_by_lines, compare_fragments, compare_pair, cumulative_curve, display_ratio,
    fragment_table, frequency_table, growth_curve, levelling_out, power_fit, read_table_path, summary, zipf_fit,
    zipf_text, CountRow, Document, FragmentComparison, Fragment, GrowthCurve, LevellingReport, LexSummary, PairReport,
    PowerFit, PowerLaw, Table, TableKind, ZipfSpec,
};
use serde::Serialize;

use crate::args::{ChunkArgs, Format, OutputArgs, StepArg};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

enum Input {
    Text(Document),
    Table(Table),
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

fn load_input(path: &Path) -> Result<Input> {
    if has_extension(path, "csv") {
        return Ok(Input::Table(read_table_path(path)?));
    }
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(Input::Text(Document::from_bytes(path.display().to_string(), &bytes)?))
}

fn fragments(doc: &Document, chunk: &ChunkArgs) -> Result<Option<Vec<Fragment>>> {
    Ok(match (chunk.chunk_lines, &chunk.chunk_pattern) {
        (Some(n), _) => Some(chunk_by_lines(doc, n)?),
        (None, Some(pattern)) => Some(chunk_by_delimiter(doc, pattern)?),
        (None, None) => None,
    })
}

fn text_curve(doc: &Document, chunk: &ChunkArgs, step: &StepArg) -> Result<GrowthCurve> {
    if let Some(frags) = fragments(doc, chunk)? {
        return Ok(cumulative_curve(&frags)?);
    }
    match step.step {
        Some(n) => Ok(growth_curve(&doc.tokens, n)?),
        None => Err(CliError::invalid(
            "text input needs one of --chunk-lines, --chunk-pattern or --step",
        )),
    }
}

fn input_curve(input: &Input, chunk: &ChunkArgs, step: &StepArg) -> Result<GrowthCurve> {
    match input {
        Input::Text(doc) => text_curve(doc, chunk, step),
        Input::Table(Table::Counts(t)) => Ok(t.curve()?),
        Input::Table(Table::Points(_)) => Err(CliError::invalid("an x,y table is not a growth curve")),
    }
}

fn input_heaps_fit(input: &Input, chunk: &ChunkArgs, step: &StepArg) -> Result<PowerFit> {
    match input {
        Input::Table(t) => Ok(power_fit(&t.fit_points()?)?),
        Input::Text(_) => Ok(input_curve(input, chunk, step)?.heaps_fit()?),
    }
}

fn canonical_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    // Round-tripping through Value sorts keys.
    let value = serde_json::to_value(value)?;
    let mut out = serde_json::to_vec_pretty(&value)?;
    out.push(b'\n');
    Ok(out)
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| CliError::invalid(format!("csv: {e}")))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn emit(output: &OutputArgs, bytes: &[u8]) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

#[derive(Debug, Serialize)]
struct UnitRow {
    unit: String,
    types: u64,
    tokens: u64,
    ttr: f64,
    ttr_display: String,
    hapax_count: Option<u64>,
    hapax_share: Option<f64>,
}

impl UnitRow {
    fn from_summary(unit: impl Into<String>, s: &LexSummary) -> Self {
        UnitRow {
            unit: unit.into(),
            types: s.type_count,
            tokens: s.token_count,
            ttr: s.ttr,
            ttr_display: display_ratio(s.ttr),
            hapax_count: Some(s.hapax_count),
            hapax_share: Some(s.hapax_share),
        }
    }

    fn from_count_row(row: &CountRow) -> Self {
        let ttr = row.counts.ttr();
        UnitRow {
            unit: row.label.clone(),
            types: row.counts.types,
            tokens: row.counts.tokens,
            ttr,
            ttr_display: display_ratio(ttr),
            hapax_count: None,
            hapax_share: None,
        }
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.unit.clone(),
            self.types.to_string(),
            self.tokens.to_string(),
            self.ttr.to_string(),
            self.ttr_display.clone(),
            opt(self.hapax_count),
            opt(self.hapax_share),
        ]
    }
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    fragments: Vec<UnitRow>,
    whole: Option<UnitRow>,
    zipf: Option<PowerFit>,
}

pub fn cmd_analyze(input: &Path, chunk: &ChunkArgs, ranks: Option<&PathBuf>, output: &OutputArgs) -> Result<()> {
    let report = match load_input(input)? {
        Input::Text(doc) => {
            let whole = summary(&doc.tokens)?;
            let rows = match fragments(&doc, chunk)? {
                Some(frags) => fragment_table(&frags)?
                    .iter()
                    .zip(&frags)
                    .map(|(s, f)| UnitRow::from_summary(f.index.to_string(), s))
                    .collect(),
                None => Vec::new(),
            };
            let table = frequency_table(&doc.tokens)?;
            if let Some(path) = ranks {
                let mut buf = Vec::new();
                write_ranked_csv(&table, &mut buf)?;
                fs::write(path, buf).map_err(|e| CliError::io(path, e))?;
            }
            AnalyzeReport {
                fragments: rows,
                whole: Some(UnitRow::from_summary("whole", &whole)),
                zipf: zipf_fit(&table).ok(),
            }
        }
        Input::Table(Table::Counts(t)) => {
            if ranks.is_some() {
                return Err(CliError::invalid("--ranks needs a text input"));
            }
            let (rows, whole): (Vec<&CountRow>, Option<&CountRow>) = match t.kind {
                TableKind::Fragments => (t.fragment_rows(), t.whole()),
                // the final cumulative point is the whole text
                TableKind::Cumulative => (t.rows[..t.rows.len().saturating_sub(1)].iter().collect(), t.whole()),
            };
            AnalyzeReport {
                fragments: rows.into_iter().map(UnitRow::from_count_row).collect(),
                whole: whole.map(UnitRow::from_count_row),
                zipf: None,
            }
        }
        Input::Table(Table::Points(_)) => return Err(CliError::invalid("analyze needs text or a counts table")),
    };

    let bytes = match output.format.unwrap_or(Format::Csv) {
        Format::Json => canonical_json(&report)?,
        Format::Csv => csv_bytes(
            &["unit", "types", "tokens", "ttr", "ttr_display", "hapax_count", "hapax_share"],
            report.fragments.iter().chain(&report.whole).map(UnitRow::record),
        )?,
    };
    emit(output, &bytes)
}

pub fn cmd_curve(input: &Path, chunk: &ChunkArgs, step: &StepArg, output: &OutputArgs) -> Result<()> {
    let curve = input_curve(&load_input(input)?, chunk, step)?;
    let bytes = match output.format.unwrap_or(Format::Csv) {
        Format::Json => canonical_json(&curve)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_curve_csv(&curve, &mut buf)?;
            buf
        }
    };
    emit(output, &bytes)
}

fn fit_bytes(fit: &PowerFit, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => canonical_json(fit),
        Format::Csv => csv_bytes(
            &["a", "b", "r2", "n_points"],
            [vec![fit.a.to_string(), fit.b.to_string(), fit.r2.to_string(), fit.n_points.to_string()]],
        ),
    }
}

pub fn cmd_fit(input: &Path, chunk: &ChunkArgs, step: &StepArg, zipf: bool, output: &OutputArgs) -> Result<()> {
    let input = load_input(input)?;
    let fit = if zipf {
        match &input {
            Input::Text(doc) => zipf_fit(&frequency_table(&doc.tokens)?)?,
            Input::Table(_) => return Err(CliError::invalid("--zipf needs a text input")),
        }
    } else {
        input_heaps_fit(&input, chunk, step)?
    };
    emit(output, &fit_bytes(&fit, output.format.unwrap_or(Format::Json))?)
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum CompareReport {
    Curves(PairReport),
    Fragments(FragmentComparison),
}

fn fit_cells(f: &PowerFit) -> [String; 4] {
    [f.a.to_string(), f.b.to_string(), f.r2.to_string(), f.n_points.to_string()]
}

pub fn cmd_compare(source: &Path, target: &Path, chunk: &ChunkArgs, step: &StepArg, output: &OutputArgs) -> Result<()> {
    let (src, tgt) = (load_input(source)?, load_input(target)?);
    let report = match (&src, &tgt) {
        (Input::Table(Table::Counts(s)), Input::Table(Table::Counts(t)))
            if s.kind == TableKind::Fragments && t.kind == TableKind::Fragments =>
        {
            let rows = |c: &lexdyn_core::CountsTable| c.fragment_rows().iter().map(|r| r.counts).collect::<Vec<_>>();
            CompareReport::Fragments(compare_fragments(&rows(s), &rows(t))?)
        }
        (Input::Table(Table::Counts(s)), Input::Table(Table::Counts(t))) if s.kind != t.kind => {
            return Err(CliError::invalid("cannot compare a fragment table with a cumulative table"));
        }
        _ => CompareReport::Curves(compare_pair(
            &input_curve(&src, chunk, step)?,
            &input_curve(&tgt, chunk, step)?,
        )?),
    };

    let bytes = match output.format.unwrap_or(Format::Json) {
        Format::Json => canonical_json(&report)?,
        Format::Csv => match &report {
            CompareReport::Curves(r) => {
                let mut row = vec![r.ttr_correlation.to_string()];
                row.extend(fit_cells(&r.source_fit));
                row.extend(fit_cells(&r.target_fit));
                row.extend([r.delta_a.to_string(), r.delta_b.to_string(), r.token_ratio.to_string(), r.note.clone()]);
                csv_bytes(
                    &[
                        "ttr_correlation",
                        "source_a",
                        "source_b",
                        "source_r2",
                        "source_n_points",
                        "target_a",
                        "target_b",
                        "target_r2",
                        "target_n_points",
                        "delta_a",
                        "delta_b",
                        "token_ratio",
                        "note",
                    ],
                    [row],
                )?
            }
            CompareReport::Fragments(r) => csv_bytes(
                &["n_fragments", "ttr_correlation", "token_ratio", "note"],
                [vec![
                    r.n_fragments.to_string(),
                    r.ttr_correlation.to_string(),
                    r.token_ratio.to_string(),
                    r.note.clone(),
                ]],
            )?,
        },
    };
    emit(output, &bytes)
}

/// Paths listed in a manifest, resolved against the manifest's directory.
fn read_manifest(path: &Path) -> Result<Vec<PathBuf>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect())
}

fn cohort_laws(manifest: &Path, chunk: &ChunkArgs, step: &StepArg) -> Result<Vec<PowerLaw>> {
    read_manifest(manifest)?
        .iter()
        .map(|entry| {
            if has_extension(entry, "json") {
                let text = fs::read_to_string(entry).map_err(|e| CliError::io(entry, e))?;
                let law: PowerLaw = serde_json::from_str(&text)
                    .map_err(|e| CliError::invalid(format!("{}: {e}", entry.display())))?;
                Ok(law)
            } else {
                Ok(input_heaps_fit(&load_input(entry)?, chunk, step)?.law())
            }
        })
        .collect()
}

fn levelling_csv(r: &LevellingReport) -> Result<Vec<u8>> {
    csv_bytes(
        &[
            "cohort_size",
            "spread_source_a",
            "spread_target_a",
            "spread_source_b",
            "spread_target_b",
            "spread_ratio_a",
            "spread_ratio_b",
            "sd_source_a",
            "sd_target_a",
            "sd_source_b",
            "sd_target_b",
            "note",
        ],
        [vec![
            r.cohort_size.to_string(),
            r.spread_source_a.to_string(),
            r.spread_target_a.to_string(),
            r.spread_source_b.to_string(),
            r.spread_target_b.to_string(),
            opt(r.spread_ratio_a),
            opt(r.spread_ratio_b),
            opt(r.sd_source_a),
            opt(r.sd_target_a),
            opt(r.sd_source_b),
            opt(r.sd_target_b),
            r.note.clone(),
        ]],
    )
}

pub fn cmd_levelling(
    source_manifest: &Path,
    target_manifest: &Path,
    chunk: &ChunkArgs,
    step: &StepArg,
    output: &OutputArgs,
) -> Result<()> {
    let source = cohort_laws(source_manifest, chunk, step)?;
    let target = cohort_laws(target_manifest, chunk, step)?;
    let report = levelling_out(&source, &target)?;
    let bytes = match output.format.unwrap_or(Format::Json) {
        Format::Json => canonical_json(&report)?,
        Format::Csv => levelling_csv(&report)?,
    };
    emit(output, &bytes)
}

pub fn cmd_synth(spec: &ZipfSpec, words_per_line: usize, out: Option<&PathBuf>) -> Result<()> {
    let tokens = zipf_text(spec)?;
    let text = render_corpus(&tokens, words_per_line);
    emit(
        &OutputArgs {
            format: None,
            out: out.cloned(),
        },
        text.as_bytes(),
    )
}
