use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lexdyn_core::synthgen::render_corpus;
use lexdyn_core::table::write_curve_csv;
use lexdyn_core::{fixtures_dir, growth_curve, zipf_text, ZipfSpec};
use tempfile::TempDir;

fn lexdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = lexdyn(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    lexdyn(args).status.code().expect("exit code")
}

fn fixture(name: &str) -> String {
    fixtures_dir().join(name).display().to_string()
}

fn write(dir: &TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path.display().to_string()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn ten_chapters() -> String {
    (1..=10)
        .map(|i| format!("CHAPTER {i}\nIt was a cold day in chapter number {i}.\nSo it goes.\n"))
        .collect()
}

#[test]
fn analyze_cumulative_table_reports_whole_row() {
    let out = ok(&["analyze", &fixture("table5_cc_translation_cumulative.csv")]);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("whole,12070,44946,"), "{last}");
    assert!(last.contains(",0.27,"), "{last}");
    assert_eq!(out.lines().count(), 1 + 11);
}

#[test]
fn analyze_one_word() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "one.txt", "Word\n");
    let out = ok(&["analyze", &path]);
    assert_eq!(
        out,
        "unit,types,tokens,ttr,ttr_display,hapax_count,hapax_share\nwhole,1,1,1,1.00,1,1\n"
    );
}

#[test]
fn analyze_ten_chapters() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "novel.txt", &ten_chapters());
    let out = ok(&["analyze", &path, "--chunk-pattern", "^CHAPTER"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    assert!(rows[0].starts_with("1,"));
    assert!(rows[10].starts_with("whole,"));

    let report = json(&ok(&["analyze", &path, "--chunk-lines", "3", "--format", "json"]));
    assert_eq!(report["fragments"].as_array().unwrap().len(), 10);
    assert_eq!(report["whole"]["tokens"], 10 * 12);
}

#[test]
fn analyze_writes_ranks() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "t.txt", "b a b c b a");
    let ranks = dir.path().join("ranks.csv");
    ok(&["analyze", &path, "--ranks", ranks.to_str().unwrap()]);
    assert_eq!(
        fs::read_to_string(ranks).unwrap(),
        "rank,type,frequency\n1,b,3\n2,a,2\n3,c,1\n"
    );
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&["analyze", "/no/such/file.txt"]), 2);
    assert_eq!(code(&["analyze", "/no/such/table.csv"]), 2);
    let empty = write(&dir, "empty.txt", "");
    assert_eq!(code(&["analyze", &empty]), 3);
    let punct = write(&dir, "punct.txt", "1963 -- ...\n");
    assert_eq!(code(&["analyze", &punct]), 3);
    assert_eq!(code(&["curve", &punct, "--chunk-lines", "1"]), 3);
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, b"ok \xff").unwrap();
    assert_eq!(code(&["analyze", bad.to_str().unwrap()]), 2);
    let text = write(&dir, "t.txt", "a b c");
    assert_eq!(code(&["analyze", &text, "--chunk-pattern", "("]), 1);
    assert_eq!(code(&["curve", &text]), 1);
}

#[test]
fn curve_over_fixture_table() {
    let out = ok(&["curve", &fixture("table3_sh5_source_cumulative.csv")]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "cum_tokens,cum_types,ttr");
    assert_eq!(lines.len(), 11);
    assert!(lines[10].starts_with("50848,6247,0.12"));
    assert_eq!(code(&["curve", &fixture("table1_sh5_source_fragments.csv")]), 1);
}

#[test]
fn curve_single_step() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "t.txt", "one two three two one");
    let out = ok(&["curve", &path, "--step", "5"]);
    assert_eq!(out, "cum_tokens,cum_types,ttr\n5,3,0.6\n");
}

#[test]
fn curve_matches_library_on_synthetic_text() {
    let dir = TempDir::new().unwrap();
    let spec = ZipfSpec { vocab_size: 2000, exponent: 1.1, n_tokens: 20_000, seed: 3 };
    let tokens = zipf_text(&spec).unwrap();
    let path = write(&dir, "synth.txt", &render_corpus(&tokens, 12));
    let out = ok(&["curve", &path, "--step", "1000"]);
    let mut expected = Vec::new();
    write_curve_csv(&growth_curve(&tokens, 1000).unwrap(), &mut expected).unwrap();
    assert_eq!(out.as_bytes(), expected.as_slice());
}

#[test]
fn fit_exact_points() {
    let dir = TempDir::new().unwrap();
    let rows: String = [100.0f64, 400.0, 900.0, 1600.0]
        .iter()
        .map(|x| format!("{x},{}\n", 2.0 * x.sqrt()))
        .collect();
    let path = write(&dir, "pts.csv", &format!("x,y\n{rows}"));
    let fit = json(&ok(&["fit", &path]));
    assert!((fit["a"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((fit["b"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(fit["n_points"], 4);

    let csv = ok(&["fit", &path, "--format", "csv"]);
    assert!(csv.starts_with("a,b,r2,n_points\n"));

    let one = write(&dir, "one.csv", "x,y\n10,3\n");
    assert_eq!(code(&["fit", &one]), 4);
}

#[test]
fn fit_published_table() {
    let fit = json(&ok(&["fit", &fixture("table5_cc_translation_cumulative.csv")]));
    let b = fit["b"].as_f64().unwrap();
    assert!((b - 0.80).abs() <= 0.03, "b = {b}");
}

#[test]
fn fit_text_heaps_and_zipf() {
    let dir = TempDir::new().unwrap();
    let spec = ZipfSpec { vocab_size: 5000, exponent: 1.1, n_tokens: 30_000, seed: 1 };
    let path = write(&dir, "s.txt", &render_corpus(&zipf_text(&spec).unwrap(), 12));
    let heaps = json(&ok(&["fit", &path, "--step", "1000"]));
    assert!(heaps["b"].as_f64().unwrap() < 1.0);
    let zipf = json(&ok(&["fit", &path, "--zipf"]));
    assert!(zipf["b"].as_f64().unwrap() < 0.0);
    let flat = write(&dir, "flat.txt", "a b c d");
    assert_eq!(code(&["fit", &flat, "--zipf"]), 4);
}

#[test]
fn compare_fixture_fragment_tables() {
    let report = json(&ok(&[
        "compare",
        &fixture("table1_sh5_source_fragments.csv"),
        &fixture("table4_sh5_translation_fragments.csv"),
    ]));
    assert!((report["token_ratio"].as_f64().unwrap() - 0.818).abs() < 1e-3);
    assert!(report["ttr_correlation"].as_f64().unwrap() >= 0.99);
    assert!(report["note"].as_str().unwrap().contains("not specific"));
    assert_eq!(
        code(&[
            "compare",
            &fixture("table1_sh5_source_fragments.csv"),
            &fixture("table3_sh5_source_cumulative.csv"),
        ]),
        1
    );
}

#[test]
fn compare_texts() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "src.txt", &ten_chapters());
    let tgt_text = ten_chapters().replace("cold", "very cold and grey");
    let tgt = write(&dir, "tgt.txt", &tgt_text);
    let report = json(&ok(&["compare", &src, &tgt, "--chunk-pattern", "^CHAPTER"]));
    assert!(report["token_ratio"].as_f64().unwrap() > 1.0);
    assert!(report["source_fit"]["b"].is_number());

    let csv = ok(&["compare", &src, &tgt, "--chunk-pattern", "^CHAPTER", "--format", "csv"]);
    assert!(csv.starts_with("ttr_correlation,source_a,"));
    assert_eq!(csv.lines().count(), 2);

    let short = write(&dir, "short.txt", "CHAPTER 1\nx y\nCHAPTER 2\nz\nCHAPTER 3\nw\n");
    assert_eq!(code(&["compare", &src, &short, "--chunk-pattern", "^CHAPTER"]), 5);
}

#[test]
fn levelling_fixture_fits() {
    let report = json(&ok(&[
        "levelling",
        &fixture("fits/source.manifest"),
        &fixture("fits/target.manifest"),
    ]));
    assert!((report["spread_source_b"].as_f64().unwrap() - 0.05).abs() < 1e-12);
    assert!((report["spread_target_b"].as_f64().unwrap() - 0.01).abs() < 1e-12);
    assert!((report["spread_source_a"].as_f64().unwrap() - 2.05).abs() < 1e-12);
    assert!((report["spread_target_a"].as_f64().unwrap() - 0.38).abs() < 1e-12);
    assert!(report["sd_source_a"].is_null());
}

#[test]
fn levelling_mixed_manifest_entries() {
    let dir = TempDir::new().unwrap();
    for (i, seed) in [(1, 10u64), (2, 11), (3, 12)] {
        let spec = ZipfSpec { vocab_size: 3000, exponent: 1.0 + 0.1 * i as f64, n_tokens: 10_000, seed };
        write(&dir, &format!("s{i}.txt"), &render_corpus(&zipf_text(&spec).unwrap(), 12));
    }
    let src = write(&dir, "src.manifest", "# sources\ns1.txt\ns2.txt\n\ns3.txt\n");
    let laws = fixtures_dir().join("fits");
    let law = |n: &str| laws.join(n).display().to_string();
    let tgt = write(
        &dir,
        "tgt.manifest",
        &format!("{}\n{}\n{}\n", law("sh5_target.json"), law("cc_target.json"), fixture("table3_sh5_source_cumulative.csv")),
    );
    let report = json(&ok(&["levelling", &src, &tgt, "--step", "1000"]));
    assert_eq!(report["cohort_size"], 3);
    assert!(report["sd_source_b"].is_number());

    let two = write(&dir, "two.manifest", "s1.txt\ns2.txt\n");
    assert_eq!(code(&["levelling", &src, &two, "--step", "1000"]), 5);
    assert_eq!(code(&["levelling", "/no/manifest", &two]), 2);
}

#[test]
fn synth_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        ok(&["synth", "--vocab", "2", "--exponent", "1", "--tokens", "4", "--seed", "7", "--out", p.to_str().unwrap()]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.split_whitespace().count(), 4);
    assert_eq!(code(&["synth", "--vocab", "1", "--exponent", "1", "--tokens", "4"]), 1);
}

fn reemit(text: &str) -> String {
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    let mut s = serde_json::to_string_pretty(&value).unwrap();
    s.push('\n');
    s
}

#[test]
fn json_reports_round_trip_byte_identically() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "novel.txt", &ten_chapters());
    let reports = [
        ok(&["analyze", &text, "--chunk-pattern", "^CHAPTER", "--format", "json"]),
        ok(&["curve", &text, "--step", "7", "--format", "json"]),
        ok(&["fit", &fixture("table3_sh5_source_cumulative.csv")]),
        ok(&["compare", &text, &text, "--chunk-lines", "3"]),
        ok(&["levelling", &fixture("fits/source.manifest"), &fixture("fits/target.manifest")]),
    ];
    for r in reports {
        assert_eq!(reemit(&r), r);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out: PathBuf = dir.path().join("curve.csv");
    let stdout = ok(&["curve", &fixture("table5_cc_translation_cumulative.csv"), "--out", out.to_str().unwrap()]);
    assert!(stdout.is_empty());
    let written = fs::read_to_string(Path::new(&out)).unwrap();
    assert!(written.starts_with("cum_tokens,cum_types,ttr\n6277,2511,0.4"));
    assert!(!written.contains('\r'));
}
