mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;
use lexdyn_core::ZipfSpec;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            input,
            chunk,
            ranks,
            output,
        } => commands::cmd_analyze(&input, &chunk, ranks.as_ref(), &output),
        Command::Curve {
            input,
            chunk,
            step,
            output,
        } => commands::cmd_curve(&input, &chunk, &step, &output),
        Command::Fit {
            input,
            chunk,
            step,
            zipf,
            output,
        } => commands::cmd_fit(&input, &chunk, &step, zipf, &output),
        Command::Compare {
            source,
            target,
            chunk,
            step,
            output,
        } => commands::cmd_compare(&source, &target, &chunk, &step, &output),
        Command::Levelling {
            source_manifest,
            target_manifest,
            chunk,
            step,
            output,
        } => commands::cmd_levelling(&source_manifest, &target_manifest, &chunk, &step, &output),
        Command::Synth {
            vocab,
            exponent,
            tokens,
            seed,
            words_per_line,
            out,
        } => {
            let spec = ZipfSpec {
                vocab_size: vocab,
                exponent,
                n_tokens: tokens,
                seed,
            };
            commands::cmd_synth(&spec, words_per_line, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lexdyn: {e}");
            ExitCode::from(e.code)
        }
    }
}
