//! `spotcheck`: reproducible runs over two-view dot scenes and their spatial
//! annotations. Every command reads JSONL inputs, computes in memory, then
//! writes its artifacts in one pass; rerunning with identical inputs and
//! seed produces byte-identical files.

mod artifact;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spotcheck_core::pipeline::{CountSource, Decoder};
use spotcheck_core::metrics::tables::Grouping;

#[derive(Parser)]
#[command(
    name = "spotcheck",
    about = "Spatial-consistency toolkit for two-view dot dialogues",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct IoArgs {
    /// Scene pairs, one JSON object per line.
    #[arg(long)]
    scenes: Option<PathBuf>,
    /// Annotated dialogues, one JSON object per line. `agreement` takes the
    /// flag twice, once per annotator.
    #[arg(long)]
    annotations: Vec<PathBuf>,
    /// Per-markable score vectors, one JSON object per dialogue.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Replacement term lexicon; defaults to the built-in one.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output directory; created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic corpus: scenes, consistent annotations and
    /// matching score files (48 dialogues, two per canonical relation).
    Generate {
        #[command(flatten)]
        io: IoArgs,
        /// Corpus seed; the only source of randomness.
        #[arg(long)]
        seed: u64,
    },
    /// Lint annotation files, optionally against their scenes.
    /// Exits 1 when violations are found.
    Validate {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode score files into referent sets.
    Decode {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_parser = clap::value_parser!(Decoder), default_value = "threshold")]
        decoder: Decoder,
        #[arg(long, value_parser = clap::value_parser!(CountSource), default_value = "file")]
        count_source: CountSource,
    },
    /// Score decoded referents against gold annotation.
    Evaluate {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_parser = clap::value_parser!(Decoder), default_value = "threshold")]
        decoder: Decoder,
        #[arg(long, value_parser = clap::value_parser!(CountSource), default_value = "file")]
        count_source: CountSource,
    },
    /// Run the canonical relation tests and tabulate satisfy/valid rates.
    /// Tests gold referents unless score files are supplied.
    TestRelations {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_parser = clap::value_parser!(Decoder), default_value = "threshold")]
        decoder: Decoder,
        #[arg(long, value_parser = clap::value_parser!(CountSource), default_value = "file")]
        count_source: CountSource,
        #[arg(long, value_parser = clap::value_parser!(Grouping), default_value = "relation")]
        group: Grouping,
        /// Also write the per-case records behind the table.
        #[arg(long)]
        emit_cases: bool,
    },
    /// Stratified analyses: modification strength, linguistic factors,
    /// absolute attribute differences and term distributions.
    Analyze {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_parser = clap::value_parser!(Decoder), default_value = "threshold")]
        decoder: Decoder,
        #[arg(long, value_parser = clap::value_parser!(CountSource), default_value = "file")]
        count_source: CountSource,
        /// Also write the per-case records behind the tables.
        #[arg(long)]
        emit_cases: bool,
    },
    /// Token-level agreement between two annotation files.
    Agreement {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Write the ten rotating train/valid/test manifests over dialogue ids.
    Split {
        #[command(flatten)]
        io: IoArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate { io, seed } => commands::generate(&io, seed),
        Command::Validate { io } => commands::validate(&io),
        Command::Decode {
            io,
            decoder,
            count_source,
        } => commands::decode(&io, decoder, count_source),
        Command::Evaluate {
            io,
            decoder,
            count_source,
        } => commands::evaluate(&io, decoder, count_source),
        Command::TestRelations {
            io,
            decoder,
            count_source,
            group,
            emit_cases,
        } => commands::test_relations(&io, decoder, count_source, group, emit_cases),
        Command::Analyze {
            io,
            decoder,
            count_source,
            emit_cases,
        } => commands::analyze(&io, decoder, count_source, emit_cases),
        Command::Agreement { io } => commands::agreement(&io),
        Command::Split { io } => commands::split(&io),
    };
    match outcome {
        Ok(status) => {
            for line in &status.summary {
                println!("{line}");
            }
            ExitCode::from(status.code)
        }
        Err(err) => {
            let record = serde_json::json!({
                "error": {
                    "kind": err.kind(),
                    "message": err.to_string(),
                }
            });
            eprintln!("{record}");
            ExitCode::from(2)
        }
    }
}

