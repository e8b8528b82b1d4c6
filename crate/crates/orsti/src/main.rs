use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orsti::formats::{decode_parse, encode_parse, read_input};
use orsti::query::{render, run, Op, PatternArgs};
use orsti::{Error, Index, Kind, Result};
use orsti_core::lz::{lz_decompress, lz_parse};
use orsti_core::Text;

/// Text indexes answered through orthogonal range searching.
#[derive(Debug, Parser)]
#[command(name = "orsti", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an index archive from input files.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Input files, `-` for stdin. Collections take one file per document.
        #[arg(long, num_args = 1.., required = true)]
        input: Vec<String>,
        #[arg(long)]
        out: String,
        /// Comma-separated per-document scores for topk instead of term frequency.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        doc_ranks: Option<Vec<i64>>,
    },
    /// Query an index archive.
    Query {
        #[command(subcommand)]
        op: Op,
        #[arg(long, global = true)]
        index: Option<String>,
        /// One JSON object per result line.
        #[arg(long, global = true)]
        json: bool,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// LZ77-compress a file into 10-byte phrase records.
    Compress {
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: String,
    },
    /// Expand phrase records back to the original bytes.
    Decompress {
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: String,
    },
}

fn write_output(path: &str, bytes: &[u8]) -> Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
    } else {
        std::fs::write(path, bytes).map_err(|e| Error::Format(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build { kind, input, out, doc_ranks } => {
            let inputs = input.iter().map(|p| read_input(p)).collect::<Result<Vec<_>>>()?;
            let index = Index::build(kind, &inputs, doc_ranks)?;
            write_output(&out, &index.save())
        }
        Command::Query { op, index, json, pattern } => {
            let path = index.ok_or_else(|| Error::Usage("queries need --index".into()))?;
            let index = Index::load(&read_input(&path)?)?;
            let records = run(&index, &op, &pattern)?;
            write_output("-", render(&records, json).as_bytes())
        }
        Command::Compress { input, out } => {
            let text = Text::new(read_input(&input)?)?;
            write_output(&out, &encode_parse(&lz_parse(&text))?)
        }
        Command::Decompress { input, out } => {
            let parse = decode_parse(&read_input(&input)?)?;
            if parse.is_empty() {
                return write_output(&out, &[]);
            }
            write_output(&out, lz_decompress(&parse)?.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("orsti: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
