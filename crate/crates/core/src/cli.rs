//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use crate::pipeline::{describe, PipelineConfig, Trace, DEFAULT_MAX_SENTENCES, DEFAULT_MAX_WORDS};
use crate::retrieval::{Query, DEFAULT_TOPICS};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mathdes",
    version,
    about = "Construct a short description for a math expression from a document corpus"
)]
struct Args {
    /// Corpus file, one JSON document per line
    #[arg(long, value_name = "PATH")]
    corpus: PathBuf,
    /// Word vectors in GloVe text format
    #[arg(long, value_name = "PATH")]
    vectors: PathBuf,
    /// Stopword list, one token per line
    #[arg(long, value_name = "PATH")]
    stopwords: PathBuf,
    /// Math expression (LaTeX subset)
    #[arg(long, value_name = "STRING")]
    expr: String,
    /// Text surrounding the expression
    #[arg(long, value_name = "STRING")]
    context: String,
    /// Number of seed topics
    #[arg(long, default_value_t = DEFAULT_TOPICS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_WORDS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_words: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_SENTENCES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_sentences: u64,
    /// Print intermediate results (to stderr, or inside the JSON output)
    #[arg(long)]
    trace: bool,
    /// Emit {"description": [...], "trace": {...}}
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    description: Vec<&'a str>,
    trace: &'a Trace,
}

pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    let query = match Query::new(&args.expr, &args.context) {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(stderr, "error: --expr: {e}");
            return EXIT_DATA;
        }
    };
    let mut config = PipelineConfig::new(&args.corpus, &args.vectors, &args.stopwords);
    config.options.k_topics = args.k as usize;
    config.options.max_words = args.max_words as usize;
    config.options.max_sentences = args.max_sentences as usize;
    config.trace = true;
    let output = match describe(&query, &config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_DATA;
        }
    };
    let trace = output.trace.as_ref().expect("trace requested");
    let written = if args.json {
        let doc = JsonOutput {
            description: output
                .description
                .sentences
                .iter()
                .map(|s| s.text.as_str())
                .collect(),
            trace,
        };
        let text = serde_json::to_string_pretty(&doc).expect("output serializes");
        writeln!(stdout, "{text}")
    } else {
        if args.trace {
            let text = serde_json::to_string_pretty(trace).expect("trace serializes");
            let _ = writeln!(stderr, "{text}");
        }
        writeln!(stdout, "{}", output.description.text())
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: writing output: {e}");
            EXIT_DATA
        }
    }
}
