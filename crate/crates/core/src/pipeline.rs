//! End-to-end orchestration: rank topics, build the graph, select documents,
//! extract the timeline, solve the coverage program and order the result.

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{load_corpus, Corpus, CorpusError, Document};
use crate::mathtree::ParseError;
use crate::retrieval::{rank_topics, Query, RetrievalError, Topic, DEFAULT_TOPICS};
use crate::selector::{extract_timeline, select_relevant, Timeline};
use crate::summarizer::{
    extract_concepts, order_sentences, solve_ilp_with, Description, Selection, SolverOptions,
    SummarizerError,
};
use crate::textsim::{load_vectors, EmbeddingStore, TextSimError};
use crate::trg::{build_trg, BuildReport};

pub const DEFAULT_MAX_WORDS: usize = 130;
pub const DEFAULT_MAX_SENTENCES: usize = 5;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("vectors: {0}")]
    Vectors(#[from] TextSimError),
    #[error("query expression: {0}")]
    QueryParse(#[from] ParseError),
    #[error("retrieval: {0}")]
    Retrieval(#[from] RetrievalError),
    #[error("summarizer: {0}")]
    Summarizer(#[from] SummarizerError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescribeOptions {
    pub k_topics: usize,
    pub max_words: usize,
    pub max_sentences: usize,
    pub solver: SolverOptions,
}

impl Default for DescribeOptions {
    fn default() -> Self {
        Self {
            k_topics: DEFAULT_TOPICS,
            max_words: DEFAULT_MAX_WORDS,
            max_sentences: DEFAULT_MAX_SENTENCES,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub corpus_path: PathBuf,
    pub vectors_path: PathBuf,
    pub stopwords_path: PathBuf,
    pub options: DescribeOptions,
    pub trace: bool,
}

impl PipelineConfig {
    pub fn new(
        corpus_path: impl Into<PathBuf>,
        vectors_path: impl Into<PathBuf>,
        stopwords_path: impl Into<PathBuf>,
    ) -> Self {
        Self {
            corpus_path: corpus_path.into(),
            vectors_path: vectors_path.into(),
            stopwords_path: stopwords_path.into(),
            options: DescribeOptions::default(),
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryTrace {
    pub expression: String,
    pub context: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub sentences: usize,
    pub concepts: usize,
    pub budget: usize,
    pub sentence_cap: usize,
}

/// Intermediate results of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub query: QueryTrace,
    pub topics: Vec<Topic>,
    pub graph: BuildReport,
    /// Selected documents in append order, repeats included.
    pub documents: Vec<String>,
    pub skipped_topics: usize,
    pub timeline: Timeline,
    pub ilp: InstanceSummary,
    pub selection: Selection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub description: Description,
    pub trace: Option<Trace>,
}

pub fn describe_loaded(
    query: &Query,
    corpus: &Corpus,
    store: &EmbeddingStore,
    options: &DescribeOptions,
) -> Result<(Description, Trace), PipelineError> {
    let topics = rank_topics(query, corpus, store, options.k_topics)?;
    let (trg, graph) = build_trg(corpus);
    let relevant = select_relevant(&trg, &topics, query, store);
    let timeline = extract_timeline(&trg, &topics, &relevant.documents);
    let docs: Vec<&Document> = timeline
        .entries
        .iter()
        .map(|e| {
            corpus
                .get(&e.title)
                .expect("timeline titles come from the corpus")
        })
        .collect();
    let pool = extract_concepts(&docs, query, store)?;
    let instance = pool.to_instance(options.max_words, options.max_sentences);
    let selection = solve_ilp_with(&instance, &options.solver)?;
    let description = order_sentences(&selection, &pool.sentences, &timeline);
    let trace = Trace {
        query: QueryTrace {
            expression: query.source.clone(),
            context: query.context.clone(),
        },
        topics,
        graph,
        documents: relevant.titles().into_iter().map(String::from).collect(),
        skipped_topics: relevant.skipped_topics,
        timeline,
        ilp: InstanceSummary {
            sentences: instance.sentence_count(),
            concepts: instance.concept_count(),
            budget: instance.budget,
            sentence_cap: instance.sentence_cap,
        },
        selection,
    };
    Ok((description, trace))
}

/// Loads every input named by `config` and runs the pipeline.
pub fn describe(query: &Query, config: &PipelineConfig) -> Result<Output, PipelineError> {
    let corpus = load_corpus(&config.corpus_path)?;
    let store = load_vectors(&config.vectors_path, &config.stopwords_path)?;
    let (description, trace) = describe_loaded(query, &corpus, &store, &config.options)?;
    Ok(Output {
        description,
        trace: config.trace.then_some(trace),
    })
}
