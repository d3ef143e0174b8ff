//! Constructs short textual descriptions for math expressions.
//!
//! Given an expression and the text around it, the pipeline ranks seed topics,
//! walks a citation graph built from the math items of a document corpus to
//! collect related documents, derives a timeline from citation direction, and
//! extracts a length-bounded summary by solving a concept-coverage integer
//! program exactly.

pub mod cli;
pub mod corpus;
pub mod mathtree;
pub mod pipeline;
pub mod retrieval;
pub mod selector;
pub mod summarizer;
pub mod textsim;
pub mod trg;

pub use corpus::{load_corpus, tokenize, Corpus, CorpusError, Document, MathItem, Sentence};
pub use mathtree::{parse_expression, tree_similarity, MathNode, MathTree, ParseError};
pub use pipeline::{
    describe, describe_loaded, DescribeOptions, Output, PipelineConfig, PipelineError, Trace,
};
pub use retrieval::{rank_topics, Query, RetrievalError, Topic};
pub use selector::{
    doc_query_sim, edge_query_sim, extract_timeline, select_relevant, Relevant, Timeline,
    TimestampedDoc,
};
pub use summarizer::{
    check_feasibility, extract_concepts, order_sentences, solve_ilp, solve_ilp_with, Concept,
    ConceptPool, DescribedSentence, Description, IlpInstance, PoolSentence, Selection,
    SolverOptions, SummarizerError, Violation,
};
pub use textsim::{cosine, load_vectors, EmbeddingStore, TextSimError};
pub use trg::{build_trg, BuildReport, Edge, TopicRelationGraph, TrgError};
