//! Seed topic ranking.
//!
//! A document scores the best tree similarity between the query expression
//! and any of its math items, plus the cosine between the query context and
//! the document's leading paragraph.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{tokenize, Corpus, Document};
use crate::mathtree::{parse_expression, tree_similarity, MathTree, ParseError};
use crate::textsim::EmbeddingStore;

pub const DEFAULT_TOPICS: usize = 3;

#[derive(Debug, Error)]
pub enum RetrievalError {
    #[error("corpus contains no documents")]
    EmptyCorpus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub source: String,
    pub expression: MathTree,
    pub context: String,
    pub context_tokens: Vec<String>,
}

impl Query {
    pub fn new(source: impl Into<String>, context: impl Into<String>) -> Result<Self, ParseError> {
        let source = source.into();
        let context = context.into();
        Ok(Self {
            expression: parse_expression(&source)?,
            context_tokens: tokenize(&context),
            source,
            context,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Topic {
    pub title: String,
    pub score: f64,
}

pub fn score_document(
    doc: &Document,
    query: &Query,
    query_vector: Option<&[f64]>,
    store: &EmbeddingStore,
) -> f64 {
    let structure = doc
        .math_items
        .iter()
        .map(|m| tree_similarity(&query.expression, &m.tree))
        .fold(None, |best: Option<f64>, s| {
            Some(best.map_or(s, |b| b.max(s)))
        });
    let lead = store.avg_vector(&tokenize(&doc.leading_paragraph));
    let text = store.vector_similarity(query_vector, lead.as_deref());
    match structure {
        Some(s) => s + text,
        None => text,
    }
}

/// Top `k` documents by score, ties broken by ascending title.
pub fn rank_topics(
    query: &Query,
    corpus: &Corpus,
    store: &EmbeddingStore,
    k: usize,
) -> Result<Vec<Topic>, RetrievalError> {
    if corpus.is_empty() {
        return Err(RetrievalError::EmptyCorpus);
    }
    let query_vector = store.avg_vector(&query.context_tokens);
    let mut scored: Vec<Topic> = corpus
        .iter()
        .map(|doc| Topic {
            title: doc.title.clone(),
            score: score_document(doc, query, query_vector.as_deref(), store),
        })
        .collect();
    scored.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.title.cmp(&b.title))
    });
    scored.truncate(k);
    Ok(scored)
}
