//! Relevant-document selection over the topic relation graph, and timeline
//! extraction from citation direction.

use serde::Serialize;

use crate::corpus::{tokenize, Document};
use crate::mathtree::tree_similarity;
use crate::retrieval::{Query, Topic};
use crate::textsim::EmbeddingStore;
use crate::trg::{Edge, TopicRelationGraph};

/// Offset applied to a seed's timestamp for its direct citation neighbours.
pub const NEIGHBOR_OFFSET: f64 = 0.1;

/// Context cosine plus expression tree similarity between an edge and the query.
pub fn edge_query_sim(edge: &Edge<'_>, query: &Query, store: &EmbeddingStore) -> f64 {
    let text = store.text_similarity(&tokenize(edge.context()), &query.context_tokens);
    text + tree_similarity(edge.expression(), &query.expression)
}

/// Cosine between a document's leading paragraph and the query context.
pub fn doc_query_sim(doc: &Document, query: &Query, store: &EmbeddingStore) -> f64 {
    store.text_similarity(&tokenize(&doc.leading_paragraph), &query.context_tokens)
}

#[derive(Debug, Clone)]
pub struct Relevant<'a> {
    /// Append order; may contain repeats.
    pub documents: Vec<&'a Document>,
    /// Topics whose title is not a vertex of the graph.
    pub skipped_topics: usize,
}

impl Relevant<'_> {
    pub fn titles(&self) -> Vec<&str> {
        self.documents.iter().map(|d| d.title.as_str()).collect()
    }
}

fn best_neighbor<'a>(
    trg: &TopicRelationGraph<'a>,
    edges: &[&Edge<'a>],
    far_end: impl Fn(&Edge<'a>) -> &'a str,
    query: &Query,
    store: &EmbeddingStore,
) -> Option<&'a Document> {
    let mut best: Option<(f64, &'a Document)> = None;
    for edge in edges {
        let doc = trg
            .document(far_end(edge))
            .expect("edge endpoints are vertices");
        let score = edge_query_sim(edge, query, store) + doc_query_sim(doc, query, store);
        if best.is_none_or(|(b, _)| score > b) {
            best = Some((score, doc));
        }
    }
    best.map(|(_, doc)| doc)
}

/// For each topic: the topic's document, then the source of its best inlink,
/// then the target of its best outlink. Argmax ties keep the earliest edge.
pub fn select_relevant<'a>(
    trg: &TopicRelationGraph<'a>,
    topics: &[Topic],
    query: &Query,
    store: &EmbeddingStore,
) -> Relevant<'a> {
    let mut documents = Vec::new();
    let mut skipped_topics = 0;
    for topic in topics {
        let Some(seed) = trg.document(&topic.title) else {
            skipped_topics += 1;
            continue;
        };
        documents.push(seed);
        let inlinks = trg.inlinks(&topic.title).expect("seed is a vertex");
        if let Some(doc) = best_neighbor(trg, &inlinks, |e| e.source, query, store) {
            documents.push(doc);
        }
        let outlinks = trg.outlinks(&topic.title).expect("seed is a vertex");
        if let Some(doc) = best_neighbor(trg, &outlinks, |e| e.target, query, store) {
            documents.push(doc);
        }
    }
    Relevant {
        documents,
        skipped_topics,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimestampedDoc {
    pub title: String,
    /// `None` for documents no seed reached; these sort last.
    pub timestamp: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Timeline {
    pub entries: Vec<TimestampedDoc>,
}

impl Timeline {
    pub fn titles(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.title.as_str()).collect()
    }

    pub fn rank_of(&self, title: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.title == title)
    }

    pub fn timestamp_of(&self, title: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.title == title)
            .and_then(|e| e.timestamp)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Seed `i` (1-based) gets timestamp `i`; remaining documents it cites get
/// `i - 0.1` and remaining documents citing it get `i + 0.1`. Each document is
/// assigned at most once. The result is sorted by timestamp (stable in
/// assignment order), followed by unassigned documents in input order.
pub fn extract_timeline(
    trg: &TopicRelationGraph<'_>,
    topics: &[Topic],
    docs: &[&Document],
) -> Timeline {
    let mut pool: Vec<&str> = Vec::new();
    for doc in docs {
        if !pool.contains(&doc.title.as_str()) {
            pool.push(&doc.title);
        }
    }
    let mut assigned: Vec<(&str, f64)> = Vec::new();
    for (i, topic) in topics.iter().enumerate() {
        let Some(at) = pool.iter().position(|t| *t == topic.title) else {
            continue;
        };
        let seed = pool.remove(at);
        let stamp = (i + 1) as f64;
        assigned.push((seed, stamp));
        let (cited, rest): (Vec<&str>, Vec<&str>) =
            pool.iter().partition(|other| trg.has_edge(seed, other));
        assigned.extend(cited.into_iter().map(|t| (t, stamp - NEIGHBOR_OFFSET)));
        let (citing, rest): (Vec<&str>, Vec<&str>) = rest
            .into_iter()
            .partition(|other| trg.has_edge(other, seed));
        assigned.extend(citing.into_iter().map(|t| (t, stamp + NEIGHBOR_OFFSET)));
        pool = rest;
    }
    assigned.sort_by(|a, b| a.1.total_cmp(&b.1));
    let entries = assigned
        .into_iter()
        .map(|(title, t)| TimestampedDoc {
            title: title.to_string(),
            timestamp: Some(t),
        })
        .chain(pool.into_iter().map(|title| TimestampedDoc {
            title: title.to_string(),
            timestamp: None,
        }))
        .collect();
    Timeline { entries }
}
