//! Topic relation graph: one vertex per document title, one directed edge per
//! citation found in the context of a math item.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Corpus, Document, MathItem};
use crate::mathtree::MathTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrgError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

/// A citation edge. The payload is the math item whose context holds the
/// citation.
#[derive(Debug, Clone, Copy)]
pub struct Edge<'a> {
    pub source: &'a str,
    pub target: &'a str,
    pub item: &'a MathItem,
}

impl<'a> Edge<'a> {
    pub fn expression(&self) -> &'a MathTree {
        &self.item.tree
    }

    pub fn context(&self) -> &'a str {
        &self.item.context
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub edges: usize,
    pub dangling: usize,
    pub self_citations: usize,
}

#[derive(Debug, Clone)]
pub struct TopicRelationGraph<'a> {
    corpus: &'a Corpus,
    edges: Vec<Edge<'a>>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct EdgeLine<'a> {
    source: &'a str,
    target: &'a str,
    expression: &'a str,
    context: &'a str,
}

/// Edges follow corpus order, then math item order, then citation order.
/// Citations to unknown titles and self-citations are dropped and counted.
pub fn build_trg(corpus: &Corpus) -> (TopicRelationGraph<'_>, BuildReport) {
    let n = corpus.len();
    let mut graph = TopicRelationGraph {
        corpus,
        edges: Vec::new(),
        outgoing: vec![Vec::new(); n],
        incoming: vec![Vec::new(); n],
    };
    let mut report = BuildReport::default();
    for (from, doc) in corpus.iter().enumerate() {
        for item in &doc.math_items {
            for cite in &item.cites {
                let Some(to) = corpus.index_of(cite) else {
                    report.dangling += 1;
                    continue;
                };
                if to == from {
                    report.self_citations += 1;
                    continue;
                }
                let id = graph.edges.len();
                graph.edges.push(Edge {
                    source: &doc.title,
                    target: &corpus.documents()[to].title,
                    item,
                });
                graph.outgoing[from].push(id);
                graph.incoming[to].push(id);
            }
        }
    }
    report.edges = graph.edges.len();
    (graph, report)
}

impl<'a> TopicRelationGraph<'a> {
    pub fn corpus(&self) -> &'a Corpus {
        self.corpus
    }

    pub fn vertex_count(&self) -> usize {
        self.corpus.len()
    }

    pub fn edges(&self) -> &[Edge<'a>] {
        &self.edges
    }

    pub fn contains(&self, title: &str) -> bool {
        self.corpus.index_of(title).is_some()
    }

    pub fn document(&self, title: &str) -> Option<&'a Document> {
        self.corpus.get(title)
    }

    fn vertex(&self, title: &str) -> Result<usize, TrgError> {
        self.corpus
            .index_of(title)
            .ok_or_else(|| TrgError::UnknownVertex(title.to_string()))
    }

    pub fn outlinks(&self, title: &str) -> Result<Vec<&Edge<'a>>, TrgError> {
        let v = self.vertex(title)?;
        Ok(self.outgoing[v].iter().map(|&e| &self.edges[e]).collect())
    }

    pub fn inlinks(&self, title: &str) -> Result<Vec<&Edge<'a>>, TrgError> {
        let v = self.vertex(title)?;
        Ok(self.incoming[v].iter().map(|&e| &self.edges[e]).collect())
    }

    pub fn has_edge(&self, source: &str, target: &str) -> bool {
        self.corpus.index_of(source).is_some_and(|v| {
            self.outgoing[v]
                .iter()
                .any(|&e| self.edges[e].target == target)
        })
    }

    /// Debug export: one JSON object per edge.
    pub fn write_edges_jsonl(&self, mut out: impl Write) -> io::Result<()> {
        for edge in &self.edges {
            let line = EdgeLine {
                source: edge.source,
                target: edge.target,
                expression: &edge.item.source,
                context: &edge.item.context,
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}
