use std::collections::HashMap;

use serde::Serialize;

use crate::corpus::Document;
use crate::retrieval::Query;
use crate::textsim::EmbeddingStore;

use super::ilp::IlpInstance;
use super::SummarizerError;

/// A candidate sentence with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoolSentence {
    pub document: String,
    pub position: usize,
    pub text: String,
    pub word_length: usize,
}

/// A bigram of consecutive non-stopword tokens.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Concept {
    pub bigram: (String, String),
    /// Occurrences across the pool, counted per occurrence.
    pub weight: u32,
    /// Cosine between the bigram's averaged vector and the query context.
    pub relevance: f64,
}

impl Concept {
    pub fn coefficient(&self) -> f64 {
        f64::from(self.weight) + self.relevance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConceptPool {
    pub sentences: Vec<PoolSentence>,
    pub concepts: Vec<Concept>,
    /// Sorted, distinct concept indices per sentence.
    pub occurrence: Vec<Vec<usize>>,
}

impl ConceptPool {
    pub fn to_instance(&self, budget: usize, sentence_cap: usize) -> IlpInstance {
        let n = self.concepts.len();
        IlpInstance {
            sentences: self.sentences.iter().map(|s| s.text.clone()).collect(),
            lengths: self.sentences.iter().map(|s| s.word_length).collect(),
            concepts: self
                .concepts
                .iter()
                .map(|c| format!("{} {}", c.bigram.0, c.bigram.1))
                .collect(),
            weights: self.concepts.iter().map(|c| f64::from(c.weight)).collect(),
            relevance: self.concepts.iter().map(|c| c.relevance).collect(),
            occurrence: self
                .occurrence
                .iter()
                .map(|row| {
                    let mut dense = vec![false; n];
                    for &i in row {
                        dense[i] = true;
                    }
                    dense
                })
                .collect(),
            budget,
            sentence_cap,
        }
    }
}

/// Sentences of `docs` in document order then position, skipping sentences
/// with no tokens. Concepts are numbered by first occurrence.
pub fn extract_concepts(
    docs: &[&Document],
    query: &Query,
    store: &EmbeddingStore,
) -> Result<ConceptPool, SummarizerError> {
    let mut sentences = Vec::new();
    let mut concepts: Vec<Concept> = Vec::new();
    let mut index: HashMap<(String, String), usize> = HashMap::new();
    let mut occurrence = Vec::new();

    for doc in docs {
        for sentence in doc.sentences.iter().filter(|s| s.word_length > 0) {
            let content: Vec<&String> = sentence
                .tokens
                .iter()
                .filter(|t| !store.is_stopword(t))
                .collect();
            let mut row = Vec::new();
            for pair in content.windows(2) {
                let key = (pair[0].clone(), pair[1].clone());
                let id = *index.entry(key.clone()).or_insert_with(|| {
                    concepts.push(Concept {
                        bigram: key,
                        weight: 0,
                        relevance: 0.0,
                    });
                    concepts.len() - 1
                });
                concepts[id].weight += 1;
                row.push(id);
            }
            row.sort_unstable();
            row.dedup();
            occurrence.push(row);
            sentences.push(PoolSentence {
                document: doc.title.clone(),
                position: sentence.position,
                text: sentence.text.clone(),
                word_length: sentence.word_length,
            });
        }
    }
    if concepts.is_empty() {
        return Err(SummarizerError::EmptyPool);
    }
    let query_vector = store.avg_vector(&query.context_tokens);
    for concept in &mut concepts {
        let tokens = [concept.bigram.0.as_str(), concept.bigram.1.as_str()];
        concept.relevance = store.vector_similarity(
            store.avg_vector(&tokens).as_deref(),
            query_vector.as_deref(),
        );
    }
    Ok(ConceptPool {
        sentences,
        concepts,
        occurrence,
    })
}
