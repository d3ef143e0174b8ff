//! Word vectors in GloVe text format, stopwords, and cosine similarity of
//! averaged token vectors.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TextSimError {
    #[error("vector dimension mismatch on line {line}: expected {expected}, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("vectors of different dimension: {0} vs {1}")]
    VectorLengthMismatch(usize, usize),
    #[error("vector file contains no rows")]
    EmptyVectorFile,
    #[error("invalid number {value:?} on line {line}")]
    InvalidNumber { line: usize, value: String },
    #[error("failed to read vectors: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStore {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
    stopwords: HashSet<String>,
}

impl EmbeddingStore {
    pub fn new(
        dimension: usize,
        vectors: impl IntoIterator<Item = (String, Vec<f64>)>,
        stopwords: impl IntoIterator<Item = String>,
    ) -> Result<Self, TextSimError> {
        let mut map = HashMap::new();
        for (i, (token, v)) in vectors.into_iter().enumerate() {
            if v.len() != dimension {
                return Err(TextSimError::DimensionMismatch {
                    line: i + 1,
                    expected: dimension,
                    found: v.len(),
                });
            }
            map.entry(token).or_insert(v);
        }
        if map.is_empty() || dimension == 0 {
            return Err(TextSimError::EmptyVectorFile);
        }
        Ok(Self {
            dimension,
            vectors: map,
            stopwords: stopwords.into_iter().collect(),
        })
    }

    /// Reads `token v1 .. vd` rows. The first row fixes the dimension; a
    /// repeated token keeps its first vector.
    pub fn from_readers(
        vectors: impl BufRead,
        stopwords: impl BufRead,
    ) -> Result<Self, TextSimError> {
        let mut dimension = None;
        let mut rows = Vec::new();
        for (idx, line) in vectors.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let mut fields = line.split_whitespace();
            let Some(token) = fields.next() else { continue };
            let values = fields
                .map(|f| {
                    f.parse::<f64>().map_err(|_| TextSimError::InvalidNumber {
                        line: lineno,
                        value: f.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected = *dimension.get_or_insert(values.len());
            if values.len() != expected || expected == 0 {
                return Err(TextSimError::DimensionMismatch {
                    line: lineno,
                    expected,
                    found: values.len(),
                });
            }
            rows.push((token.to_string(), values));
        }
        let Some(dimension) = dimension else {
            return Err(TextSimError::EmptyVectorFile);
        };
        let mut stop = Vec::new();
        for line in stopwords.lines() {
            let word = line?.trim().to_lowercase();
            if !word.is_empty() {
                stop.push(word);
            }
        }
        Self::new(dimension, rows, stop)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, token: &str) -> Option<&[f64]> {
        self.vectors.get(token).map(Vec::as_slice)
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }

    /// Mean vector of the tokens that are neither stopwords nor out of
    /// vocabulary; `None` when no token qualifies.
    ///
    /// Qualifying tokens are summed in sorted order so the result does not
    /// depend on token order.
    pub fn avg_vector<S: AsRef<str>>(&self, tokens: &[S]) -> Option<Vec<f64>> {
        let mut found: Vec<(&str, &[f64])> = tokens
            .iter()
            .map(AsRef::as_ref)
            .filter(|t| !self.is_stopword(t))
            .filter_map(|t| self.vector(t).map(|v| (t, v)))
            .collect();
        if found.is_empty() {
            return None;
        }
        found.sort_unstable_by(|a, b| a.0.cmp(b.0));
        let mut acc = vec![0.0; self.dimension];
        for (_, v) in &found {
            for (a, x) in acc.iter_mut().zip(v.iter()) {
                *a += x;
            }
        }
        let n = found.len() as f64;
        for a in &mut acc {
            *a /= n;
        }
        Some(acc)
    }

    /// Cosine of the averaged vectors of two token lists, 0 when either side
    /// has no qualifying token.
    pub fn text_similarity<A: AsRef<str>, B: AsRef<str>>(&self, a: &[A], b: &[B]) -> f64 {
        self.vector_similarity(self.avg_vector(a).as_deref(), self.avg_vector(b).as_deref())
    }

    pub fn vector_similarity(&self, a: Option<&[f64]>, b: Option<&[f64]>) -> f64 {
        match (a, b) {
            (Some(a), Some(b)) => cosine(a, b).expect("store vectors share one dimension"),
            _ => 0.0,
        }
    }
}

pub fn load_vectors(
    path: impl AsRef<Path>,
    stopword_path: impl AsRef<Path>,
) -> Result<EmbeddingStore, TextSimError> {
    let vectors = BufReader::new(File::open(path)?);
    let stopwords = BufReader::new(File::open(stopword_path)?);
    EmbeddingStore::from_readers(vectors, stopwords)
}

/// `a·b / (|a| |b|)`, clamped to [-1, 1]; 0 when either norm is zero.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64, TextSimError> {
    if a.len() != b.len() {
        return Err(TextSimError::VectorLengthMismatch(a.len(), b.len()));
    }
    let mut dot = 0.0;
    let mut norm_a = 0.0;
    let mut norm_b = 0.0;
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        norm_a += x * x;
        norm_b += y * y;
    }
    if norm_a == 0.0 || norm_b == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (norm_a * norm_b).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn store(vectors: &str, stop: &str) -> EmbeddingStore {
        EmbeddingStore::from_readers(vectors.as_bytes(), stop.as_bytes()).unwrap()
    }

    #[test]
    fn loads_minimal_file() {
        let s = store("a 1 0\nb 0 1\n", "");
        assert_eq!(s.dimension(), 2);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = EmbeddingStore::from_readers("a 1 0\nb 0 1 2\n".as_bytes(), "".as_bytes());
        assert!(matches!(
            err,
            Err(TextSimError::DimensionMismatch {
                line: 2,
                expected: 2,
                found: 3
            })
        ));
        let err = EmbeddingStore::from_readers("\n\n".as_bytes(), "".as_bytes());
        assert!(matches!(err, Err(TextSimError::EmptyVectorFile)));
        let err = EmbeddingStore::from_readers("a 1 x\n".as_bytes(), "".as_bytes());
        assert!(matches!(
            err,
            Err(TextSimError::InvalidNumber { line: 1, .. })
        ));
        let err = EmbeddingStore::from_readers("a\n".as_bytes(), "".as_bytes());
        assert!(matches!(
            err,
            Err(TextSimError::DimensionMismatch { line: 1, .. })
        ));
    }

    #[test]
    fn averages() {
        let s = store("a 1 0\nb 0 1\nthe 5 5\n", "the\nOf\n");
        assert_eq!(s.avg_vector(&["the", "of"]), None);
        assert_eq!(s.avg_vector(&["a"]), Some(vec![1.0, 0.0]));
        assert_eq!(s.avg_vector(&["a", "b"]), Some(vec![0.5, 0.5]));
        assert_eq!(s.avg_vector(&["a", "zzz", "the"]), Some(vec![1.0, 0.0]));
        assert_eq!(s.avg_vector::<&str>(&[]), None);
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!((cosine(&[1.0, 2.0], &[2.0, 1.0]).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(cosine(&[0.0, 0.0], &[2.0, 1.0]).unwrap(), 0.0);
        assert!(matches!(
            cosine(&[1.0], &[1.0, 2.0]),
            Err(TextSimError::VectorLengthMismatch(1, 2))
        ));
    }

    #[test]
    fn absent_vectors_give_zero() {
        let s = store("a 1 0\n", "the\n");
        assert_eq!(s.text_similarity(&["the"], &["a"]), 0.0);
        assert_eq!(s.text_similarity(&["a"], &["a"]), 1.0);
    }

    proptest! {
        #[test]
        fn avg_ignores_order_and_stopwords(
            mut tokens in prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "the", "zzz"]), 0..12),
            extra in prop::collection::vec(prop::sample::select(vec!["the", "of"]), 0..4),
        ) {
            let s = store("a 1 0.3\nb 0.2 1\nc -0.7 0.1\nthe 9 9\n", "the\nof\n");
            let base = s.avg_vector(&tokens);
            let mut with_stop = tokens.clone();
            with_stop.extend(extra);
            prop_assert_eq!(s.avg_vector(&with_stop), base.clone());
            tokens.reverse();
            prop_assert_eq!(s.avg_vector(&tokens), base);
        }

        #[test]
        fn cosine_symmetric_and_bounded(
            a in prop::collection::vec(-10.0f64..10.0, 4),
            b in prop::collection::vec(-10.0f64..10.0, 4),
            k in 0.01f64..100.0,
        ) {
            let ab = cosine(&a, &b).unwrap();
            prop_assert_eq!(ab, cosine(&b, &a).unwrap());
            prop_assert!(ab.abs() <= 1.0 + 1e-12);
            if a.iter().any(|x| *x != 0.0) {
                let scaled: Vec<f64> = a.iter().map(|x| x * k).collect();
                prop_assert!((cosine(&a, &scaled).unwrap() - 1.0).abs() <= 1e-12);
            }
        }
    }
}
