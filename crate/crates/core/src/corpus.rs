//! Document corpus loading and the tokenizer shared by every downstream stage.
//!
//! The corpus file is UTF-8 JSON lines, one document per line:
//!
//! ```text
//! {"id": str, "title": str, "leading_paragraph": str, "sentences": [str],
//!  "math": [{"source": str, "context": str, "cites": [str]}]}
//! ```
//!
//! Sentences are stored pre-split. Unknown fields are ignored.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mathtree::{parse_expression, MathTree};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed record on line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("duplicate title {0:?}")]
    DuplicateTitle(String),
    #[error("corpus contains no documents")]
    EmptyCorpus,
    #[error("failed to read corpus: {0}")]
    Io(#[from] io::Error),
}

/// One sentence of a document, tokenized at load time.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub text: String,
    pub tokens: Vec<String>,
    /// Zero-based index within the owning document.
    pub position: usize,
    /// Token count before stopword removal.
    pub word_length: usize,
}

impl Sentence {
    pub fn new(text: impl Into<String>, position: usize) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        let word_length = tokens.len();
        Self {
            text,
            tokens,
            position,
            word_length,
        }
    }
}

/// A math expression in a document together with its surrounding text and
/// the titles cited from that text.
#[derive(Debug, Clone, PartialEq)]
pub struct MathItem {
    pub source: String,
    pub tree: MathTree,
    pub context: String,
    pub cites: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub leading_paragraph: String,
    pub sentences: Vec<Sentence>,
    pub math_items: Vec<MathItem>,
}

/// Serialized shape of a document line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    pub title: String,
    pub leading_paragraph: String,
    pub sentences: Vec<String>,
    pub math: Vec<MathRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MathRecord {
    pub source: String,
    pub context: String,
    pub cites: Vec<String>,
}

impl Document {
    /// Validates a record and builds the document. Errors carry a reason only;
    /// the caller attaches the line number.
    pub fn from_record(record: DocumentRecord) -> Result<Self, String> {
        if record.title.trim().is_empty() {
            return Err("title is empty".into());
        }
        if !record.sentences.is_empty() && record.leading_paragraph.trim().is_empty() {
            return Err("leading_paragraph is empty but sentences are present".into());
        }
        let mut math_items = Vec::with_capacity(record.math.len());
        for (i, m) in record.math.into_iter().enumerate() {
            let tree = parse_expression(&m.source).map_err(|e| format!("math item {i}: {e}"))?;
            if let Some(j) = m.cites.iter().position(|c| c.trim().is_empty()) {
                return Err(format!("math item {i}: citation {j} is empty"));
            }
            math_items.push(MathItem {
                source: m.source,
                tree,
                context: m.context,
                cites: m.cites,
            });
        }
        let sentences = record
            .sentences
            .into_iter()
            .enumerate()
            .map(|(position, text)| Sentence::new(text, position))
            .collect();
        Ok(Self {
            id: record.id,
            title: record.title,
            leading_paragraph: record.leading_paragraph,
            sentences,
            math_items,
        })
    }

    pub fn to_record(&self) -> DocumentRecord {
        DocumentRecord {
            id: self.id.clone(),
            title: self.title.clone(),
            leading_paragraph: self.leading_paragraph.clone(),
            sentences: self.sentences.iter().map(|s| s.text.clone()).collect(),
            math: self
                .math_items
                .iter()
                .map(|m| MathRecord {
                    source: m.source.clone(),
                    context: m.context.clone(),
                    cites: m.cites.clone(),
                })
                .collect(),
        }
    }
}

/// Documents in file order, addressable by title.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    documents: Vec<Document>,
    by_title: HashMap<String, usize>,
}

impl Corpus {
    pub fn from_documents(documents: Vec<Document>) -> Result<Self, CorpusError> {
        if documents.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let mut by_title = HashMap::with_capacity(documents.len());
        for (i, doc) in documents.iter().enumerate() {
            if by_title.insert(doc.title.clone(), i).is_some() {
                return Err(CorpusError::DuplicateTitle(doc.title.clone()));
            }
        }
        Ok(Self {
            documents,
            by_title,
        })
    }

    pub fn from_reader(reader: impl BufRead) -> Result<Self, CorpusError> {
        let mut documents = Vec::new();
        let mut ids = HashSet::new();
        let mut titles = HashSet::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |reason: String| CorpusError::MalformedRecord {
                line: lineno,
                reason,
            };
            let record: DocumentRecord =
                serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
            if !ids.insert(record.id.clone()) {
                return Err(malformed(format!("duplicate id {:?}", record.id)));
            }
            if !titles.insert(record.title.clone()) {
                return Err(CorpusError::DuplicateTitle(record.title));
            }
            documents.push(Document::from_record(record).map_err(malformed)?);
        }
        Self::from_documents(documents)
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> io::Result<()> {
        for doc in &self.documents {
            serde_json::to_writer(&mut out, &doc.to_record())?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn get(&self, title: &str) -> Option<&Document> {
        self.by_title.get(title).map(|&i| &self.documents[i])
    }

    pub fn index_of(&self, title: &str) -> Option<usize> {
        self.by_title.get(title).copied()
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn iter(&self) -> impl Iterator<Item = &Document> {
        self.documents.iter()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn math_item_count(&self) -> usize {
        self.documents.iter().map(|d| d.math_items.len()).sum()
    }
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let file = File::open(path)?;
    Corpus::from_reader(BufReader::new(file))
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{2018}'
                | '\u{2019}'
                | '\u{201C}'
                | '\u{201D}'
                | '\u{00AB}'
                | '\u{00BB}'
                | '\u{2013}'
                | '\u{2014}'
                | '\u{2026}'
                | '\u{00A1}'
                | '\u{00BF}'
        )
}

/// Lowercases, splits on Unicode whitespace, strips leading and trailing
/// punctuation from each piece and drops pieces that end up empty.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|piece| {
            let lower = piece.to_lowercase();
            let trimmed = lower.trim_matches(is_punctuation);
            (!trimmed.is_empty()).then(|| trimmed.to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(id: &str, title: &str) -> String {
        format!(
            r#"{{"id":"{id}","title":"{title}","leading_paragraph":"Lead.","sentences":["One two.","Three."],"math":[{{"source":"a+b","context":"ctx","cites":["X"]}}]}}"#
        )
    }

    #[test]
    fn tokenize_examples() {
        assert!(tokenize("").is_empty());
        assert_eq!(
            tokenize("Cassini's identity states that"),
            ["cassini's", "identity", "states", "that"]
        );
        assert_eq!(tokenize("A, b. C"), ["a", "b", "c"]);
        assert_eq!(tokenize("  -- ( ) "), Vec::<String>::new());
        assert_eq!(tokenize("\u{201C}Quoted\u{201D}\tword"), ["quoted", "word"]);
    }

    #[test]
    fn loads_single_record() {
        let corpus = Corpus::from_reader(line("1", "A").as_bytes()).unwrap();
        assert_eq!(corpus.len(), 1);
        let doc = corpus.get("A").unwrap();
        assert_eq!(doc.sentences[1].position, 1);
        assert_eq!(doc.sentences[0].word_length, 2);
        assert_eq!(doc.math_items[0].cites, ["X"]);
    }

    #[test]
    fn rejects_duplicate_title() {
        let text = format!("{}\n{}\n", line("1", "A"), line("2", "A"));
        match Corpus::from_reader(text.as_bytes()) {
            Err(CorpusError::DuplicateTitle(t)) => assert_eq!(t, "A"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_and_malformed() {
        assert!(matches!(
            Corpus::from_reader("\n\n".as_bytes()),
            Err(CorpusError::EmptyCorpus)
        ));
        let missing = r#"{"id":"1","title":"A","sentences":[],"math":[]}"#;
        assert!(matches!(
            Corpus::from_reader(missing.as_bytes()),
            Err(CorpusError::MalformedRecord { line: 1, .. })
        ));
        let text = format!("{}\nnot json\n", line("1", "A"));
        assert!(matches!(
            Corpus::from_reader(text.as_bytes()),
            Err(CorpusError::MalformedRecord { line: 2, .. })
        ));
        let bad_math = r#"{"id":"1","title":"A","leading_paragraph":"L","sentences":[],"math":[{"source":"(a","context":"","cites":[]}]}"#;
        assert!(matches!(
            Corpus::from_reader(bad_math.as_bytes()),
            Err(CorpusError::MalformedRecord { line: 1, .. })
        ));
        let empty_cite = r#"{"id":"1","title":"A","leading_paragraph":"L","sentences":[],"math":[{"source":"a","context":"","cites":[" "]}]}"#;
        assert!(matches!(
            Corpus::from_reader(empty_cite.as_bytes()),
            Err(CorpusError::MalformedRecord { line: 1, .. })
        ));
        let no_lead =
            r#"{"id":"1","title":"A","leading_paragraph":"","sentences":["s"],"math":[]}"#;
        assert!(matches!(
            Corpus::from_reader(no_lead.as_bytes()),
            Err(CorpusError::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn ignores_unknown_fields() {
        let text =
            r#"{"id":"1","title":"A","leading_paragraph":"L","sentences":[],"math":[],"extra":42}"#;
        assert_eq!(Corpus::from_reader(text.as_bytes()).unwrap().len(), 1);
    }

    fn arb_record() -> impl Strategy<Value = DocumentRecord> {
        let word = "[A-Za-z]{1,6}[,.]?";
        (
            "[a-z]{1,5}",
            prop::collection::vec(prop::collection::vec(word, 1..6), 0..4),
            prop::collection::vec(
                (
                    "[a-z][+*]?[a-z0-9]",
                    prop::collection::vec("[A-Z][a-z]{0,4}", 0..3),
                ),
                0..3,
            ),
        )
            .prop_map(|(title, sentences, math)| DocumentRecord {
                id: format!("id-{title}"),
                title,
                leading_paragraph: "Lead paragraph.".into(),
                sentences: sentences.into_iter().map(|w| w.join(" ")).collect(),
                math: math
                    .into_iter()
                    .map(|(source, cites)| MathRecord {
                        source,
                        context: "context words".into(),
                        cites,
                    })
                    .collect(),
            })
    }

    proptest! {
        #[test]
        fn corpus_round_trips(records in prop::collection::vec(arb_record(), 1..5)) {
            let mut seen = HashSet::new();
            let records: Vec<_> = records.into_iter().filter(|r| seen.insert(r.title.clone())).collect();
            let docs = records.into_iter().map(|r| Document::from_record(r).unwrap()).collect();
            let corpus = Corpus::from_documents(docs).unwrap();
            let mut buf = Vec::new();
            corpus.write_jsonl(&mut buf).unwrap();
            let reloaded = Corpus::from_reader(buf.as_slice()).unwrap();
            prop_assert_eq!(&reloaded, &corpus);
            for doc in reloaded.iter() {
                for (i, s) in doc.sentences.iter().enumerate() {
                    prop_assert_eq!(s.position, i);
                }
            }
        }

        #[test]
        fn tokenize_is_idempotent(text in "\\PC{0,60}") {
            let once = tokenize(&text);
            prop_assert_eq!(tokenize(&once.join(" ")), once);
        }
    }
}
