use serde::Serialize;

use crate::selector::Timeline;

use super::concepts::PoolSentence;
use super::ilp::Selection;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescribedSentence {
    pub text: String,
    pub document: String,
    pub position: usize,
    pub timestamp: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Description {
    pub sentences: Vec<DescribedSentence>,
    pub word_count: usize,
}

impl Description {
    pub fn text(&self) -> String {
        self.sentences
            .iter()
            .map(|s| s.text.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

/// Sentences from a single document keep their original order. Otherwise
/// documents follow the timeline (documents missing from it go last) and
/// sentences within a document keep their original order.
pub fn order_sentences(
    selection: &Selection,
    pool: &[PoolSentence],
    timeline: &Timeline,
) -> Description {
    let mut chosen: Vec<&PoolSentence> = selection.sentences.iter().map(|&j| &pool[j]).collect();
    let single_source = chosen.windows(2).all(|w| w[0].document == w[1].document);
    if single_source {
        chosen.sort_by_key(|s| s.position);
    } else {
        chosen.sort_by_key(|s| {
            (
                timeline.rank_of(&s.document).unwrap_or(usize::MAX),
                s.position,
            )
        });
    }
    let word_count = chosen.iter().map(|s| s.word_length).sum();
    let sentences = chosen
        .into_iter()
        .map(|s| DescribedSentence {
            text: s.text.clone(),
            document: s.document.clone(),
            position: s.position,
            timestamp: timeline.timestamp_of(&s.document),
        })
        .collect();
    Description {
        sentences,
        word_count,
    }
}
