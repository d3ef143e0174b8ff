#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use mathdes::corpus::{DocumentRecord, MathRecord};
use mathdes::{Corpus, Document, EmbeddingStore, IlpInstance, MathNode, MathTree, Topic};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub const FIXTURE_DOCUMENTS: usize = 12;
pub const FIXTURE_MATH_ITEMS: usize = 14;
pub const FIXTURE_EDGES: usize = 14;
pub const FIXTURE_DANGLING: usize = 4;
pub const FIXTURE_SELF_CITATIONS: usize = 1;
pub const FIXTURE_VECTOR_TOKENS: usize = 50;
pub const FIXTURE_DIMENSION: usize = 8;

pub const GOLDEN_EXPR: &str = "a^2+b^2=c^2";
pub const GOLDEN_CONTEXT: &str = "The Pythagorean theorem for a right triangle";

// ---------------------------------------------------------------------------
// Coverage program oracle
// ---------------------------------------------------------------------------

/// Best selection by plain enumeration of all 2^n sentence subsets, with
/// explicit indicator vectors. Ties: fewer sentences, then lexicographically
/// smaller sorted index list.
pub fn brute_force(instance: &IlpInstance) -> (f64, Vec<usize>) {
    let n = instance.lengths.len();
    let m = instance.weights.len();
    assert!(n <= 20, "oracle is exponential");
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << n) {
        let s: Vec<u32> = (0..n).map(|j| (mask >> j) & 1).collect();
        let length: usize = (0..n).map(|j| instance.lengths[j] * s[j] as usize).sum();
        let count: u32 = s.iter().sum();
        if length > instance.budget || count as usize > instance.sentence_cap {
            continue;
        }
        let mut objective = 0.0;
        for i in 0..m {
            let covered = (0..n).any(|j| s[j] == 1 && instance.occurrence[j][i]);
            if covered {
                objective += instance.weights[i] + instance.relevance[i];
            }
        }
        let set: Vec<usize> = (0..n).filter(|&j| s[j] == 1).collect();
        let replace = match &best {
            None => true,
            Some((b, bset)) => {
                objective > *b || (objective == *b && (set.len(), &set) < (bset.len(), bset))
            }
        };
        if replace {
            best = Some((objective, set));
        }
    }
    best.unwrap()
}

pub fn random_instance(
    rng: &mut impl Rng,
    max_sentences: usize,
    max_concepts: usize,
) -> IlpInstance {
    let n = rng.gen_range(1..=max_sentences);
    let m = rng.gen_range(1..=max_concepts);
    let density = rng.gen_range(0.1..0.5);
    let lengths: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=15)).collect();
    let occurrence: Vec<Vec<bool>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_bool(density)).collect())
        .collect();
    let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(1..=5) as f64).collect();
    // Some instances get zero relevance so equal optima actually occur.
    let relevance: Vec<f64> = if rng.gen_bool(0.3) {
        vec![0.0; m]
    } else {
        (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()
    };
    let total: usize = lengths.iter().sum();
    let budget = if rng.gen_bool(0.5) {
        rng.gen_range(0..=total / 3)
    } else {
        rng.gen_range(total / 2..=total + 5)
    };
    let sentence_cap = if rng.gen_bool(0.5) {
        5
    } else {
        rng.gen_range(1..=n)
    };
    IlpInstance {
        sentences: (0..n).map(|j| format!("s{j}")).collect(),
        lengths,
        concepts: (0..m).map(|i| format!("c{i}")).collect(),
        weights,
        relevance,
        occurrence,
        budget,
        sentence_cap,
    }
}

// ---------------------------------------------------------------------------
// Random corpora and graphs
// ---------------------------------------------------------------------------

pub const WORDS: &[&str] = &[
    "the",
    "of",
    "a",
    "triangle",
    "number",
    "sequence",
    "ratio",
    "angle",
    "theorem",
    "sum",
    "probability",
    "event",
    "side",
    "prime",
    "identity",
    "series",
];

pub const EXPRESSIONS: &[&str] = &[
    "a+b",
    "a^2+b^2=c^2",
    "x_n",
    "\\frac{x}{y}",
    "F_n=F_{n-1}+F_{n-2}",
    "2ab",
    "P(A|B)",
    "x\\le y",
    "-x*y",
    "e^{i\\pi}+1=0",
];

pub fn random_store(rng: &mut impl Rng) -> EmbeddingStore {
    let dim = 4;
    let vectors = WORDS.iter().skip(3).map(|w| {
        (
            w.to_string(),
            (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
    });
    EmbeddingStore::new(dim, vectors, ["the", "of", "a"].map(String::from)).unwrap()
}

fn sentence(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(1..8);
    (0..n)
        .map(|_| *WORDS.choose(rng).unwrap())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A corpus of `3..=max_docs` documents whose math items cite random titles,
/// including unknown titles and the citing document itself.
pub fn random_corpus(rng: &mut impl Rng, max_docs: usize) -> Corpus {
    let n = rng.gen_range(3..=max_docs);
    let titles: Vec<String> = (0..n).map(|i| format!("T{i}")).collect();
    let docs = (0..n)
        .map(|i| {
            let math = (0..rng.gen_range(0..=3))
                .map(|_| {
                    let cites = (0..rng.gen_range(0..=3))
                        .map(|_| {
                            if rng.gen_bool(0.15) {
                                format!("Missing{}", rng.gen_range(0..3))
                            } else {
                                titles[rng.gen_range(0..n)].clone()
                            }
                        })
                        .collect();
                    MathRecord {
                        source: EXPRESSIONS.choose(rng).unwrap().to_string(),
                        context: sentence(rng),
                        cites,
                    }
                })
                .collect();
            Document::from_record(DocumentRecord {
                id: format!("id{i}"),
                title: titles[i].clone(),
                leading_paragraph: sentence(rng),
                sentences: (0..rng.gen_range(1..=4)).map(|_| sentence(rng)).collect(),
                math,
            })
            .unwrap()
        })
        .collect();
    Corpus::from_documents(docs).unwrap()
}

pub fn random_topics(rng: &mut impl Rng, corpus: &Corpus) -> Vec<Topic> {
    let mut titles: Vec<String> = corpus.iter().map(|d| d.title.clone()).collect();
    titles.push("Unknown topic".into());
    titles.shuffle(rng);
    titles.truncate(rng.gen_range(1..=4));
    titles
        .into_iter()
        .map(|title| Topic { title, score: 0.0 })
        .collect()
}

/// Citation pairs counted straight from the corpus: (kept edges, dangling, self).
pub fn count_citations(corpus: &Corpus) -> (Vec<(String, String)>, usize, usize) {
    let titles: HashSet<&str> = corpus.iter().map(|d| d.title.as_str()).collect();
    let mut kept = Vec::new();
    let (mut dangling, mut selfc) = (0, 0);
    for doc in corpus.iter() {
        for item in &doc.math_items {
            for cite in &item.cites {
                if !titles.contains(cite.as_str()) {
                    dangling += 1;
                } else if *cite == doc.title {
                    selfc += 1;
                } else {
                    kept.push((doc.title.clone(), cite.clone()));
                }
            }
        }
    }
    (kept, dangling, selfc)
}

/// Straight transcription of the timeline procedure over an explicit edge set.
pub fn reference_timeline(
    edges: &HashSet<(String, String)>,
    topics: &[Topic],
    docs: &[String],
) -> Vec<(String, Option<f64>)> {
    let mut pool: Vec<String> = Vec::new();
    for d in docs {
        if !pool.contains(d) {
            pool.push(d.clone());
        }
    }
    let mut sd: Vec<(String, f64)> = Vec::new();
    for (i, t) in topics.iter().enumerate() {
        let i = (i + 1) as f64;
        let Some(at) = pool.iter().position(|d| *d == t.title) else {
            continue;
        };
        let dj = pool.remove(at);
        sd.push((dj.clone(), i));
        for dk in pool.clone() {
            if edges.contains(&(dj.clone(), dk.clone())) {
                sd.push((dk.clone(), i - 0.1));
                pool.retain(|x| *x != dk);
            }
        }
        for dk in pool.clone() {
            if edges.contains(&(dk.clone(), dj.clone())) {
                sd.push((dk.clone(), i + 0.1));
                pool.retain(|x| *x != dk);
            }
        }
    }
    // stable insertion sort by timestamp
    let mut sorted: Vec<(String, f64)> = Vec::new();
    for e in sd {
        let at = sorted
            .iter()
            .position(|x| x.1 > e.1)
            .unwrap_or(sorted.len());
        sorted.insert(at, e);
    }
    sorted
        .into_iter()
        .map(|(t, s)| (t, Some(s)))
        .chain(pool.into_iter().map(|t| (t, None)))
        .collect()
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

pub fn random_tree(rng: &mut impl Rng, labels: &[&str], max_depth: usize) -> MathTree {
    fn node(rng: &mut impl Rng, labels: &[&str], depth: usize) -> MathNode {
        let label = labels.choose(rng).unwrap().to_string();
        let arity = if depth <= 1 { 0 } else { rng.gen_range(0..=3) };
        let children = (0..arity).map(|_| node(rng, labels, depth - 1)).collect();
        MathNode { label, children }
    }
    MathTree {
        root: node(rng, labels, max_depth),
    }
}

/// Enumerates label paths with an explicit stack and applies the Dice formula.
pub fn dice_by_enumeration(a: &MathTree, b: &MathTree, depth: usize) -> f64 {
    fn paths(t: &MathTree, depth: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![(&t.root, t.root.label.clone(), 1usize)];
        while let Some((node, path, d)) = stack.pop() {
            out.push(path.clone());
            if d < depth {
                for c in &node.children {
                    stack.push((c, format!("{path}\u{1f}{}", c.label), d + 1));
                }
            }
        }
        out
    }
    let pa = paths(a, depth);
    let mut pb: HashMap<String, usize> = HashMap::new();
    for p in paths(b, depth) {
        *pb.entry(p).or_default() += 1;
    }
    let total = pa.len() + pb.values().sum::<usize>();
    let mut shared = 0;
    for p in &pa {
        if let Some(n) = pb.get_mut(p) {
            if *n > 0 {
                *n -= 1;
                shared += 1;
            }
        }
    }
    (2 * shared) as f64 / total as f64
}
