//! Symbol layout trees for math expressions and a structural similarity score.

mod parser;

use std::collections::HashMap;
use std::fmt;

pub use parser::{parse_expression, ParseError, FRACTION, IMPLICIT_MUL, NEGATION};

/// Depth limit for the label paths compared by [`tree_similarity`]. The root
/// sits at depth 1.
pub const PATH_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MathNode {
    pub label: String,
    pub children: Vec<MathNode>,
}

impl MathNode {
    pub fn leaf(label: impl Into<String>) -> Self {
        Self::branch(label, Vec::new())
    }

    pub fn branch(label: impl Into<String>, children: Vec<MathNode>) -> Self {
        let label = label.into();
        debug_assert!(!label.is_empty());
        Self { label, children }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MathTree {
    pub root: MathNode,
}

impl MathTree {
    pub fn node_count(&self) -> usize {
        fn count(node: &MathNode) -> usize {
            1 + node.children.iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }

    /// Multiset of root-to-node label paths for every node at depth `<= depth`.
    pub fn label_paths(&self, depth: usize) -> HashMap<Vec<&str>, usize> {
        fn walk<'a>(
            node: &'a MathNode,
            prefix: &mut Vec<&'a str>,
            depth: usize,
            out: &mut HashMap<Vec<&'a str>, usize>,
        ) {
            if prefix.len() == depth {
                return;
            }
            prefix.push(&node.label);
            *out.entry(prefix.clone()).or_insert(0) += 1;
            for child in &node.children {
                walk(child, prefix, depth, out);
            }
            prefix.pop();
        }
        let mut out = HashMap::new();
        walk(&self.root, &mut Vec::new(), depth, &mut out);
        out
    }
}

impl fmt::Display for MathNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, child) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{child}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for MathTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

/// Dice coefficient over the multisets of depth-limited label paths:
/// `2 |Pa ∩ Pb| / (|Pa| + |Pb|)`.
pub fn tree_similarity(a: &MathTree, b: &MathTree) -> f64 {
    let pa = a.label_paths(PATH_DEPTH);
    let pb = b.label_paths(PATH_DEPTH);
    let total: usize = pa.values().sum::<usize>() + pb.values().sum::<usize>();
    let shared: usize = pa
        .iter()
        .map(|(path, &n)| n.min(pb.get(path).copied().unwrap_or(0)))
        .sum();
    (2 * shared) as f64 / total as f64
}
