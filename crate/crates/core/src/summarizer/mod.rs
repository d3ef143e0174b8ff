//! Concept extraction, the coverage integer program, and sentence ordering.

mod concepts;
mod ilp;
mod order;

use thiserror::Error;

pub use concepts::{extract_concepts, Concept, ConceptPool, PoolSentence};
pub use ilp::{
    check_feasibility, evaluate, solve_ilp, solve_ilp_with, IlpInstance, Selection, SolverOptions,
    Violation,
};
pub use order::{order_sentences, DescribedSentence, Description};

#[derive(Debug, Error)]
pub enum SummarizerError {
    #[error("no sentence has two or more non-stopword tokens")]
    EmptyPool,
    #[error("instance too large for exact search: {0}")]
    InstanceTooLarge(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("solver returned an infeasible selection: {0:?}")]
    Infeasible(Vec<Violation>),
}
