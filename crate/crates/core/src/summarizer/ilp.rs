//! Exact solver for the concept-coverage integer program:
//!
//! ```text
//! max  Σ_i (w_i + r_i) c_i
//! s.t. Σ_j l_j s_j <= L
//!      s_j O_ji <= c_i          for all i, j
//!      Σ_j s_j O_ji >= c_i      for all i
//!      Σ_j s_j <= cap
//!      c_i, s_j ∈ {0, 1}
//! ```
//!
//! The two coverage constraints pin `c_i` to "some selected sentence contains
//! concept i", so the search runs over sentence subsets only. Small instances
//! are enumerated outright; larger ones use depth-first branch and bound with
//! an upper bound from the LP relaxation of the marginal-gain knapsack.
//!
//! Among optimal selections the one with the fewest sentences wins, then the
//! lexicographically smallest sorted index list.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::SummarizerError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IlpInstance {
    /// Sentence labels, informational only.
    pub sentences: Vec<String>,
    /// Word count `l_j` of each sentence.
    pub lengths: Vec<usize>,
    /// Concept labels, informational only.
    pub concepts: Vec<String>,
    pub weights: Vec<f64>,
    pub relevance: Vec<f64>,
    /// `occurrence[j][i]` is `O_ji`.
    pub occurrence: Vec<Vec<bool>>,
    pub budget: usize,
    pub sentence_cap: usize,
}

impl IlpInstance {
    pub fn sentence_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn concept_count(&self) -> usize {
        self.weights.len()
    }

    pub fn coefficient(&self, concept: usize) -> f64 {
        self.weights[concept] + self.relevance[concept]
    }

    pub fn validate(&self) -> Result<(), SummarizerError> {
        let invalid = |m: String| Err(SummarizerError::InvalidInstance(m));
        let (n, m) = (self.sentence_count(), self.concept_count());
        if self.sentences.len() != n || self.occurrence.len() != n {
            return invalid(format!(
                "{} lengths, {} sentence labels, {} occurrence rows",
                n,
                self.sentences.len(),
                self.occurrence.len()
            ));
        }
        if self.relevance.len() != m || self.concepts.len() != m {
            return invalid(format!(
                "{} weights, {} relevance values, {} concept labels",
                m,
                self.relevance.len(),
                self.concepts.len()
            ));
        }
        if let Some(j) = self.occurrence.iter().position(|row| row.len() != m) {
            return invalid(format!(
                "occurrence row {j} has {} columns, expected {m}",
                self.occurrence[j].len()
            ));
        }
        if let Some(j) = self.lengths.iter().position(|&l| l == 0) {
            return invalid(format!("sentence {j} has zero length"));
        }
        if let Some(i) = (0..m).find(|&i| !self.coefficient(i).is_finite()) {
            return invalid(format!("concept {i} has a non-finite coefficient"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    /// Ascending sentence indices with `s_j = 1`.
    pub sentences: Vec<usize>,
    /// Ascending concept indices with `c_i = 1`.
    pub concepts: Vec<usize>,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Search nodes allowed before giving up with `InstanceTooLarge`.
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    /// Instances with at most this many sentences are enumerated without
    /// bounding.
    pub exhaustive_threshold: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_nodes: 50_000_000,
            time_limit: None,
            exhaustive_threshold: 20,
        }
    }
}

/// Covered concepts and their objective, summed in ascending concept order.
pub fn evaluate(instance: &IlpInstance, sentences: &[usize]) -> (Vec<usize>, f64) {
    let covered: Vec<usize> = (0..instance.concept_count())
        .filter(|&i| sentences.iter().any(|&j| instance.occurrence[j][i]))
        .collect();
    let mut objective = 0.0;
    for &i in &covered {
        objective += instance.coefficient(i);
    }
    (covered, objective)
}

pub fn solve_ilp(instance: &IlpInstance) -> Result<Selection, SummarizerError> {
    solve_ilp_with(instance, &SolverOptions::default())
}

pub fn solve_ilp_with(
    instance: &IlpInstance,
    options: &SolverOptions,
) -> Result<Selection, SummarizerError> {
    instance.validate()?;
    let rows: Vec<Vec<usize>> = instance
        .occurrence
        .iter()
        .map(|row| (0..row.len()).filter(|&i| row[i]).collect())
        .collect();
    let mut search = Search {
        instance,
        rows,
        coef: (0..instance.concept_count())
            .map(|i| instance.coefficient(i))
            .collect(),
        exhaustive: instance.sentence_count() <= options.exhaustive_threshold,
        max_nodes: options.max_nodes,
        deadline: options.time_limit.map(|d| Instant::now() + d),
        nodes: 0,
        cover_count: vec![0; instance.concept_count()],
        chosen: Vec::new(),
        used: 0,
        value: 0.0,
        best: None,
    };
    search.consider();
    search.visit(0)?;
    let (objective, sentences) = search.best.expect("empty selection is always feasible");
    let (concepts, _) = evaluate(instance, &sentences);
    let selection = Selection {
        sentences,
        concepts,
        objective,
    };
    let violations = check_feasibility(instance, &selection);
    if !violations.is_empty() {
        return Err(SummarizerError::Infeasible(violations));
    }
    Ok(selection)
}

fn better(objective: f64, set: &[usize], best: &(f64, Vec<usize>)) -> bool {
    match objective.total_cmp(&best.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => (set.len(), set) < (best.1.len(), best.1.as_slice()),
    }
}

fn tolerance(value: f64) -> f64 {
    1e-9 * value.abs().max(1.0)
}

struct Search<'a> {
    instance: &'a IlpInstance,
    rows: Vec<Vec<usize>>,
    coef: Vec<f64>,
    exhaustive: bool,
    max_nodes: u64,
    deadline: Option<Instant>,
    nodes: u64,
    cover_count: Vec<u32>,
    chosen: Vec<usize>,
    used: usize,
    value: f64,
    best: Option<(f64, Vec<usize>)>,
}

impl Search<'_> {
    /// Offers the current partial selection as a candidate.
    fn consider(&mut self) {
        if let Some((best, _)) = &self.best {
            if self.value < best - tolerance(*best) {
                return;
            }
        }
        let (_, objective) = evaluate(self.instance, &self.chosen);
        if self
            .best
            .as_ref()
            .is_none_or(|b| better(objective, &self.chosen, b))
        {
            self.best = Some((objective, self.chosen.clone()));
        }
    }

    fn gain(&self, j: usize) -> f64 {
        self.rows[j]
            .iter()
            .filter(|&&i| self.cover_count[i] == 0)
            .map(|&i| self.coef[i].max(0.0))
            .sum()
    }

    /// Upper bound on what sentences `from..` can still add: the smaller of
    /// the fractional knapsack over marginal gains and the sum of the
    /// `remaining cap` largest gains. Coverage is submodular, so each
    /// sentence adds at most its current marginal gain.
    fn bound(&self, from: usize) -> f64 {
        let room = self.instance.budget - self.used;
        let slots = self.instance.sentence_cap - self.chosen.len();
        let mut items: Vec<(f64, usize)> = (from..self.instance.sentence_count())
            .filter(|&j| self.instance.lengths[j] <= room)
            .map(|j| (self.gain(j), self.instance.lengths[j]))
            .filter(|(g, _)| *g > 0.0)
            .collect();
        if items.is_empty() {
            return 0.0;
        }
        items.sort_by(|a, b| b.0.total_cmp(&a.0));
        let by_count: f64 = items.iter().take(slots).map(|(g, _)| g).sum();
        items.sort_by(|a, b| (b.0 / b.1 as f64).total_cmp(&(a.0 / a.1 as f64)));
        let mut left = room as f64;
        let mut by_length = 0.0;
        for (g, l) in items {
            let l = l as f64;
            if l <= left {
                by_length += g;
                left -= l;
            } else {
                by_length += g * left / l;
                break;
            }
        }
        by_count.min(by_length)
    }

    fn tick(&mut self) -> Result<(), SummarizerError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SummarizerError::InstanceTooLarge(format!(
                "node limit {} exceeded",
                self.max_nodes
            )));
        }
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(4096) && Instant::now() > deadline {
                return Err(SummarizerError::InstanceTooLarge(format!(
                    "time limit exceeded after {} nodes",
                    self.nodes
                )));
            }
        }
        Ok(())
    }

    fn visit(&mut self, j: usize) -> Result<(), SummarizerError> {
        self.tick()?;
        let n = self.instance.sentence_count();
        if j == n || self.chosen.len() == self.instance.sentence_cap {
            return Ok(());
        }
        if !self.exhaustive {
            let best = self.best.as_ref().map_or(f64::NEG_INFINITY, |b| b.0);
            if self.value + self.bound(j) < best - tolerance(best) {
                return Ok(());
            }
        }
        let fits = self.used + self.instance.lengths[j] <= self.instance.budget;
        // A sentence adding nothing positive is dominated by leaving it out.
        if fits && (self.exhaustive || self.gain(j) > 0.0) {
            self.include(j);
            self.consider();
            self.visit(j + 1)?;
            self.exclude(j);
        }
        self.visit(j + 1)
    }

    fn include(&mut self, j: usize) {
        for &i in &self.rows[j] {
            if self.cover_count[i] == 0 {
                self.value += self.coef[i];
            }
            self.cover_count[i] += 1;
        }
        self.used += self.instance.lengths[j];
        self.chosen.push(j);
    }

    fn exclude(&mut self, j: usize) {
        for &i in &self.rows[j] {
            self.cover_count[i] -= 1;
            if self.cover_count[i] == 0 {
                self.value -= self.coef[i];
            }
        }
        self.used -= self.instance.lengths[j];
        self.chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    SentenceOutOfRange(usize),
    DuplicateSentence(usize),
    ConceptOutOfRange(usize),
    DuplicateConcept(usize),
    /// Σ l_j s_j > L
    LengthExceeded {
        total: usize,
        budget: usize,
    },
    /// Σ s_j > cap
    SentenceCapExceeded {
        count: usize,
        cap: usize,
    },
    /// s_j O_ji > c_i
    UncoveredConcept {
        sentence: usize,
        concept: usize,
    },
    /// Σ_j s_j O_ji < c_i
    UnsupportedConcept {
        concept: usize,
    },
    ObjectiveMismatch {
        reported: f64,
        actual: f64,
    },
}

/// Checks a selection against every constraint of `instance` from scratch,
/// using 0/1 indicator vectors rather than anything the solver kept.
#[allow(clippy::needless_range_loop)]
pub fn check_feasibility(instance: &IlpInstance, selection: &Selection) -> Vec<Violation> {
    let mut violations = Vec::new();
    let (n, m) = (instance.sentence_count(), instance.concept_count());
    let mut s = vec![0u8; n];
    for &j in &selection.sentences {
        match s.get_mut(j) {
            None => violations.push(Violation::SentenceOutOfRange(j)),
            Some(1) => violations.push(Violation::DuplicateSentence(j)),
            Some(v) => *v = 1,
        }
    }
    let mut c = vec![0u8; m];
    for &i in &selection.concepts {
        match c.get_mut(i) {
            None => violations.push(Violation::ConceptOutOfRange(i)),
            Some(1) => violations.push(Violation::DuplicateConcept(i)),
            Some(v) => *v = 1,
        }
    }
    let total: usize = (0..n).map(|j| instance.lengths[j] * s[j] as usize).sum();
    if total > instance.budget {
        violations.push(Violation::LengthExceeded {
            total,
            budget: instance.budget,
        });
    }
    let count: usize = s.iter().map(|&v| v as usize).sum();
    if count > instance.sentence_cap {
        violations.push(Violation::SentenceCapExceeded {
            count,
            cap: instance.sentence_cap,
        });
    }
    for i in 0..m {
        let mut support = 0u32;
        for j in 0..n {
            let o = instance.occurrence[j][i] as u8;
            if s[j] * o > c[i] {
                violations.push(Violation::UncoveredConcept {
                    sentence: j,
                    concept: i,
                });
            }
            support += u32::from(s[j] * o);
        }
        if support < u32::from(c[i]) {
            violations.push(Violation::UnsupportedConcept { concept: i });
        }
    }
    let mut actual = 0.0;
    for i in 0..m {
        if c[i] == 1 {
            actual += instance.coefficient(i);
        }
    }
    if actual != selection.objective {
        violations.push(Violation::ObjectiveMismatch {
            reported: selection.objective,
            actual,
        });
    }
    violations
}
