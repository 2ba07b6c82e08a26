//! Streaming fusion that stays order-invariant for any transfer rule.
//!
//! The state keeps the conjunctive result of every source seen so far,
//! never the transferred one. A new source is combined with that stored
//! result, and a transfer operator is applied to a copy only when a
//! decision snapshot is requested. Because `⊙` is associative and
//! commutative, snapshots do not depend on arrival order or grouping.
//!
//! Cumulative column sums ride along because the SDL-improved transfer
//! weights partial conflicts by them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rules::{conflict_of, conjunctive, ConjunctiveResult};
use crate::{ColumnSums, Error, MassFunction, Model, Proposition, Result, RuleId};

#[derive(Debug, Clone)]
pub struct FusionState {
    model: Model,
    accumulator: ConjunctiveResult,
    columns: ColumnSums,
    labels: Vec<String>,
    prune_below: Option<f64>,
}

impl FusionState {
    /// A state that has seen no sources: accumulator `{T: 1}`.
    pub fn new(model: &Model) -> FusionState {
        FusionState {
            model: model.clone(),
            accumulator: ConjunctiveResult::vacuous(model),
            columns: ColumnSums::empty(model),
            labels: Vec::new(),
            prune_below: None,
        }
    }

    /// Drop accumulator terms with mass below `epsilon` after every fuse.
    ///
    /// This is an approximation: once terms are dropped, snapshots depend
    /// on the order in which sources arrived.
    pub fn with_pruning(mut self, epsilon: f64) -> FusionState {
        self.prune_below = Some(epsilon);
        self
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    /// The stored pre-transfer result.
    pub fn accumulator(&self) -> &ConjunctiveResult {
        &self.accumulator
    }

    pub fn columns(&self) -> &ColumnSums {
        &self.columns
    }

    pub fn source_count(&self) -> usize {
        self.columns.source_count()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Mass currently on propositions empty under the model.
    pub fn conflict(&self) -> f64 {
        conflict_of(&self.accumulator)
    }

    /// Combines `m` with the stored conjunctive result (never with a
    /// transferred one) and replaces it.
    pub fn fuse(&mut self, m: &MassFunction, label: impl Into<String>) -> Result<()> {
        if m.model() != &self.model {
            return Err(Error::ModelMismatch);
        }
        m.validate_input()?;
        let mut next = conjunctive(&self.accumulator, m)?;
        if let Some(eps) = self.prune_below {
            next.prune(eps);
        }
        self.columns.add(m)?;
        self.accumulator = next;
        self.labels.push(label.into());
        Ok(())
    }

    /// Folds another state's sources into this one, as if each of them had
    /// been fused here in turn.
    pub fn merge(&mut self, other: &FusionState) -> Result<()> {
        if other.model != self.model {
            return Err(Error::ModelMismatch);
        }
        let mut next = conjunctive(&self.accumulator, &other.accumulator)?;
        if let Some(eps) = self.prune_below {
            next.prune(eps);
        }
        self.columns.merge(&other.columns)?;
        self.accumulator = next;
        self.labels.extend(other.labels.iter().cloned());
        Ok(())
    }

    /// The decision-ready mass under `rule`. The stored state is untouched.
    pub fn snapshot(&self, rule: RuleId) -> Result<MassFunction> {
        rule.transfer(&self.accumulator, &self.columns)
    }
}

/// Fuses every mass in order, then applies `rule` once.
pub fn batch(model: &Model, masses: &[MassFunction], rule: RuleId) -> Result<MassFunction> {
    if masses.is_empty() {
        return Err(Error::NoSources);
    }
    let mut state = FusionState::new(model);
    for (i, m) in masses.iter().enumerate() {
        state.fuse(m, alloc::format!("m{}", i + 1))?;
    }
    state.snapshot(rule)
}

/// Direct n-way conjunctive rule: walks the Cartesian product of all focal
/// sets and intersects each tuple at once, with no intermediate folding.
pub fn oracle_conjunctive(masses: &[MassFunction]) -> Result<ConjunctiveResult> {
    let first = masses.first().ok_or(Error::NoSources)?;
    let model = first.model();
    if masses.iter().any(|m| m.model() != model) {
        return Err(Error::ModelMismatch);
    }
    let focal: Vec<Vec<(&Proposition, f64)>> = masses.iter().map(|m| m.iter().collect()).collect();
    if focal.iter().any(Vec::is_empty) {
        return Err(Error::MassSum(0.0));
    }

    let mut terms: BTreeMap<Proposition, f64> = BTreeMap::new();
    let mut index = vec![0usize; focal.len()];
    'outer: loop {
        let mut meet = model.frame().total_ignorance();
        let mut product = 1.0;
        for (choice, &i) in focal.iter().zip(&index) {
            let (p, m) = choice[i];
            meet = meet.and_unchecked(p);
            product *= m;
        }
        if product > 0.0 {
            *terms.entry(meet).or_insert(0.0) += product;
        }
        // Odometer increment, last source fastest.
        for k in (0..focal.len()).rev() {
            index[k] += 1;
            if index[k] < focal[k].len() {
                continue 'outer;
            }
            index[k] = 0;
        }
        break;
    }
    Ok(ConjunctiveResult::from_parts(model, terms, masses.len()))
}
