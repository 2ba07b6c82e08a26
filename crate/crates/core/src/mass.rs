use alloc::collections::BTreeMap;

use crate::{format_prop, Error, Model, Proposition, Result};

/// Tolerance on `Σ m = 1`, both for input validation and for the drift a
/// rule output may accumulate before it is treated as a bug.
pub const MASS_TOLERANCE: f64 = 1e-9;

fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Checks `Σ = 1` and removes rounding drift within tolerance.
pub(crate) fn settle(masses: &mut BTreeMap<Proposition, f64>) -> Result<()> {
    masses.retain(|_, m| *m > 0.0);
    let total: f64 = masses.values().sum();
    let drift = abs(total - 1.0);
    if drift > MASS_TOLERANCE {
        return Err(Error::Drift(drift));
    }
    if total != 1.0 {
        masses.values_mut().for_each(|m| *m /= total);
    }
    Ok(())
}

/// A basic belief assignment over a model's propositions.
///
/// Only focal elements (strictly positive masses) are stored. A mass built
/// with [`MassFunction::new`] is a valid input source: every focal element
/// is non-empty under the model and is kept in canonical form. Rule outputs
/// may additionally carry `m(∅)` (Smets) or the free-form terms of an
/// untransferred conjunctive result.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    model: Model,
    masses: BTreeMap<Proposition, f64>,
}

impl MassFunction {
    /// Validates an input assignment. Duplicate propositions (equal under
    /// the model) are merged by summation; zero entries are dropped.
    pub fn new<I>(model: &Model, assignments: I) -> Result<MassFunction>
    where
        I: IntoIterator<Item = (Proposition, f64)>,
    {
        let mut masses = BTreeMap::new();
        let mut total = 0.0;
        for (p, m) in assignments {
            model.frame().check(&p)?;
            if m.is_nan() || m < 0.0 || m.is_infinite() {
                return Err(Error::NegativeMass(m));
            }
            if m == 0.0 {
                continue;
            }
            if model.is_empty_unchecked(&p) {
                return Err(Error::EmptyFocal(format_prop(model.frame(), &p)));
            }
            total += m;
            *masses.entry(model.canonical(&p)).or_insert(0.0) += m;
        }
        if abs(total - 1.0) > MASS_TOLERANCE {
            return Err(Error::MassSum(total));
        }
        Ok(MassFunction {
            model: model.clone(),
            masses,
        })
    }

    /// The vacuous belief function, `m(T) = 1`.
    pub fn vacuous(model: &Model) -> MassFunction {
        let mut masses = BTreeMap::new();
        masses.insert(model.frame().total_ignorance(), 1.0);
        MassFunction {
            model: model.clone(),
            masses,
        }
    }

    pub(crate) fn from_parts(model: &Model, masses: BTreeMap<Proposition, f64>) -> MassFunction {
        MassFunction {
            model: model.clone(),
            masses,
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn get(&self, p: &Proposition) -> f64 {
        self.masses.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Proposition, f64)> {
        self.masses.iter().map(|(p, &m)| (p, m))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    pub fn as_map(&self) -> &BTreeMap<Proposition, f64> {
        &self.masses
    }

    pub fn total(&self) -> f64 {
        self.masses.values().fold(0.0, |acc, m| acc + m)
    }

    /// Mass committed to propositions empty under the model (`m(∅)` for a
    /// Smets output).
    pub fn empty_mass(&self) -> f64 {
        self.masses
            .iter()
            .filter(|(p, _)| self.model.is_empty_unchecked(p))
            .map(|(_, m)| m)
            .fold(0.0, |acc, m| acc + m)
    }

    /// Whether this mass is acceptable as a fusion source.
    pub fn validate_input(&self) -> Result<()> {
        for (p, &m) in &self.masses {
            if self.model.is_empty_unchecked(p) {
                return Err(Error::EmptyFocal(format_prop(self.model.frame(), p)));
            }
            if m.is_nan() || m <= 0.0 {
                return Err(Error::NegativeMass(m));
            }
        }
        if abs(self.total() - 1.0) > MASS_TOLERANCE {
            return Err(Error::MassSum(self.total()));
        }
        Ok(())
    }

    /// `Σ m(X)` over focal `X` that are non-empty and included in `p` once
    /// constrained minterms are masked out.
    pub fn belief(&self, p: &Proposition) -> Result<f64> {
        self.model.frame().check(p)?;
        Ok(self
            .masses
            .iter()
            .filter(|(x, _)| !self.model.is_empty_unchecked(x) && self.model.included(x, p))
            .map(|(_, m)| m)
            .fold(0.0, |acc, m| acc + m))
    }

    /// `Σ m(X)` over focal `X` with `X ∩ p` non-empty under the model.
    pub fn plausibility(&self, p: &Proposition) -> Result<f64> {
        self.model.frame().check(p)?;
        Ok(self
            .masses
            .iter()
            .filter(|(x, _)| !self.model.is_empty_unchecked(&x.and_unchecked(p)))
            .map(|(_, m)| m)
            .fold(0.0, |acc, m| acc + m))
    }
}

/// Per-proposition sums of the sources' direct masses, the columns of the
/// mass matrix. Used as redistribution weights by the SDL-improved rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSums {
    model: Model,
    sums: BTreeMap<Proposition, f64>,
    source_count: usize,
}

impl ColumnSums {
    pub fn empty(model: &Model) -> ColumnSums {
        ColumnSums {
            model: model.clone(),
            sums: BTreeMap::new(),
            source_count: 0,
        }
    }

    pub fn of(masses: &[MassFunction]) -> Result<ColumnSums> {
        let first = masses.first().ok_or(Error::NoSources)?;
        let mut sums = ColumnSums::empty(&first.model);
        for m in masses {
            sums.add(m)?;
        }
        Ok(sums)
    }

    pub fn add(&mut self, m: &MassFunction) -> Result<()> {
        if m.model != self.model {
            return Err(Error::ModelMismatch);
        }
        for (p, &v) in &m.masses {
            *self.sums.entry(p.clone()).or_insert(0.0) += v;
        }
        self.source_count += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &ColumnSums) -> Result<()> {
        if other.model != self.model {
            return Err(Error::ModelMismatch);
        }
        for (p, &v) in &other.sums {
            *self.sums.entry(p.clone()).or_insert(0.0) += v;
        }
        self.source_count += other.source_count;
        Ok(())
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn get(&self, p: &Proposition) -> f64 {
        self.sums.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Proposition, f64)> {
        self.sums.iter().map(|(p, &v)| (p, v))
    }

    pub fn source_count(&self) -> usize {
        self.source_count
    }

    pub fn total(&self) -> f64 {
        self.sums.values().fold(0.0, |acc, m| acc + m)
    }
}
