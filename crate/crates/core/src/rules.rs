//! The conjunctive rule and the conflict-transfer operators built on it.
//!
//! Every rule here is "conjunctive combination, then transfer": a
//! [`ConjunctiveResult`] keeps each empty-under-model product as its own
//! free-form term (so `A∩B` and `B∩(A∪C)` stay distinct), and a transfer
//! operator decides where that mass goes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::mass::settle;
use crate::{ColumnSums, Error, MassFunction, Model, Proposition, Result};

/// Anything carrying a model and a map of positive masses.
pub trait Focal {
    fn model(&self) -> &Model;
    fn terms(&self) -> &BTreeMap<Proposition, f64>;
    /// Number of sources folded into this assignment.
    fn source_count(&self) -> usize;
}

impl Focal for MassFunction {
    fn model(&self) -> &Model {
        MassFunction::model(self)
    }
    fn terms(&self) -> &BTreeMap<Proposition, f64> {
        self.as_map()
    }
    fn source_count(&self) -> usize {
        1
    }
}

/// Output of the conjunctive rule before any transfer. Keys are free-form
/// propositions and may be empty under the model.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctiveResult {
    model: Model,
    terms: BTreeMap<Proposition, f64>,
    source_count: usize,
}

impl Focal for ConjunctiveResult {
    fn model(&self) -> &Model {
        &self.model
    }
    fn terms(&self) -> &BTreeMap<Proposition, f64> {
        &self.terms
    }
    fn source_count(&self) -> usize {
        self.source_count
    }
}

impl ConjunctiveResult {
    /// `{T: 1}` with no contributing sources; the neutral element of `⊙`.
    pub fn vacuous(model: &Model) -> ConjunctiveResult {
        let mut terms = BTreeMap::new();
        terms.insert(model.frame().total_ignorance(), 1.0);
        ConjunctiveResult {
            model: model.clone(),
            terms,
            source_count: 0,
        }
    }

    pub(crate) fn from_parts(
        model: &Model,
        terms: BTreeMap<Proposition, f64>,
        source_count: usize,
    ) -> ConjunctiveResult {
        ConjunctiveResult {
            model: model.clone(),
            terms,
            source_count,
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn get(&self, p: &Proposition) -> f64 {
        self.terms.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Proposition, f64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn source_count(&self) -> usize {
        self.source_count
    }

    pub fn total(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, m| acc + m)
    }

    /// Drops terms below `epsilon` and rescales the rest. Approximate: the
    /// result then depends on the order sources were fused in.
    pub(crate) fn prune(&mut self, epsilon: f64) {
        self.terms.retain(|_, m| *m >= epsilon);
        let total: f64 = self.terms.values().sum();
        if total > 0.0 {
            self.terms.values_mut().for_each(|m| *m /= total);
        }
    }

    /// Non-empty terms and the partial conflicts, the latter in key order.
    fn split(&self) -> (BTreeMap<Proposition, f64>, Vec<(&Proposition, f64)>) {
        let mut kept = BTreeMap::new();
        let mut conflicts = Vec::new();
        for (p, &m) in &self.terms {
            if self.model.is_empty_unchecked(p) {
                conflicts.push((p, m));
            } else {
                *kept.entry(self.model.canonical(p)).or_insert(0.0) += m;
            }
        }
        (kept, conflicts)
    }
}

impl From<&MassFunction> for ConjunctiveResult {
    fn from(m: &MassFunction) -> Self {
        ConjunctiveResult::from_parts(m.model(), m.as_map().clone(), 1)
    }
}

/// `m(Z) = Σ_{X∩Y=Z} a(X)·b(Y)` over the free lattice.
pub fn conjunctive<A, B>(a: &A, b: &B) -> Result<ConjunctiveResult>
where
    A: Focal + ?Sized,
    B: Focal + ?Sized,
{
    if a.model() != b.model() {
        return Err(Error::ModelMismatch);
    }
    let mut terms: BTreeMap<Proposition, f64> = BTreeMap::new();
    for (x, &mx) in a.terms() {
        for (y, &my) in b.terms() {
            let product = mx * my;
            if product > 0.0 {
                *terms.entry(x.and_unchecked(y)).or_insert(0.0) += product;
            }
        }
    }
    settle(&mut terms)?;
    Ok(ConjunctiveResult::from_parts(
        a.model(),
        terms,
        a.source_count() + b.source_count(),
    ))
}

/// Total conflict `k`: conjunctive mass on propositions empty under the model.
pub fn conflict_of(r: &ConjunctiveResult) -> f64 {
    r.terms
        .iter()
        .filter(|(p, _)| r.model.is_empty_unchecked(p))
        .map(|(_, m)| m)
        .fold(0.0, |acc, m| acc + m)
}

fn finish(model: &Model, mut out: BTreeMap<Proposition, f64>) -> Result<MassFunction> {
    settle(&mut out)?;
    Ok(MassFunction::from_parts(model, out))
}

/// Dempster: rescale the non-conflicting terms by `1/(1−k)`.
pub fn transfer_dempster(r: &ConjunctiveResult) -> Result<MassFunction> {
    let (mut kept, _) = r.split();
    let retained: f64 = kept.values().sum();
    if kept.is_empty() || retained.is_nan() || retained <= 0.0 {
        return Err(Error::TotalConflict);
    }
    kept.values_mut().for_each(|m| *m /= retained);
    finish(&r.model, kept)
}

/// Smets: all conflict lands on `∅`.
pub fn transfer_smets(r: &ConjunctiveResult) -> Result<MassFunction> {
    let (mut kept, conflicts) = r.split();
    let k: f64 = conflicts.iter().map(|(_, m)| m).sum();
    if k > 0.0 {
        kept.insert(r.model.frame().empty(), k);
    }
    finish(&r.model, kept)
}

/// Yager: all conflict lands on the total ignorance.
pub fn transfer_yager(r: &ConjunctiveResult) -> Result<MassFunction> {
    let (mut kept, conflicts) = r.split();
    let k: f64 = conflicts.iter().map(|(_, m)| m).sum();
    if k > 0.0 {
        *kept.entry(r.model.frame().total_ignorance()).or_insert(0.0) += k;
    }
    finish(&r.model, kept)
}

/// Target of the union transfer for one partial conflict.
fn union_target(model: &Model, p: &Proposition) -> Result<Proposition> {
    let target = model.canonical(&p.u_union()?);
    Ok(if model.is_empty_unchecked(&target) {
        model.frame().total_ignorance()
    } else {
        target
    })
}

/// Dubois-Prade / DSm hybrid: each partial conflict moves to the union of
/// the atoms it mentions (a partial or the total ignorance).
pub fn transfer_union(r: &ConjunctiveResult) -> Result<MassFunction> {
    let (mut kept, conflicts) = r.split();
    for (p, m) in conflicts {
        *kept.entry(union_target(&r.model, p)?).or_insert(0.0) += m;
    }
    finish(&r.model, kept)
}

/// SDL-improved: each partial conflict is split among its parties in
/// proportion to their column sums. Parties with a zero column get nothing;
/// if every party has a zero column the mass takes the union transfer.
pub fn transfer_sdli(r: &ConjunctiveResult, columns: &ColumnSums) -> Result<MassFunction> {
    if columns.model() != &r.model {
        return Err(Error::ModelMismatch);
    }
    let (mut kept, conflicts) = r.split();
    for (p, m) in conflicts {
        let weighted: Vec<(Proposition, f64)> = p
            .conflict_parties()?
            .into_iter()
            .map(|g| r.model.canonical(&g))
            .filter_map(|g| {
                let c = columns.get(&g);
                (c > 0.0).then_some((g, c))
            })
            .collect();
        let norm: f64 = weighted.iter().map(|(_, c)| c).sum();
        if weighted.is_empty() {
            *kept.entry(union_target(&r.model, p)?).or_insert(0.0) += m;
            continue;
        }
        for (g, c) in weighted {
            *kept.entry(g).or_insert(0.0) += m * c / norm;
        }
    }
    finish(&r.model, kept)
}

/// Two-source SDL-improved rule evaluated directly from the mass matrix:
///
/// `m(A) = Σ_{X∩Y=A} m1(X)m2(Y) + c(A)·Σ_{X∩A=∅} [m1(X)m2(A)+m1(A)m2(X)] / [c(A)+c(X)]`
///
/// with `c(A) = m1(A) + m2(A)`.
pub fn sdli2(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let model = m1.model();
    if m2.model() != model {
        return Err(Error::ModelMismatch);
    }
    let column = |p: &Proposition| m1.get(p) + m2.get(p);

    let mut out: BTreeMap<Proposition, f64> = BTreeMap::new();
    for (x, mx) in m1.iter() {
        for (y, my) in m2.iter() {
            let z = x.and_unchecked(y);
            if !model.is_empty_unchecked(&z) {
                *out.entry(model.canonical(&z)).or_insert(0.0) += mx * my;
            }
        }
    }

    let mut focal: Vec<&Proposition> = m1.as_map().keys().chain(m2.as_map().keys()).collect();
    focal.sort();
    focal.dedup();
    for &a in &focal {
        let ca = column(a);
        for &x in &focal {
            if !model.is_empty_unchecked(&a.and_unchecked(x)) {
                continue;
            }
            let numerator = m1.get(x) * m2.get(a) + m1.get(a) * m2.get(x);
            if numerator > 0.0 {
                *out.entry(a.clone()).or_insert(0.0) += ca * numerator / (ca + column(x));
            }
        }
    }
    finish(model, out)
}

/// The combination rules this crate knows, each "conjunctive, then transfer".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Conjunctive,
    Dempster,
    Smets,
    Yager,
    DuboisPrade,
    DsmClassic,
    DsmHybrid,
    Sdli,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::Conjunctive,
        RuleId::Dempster,
        RuleId::Smets,
        RuleId::Yager,
        RuleId::DuboisPrade,
        RuleId::DsmClassic,
        RuleId::DsmHybrid,
        RuleId::Sdli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Conjunctive => "conjunctive",
            RuleId::Dempster => "dempster",
            RuleId::Smets => "smets",
            RuleId::Yager => "yager",
            RuleId::DuboisPrade => "dubois_prade",
            RuleId::DsmClassic => "dsm_classic",
            RuleId::DsmHybrid => "dsm_hybrid",
            RuleId::Sdli => "sdli",
        }
    }

    /// Rules that leave the conjunctive result untouched.
    pub fn is_conjunctive(self) -> bool {
        matches!(self, RuleId::Conjunctive | RuleId::DsmClassic)
    }

    /// Applies this rule's transfer operator. `columns` is only read by
    /// [`RuleId::Sdli`] and must describe the sources that produced `r`.
    pub fn transfer(self, r: &ConjunctiveResult, columns: &ColumnSums) -> Result<MassFunction> {
        match self {
            RuleId::Conjunctive | RuleId::DsmClassic => {
                Ok(MassFunction::from_parts(&r.model, r.terms.clone()))
            }
            RuleId::Dempster => transfer_dempster(r),
            RuleId::Smets => transfer_smets(r),
            RuleId::Yager => transfer_yager(r),
            RuleId::DuboisPrade | RuleId::DsmHybrid => transfer_union(r),
            RuleId::Sdli => transfer_sdli(r, columns),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRule(s.into()))
    }
}

/// `m1 ⊗ m2 = O(m1 ⊙ m2)` for the given rule. Conjunctive rules return the
/// untransferred terms verbatim.
pub fn combine2(rule: RuleId, m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let r = conjunctive(m1, m2)?;
    let columns = ColumnSums::of(&[m1.clone(), m2.clone()])?;
    rule.transfer(&r, &columns)
}
