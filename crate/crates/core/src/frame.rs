use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::{AtomSet, Error, Proposition, Result};

pub const MIN_ATOMS: usize = 2;
pub const MAX_ATOMS: usize = 16;

/// The frame of discernment: an ordered list of distinct atom names.
#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    atoms: Arc<[String]>,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Frame {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Frame> {
        if !(MIN_ATOMS..=MAX_ATOMS).contains(&names.len()) {
            return Err(Error::FrameSize(names.len()));
        }
        let mut atoms: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !valid_atom_name(name) {
                return Err(Error::InvalidAtomName(name.to_string()));
            }
            if atoms.iter().any(|a| a == name) {
                return Err(Error::DuplicateAtom(name.to_string()));
            }
            atoms.push(name.to_string());
        }
        Ok(Frame {
            atoms: atoms.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Number of non-empty minterms, `2^n − 1`.
    pub fn minterm_count(&self) -> usize {
        (1 << self.len()) - 1
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn atom(&self, name: &str) -> Result<Proposition> {
        Ok(Proposition::atom(self.len(), self.index_of(name)?))
    }

    pub fn atom_at(&self, index: usize) -> Result<Proposition> {
        if index >= self.len() {
            return Err(Error::UnknownAtom(index.to_string()));
        }
        Ok(Proposition::atom(self.len(), index))
    }

    pub fn total_ignorance(&self) -> Proposition {
        Proposition::top(self.len())
    }

    pub fn empty(&self) -> Proposition {
        Proposition::empty(self.len())
    }

    pub(crate) fn check(&self, p: &Proposition) -> Result<()> {
        if p.arity() != self.len() {
            return Err(Error::FrameMismatch {
                left: self.len(),
                right: p.arity(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    /// No exclusivity constraints: the free hyper-power set.
    Free,
    /// All atoms pairwise exclusive: the power set.
    Exclusive,
    /// The listed atom pairs are exclusive.
    Custom(Vec<(usize, usize)>),
}

#[derive(Debug, PartialEq, Eq)]
struct ModelData {
    frame: Frame,
    constrained: Proposition,
    kind: ModelKind,
}

/// A frame plus the minterms its exclusivity constraints force empty.
///
/// Cloning is cheap. Propositions are never rewritten by the model; the mask
/// is only consulted for emptiness and canonical forms.
#[derive(Debug, Clone)]
pub struct Model(Arc<ModelData>);

impl PartialEq for Model {
    fn eq(&self, other: &Model) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Model {}

impl Model {
    pub fn free(frame: &Frame) -> Model {
        Self::build(frame, frame.empty(), ModelKind::Free)
    }

    pub fn exclusive(frame: &Frame) -> Model {
        let n = frame.len();
        let mut mask = frame.empty();
        for i in 0..n {
            for j in (i + 1)..n {
                mask = mask.or_unchecked(&Proposition::meet_of(n, AtomSet((1 << i) | (1 << j))));
            }
        }
        Self::build(frame, mask, ModelKind::Exclusive)
    }

    /// Each named pair `(t_i, t_j)` constrains every minterm containing both.
    pub fn exclusive_pairs<S: AsRef<str>>(frame: &Frame, pairs: &[(S, S)]) -> Result<Model> {
        let n = frame.len();
        let mut mask = frame.empty();
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (i, j) = (frame.index_of(a.as_ref())?, frame.index_of(b.as_ref())?);
            if i != j {
                mask = mask.or_unchecked(&Proposition::meet_of(n, AtomSet((1 << i) | (1 << j))));
            }
            idx.push((i.min(j), i.max(j)));
        }
        Ok(Self::build(frame, mask, ModelKind::Custom(idx)))
    }

    fn build(frame: &Frame, constrained: Proposition, kind: ModelKind) -> Model {
        Model(Arc::new(ModelData {
            frame: frame.clone(),
            constrained,
            kind,
        }))
    }

    pub fn frame(&self) -> &Frame {
        &self.0.frame
    }

    pub fn kind(&self) -> &ModelKind {
        &self.0.kind
    }

    /// Minterms forced empty, as a (generally not up-closed) bitstring.
    pub fn constrained(&self) -> &Proposition {
        &self.0.constrained
    }

    pub fn arity(&self) -> usize {
        self.0.frame.len()
    }

    pub fn is_empty(&self, p: &Proposition) -> Result<bool> {
        self.0.frame.check(p)?;
        Ok(self.is_empty_unchecked(p))
    }

    pub(crate) fn is_empty_unchecked(&self, p: &Proposition) -> bool {
        p.is_subset(&self.0.constrained)
    }

    /// Smallest proposition equal to `p` under the model: the up-closure of
    /// `p`'s unconstrained minterms. Identity on the free model.
    pub fn canonical(&self, p: &Proposition) -> Proposition {
        if self.0.kind == ModelKind::Free {
            return p.clone();
        }
        p.and_not_unchecked(&self.0.constrained).up_closure()
    }

    /// Whether `p ⊆ q` once constrained minterms are removed.
    pub(crate) fn included(&self, p: &Proposition, q: &Proposition) -> bool {
        p.and_not_unchecked(&self.0.constrained).is_subset(q)
    }
}
