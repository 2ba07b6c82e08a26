use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A set of atom indices, bit `i` standing for atom `t_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AtomSet(pub u32);

impl AtomSet {
    pub fn singleton(i: usize) -> Self {
        AtomSet(1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Atom indices in ascending (frame) order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller sets first, then lexicographic on the ascending index lists.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// An element of the hyper-power set, stored as the family of Venn-region
/// minterms it covers.
///
/// Minterm `M` (a non-empty atom mask) is the region lying inside exactly
/// the atoms of `M`; it lives at bit index `M`, so bit 0 is never set.
/// Every proposition generated from atoms by `∩`/`∪` is up-closed: if `M`
/// is covered then so is every superset of `M`. The all-zero family is the
/// empty proposition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    arity: u8,
    words: Vec<u64>,
}

fn word_count(arity: usize) -> usize {
    (1usize << arity).div_ceil(64)
}

impl Proposition {
    pub fn empty(arity: usize) -> Self {
        Proposition {
            arity: arity as u8,
            words: vec![0; word_count(arity)],
        }
    }

    /// `t_1 ∪ … ∪ t_n`: every non-empty minterm.
    pub fn top(arity: usize) -> Self {
        let mut p = Self::empty(arity);
        for m in 1..(1usize << arity) {
            p.set(m);
        }
        p
    }

    pub fn atom(arity: usize, index: usize) -> Self {
        Self::meet_of(arity, AtomSet::singleton(index))
    }

    /// `∩_{i ∈ atoms} t_i`, the minterms containing every atom of the set.
    /// An empty set yields the top element.
    pub fn meet_of(arity: usize, atoms: AtomSet) -> Self {
        let mut p = Self::empty(arity);
        for m in 1..(1usize << arity) {
            if atoms.0 as usize & !m == 0 {
                p.set(m);
            }
        }
        p
    }

    /// `∪_{i ∈ atoms} t_i`.
    pub fn join_of(arity: usize, atoms: AtomSet) -> Self {
        let mut p = Self::empty(arity);
        for m in 1..(1usize << arity) {
            if atoms.0 as usize & m != 0 {
                p.set(m);
            }
        }
        p
    }

    /// Rebuilds a proposition from a DNF antichain: `∪_k ∩_{i ∈ S_k} t_i`.
    pub fn from_terms(arity: usize, terms: &[AtomSet]) -> Self {
        terms.iter().fold(Self::empty(arity), |acc, &t| {
            acc.or_unchecked(&Self::meet_of(arity, t))
        })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains_minterm(&self, m: usize) -> bool {
        self.words[m / 64] & (1 << (m % 64)) != 0
    }

    fn set(&mut self, m: usize) {
        self.words[m / 64] |= 1 << (m % 64);
    }

    /// Covered minterms in ascending order.
    pub fn minterms(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn minterm_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_arity(&self, other: &Proposition) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::FrameMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(())
    }

    pub(crate) fn and_unchecked(&self, other: &Proposition) -> Proposition {
        Proposition {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub(crate) fn or_unchecked(&self, other: &Proposition) -> Proposition {
        Proposition {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub(crate) fn and_not_unchecked(&self, other: &Proposition) -> Proposition {
        Proposition {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Proposition) -> Result<Proposition> {
        self.check_arity(other)?;
        Ok(self.and_unchecked(other))
    }

    pub fn unite(&self, other: &Proposition) -> Result<Proposition> {
        self.check_arity(other)?;
        Ok(self.or_unchecked(other))
    }

    /// Whether `self ⊆ other` in the free lattice.
    pub fn is_subset(&self, other: &Proposition) -> bool {
        self.arity == other.arity
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_up_closed(&self) -> bool {
        let n = self.arity();
        self.minterms()
            .all(|m| (0..n).all(|i| self.contains_minterm(m | (1 << i))))
    }

    /// Smallest up-closed family containing `self`.
    pub fn up_closure(&self) -> Proposition {
        let n = self.arity();
        let mut out = self.clone();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 1..(1usize << n) {
                if m & bit == 0 && out.contains_minterm(m) {
                    out.set(m | bit);
                }
            }
        }
        out
    }

    /// The minimal DNF: the antichain `{S_k}` with `self = ∪_k ∩_{i∈S_k} t_i`,
    /// i.e. the minimal covered minterms. Sorted by [`AtomSet`] order.
    pub fn dnf_terms(&self) -> Result<Vec<AtomSet>> {
        if self.is_empty() {
            return Err(Error::EmptyProposition);
        }
        let mut terms: Vec<AtomSet> = self
            .minterms()
            .filter(|&m| {
                AtomSet(m as u32).indices().all(|i| {
                    let sub = m & !(1 << i);
                    sub == 0 || !self.contains_minterm(sub)
                })
            })
            .map(|m| AtomSet(m as u32))
            .collect();
        terms.sort();
        Ok(terms)
    }

    /// Atoms occurring anywhere in the DNF.
    pub fn support(&self) -> Result<AtomSet> {
        Ok(AtomSet(
            self.dnf_terms()?.iter().fold(0, |acc, t| acc | t.0),
        ))
    }

    /// Union of every atom the proposition mentions; the partial/total
    /// ignorance that a conflicting `self` is moved to by the union transfer.
    pub fn u_union(&self) -> Result<Proposition> {
        Ok(Self::join_of(self.arity(), self.support()?))
    }

    /// Prime implicates of the monotone function `self`, as atom sets: the
    /// minimal hitting sets of the DNF antichain. Sorted by [`AtomSet`] order.
    pub fn prime_implicates(&self) -> Result<Vec<AtomSet>> {
        let terms = self.dnf_terms()?;
        let support = terms.iter().fold(0u32, |acc, t| acc | t.0);

        let hits = |set: u32| terms.iter().all(|t| t.0 & set != 0);
        let mut minimal: Vec<AtomSet> = Vec::new();
        // Walk every subset of the support, the full support included. A
        // transversal is minimal iff dropping any single atom breaks it.
        let mut sub = support;
        loop {
            let candidate = AtomSet(sub);
            if hits(sub) && candidate.indices().all(|i| !hits(sub & !(1 << i))) {
                minimal.push(candidate);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
        minimal.sort();
        Ok(minimal)
    }

    /// The parties of a partial conflict: each prime implicate as a union of
    /// atoms. Their intersection is `self`.
    pub fn conflict_parties(&self) -> Result<Vec<Proposition>> {
        let n = self.arity();
        Ok(self
            .prime_implicates()?
            .into_iter()
            .map(|s| Self::join_of(n, s))
            .collect())
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let terms = self.dnf_terms().unwrap_or_default();
        f.debug_set().entries(terms).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Proposition {
        Proposition::atom(3, 0)
    }
    fn b3() -> Proposition {
        Proposition::atom(3, 1)
    }
    fn c3() -> Proposition {
        Proposition::atom(3, 2)
    }

    #[test]
    fn atom_covers_minterms_containing_it() {
        // A over {A,B,C}: minterms A, AB, AC, ABC.
        let got: Vec<usize> = a3().minterms().collect();
        assert_eq!(got, [0b001, 0b011, 0b101, 0b111]);
        let b2: Vec<usize> = Proposition::atom(2, 1).minterms().collect();
        assert_eq!(b2, [0b10, 0b11]);
    }

    #[test]
    fn top_is_union_of_atoms() {
        let t = Proposition::top(3);
        assert_eq!(t.minterm_count(), 7);
        assert_eq!(t, a3().or_unchecked(&b3().or_unchecked(&c3())));
    }

    #[test]
    fn absorption_and_fixture_products() {
        let a_or_c = a3().or_unchecked(&c3());
        assert_eq!(a3().intersect(&a_or_c).unwrap(), a3());

        let b_and_ac = a_or_c.intersect(&b3()).unwrap();
        assert_eq!(
            b_and_ac.dnf_terms().unwrap(),
            [AtomSet(0b011), AtomSet(0b110)]
        );

        let ab = a3().and_unchecked(&b3());
        assert_eq!(ab.intersect(&a_or_c).unwrap(), ab);
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let err = a3().intersect(&Proposition::atom(2, 0)).unwrap_err();
        assert_eq!(err, Error::FrameMismatch { left: 3, right: 2 });
        assert!(a3().unite(&Proposition::atom(4, 0)).is_err());
    }

    #[test]
    fn dnf_of_simple_forms() {
        let ab = a3().and_unchecked(&b3());
        assert_eq!(ab.dnf_terms().unwrap(), [AtomSet(0b011)]);
        let a_or_c = a3().or_unchecked(&c3());
        assert_eq!(
            a_or_c.dnf_terms().unwrap(),
            [AtomSet(0b001), AtomSet(0b100)]
        );
        assert_eq!(
            Proposition::empty(3).dnf_terms(),
            Err(Error::EmptyProposition)
        );
    }

    #[test]
    fn conflict_parties_of_partial_conflicts() {
        let a_or_c = a3().or_unchecked(&c3());
        let ab = a3().and_unchecked(&b3());
        assert_eq!(ab.conflict_parties().unwrap(), [a3(), b3()]);

        let b_and_ac = b3().and_unchecked(&a_or_c);
        assert_eq!(b_and_ac.conflict_parties().unwrap(), [b3(), a_or_c]);

        // A∩C∩D in a four-atom frame {A,B,C,D}.
        let acd = Proposition::meet_of(4, AtomSet(0b1101));
        let parties = acd.conflict_parties().unwrap();
        assert_eq!(
            parties,
            [
                Proposition::atom(4, 0),
                Proposition::atom(4, 2),
                Proposition::atom(4, 3)
            ]
        );
        assert!(Proposition::empty(3).conflict_parties().is_err());
    }

    #[test]
    fn u_union_targets() {
        let ab = a3().and_unchecked(&b3());
        assert_eq!(ab.u_union().unwrap(), a3().or_unchecked(&b3()));
        let b_and_ac = b3().and_unchecked(&a3().or_unchecked(&c3()));
        assert_eq!(b_and_ac.u_union().unwrap(), Proposition::top(3));
        assert_eq!(a3().u_union().unwrap(), a3());
        assert!(Proposition::empty(3).u_union().is_err());
    }

    #[test]
    fn up_closure_repairs_families() {
        let mut p = Proposition::empty(3);
        p.set(0b001);
        assert!(!p.is_up_closed());
        assert_eq!(p.up_closure(), a3());
        assert!(a3().is_up_closed());
    }

    #[test]
    fn wide_frames_span_several_words() {
        let n = 10;
        let p = Proposition::atom(n, 7).and_unchecked(&Proposition::atom(n, 9));
        assert_eq!(p.minterm_count(), 1 << (n - 2));
        assert!(p.is_up_closed());
        assert_eq!(p.dnf_terms().unwrap(), [AtomSet((1 << 7) | (1 << 9))]);
    }

    #[test]
    fn atom_set_order_is_size_then_lexicographic() {
        let mut v = vec![
            AtomSet(0b101),
            AtomSet(0b010),
            AtomSet(0b011),
            AtomSet(0b001),
        ];
        v.sort();
        assert_eq!(
            v,
            [
                AtomSet(0b001),
                AtomSet(0b010),
                AtomSet(0b011),
                AtomSet(0b101)
            ]
        );
    }
}
