use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coeff::{GroupRingElem, Ring};
use crate::field::Scalar;

/// Index of a generator inside its [`super::Dga`].
pub type GenId = u32;

/// A word in the generators; the empty word is the unit.
pub type Word = Vec<GenId>;

/// Degree-lexicographic comparison of words.
pub fn deglex(a: &[GenId], b: &[GenId]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Finite sum of words with group-ring coefficients, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Word, GroupRingElem>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::term(Word::new(), ring.one())
    }

    pub fn generator(g: GenId, ring: &Ring) -> Self {
        Self::term(alloc::vec![g], ring.one())
    }

    pub fn term(word: Word, coeff: GroupRingElem) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Element { terms }
    }

    pub fn scalar(c: GroupRingElem) -> Self {
        Self::term(Word::new(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GroupRingElem)> {
        self.terms.iter()
    }

    /// Terms in degree-lexicographic word order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &GroupRingElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| deglex(a.0, b.0));
        v
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &[GenId]) -> Option<&GroupRingElem> {
        self.terms.get(word)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Option<&GroupRingElem> {
        self.terms.get(&Word::new())
    }

    pub fn into_terms(self) -> BTreeMap<Word, GroupRingElem> {
        self.terms
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Word, GroupRingElem)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, &c, ring);
        }
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: &GroupRingElem, ring: &Ring) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                ring.add_into(o.get_mut(), coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element, ring: &Ring) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c, ring);
        }
    }

    pub fn add(&self, other: &Element, ring: &Ring) -> Element {
        let mut out = self.clone();
        out.add_assign(other, ring);
        out
    }

    pub fn sub(&self, other: &Element, ring: &Ring) -> Element {
        self.add(&other.neg(ring), ring)
    }

    pub fn neg(&self, ring: &Ring) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), ring.neg(c))).collect() }
    }

    pub fn scale(&self, c: &GroupRingElem, ring: &Ring) -> Element {
        let mut out = Element::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &ring.mul(c, x), ring);
        }
        out
    }

    pub fn scale_scalar(&self, c: Scalar, ring: &Ring) -> Element {
        let mut out = Element::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &ring.scale(x, c), ring);
        }
        out
    }

    /// Noncommutative product (word concatenation).
    pub fn mul(&self, other: &Element, ring: &Ring) -> Element {
        let mut out = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &ring.mul(c1, c2), ring);
            }
        }
        out
    }

    /// Terms whose word has the given length.
    pub fn word_length_part(&self, len: usize) -> Element {
        Element {
            terms: self.terms.iter().filter(|(w, _)| w.len() == len).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Rewrites generator ids through `map`; `None` entries are rejected by the caller.
    pub fn map_ids(&self, map: impl Fn(GenId) -> GenId) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.iter().map(|&g| map(g)).collect(), c.clone())).collect() }
    }

    pub fn contains_generator(&self, g: GenId) -> bool {
        self.terms.keys().any(|w| w.contains(&g))
    }
}
