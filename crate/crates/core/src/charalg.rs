//! Characteristic algebras `A / (d A)` as finite presentations, and a
//! bounded noncommutative rewriting system for normal forms.
//!
//! Presentations are compared syntactically only. Element equality in the
//! quotient is decided up to a word-length bound: the rewriting system is
//! completed on all overlaps of length at most the bound, and flagged
//! incomplete when longer overlaps were skipped.
//!
//! Ring variables become letters: `t` and its inverse `T` per variable,
//! central and ordered above every generator, with `tT = Tt = 1`. Generators
//! are ordered by name, so `z > x`, and words by degree-lexicographic order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::border::PushoutSquare;
use crate::coeff::Ring;
use crate::dga::{Dga, DgaMorphism, Element, GenId};
use crate::error::{LchError, Result};
use crate::field::{Field, Scalar};

/// Generators (sorted by name) and the canonical set of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    /// Free algebra on the generators, with zero differential.
    free: Dga,
    relations: Vec<Element>,
}

impl PresentedAlgebra {
    pub fn free_algebra(&self) -> &Dga {
        &self.free
    }

    pub fn ring(&self) -> &Ring {
        self.free.ring()
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// Relations rendered in the expression syntax.
    pub fn format_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.free.format_element(r)).collect()
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        self.free.parse_element(s)
    }

    pub fn format_element(&self, x: &Element) -> String {
        self.free.format_element(x)
    }
}

/// Canonical presentation of the quotient of `d`'s underlying algebra by
/// `rels` (elements of `d`).
fn present(d: &Dga, rels: impl IntoIterator<Item = Element>) -> PresentedAlgebra {
    let mut order: Vec<GenId> = (0..d.num_generators() as GenId).collect();
    order.sort_by(|&a, &b| d.name(a).cmp(d.name(b)));
    let mut new_id = alloc::vec![0; order.len()];
    let mut free = Dga::new(d.ring().clone(), d.modulus()).expect("modulus already valid");
    for (k, &g) in order.iter().enumerate() {
        new_id[g as usize] = k as GenId;
        free.add_generator(d.name(g), d.degree(g), None).expect("names already distinct");
    }
    let set: BTreeSet<Element> =
        rels.into_iter().filter(|r| !r.is_zero()).map(|r| r.map_ids(|g| new_id[g as usize])).collect();
    PresentedAlgebra { free, relations: set.into_iter().collect() }
}

/// `d(A)` generates the ideal, so the differentials of the generators suffice.
pub fn characteristic_algebra(d: &Dga) -> PresentedAlgebra {
    present(d, (0..d.num_generators() as GenId).map(|g| d.d(g).clone()))
}

/// Whether the presentation of the pushout's characteristic algebra equals
/// the union of the two sides' presentations pushed into it. This is
/// equality of canonical presentations, not an isomorphism test.
pub fn verify_char_pushout(sq: &PushoutSquare) -> bool {
    let mut hit = BTreeSet::new();
    for m in [&sq.i1, &sq.i2] {
        for img in &m.images {
            for w in img.words() {
                hit.extend(w.iter().copied());
            }
        }
    }
    if hit.len() != sq.a.num_generators() {
        return false;
    }
    let mut rels = Vec::new();
    for m in [&sq.i1, &sq.i2] {
        rels.extend((0..m.source.num_generators() as GenId).map(|g| m.apply(m.source.d(g))));
    }
    let union = present(&sq.a, rels);
    union == characteristic_algebra(&sq.a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionBudget {
    pub max_rules: usize,
    /// Single rewriting steps, summed over the whole completion.
    pub max_steps: u64,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget { max_rules: 20_000, max_steps: 20_000_000 }
    }
}

type Letters = Vec<u32>;
/// `(length, letters)` orders keys degree-lexicographically.
type Key = (usize, Letters);
type Poly = BTreeMap<Key, Scalar>;

fn key(w: Letters) -> Key {
    (w.len(), w)
}

fn add_term(p: &mut Poly, w: Letters, c: Scalar, f: &Field) {
    if c.is_zero() {
        return;
    }
    let k = key(w);
    let v = f.add(p.get(&k).copied().unwrap_or(Scalar::ZERO), c);
    if v.is_zero() {
        p.remove(&k);
    } else {
        p.insert(k, v);
    }
}

fn find(hay: &[u32], needle: &[u32]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

/// `lhs -> rhs` with `lhs` the leading word of the monic relation `lhs - rhs`.
#[derive(Clone, Debug)]
struct Rule {
    lhs: Letters,
    rhs: Poly,
}

/// A rewriting system for one presented algebra, completed up to a bound.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alg: PresentedAlgebra,
    field: Field,
    gens: u32,
    rules: Vec<Rule>,
    /// Some relation reduced to a nonzero constant: the quotient is zero.
    trivial: bool,
    bound: usize,
    complete: bool,
    steps: u64,
    budget: CompletionBudget,
}

impl RewriteSystem {
    /// Runs the overlap completion on all overlaps of length `<= bound`.
    pub fn new(alg: &PresentedAlgebra, bound: usize, budget: &CompletionBudget) -> Result<RewriteSystem> {
        let field = alg.ring().field().clone();
        let gens = alg.free.num_generators() as u32;
        let mut sys = RewriteSystem {
            alg: alg.clone(),
            field,
            gens,
            rules: Vec::new(),
            trivial: false,
            bound,
            complete: true,
            steps: 0,
            budget: *budget,
        };
        let mut pending: Vec<Poly> = Vec::new();
        let f = sys.field.clone();
        let central = 2 * alg.ring().rank() as u32;
        for i in 0..central / 2 {
            let (t, inv) = (gens + 2 * i, gens + 2 * i + 1);
            for w in [[t, inv], [inv, t]] {
                let mut p = Poly::new();
                add_term(&mut p, w.to_vec(), Scalar::ONE, &f);
                add_term(&mut p, Vec::new(), f.neg(Scalar::ONE), &f);
                pending.push(p);
            }
        }
        for a in gens..gens + central {
            for b in 0..a {
                if b >= gens && (b - gens) / 2 == (a - gens) / 2 {
                    continue;
                }
                let mut p = Poly::new();
                add_term(&mut p, alloc::vec![a, b], Scalar::ONE, &f);
                add_term(&mut p, alloc::vec![b, a], f.neg(Scalar::ONE), &f);
                pending.push(p);
            }
        }
        for r in &alg.relations {
            pending.push(sys.encode(r));
        }
        sys.complete_from(pending)?;
        Ok(sys)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The quotient is the zero algebra (`1` lies in the ideal).
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    fn encode(&self, x: &Element) -> Poly {
        let mut p = Poly::new();
        for (w, c) in x.terms() {
            for (e, s) in c.terms() {
                let mut letters: Letters = w.clone();
                for (i, &k) in e.iter().enumerate() {
                    let l = self.gens + 2 * i as u32 + u32::from(k < 0);
                    letters.extend(core::iter::repeat_n(l, k.unsigned_abs() as usize));
                }
                add_term(&mut p, letters, s, &self.field);
            }
        }
        p
    }

    fn decode(&self, p: &Poly) -> Element {
        let ring = self.alg.ring();
        let mut out = Element::zero();
        for ((_, w), &s) in p {
            let mut exps = alloc::vec![0i32; ring.rank()];
            let mut word = Vec::new();
            for &l in w {
                if l < self.gens {
                    word.push(l as GenId);
                } else {
                    let i = ((l - self.gens) / 2) as usize;
                    exps[i] += if (l - self.gens).is_multiple_of(2) { 1 } else { -1 };
                }
            }
            out.add_term(word, &ring.monomial(exps, s), ring);
        }
        out
    }

    fn reduce_poly(&mut self, mut p: Poly) -> Result<Poly> {
        if self.trivial {
            return Ok(Poly::new());
        }
        let f = self.field.clone();
        let mut done = Poly::new();
        while let Some((k, c)) = p.pop_last() {
            let w = k.1;
            let hit = self.rules.iter().find_map(|r| find(&w, &r.lhs).map(|i| (r, i)));
            match hit {
                None => {
                    done.insert(key(w), c);
                }
                Some((r, i)) => {
                    self.steps += 1;
                    if self.steps > self.budget.max_steps {
                        return Err(self.budget_error());
                    }
                    let (u, v) = (&w[..i], &w[i + r.lhs.len()..]);
                    for ((_, m), &s) in &r.rhs {
                        let mut nw = u.to_vec();
                        nw.extend_from_slice(m);
                        nw.extend_from_slice(v);
                        add_term(&mut p, nw, f.mul(c, s), &f);
                    }
                }
            }
        }
        Ok(done)
    }

    fn budget_error(&self) -> LchError {
        LchError::Budget(alloc::format!(
            "rewriting completion stopped with {} rules after {} steps",
            self.rules.len(),
            self.steps
        ))
    }

    /// Turns a reduced nonzero polynomial into a rule, interreducing the
    /// rules it makes redundant. Returns their relations for reprocessing.
    fn add_rule(&mut self, mut p: Poly) -> Vec<Poly> {
        let ((_, lhs), lc) = p.pop_last().expect("nonzero");
        if lhs.is_empty() {
            self.trivial = true;
            self.rules.clear();
            return Vec::new();
        }
        let f = self.field.clone();
        let inv = f.inv(lc).expect("nonzero leading coefficient");
        let rhs = p.into_iter().map(|(k, s)| (k, f.neg(f.mul(s, inv)))).collect();
        let mut back = Vec::new();
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for r in self.rules.drain(..) {
            if find(&r.lhs, &lhs).is_some() {
                let mut q = r.rhs.iter().map(|(k, &s)| (k.clone(), f.neg(s))).collect::<Poly>();
                add_term(&mut q, r.lhs, Scalar::ONE, &f);
                back.push(q);
            } else {
                kept.push(r);
            }
        }
        kept.push(Rule { lhs, rhs });
        self.rules = kept;
        back
    }

    fn complete_from(&mut self, mut pending: Vec<Poly>) -> Result<()> {
        let mut checked: BTreeSet<(Letters, Letters, usize)> = BTreeSet::new();
        loop {
            while let Some(p) = pending.pop() {
                let p = self.reduce_poly(p)?;
                if p.is_empty() {
                    continue;
                }
                pending.extend(self.add_rule(p));
                if self.trivial {
                    return Ok(());
                }
                if self.rules.len() > self.budget.max_rules {
                    return Err(self.budget_error());
                }
            }
            // critical pairs of the current system
            let mut found = false;
            let snapshot: Vec<Letters> = self.rules.iter().map(|r| r.lhs.clone()).collect();
            for l1 in &snapshot {
                for l2 in &snapshot {
                    for k in 1..l1.len().min(l2.len()) {
                        if l1[l1.len() - k..] != l2[..k] {
                            continue;
                        }
                        if !checked.insert((l1.clone(), l2.clone(), k)) {
                            continue;
                        }
                        if l1.len() + l2.len() - k > self.bound {
                            self.complete = false;
                            continue;
                        }
                        let s = self.s_poly(l1, l2, k);
                        let Some(s) = s else { continue };
                        let s = self.reduce_poly(s)?;
                        if !s.is_empty() {
                            pending.push(s);
                            found = true;
                        }
                    }
                }
            }
            if !found {
                break;
            }
        }
        self.finish()
    }

    /// `rhs1 * l2[k..] - l1[..] * rhs2` for the overlap word; `None` when a
    /// rule was dropped meanwhile.
    fn s_poly(&self, l1: &Letters, l2: &Letters, k: usize) -> Option<Poly> {
        let r1 = self.rules.iter().find(|r| &r.lhs == l1)?;
        let r2 = self.rules.iter().find(|r| &r.lhs == l2)?;
        let f = &self.field;
        let mut s = Poly::new();
        for ((_, m), &c) in &r1.rhs {
            let mut w = m.clone();
            w.extend_from_slice(&l2[k..]);
            add_term(&mut s, w, c, f);
        }
        for ((_, m), &c) in &r2.rhs {
            let mut w = l1[..l1.len() - k].to_vec();
            w.extend_from_slice(m);
            add_term(&mut s, w, f.neg(c), f);
        }
        Some(s)
    }

    /// Reduces every right-hand side.
    fn finish(&mut self) -> Result<()> {
        for i in 0..self.rules.len() {
            let rhs = core::mem::take(&mut self.rules[i].rhs);
            let rhs = self.reduce_poly(rhs)?;
            self.rules[i].rhs = rhs;
        }
        Ok(())
    }

    /// Normal form of `x`; canonical for inputs whose letter words have
    /// length at most the bound when the system is complete up to it.
    pub fn reduce(&mut self, x: &Element) -> Result<Element> {
        let p = self.encode(x);
        let p = self.reduce_poly(p)?;
        Ok(self.decode(&p))
    }

    /// Letter length of the longest word of `x` (ring exponents count).
    pub fn letter_length(&self, x: &Element) -> usize {
        self.encode(x).keys().map(|k| k.0).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub element: Element,
    /// The completion saw every overlap up to the bound.
    pub complete: bool,
    pub trivial_quotient: bool,
}

pub fn normal_form(a: &PresentedAlgebra, x: &Element, bound: usize, budget: &CompletionBudget) -> Result<NormalForm> {
    let mut sys = RewriteSystem::new(a, bound, budget)?;
    let len = sys.letter_length(x);
    if len > bound {
        return Err(LchError::Domain(alloc::format!("bound {bound} is below the word length {len} of the input")));
    }
    let element = sys.reduce(x)?;
    Ok(NormalForm { element, complete: sys.is_complete(), trivial_quotient: sys.is_trivial() })
}

/// Whether `m` maps every relation of the source into the target's ideal.
/// Reduction to zero is a proof; failure is conclusive only when the target
/// system is complete up to the relation lengths.
pub fn induces_char_map(m: &DgaMorphism, bound: usize, budget: &CompletionBudget) -> Result<bool> {
    let target = characteristic_algebra(&m.target);
    let mut sys = RewriteSystem::new(&target, bound, budget)?;
    let t = &m.target;
    let mut order: Vec<GenId> = (0..t.num_generators() as GenId).collect();
    order.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
    let mut new_id = alloc::vec![0; order.len()];
    for (k, &g) in order.iter().enumerate() {
        new_id[g as usize] = k as GenId;
    }
    for g in 0..m.source.num_generators() as GenId {
        let img = m.apply(m.source.d(g)).map_ids(|h| new_id[h as usize]);
        if !sys.reduce(&img)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::border::{partition_by_action, PushoutSquare};
    use crate::front::{side_labels, Event::*, PlatFront};

    fn nf(a: &PresentedAlgebra, s: &str, bound: usize) -> String {
        let x = a.parse_element(s).unwrap();
        let r = normal_form(a, &x, bound, &CompletionBudget::default()).unwrap();
        assert!(r.complete);
        a.format_element(&r.element)
    }

    #[test]
    fn single_linear_relation() {
        let d = Dga::from_spec(Ring::f2(), 0, &[("a", 1), ("x", 0), ("z", 0)], &[("a", "z + x")]).unwrap();
        let a = characteristic_algebra(&d);
        assert_eq!(a.format_relations(), ["x + z"]);
        assert_eq!(nf(&a, "z", 6), "x");
        assert_eq!(nf(&a, "z*z + x*z", 6), "0");
        assert_eq!(nf(&a, "a*z", 6), "a*x");
    }

    #[test]
    fn free_algebra_is_fixed() {
        let d = Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("y", 0)], &[]).unwrap();
        let a = characteristic_algebra(&d);
        assert!(a.relations().is_empty());
        assert_eq!(nf(&a, "y*x + x*y", 4), "x*y + y*x");
    }

    #[test]
    fn unit_in_ideal_gives_zero_quotient() {
        let d =
            Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("y", 0), ("b", 1), ("c", 1)], &[("b", "x"), ("c", "1 + x*y")])
                .unwrap();
        let a = characteristic_algebra(&d);
        let r = normal_form(&a, &Element::unit(a.ring()), 4, &CompletionBudget::default()).unwrap();
        assert!(r.trivial_quotient && r.element.is_zero());
    }

    #[test]
    fn unknot_relation_and_laurent_letters() {
        let u = PlatFront::new(alloc::vec![L(1), R(1)]).dga().unwrap();
        let a = characteristic_algebra(&u);
        assert_eq!(a.relations().len(), 1);
        let rel = a.format_relations().remove(0);
        assert!(rel == "1 + t" || rel == "1 + t^-1", "{rel}");
        assert_eq!(nf(&a, "t", 4), "1");
        assert_eq!(nf(&a, "t^-1*c1", 4), "c1");
        assert_eq!(nf(&a, "1", 4), "1");
    }

    #[test]
    fn noncommuting_overlap_completion() {
        // x and y commute and y*y = 0
        let d = Dga::from_spec(
            Ring::f2(),
            0,
            &[("x", 0), ("y", 0), ("a", 1), ("b", 1)],
            &[("a", "x*y + y*x"), ("b", "y*y")],
        )
        .unwrap();
        let a = characteristic_algebra(&d);
        assert_eq!(nf(&a, "x*x*y + x*y*x", 6), "0");
        assert_eq!(nf(&a, "y*x*x", 6), nf(&a, "x*y*x", 6));
        assert_ne!(nf(&a, "y*x*x", 6), "0");
        let x = a.parse_element("x*y*y*x").unwrap();
        let r = normal_form(&a, &x, 6, &CompletionBudget::default()).unwrap();
        assert!(r.element.is_zero());
    }

    #[test]
    fn idempotent_on_trefoil() {
        let t = PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap();
        let a = characteristic_algebra(&t);
        let mut sys = RewriteSystem::new(&a, 5, &CompletionBudget::default()).unwrap();
        for g in 0..a.free_algebra().num_generators() as GenId {
            let x = Element::generator(g, a.ring()).mul(&Element::generator(0, a.ring()), a.ring());
            let once = sys.reduce(&x).unwrap();
            assert_eq!(sys.reduce(&once).unwrap(), once);
        }
    }

    #[test]
    fn dipped_squares_preserve_presentations() {
        for events in [alloc::vec![L(1), R(1)], alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]] {
            let f = PlatFront::new(events);
            let diag = f.resolve().unwrap();
            let slice = diag.columns.len() / 2;
            let dipped = diag.dip(slice).unwrap();
            let d = crate::front::knot_dga(&dipped).unwrap();
            let p = partition_by_action(&d, &side_labels(&dipped), crate::Action::from_integer(1)).unwrap();
            let sq = PushoutSquare::from_partition(&d, &p).unwrap();
            assert!(verify_char_pushout(&sq));
            for m in [&sq.i31, &sq.i32, &sq.i1, &sq.i2] {
                assert!(induces_char_map(m, 4, &CompletionBudget::default()).unwrap());
            }
        }
    }
}
