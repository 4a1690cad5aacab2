//! Free unital graded noncommutative DGAs on named generators.
//!
//! A [`Dga`] stores the differential on generators only; it is extended to
//! words by the graded Leibniz rule in [`Dga::differential`]. Degrees live in
//! `Z` (modulus 0) or `Z/M`.

mod element;
mod expr;
mod morphism;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use element::{deglex, Element, GenId, Word};
pub use morphism::{compose, DgaMorphism, MorphismReport};

use crate::coeff::{GroupRingElem, Ring};
use crate::error::{LchError, Result};
use crate::field::{Field, Scalar};
use crate::Action;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// Positive action (chord length); metadata used for filtration checks.
    pub action: Option<Action>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    ring: Ring,
    modulus: u32,
    gens: Vec<Generator>,
    index: BTreeMap<String, GenId>,
    diff: Vec<Element>,
}

/// Which invariant a generator violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// `d(c)` is not homogeneous of degree `|c| - 1`.
    Degree,
    /// `d(d(c)) != 0`; the residual is `d(d(c))`.
    DSquared,
    /// Some word of `d(c)` has total action `>= action(c)`.
    Action,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    pub kind: CheckKind,
    pub residual: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DgaReport {
    pub d_squared_ok: bool,
    pub degree_ok: bool,
    pub action_ok: bool,
    pub violations: Vec<Violation>,
}

impl DgaReport {
    pub fn ok(&self) -> bool {
        self.d_squared_ok && self.degree_ok && self.action_ok
    }
}

impl Dga {
    /// Empty DGA (unit only) over `ring` with grading modulus `modulus`.
    pub fn new(ring: Ring, modulus: u32) -> Result<Dga> {
        if ring.field().characteristic() != 2 && modulus % 2 == 1 {
            return Err(LchError::Format(
                "odd grading modulus needs characteristic 2 (Leibniz signs undefined)".into(),
            ));
        }
        Ok(Dga { ring, modulus, gens: Vec::new(), index: BTreeMap::new(), diff: Vec::new() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.gens[id as usize].name
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<GenId> {
        self.id(name).ok_or_else(|| LchError::UnknownGenerator(name.into()))
    }

    pub fn degree(&self, id: GenId) -> i64 {
        self.gens[id as usize].degree
    }

    /// Differential of a generator.
    pub fn d(&self, id: GenId) -> &Element {
        &self.diff[id as usize]
    }

    pub fn add_generator(&mut self, name: &str, degree: i64, action: Option<Action>) -> Result<GenId> {
        if self.index.contains_key(name) {
            return Err(LchError::Format(alloc::format!("duplicate generator `{name}`")));
        }
        if self.ring.var_index(name).is_some() {
            return Err(LchError::Format(alloc::format!("generator `{name}` clashes with a ring variable")));
        }
        if let Some(a) = action {
            if a <= Action::from_integer(0) {
                return Err(LchError::Format(alloc::format!("action of `{name}` must be positive")));
            }
        }
        let id = self.gens.len() as GenId;
        self.gens.push(Generator { name: name.into(), degree: self.norm(degree), action });
        self.index.insert(name.into(), id);
        self.diff.push(Element::zero());
        Ok(id)
    }

    pub fn set_action(&mut self, id: GenId, action: Option<Action>) {
        self.gens[id as usize].action = action;
    }

    /// Sets `d(id)`; all generator ids in `x` must exist.
    pub fn set_differential(&mut self, id: GenId, x: Element) -> Result<()> {
        self.check_ids(&x)?;
        self.diff[id as usize] = x;
        Ok(())
    }

    fn check_ids(&self, x: &Element) -> Result<()> {
        for w in x.words() {
            if let Some(&g) = w.iter().find(|&&g| g as usize >= self.gens.len()) {
                return Err(LchError::UnknownGenerator(alloc::format!("#{g}")));
            }
        }
        Ok(())
    }

    /// Builds a DGA from `(name, degree, action)` triples and differentials
    /// written in the expression syntax.
    pub fn from_spec(ring: Ring, modulus: u32, gens: &[(&str, i64)], diffs: &[(&str, &str)]) -> Result<Dga> {
        let mut d = Dga::new(ring, modulus)?;
        for &(n, deg) in gens {
            d.add_generator(n, deg, None)?;
        }
        for &(n, e) in diffs {
            let id = d.lookup(n)?;
            let x = d.parse_element(e)?;
            d.set_differential(id, x)?;
        }
        Ok(d)
    }

    /// Degree normalized into `Z/M` when the modulus is positive.
    pub fn norm(&self, deg: i64) -> i64 {
        if self.modulus > 0 {
            deg.rem_euclid(self.modulus as i64)
        } else {
            deg
        }
    }

    pub fn degrees_equal(&self, a: i64, b: i64) -> bool {
        self.norm(a) == self.norm(b)
    }

    pub fn word_degree(&self, w: &[GenId]) -> i64 {
        w.iter().map(|&g| self.gens[g as usize].degree).sum()
    }

    /// Degree of every monomial term `c t^v w`.
    pub fn term_degrees(&self, x: &Element) -> Vec<i64> {
        let mut out = Vec::new();
        for (w, c) in x.terms() {
            let wd = self.word_degree(w);
            for (e, _) in c.terms() {
                out.push(self.norm(wd + self.ring.monomial_degree(e)));
            }
        }
        out
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` when homogeneous, `Err` otherwise.
    pub fn homogeneous_degree(&self, x: &Element) -> core::result::Result<Option<i64>, ()> {
        let degs = self.term_degrees(x);
        match degs.first() {
            None => Ok(None),
            Some(&d0) if degs.iter().all(|&d| d == d0) => Ok(Some(d0)),
            Some(_) => Err(()),
        }
    }

    fn sign_parity(&self, prefix_degree: i64) -> bool {
        // true when the Leibniz sign is -1
        self.ring.field().characteristic() != 2 && prefix_degree.rem_euclid(2) == 1
    }

    /// The differential extended by linearity and the graded Leibniz rule.
    pub fn differential(&self, x: &Element) -> Result<Element> {
        self.check_ids(x)?;
        let ring = &self.ring;
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let mut prefix_deg = 0i64;
            for i in 0..w.len() {
                let dg = &self.diff[w[i] as usize];
                if !dg.is_zero() {
                    let coeff = if self.sign_parity(prefix_deg) { ring.neg(c) } else { c.clone() };
                    for (mid, mc) in dg.terms() {
                        let mut nw = Word::with_capacity(w.len() + mid.len());
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(mid);
                        nw.extend_from_slice(&w[i + 1..]);
                        out.add_term(nw, &ring.mul(&coeff, mc), ring);
                    }
                }
                prefix_deg += self.gens[w[i] as usize].degree;
            }
        }
        Ok(out)
    }

    /// Checks degree drop, `d^2 = 0` and the action filtration generator by generator.
    pub fn check(&self) -> DgaReport {
        let mut rep = DgaReport { d_squared_ok: true, degree_ok: true, action_ok: true, violations: Vec::new() };
        for (i, g) in self.gens.iter().enumerate() {
            let dc = &self.diff[i];
            let want = self.norm(g.degree - 1);
            if self.term_degrees(dc).iter().any(|&d| d != want) {
                rep.degree_ok = false;
                rep.violations.push(Violation {
                    generator: g.name.clone(),
                    kind: CheckKind::Degree,
                    residual: dc.clone(),
                });
            }
            let dd = self.differential(dc).expect("ids checked on insertion");
            if !dd.is_zero() {
                rep.d_squared_ok = false;
                rep.violations.push(Violation { generator: g.name.clone(), kind: CheckKind::DSquared, residual: dd });
            }
            if let Some(top) = g.action {
                let mut bad = Element::zero();
                for (w, c) in dc.terms() {
                    let mut total = Action::from_integer(0);
                    let mut known = true;
                    for &b in w {
                        match self.gens[b as usize].action {
                            Some(a) => total += a,
                            None => known = false,
                        }
                    }
                    if known && total >= top {
                        bad.add_term(w.clone(), c, &self.ring);
                    }
                }
                if !bad.is_zero() {
                    rep.action_ok = false;
                    rep.violations.push(Violation {
                        generator: g.name.clone(),
                        kind: CheckKind::Action,
                        residual: bad,
                    });
                }
            }
        }
        rep
    }

    /// Parse-time validation: every invariant must hold.
    pub fn validate(&self) -> Result<()> {
        let rep = self.check();
        if let Some(v) = rep.violations.first() {
            let what = match v.kind {
                CheckKind::Degree => "inhomogeneous differential or wrong degree",
                CheckKind::DSquared => "d^2 != 0",
                CheckKind::Action => "differential does not decrease action",
            };
            return Err(LchError::Validation(alloc::format!(
                "{what} at generator `{}`: {}",
                v.generator,
                self.format_element(&v.residual)
            )));
        }
        Ok(())
    }

    /// Generator-for-generator equality by name: same ring, modulus, name set,
    /// degrees and differentials. Generator order and actions are ignored.
    pub fn same_as(&self, other: &Dga) -> bool {
        if self.ring != other.ring || self.modulus != other.modulus || self.gens.len() != other.gens.len() {
            return false;
        }
        for (i, g) in self.gens.iter().enumerate() {
            let Some(j) = other.id(&g.name) else {
                return false;
            };
            if other.degree(j) != g.degree {
                return false;
            }
            let Ok(mapped) = self.transport(&self.diff[i], other) else {
                return false;
            };
            if &mapped != other.d(j) {
                return false;
            }
        }
        true
    }

    /// Re-expresses `x` in `other` by generator names.
    pub fn transport(&self, x: &Element, other: &Dga) -> Result<Element> {
        let mut map = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            map.push(other.id(&g.name));
        }
        for w in x.words() {
            for &g in w {
                if map[g as usize].is_none() {
                    return Err(LchError::UnknownGenerator(self.gens[g as usize].name.clone()));
                }
            }
        }
        Ok(x.map_ids(|g| map[g as usize].unwrap()))
    }

    /// Pushes all coefficients through `t_i -> point_i` in `field`. Degrees
    /// and actions are unchanged.
    pub fn specialize(&self, field: &Field, point: &[Scalar]) -> Result<Dga> {
        self.ring.check_point(field, point)?;
        let ring = Ring::scalars(field.clone());
        let mut out =
            Dga { ring, modulus: self.modulus, gens: self.gens.clone(), index: self.index.clone(), diff: Vec::new() };
        for x in &self.diff {
            out.diff.push(self.specialize_element(x, field, point, &out.ring)?);
        }
        Ok(out)
    }

    pub fn specialize_element(&self, x: &Element, field: &Field, point: &[Scalar], target: &Ring) -> Result<Element> {
        let mut e = Element::zero();
        for (w, c) in x.terms() {
            let v = self.ring.evaluate(c, field, point)?;
            e.add_term(w.clone(), &target.scalar(v), target);
        }
        Ok(e)
    }

    /// Specialization at the all-ones point (forgets the coefficient variables).
    pub fn at_one(&self) -> Result<Dga> {
        let field = self.field().clone();
        let point = alloc::vec![Scalar::ONE; self.ring.rank()];
        self.specialize(&field, &point)
    }

    /// Whether the coefficient ring is a bare field.
    pub fn over_field(&self) -> bool {
        self.ring.rank() == 0
    }

    /// `sigma(x)` for the substitution `c -> c + eps(c)`.
    pub fn shift_element(&self, x: &Element, eps: &[Scalar], sign: bool) -> Element {
        let ring = &self.ring;
        let field = ring.field();
        let mut images = Vec::with_capacity(self.gens.len());
        for (i, e) in eps.iter().enumerate() {
            let mut img = Element::generator(i as GenId, ring);
            if !e.is_zero() {
                let c = if sign { field.neg(*e) } else { *e };
                img.add_term(Word::new(), &ring.scalar(c), ring);
            }
            images.push(img);
        }
        self.substitute(x, &images)
    }

    /// Algebra substitution `g -> images[g]` within this DGA's ring.
    pub fn substitute(&self, x: &Element, images: &[Element]) -> Element {
        let ring = &self.ring;
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let mut acc = Element::scalar(c.clone());
            for &g in w {
                acc = acc.mul(&images[g as usize], ring);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc, ring);
        }
        out
    }

    /// Checks that `eps` is graded: zero on generators of nonzero degree.
    pub fn check_graded_assignment(&self, eps: &[Scalar]) -> Result<()> {
        if eps.len() != self.gens.len() {
            return Err(LchError::Domain(alloc::format!(
                "augmentation has {} values for {} generators",
                eps.len(),
                self.gens.len()
            )));
        }
        if !self.over_field() {
            return Err(LchError::Domain("augmentations need field coefficients; specialize first".into()));
        }
        for (g, e) in self.gens.iter().zip(eps) {
            if !e.is_zero() && self.norm(g.degree) != 0 {
                return Err(LchError::Domain(alloc::format!(
                    "augmentation is nonzero on `{}` of degree {}",
                    g.name,
                    g.degree
                )));
            }
            if e.0 >= self.field().order() {
                return Err(LchError::Domain(alloc::format!("value of `{}` outside {}", g.name, self.field())));
            }
        }
        Ok(())
    }

    /// The twisted DGA `(A, sigma_eps d sigma_eps^-1)`.
    pub fn twist(&self, eps: &[Scalar]) -> Result<Dga> {
        self.check_graded_assignment(eps)?;
        let mut out = self.clone();
        for i in 0..self.gens.len() {
            // sigma^-1(c) = c - eps(c), and d kills constants
            out.diff[i] = self.shift_element(&self.diff[i], eps, false);
        }
        Ok(out)
    }

    /// The sub-DGA spanned by `ids` (in that order); fails if some
    /// differential leaves the subalgebra.
    pub fn restrict(&self, ids: &[GenId]) -> Result<Dga> {
        let mut out = Dga::new(self.ring.clone(), self.modulus)?;
        let mut map = alloc::vec![None; self.gens.len()];
        for &g in ids {
            let gen = &self.gens[g as usize];
            map[g as usize] = Some(out.add_generator(&gen.name, gen.degree, gen.action)?);
        }
        for &g in ids {
            let dx = &self.diff[g as usize];
            for w in dx.words() {
                if w.iter().any(|&b| map[b as usize].is_none()) {
                    return Err(LchError::NotClosed {
                        generator: self.gens[g as usize].name.clone(),
                        word: self.format_word(w),
                    });
                }
            }
            let new_id = map[g as usize].unwrap();
            out.diff[new_id as usize] = dx.map_ids(|b| map[b as usize].unwrap());
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[GenId]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.gens[g as usize].name.as_str()).collect::<Vec<_>>().join("*")
    }

    /// Canonical text form, e.g. `t*x*y + a + 1`; parseable by [`Dga::parse_element`].
    pub fn format_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (w, c) in x.sorted_terms() {
            for (e, s) in c.terms() {
                let mono = self.ring.format_monomial(e, s);
                let part = if w.is_empty() {
                    mono
                } else if mono == "1" {
                    self.format_word(w)
                } else {
                    alloc::format!("{}*{}", mono, self.format_word(w))
                };
                parts.push(part);
            }
        }
        parts.join(" + ")
    }

    /// Scalar coefficient of a term in a DGA over a field.
    pub fn field_coefficient(c: &GroupRingElem) -> Scalar {
        c.constant(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    /// The DGA of L from the surface homotopy example, degrees with m.
    pub(crate) fn example_l(m: i64) -> Dga {
        Dga::from_spec(
            Ring::f2(),
            0,
            &[("b", 1 + m), ("a", m), ("y", m), ("x", m - 1), ("z", m - 1)],
            &[("a", "z + x")],
        )
        .unwrap()
    }

    pub(crate) fn example_l_prime(m: i64) -> Dga {
        Dga::from_spec(Ring::f2(), 0, &[("b", 1 + m), ("a", m), ("y", m), ("x", m - 1), ("z'", 1 - m)], &[("a", "x")])
            .unwrap()
    }

    #[test]
    fn leibniz_unit_and_products() {
        let d = example_l(3);
        let one = Element::unit(d.ring());
        assert!(d.differential(&one).unwrap().is_zero());
        let ab = d.parse_element("a*b").unwrap();
        assert_eq!(d.differential(&ab).unwrap(), d.parse_element("z*b + x*b").unwrap());
    }

    #[test]
    fn leibniz_square_of_odd_generator() {
        let d = Dga::from_spec(Ring::f2(), 0, &[("a", 1), ("x", 0)], &[("a", "x")]).unwrap();
        let aa = d.parse_element("a*a").unwrap();
        assert_eq!(d.differential(&aa).unwrap(), d.parse_element("x*a + a*x").unwrap());
    }

    #[test]
    fn odd_characteristic_signs() {
        let f3 = Field::new(3).unwrap();
        let d =
            Dga::from_spec(Ring::scalars(f3), 0, &[("a", 1), ("b", 1), ("x", 0)], &[("a", "x"), ("b", "x")]).unwrap();
        // d(ab) = x b - a x
        let ab = d.parse_element("a*b").unwrap();
        assert_eq!(d.differential(&ab).unwrap(), d.parse_element("x*b + 2*a*x").unwrap());
        assert!(Dga::new(Ring::scalars(Field::new(3).unwrap()), 3).is_err());
    }

    #[test]
    fn check_examples() {
        assert!(example_l_prime(3).check().ok());
        assert!(example_l(3).check().ok());
        let bad = Dga::from_spec(Ring::f2(), 0, &[("a", 2), ("b", 1)], &[("a", "b"), ("b", "1")]).unwrap();
        let rep = bad.check();
        assert!(!rep.d_squared_ok);
        assert!(rep.degree_ok);
        assert_eq!(rep.violations[0].generator, "a");
        let free = Dga::from_spec(Ring::f2(), 0, &[("p", 3), ("q", -1)], &[]).unwrap();
        assert!(free.check().ok());
    }

    #[test]
    fn action_filtration_is_checked() {
        let mut d = Dga::from_spec(Ring::f2(), 0, &[("a", 1), ("x", 0)], &[("a", "x")]).unwrap();
        d.set_action(0, Some(Action::from_integer(1)));
        d.set_action(1, Some(Action::from_integer(2)));
        assert!(!d.check().action_ok);
        d.set_action(1, Some(Action::new(1, 2)));
        assert!(d.check().action_ok);
    }

    #[test]
    fn twist_examples() {
        let d = Dga::from_spec(Ring::f2(), 0, &[("a", 1), ("x", 0), ("y", 0)], &[("a", "x + x*y")]).unwrap();
        let zero = alloc::vec![Scalar::ZERO; 3];
        assert_eq!(d.twist(&zero).unwrap(), d);
        let e1 = alloc::vec![Scalar::ZERO, Scalar::ONE, Scalar::ZERO];
        let t1 = d.twist(&e1).unwrap();
        assert_eq!(t1.d(0), &d.parse_element("1 + x + y + x*y").unwrap());
        let e2 = alloc::vec![Scalar::ZERO, Scalar::ZERO, Scalar::ONE];
        assert_eq!(d.twist(&e2).unwrap().d(0), &d.parse_element("x*y").unwrap());
        // involutive in characteristic 2
        assert_eq!(t1.twist(&e1).unwrap(), d);
        // nonzero value off degree 0
        let bad = alloc::vec![Scalar::ONE, Scalar::ZERO, Scalar::ZERO];
        assert!(matches!(d.twist(&bad), Err(LchError::Domain(_))));
    }

    #[test]
    fn specialize_unknot() {
        let d = Dga::from_spec(Ring::f2_t(), 0, &[("c", 1)], &[("c", "1 + t")]).unwrap();
        let s = d.specialize(&Field::f2(), &[Scalar::ONE]).unwrap();
        assert!(s.d(0).is_zero());
        assert!(s.check().ok());
        assert_eq!(d.at_one().unwrap(), s);
        let plain = example_l(3);
        assert_eq!(plain.specialize(&Field::f2(), &[]).unwrap(), plain);
        assert!(d.specialize(&Field::f2(), &[Scalar::ZERO]).is_err());
    }

    #[test]
    fn restrict_closure() {
        let d = example_l(3);
        let x = d.lookup("x").unwrap();
        let z = d.lookup("z").unwrap();
        assert!(d.restrict(&[x, z]).is_ok());
        let a = d.lookup("a").unwrap();
        match d.restrict(&[a]) {
            Err(LchError::NotClosed { generator, word }) => {
                assert_eq!(generator, "a");
                assert!(word == "x" || word == "z");
            }
            other => panic!("expected closure error, got {other:?}"),
        }
        let all: Vec<GenId> = (0..d.num_generators() as GenId).collect();
        assert_eq!(d.restrict(&all).unwrap(), d);
    }
}
