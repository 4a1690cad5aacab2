//! Algebra maps between DGAs, given on generators and ring variables.

use alloc::string::String;
use alloc::vec::Vec;

use super::{Dga, Element, GenId};
use crate::coeff::GroupRingElem;
use crate::error::{LchError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism {
    pub source: Dga,
    pub target: Dga,
    /// Image of each source generator, in the target.
    pub images: Vec<Element>,
    /// Image of each source ring variable; must be a unit monomial of the target ring.
    pub coeff_map: Vec<GroupRingElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MorphismReport {
    pub degree_ok: bool,
    pub chain_ok: bool,
    /// Generators where `f(d c) != d f(c)`, with the difference.
    pub chain_failures: Vec<(String, Element)>,
    pub degree_failures: Vec<String>,
}

impl MorphismReport {
    pub fn ok(&self) -> bool {
        self.degree_ok && self.chain_ok
    }
}

impl DgaMorphism {
    pub fn new(source: Dga, target: Dga, images: Vec<Element>, coeff_map: Vec<GroupRingElem>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(LchError::Format("one image per source generator required".into()));
        }
        if coeff_map.len() != source.ring().rank() {
            return Err(LchError::Format("one image per ring variable required".into()));
        }
        if source.field() != target.field() {
            return Err(LchError::Format(alloc::format!("field mismatch: {} vs {}", source.field(), target.field())));
        }
        for c in &coeff_map {
            if target.ring().monomial_inverse(c).is_none() {
                return Err(LchError::Format("ring variables must map to unit monomials".into()));
            }
        }
        Ok(DgaMorphism { source, target, images, coeff_map })
    }

    /// Variables map by name, when the target has a variable of the same
    /// name, and otherwise to 1.
    pub fn default_coeff_map(source: &Dga, target: &Dga) -> Vec<GroupRingElem> {
        source
            .ring()
            .vars()
            .iter()
            .map(|v| match target.ring().var_index(v) {
                Some(j) => target.ring().var(j, 1),
                None => target.ring().one(),
            })
            .collect()
    }

    /// `g -> g` by name for every source generator; unknown names are an error.
    pub fn inclusion(source: &Dga, target: &Dga) -> Result<Self> {
        let mut images = Vec::new();
        for g in source.generators() {
            let j = target.lookup(&g.name)?;
            images.push(Element::generator(j, target.ring()));
        }
        let cm = Self::default_coeff_map(source, target);
        Self::new(source.clone(), target.clone(), images, cm)
    }

    pub fn identity(d: &Dga) -> Self {
        Self::inclusion(d, d).expect("identity is well formed")
    }

    pub fn image_of(&self, g: GenId) -> &Element {
        &self.images[g as usize]
    }

    fn map_coeff(&self, c: &GroupRingElem) -> GroupRingElem {
        let tr = self.target.ring();
        let mut out = tr.zero();
        for (e, s) in c.terms() {
            let mut m = tr.scalar(s);
            for (i, &ei) in e.iter().enumerate() {
                let base = if ei >= 0 {
                    self.coeff_map[i].clone()
                } else {
                    tr.monomial_inverse(&self.coeff_map[i]).expect("checked unit")
                };
                for _ in 0..ei.unsigned_abs() {
                    m = tr.mul(&m, &base);
                }
            }
            tr.add_into(&mut out, &m);
        }
        out
    }

    /// Image of a source element.
    pub fn apply(&self, x: &Element) -> Element {
        let tr = self.target.ring();
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            let mut acc = Element::scalar(self.map_coeff(c));
            for &g in w {
                acc = acc.mul(&self.images[g as usize], tr);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc, tr);
        }
        out
    }

    /// Checks grading and `f d = d f` on generators (enough for an algebra map).
    pub fn check(&self) -> MorphismReport {
        let mut rep = MorphismReport { degree_ok: true, chain_ok: true, ..Default::default() };
        for (i, g) in self.source.generators().iter().enumerate() {
            let img = &self.images[i];
            let want = self.target.norm(g.degree);
            if self.target.term_degrees(img).iter().any(|&d| d != want) {
                rep.degree_ok = false;
                rep.degree_failures.push(g.name.clone());
            }
            let lhs = self.apply(self.source.d(i as GenId));
            let rhs = match self.target.differential(img) {
                Ok(r) => r,
                Err(_) => {
                    rep.chain_ok = false;
                    rep.chain_failures.push((g.name.clone(), img.clone()));
                    continue;
                }
            };
            let diff = lhs.sub(&rhs, self.target.ring());
            if !diff.is_zero() {
                rep.chain_ok = false;
                rep.chain_failures.push((g.name.clone(), diff));
            }
        }
        if self.source.ring().rank() > 0 {
            for (v, c) in self.source.ring().maslov().iter().zip(&self.coeff_map) {
                let (e, _) = c.as_monomial().expect("unit monomial");
                let d = self.target.ring().monomial_degree(e);
                if self.target.norm(*v) != self.target.norm(d) {
                    rep.degree_ok = false;
                    rep.degree_failures.push("<coefficients>".into());
                }
            }
        }
        rep
    }

    /// Whether two morphisms agree on all generators (and coefficients).
    pub fn agrees_with(&self, other: &DgaMorphism) -> bool {
        self.images == other.images && self.coeff_map == other.coeff_map && self.target == other.target
    }
}

/// `second . first`.
pub fn compose(first: &DgaMorphism, second: &DgaMorphism) -> Result<DgaMorphism> {
    if first.target != second.source {
        return Err(LchError::Format("composition of non-composable morphisms".into()));
    }
    let images = first.images.iter().map(|x| second.apply(x)).collect();
    let coeff_map = first.coeff_map.iter().map(|c| second.map_coeff(c)).collect();
    DgaMorphism::new(first.source.clone(), second.target.clone(), images, coeff_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;

    fn chain() -> Dga {
        Dga::from_spec(Ring::f2_t(), 0, &[("a", 1), ("x", 0), ("y", 0)], &[("a", "x + t*y")]).unwrap()
    }

    #[test]
    fn identity_and_inclusion() {
        let d = chain();
        let id = DgaMorphism::identity(&d);
        assert!(id.check().ok());
        let e = d.parse_element("a*x + t^-1*y*y").unwrap();
        assert_eq!(id.apply(&e), e);
        let sub = d.restrict(&[1, 2]).unwrap();
        assert!(DgaMorphism::inclusion(&sub, &d).unwrap().check().ok());
    }

    #[test]
    fn swap_needs_coefficients() {
        let d = chain();
        // x <-> t*y is a chain map fixing a
        let images = ["a", "t*y", "t^-1*x"].iter().map(|s| d.parse_element(s).unwrap()).collect();
        let f = DgaMorphism::new(d.clone(), d.clone(), images, alloc::vec![d.ring().var(0, 1)]).unwrap();
        assert!(f.check().ok());
        let bad_images = ["a", "y", "x"].iter().map(|s| d.parse_element(s).unwrap()).collect();
        let g = DgaMorphism::new(d.clone(), d.clone(), bad_images, alloc::vec![d.ring().var(0, 1)]).unwrap();
        let rep = g.check();
        assert!(!rep.chain_ok);
        assert_eq!(rep.chain_failures[0].0, "a");
        let ff = compose(&f, &f).unwrap();
        assert!(ff.agrees_with(&DgaMorphism::identity(&d)));
    }

    #[test]
    fn degree_mismatch_detected() {
        let d = chain();
        let images = ["x", "x", "y"].iter().map(|s| d.parse_element(s).unwrap()).collect();
        let f = DgaMorphism::new(d.clone(), d.clone(), images, alloc::vec![d.ring().var(0, 1)]).unwrap();
        assert!(!f.check().degree_ok);
    }
}
