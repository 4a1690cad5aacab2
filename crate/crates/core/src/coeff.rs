//! Coefficient rings: `F[t1^±1, ..., tk^±1]` over a finite field, modeling
//! the group ring of a free abelian homology group with a Maslov grading on
//! its monomials.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{LchError, Result};
use crate::field::{Field, Scalar};

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i32>;

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Exponents, Scalar>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Scalar)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the constant monomial.
    pub fn constant(&self, k: usize) -> Scalar {
        self.terms.get(&alloc::vec![0; k]).copied().unwrap_or(Scalar::ZERO)
    }

    /// The single term, if this is a scalar multiple of one monomial.
    pub fn as_monomial(&self) -> Option<(&Exponents, Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (e, *c))
        } else {
            None
        }
    }
}

/// Ring descriptor: base field, variable names and the Maslov degree of each
/// variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    maslov: Vec<i64>,
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, maslov: Vec<i64>) -> Result<Ring> {
        if vars.len() != maslov.len() {
            return Err(LchError::Format("maslov vector length differs from variable count".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(LchError::Format(alloc::format!("duplicate ring variable `{v}`")));
            }
        }
        Ok(Ring { field, vars, maslov })
    }

    /// `F` with no variables.
    pub fn scalars(field: Field) -> Ring {
        Ring { field, vars: Vec::new(), maslov: Vec::new() }
    }

    pub fn f2() -> Ring {
        Ring::scalars(Field::f2())
    }

    /// `F2[t^±1]` with `|t| = 0`.
    pub fn f2_t() -> Ring {
        Ring { field: Field::f2(), vars: alloc::vec!["t".into()], maslov: alloc::vec![0] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn maslov(&self) -> &[i64] {
        &self.maslov
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Ring descriptor line, e.g. `F2[t1,t2]`.
    pub fn descriptor(&self) -> String {
        let mut s = self.field.name();
        if !self.vars.is_empty() {
            s.push('[');
            s.push_str(&self.vars.join(","));
            s.push(']');
        }
        s
    }

    pub fn zero(&self) -> GroupRingElem {
        GroupRingElem::zero()
    }

    pub fn one(&self) -> GroupRingElem {
        self.scalar(Scalar::ONE)
    }

    pub fn scalar(&self, c: Scalar) -> GroupRingElem {
        self.monomial(alloc::vec![0; self.rank()], c)
    }

    pub fn monomial(&self, exps: Exponents, c: Scalar) -> GroupRingElem {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        GroupRingElem { terms }
    }

    /// `t_i^e`.
    pub fn var(&self, i: usize, e: i32) -> GroupRingElem {
        let mut exps = alloc::vec![0; self.rank()];
        exps[i] = e;
        self.monomial(exps, Scalar::ONE)
    }

    fn check(&self, a: &GroupRingElem) -> Result<()> {
        if a.terms.keys().any(|e| e.len() != self.rank()) {
            return Err(LchError::Format(alloc::format!(
                "exponent vector length mismatch for ring {}",
                self.descriptor()
            )));
        }
        Ok(())
    }

    /// Checked arithmetic entry point; rejects operands from another ring.
    pub fn try_add(&self, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> Result<GroupRingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn add_into(&self, acc: &mut GroupRingElem, b: &GroupRingElem) {
        for (e, &c) in &b.terms {
            self.add_term(acc, e.clone(), c);
        }
    }

    pub fn add_term(&self, acc: &mut GroupRingElem, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match acc.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = a.clone();
        self.add_into(&mut out, b);
        out
    }

    pub fn neg(&self, a: &GroupRingElem) -> GroupRingElem {
        GroupRingElem { terms: a.terms.iter().map(|(e, &c)| (e.clone(), self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (ea, &ca) in &a.terms {
            for (eb, &cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, e, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, a: &GroupRingElem, c: Scalar) -> GroupRingElem {
        if c.is_zero() {
            return GroupRingElem::zero();
        }
        GroupRingElem { terms: a.terms.iter().map(|(e, &x)| (e.clone(), self.field.mul(x, c))).collect() }
    }

    /// Inverse of a unit monomial `c t^v`; `None` for non-monomials.
    pub fn monomial_inverse(&self, a: &GroupRingElem) -> Option<GroupRingElem> {
        let (e, c) = a.as_monomial()?;
        let inv = self.field.inv(c)?;
        Some(self.monomial(e.iter().map(|x| -x).collect(), inv))
    }

    /// Maslov degree `<mu, v>` of a monomial.
    pub fn monomial_degree(&self, exps: &[i32]) -> i64 {
        exps.iter().zip(&self.maslov).map(|(&e, &m)| e as i64 * m).sum()
    }

    /// Substitutes `t_i -> point_i` into an element; coordinates must be
    /// nonzero elements of `target`, whose characteristic must match.
    pub fn evaluate(&self, x: &GroupRingElem, target: &Field, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(target, point)?;
        let mut acc = Scalar::ZERO;
        for (e, &c) in &x.terms {
            let mut v = self.embed_scalar(c, target)?;
            for (&ei, &pi) in e.iter().zip(point) {
                v = target.mul(v, target.pow(pi, ei as i64).unwrap());
            }
            acc = target.add(acc, v);
        }
        Ok(acc)
    }

    pub fn check_point(&self, target: &Field, point: &[Scalar]) -> Result<()> {
        if point.len() != self.rank() {
            return Err(LchError::Format(alloc::format!(
                "point has {} coordinates, ring {} has {} variables",
                point.len(),
                self.descriptor(),
                self.rank()
            )));
        }
        if let Some(i) = point.iter().position(|p| p.is_zero()) {
            return Err(LchError::Domain(alloc::format!(
                "coordinate {} is zero; group elements must map to units",
                self.vars[i]
            )));
        }
        if point.iter().any(|p| p.0 >= target.order()) {
            return Err(LchError::Format(alloc::format!("point coordinate outside {target}")));
        }
        Ok(())
    }

    /// Moves a coefficient into `target`; allowed when the fields agree or this
    /// ring's field is the prime subfield of `target`.
    pub fn embed_scalar(&self, c: Scalar, target: &Field) -> Result<Scalar> {
        if &self.field == target {
            return Ok(c);
        }
        if self.field.is_prime_field() && self.field.characteristic() == target.characteristic() {
            return Ok(c);
        }
        Err(LchError::Format(alloc::format!("cannot map coefficients of {} into {}", self.field, target)))
    }

    /// Renders an element as a sum of monomials, e.g. `1 + t^-1 + 2*t1*t2`.
    pub fn format_elem(&self, x: &GroupRingElem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, &c) in &x.terms {
            parts.push(self.format_monomial(e, c));
        }
        parts.join(" + ")
    }

    /// Monomial factors joined by `*`; empty string for the constant monomial 1.
    pub fn format_monomial(&self, e: &[i32], c: Scalar) -> String {
        let mut factors: Vec<String> = Vec::new();
        if c != Scalar::ONE {
            factors.push(alloc::format!("{}", c.0));
        }
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            let mut f = self.vars[i].clone();
            if ei != 1 {
                let _ = write!(f, "^{ei}");
            }
            factors.push(f);
        }
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> Ring {
        Ring::f2_t()
    }

    #[test]
    fn frobenius_square() {
        let r = f2t();
        let x = r.add(&r.var(0, 1), &r.one());
        let sq = r.mul(&x, &x);
        assert_eq!(sq, r.add(&r.var(0, 2), &r.one()));
    }

    #[test]
    fn unit_law_and_char_two_cancellation() {
        let r = f2t();
        let x = r.add(&r.var(0, -1), &r.var(0, 1));
        assert_eq!(r.mul(&r.one(), &x), x);
        assert!(r.add(&x, &x).is_zero());
    }

    #[test]
    fn mismatched_rank_is_format_error() {
        let r = f2t();
        let r2 = Ring::new(Field::f2(), alloc::vec!["a".into(), "b".into()], alloc::vec![0, 0]).unwrap();
        let y = r2.var(1, 1);
        assert!(matches!(r.try_mul(&r.one(), &y), Err(LchError::Format(_))));
    }

    #[test]
    fn evaluation_examples() {
        let r = f2t();
        let f2 = Field::f2();
        let x = r.add(&r.one(), &r.var(0, 1));
        assert_eq!(r.evaluate(&x, &f2, &[Scalar::ONE]).unwrap(), Scalar::ZERO);
        assert_eq!(r.evaluate(&r.one(), &f2, &[Scalar::ONE]).unwrap(), Scalar::ONE);
        // t^-1 + t^2 at t = 2 over F5: 3 + 4 = 2
        let f5 = Field::new(5).unwrap();
        let r5 = Ring::new(f5.clone(), alloc::vec!["t".into()], alloc::vec![0]).unwrap();
        let y = r5.add(&r5.var(0, -1), &r5.var(0, 2));
        assert_eq!(r5.evaluate(&y, &f5, &[Scalar(2)]).unwrap(), Scalar(2));
        assert!(matches!(r5.evaluate(&y, &f5, &[Scalar(0)]), Err(LchError::Domain(_))));
    }

    #[test]
    fn monomial_grading_is_additive() {
        let r = Ring::new(Field::f2(), alloc::vec!["t1".into(), "t2".into()], alloc::vec![2, -3]).unwrap();
        let a = alloc::vec![1, 4];
        let b = alloc::vec![-2, 1];
        let ab: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(r.monomial_degree(&ab), r.monomial_degree(&a) + r.monomial_degree(&b));
    }
}
