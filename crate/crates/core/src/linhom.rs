//! Linearized homology of augmented DGAs and the Mayer-Vietoris sequence of
//! a pushout square.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::augment::{is_augmentation, Augmentation};
use crate::border::PushoutSquare;
use crate::dga::{Dga, GenId};
use crate::error::{LchError, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{span_rank, Matrix};

/// Word-length-one part of the twisted differential. Entry `(i, j)` is the
/// coefficient of generator `i` in `d1(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedComplex {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub modulus: u32,
    pub field: Field,
    pub matrix: Matrix,
}

impl LinearizedComplex {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn norm(&self, k: i64) -> i64 {
        if self.modulus == 0 {
            k
        } else {
            k.rem_euclid(self.modulus as i64)
        }
    }

    /// Indices of the generators in degree `k`.
    pub fn basis_in(&self, k: i64) -> Vec<usize> {
        let k = self.norm(k);
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// The block `C_k -> C_{k-1}` with rows and columns in generator order.
    pub fn block(&self, k: i64) -> Matrix {
        let (src, tgt) = (self.basis_in(k), self.basis_in(k - 1));
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (c, &j) in src.iter().enumerate() {
            for (r, &i) in tgt.iter().enumerate() {
                m.set(r, c, self.matrix.get(i, j));
            }
        }
        m
    }

    fn embed(&self, idx: &[usize], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = alloc::vec![Scalar::ZERO; self.dim()];
        for (&i, &x) in idx.iter().zip(v) {
            out[i] = x;
        }
        out
    }

    /// Cycle basis in degree `k`, as vectors on all generators.
    pub fn cycles(&self, k: i64) -> Vec<Vec<Scalar>> {
        let src = self.basis_in(k);
        self.block(k).kernel(&self.field).iter().map(|v| self.embed(&src, v)).collect()
    }

    /// Boundaries in degree `k` (images of the degree `k + 1` generators).
    pub fn boundaries(&self, k: i64) -> Vec<Vec<Scalar>> {
        self.basis_in(k + 1).iter().map(|&j| self.matrix.column(j)).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v, &self.field)
    }

    /// Degrees where homology can be nonzero, plus one on each side.
    fn degree_window(&self) -> Vec<i64> {
        if self.modulus > 0 {
            return (0..self.modulus as i64).collect();
        }
        match (self.degrees.iter().min(), self.degrees.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo - 1..=hi + 1).collect(),
            _ => Vec::new(),
        }
    }
}

/// Linear part of `d^eps`; fails unless `eps` is an augmentation.
pub fn linearize(d: &Dga, eps: &Augmentation) -> Result<LinearizedComplex> {
    if !is_augmentation(d, &eps.values) {
        return Err(LchError::Domain("not an augmentation".into()));
    }
    let tw = d.twist(&eps.values)?;
    let n = d.num_generators();
    let mut matrix = Matrix::zeros(n, n);
    for j in 0..n {
        for (w, c) in tw.d(j as GenId).word_length_part(1).terms() {
            matrix.set(w[0] as usize, j, Dga::field_coefficient(c));
        }
    }
    let field = d.field().clone();
    if !matrix.mul(&matrix, &field).is_zero() {
        return Err(LchError::Validation("linearized differential does not square to zero".into()));
    }
    Ok(LinearizedComplex {
        names: d.generators().iter().map(|g| g.name.clone()).collect(),
        degrees: d.generators().iter().map(|g| g.degree).collect(),
        modulus: d.modulus(),
        field,
        matrix,
    })
}

/// Finitely supported Laurent polynomial in `t`, exponents reduced mod
/// `modulus` when it is positive. Poincare polynomials have nonnegative
/// coefficients; signed ones arise in the connect-sum identities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poincare {
    pub modulus: u32,
    pub terms: BTreeMap<i64, i64>,
}

impl Poincare {
    pub fn new(modulus: u32) -> Self {
        Poincare { modulus, terms: BTreeMap::new() }
    }

    pub fn monomial(modulus: u32, k: i64, c: i64) -> Self {
        let mut p = Poincare::new(modulus);
        p.add_term(k, c);
        p
    }

    fn norm(&self, k: i64) -> i64 {
        if self.modulus == 0 {
            k
        } else {
            k.rem_euclid(self.modulus as i64)
        }
    }

    pub fn add_term(&mut self, k: i64, c: i64) {
        let k = self.norm(k);
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.terms.get(&self.norm(k)).copied().unwrap_or(0)
    }

    pub fn plus(&self, other: &Poincare) -> Poincare {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Same polynomial read with grading modulus `m`.
    pub fn reduce(&self, m: u32) -> Poincare {
        let mut out = Poincare::new(m);
        for (&k, &c) in &self.terms {
            out.add_term(k, c);
        }
        out
    }

    /// `sum (-1)^k c_k`; undefined for odd moduli.
    pub fn euler(&self) -> Option<i64> {
        if self.modulus % 2 == 1 {
            return None;
        }
        Some(self.terms.iter().map(|(&k, &c)| if k.rem_euclid(2) == 0 { c } else { -c }).sum())
    }

    /// Parses the printed form, e.g. `t^-2 + 2 + t` or `2t^3 - t`.
    pub fn parse(s: &str, modulus: u32) -> Result<Poincare> {
        let mut p = Poincare::new(modulus);
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.as_str();
        if s == "0" {
            return Ok(p);
        }
        let bad = || LchError::Format(alloc::format!("cannot parse polynomial `{s}`"));
        // split at signs that do not follow `^`
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for raw in terms {
            let (sign, term) = match raw.as_bytes().first() {
                Some(b'-') => (-1, &raw[1..]),
                Some(b'+') => (1, &raw[1..]),
                _ => (1, raw),
            };
            let (coef, k) = match term.find('t') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some(i) => {
                    let c =
                        if i == 0 { 1 } else { term[..i].trim_end_matches('*').parse::<i64>().map_err(|_| bad())? };
                    let e = &term[i + 1..];
                    let k = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            p.add_term(k, sign * coef);
        }
        Ok(p)
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, &c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `sum_k dim LCH_k t^k`.
pub fn homology(c: &LinearizedComplex) -> Poincare {
    let mut p = Poincare::new(c.modulus);
    for k in c.degree_window() {
        let n = c.basis_in(k).len();
        if n == 0 {
            continue;
        }
        let dim = n - c.block(k).rank(&c.field) - c.block(k + 1).rank(&c.field);
        if dim > 0 {
            p.add_term(k, dim as i64);
        }
    }
    p
}

/// `sum_c (-1)^{|c|}` over generators; `None` for odd moduli.
pub fn generator_euler(d: &Dga) -> Option<i64> {
    if d.modulus() % 2 == 1 {
        return None;
    }
    Some(d.generators().iter().map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 }).sum())
}

/// Restriction of an augmentation of `a` to a sub-DGA by names (also
/// re-indexes it for a DGA with the same generators in another order).
pub fn restrict_augmentation(a: &Dga, eps: &Augmentation, sub: &Dga) -> Result<Augmentation> {
    let mut values = Vec::with_capacity(sub.num_generators());
    for g in sub.generators() {
        values.push(eps.values[a.lookup(&g.name)? as usize]);
    }
    Ok(Augmentation { values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MvTerm {
    /// `H(A3)`
    Boundary,
    /// `H(A1) + H(A2)`
    Sides,
    /// `H(A)`
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvNode {
    pub degree: i64,
    pub term: MvTerm,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
}

impl MvNode {
    pub fn exact(&self) -> bool {
        self.rank_in + self.rank_out == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvReport {
    /// Nodes in sequence order, from the highest degree down.
    pub nodes: Vec<MvNode>,
    /// Rank of the connecting map out of `H_k(A)`, per degree.
    pub connecting: Vec<(i64, usize)>,
}

impl MvReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact())
    }
}

/// Rank of the map induced on degree-`k` homology by `phi: X -> Y`.
fn induced_rank(images: &[Vec<Scalar>], y: &LinearizedComplex, k: i64) -> usize {
    let b = y.boundaries(k);
    let mut all = images.to_vec();
    all.extend(b.iter().cloned());
    span_rank(y.dim(), &all, &y.field) - span_rank(y.dim(), &b, &y.field)
}

fn homology_dim(c: &LinearizedComplex, k: i64) -> usize {
    c.cycles(k).len() - span_rank(c.dim(), &c.boundaries(k), &c.field)
}

/// The long exact sequence of `0 -> C3 -> C1 + C2 -> C -> 0`, with
/// `x -> (x, -x)` and `(x, y) -> x + y`, and the connecting map built by
/// lifting, differentiating and pulling back.
pub fn mayer_vietoris(sq: &PushoutSquare, eps: &Augmentation) -> Result<MvReport> {
    let a = &sq.a;
    let pieces = [&sq.a3, &sq.a1, &sq.a2];
    let mut cx = Vec::new();
    for p in pieces {
        let e = restrict_augmentation(a, eps, p)?;
        if !is_augmentation(p, &e.values) {
            return Err(LchError::Domain(alloc::format!(
                "restriction to a piece with {} generators is not an augmentation",
                p.num_generators()
            )));
        }
        cx.push(linearize(p, &e)?);
    }
    let c = linearize(a, eps)?;
    let (c3, c1, c2) = (&cx[0], &cx[1], &cx[2]);
    let f = c.field.clone();
    let (n1, n2) = (c1.dim(), c2.dim());
    let id = |x: &Dga, name: &str| x.lookup(name).map(|g| g as usize);
    // index maps
    let mut to1 = Vec::new();
    let mut to2 = Vec::new();
    for g in sq.a3.generators() {
        to1.push(id(&sq.a1, &g.name)?);
        to2.push(id(&sq.a2, &g.name)?);
    }
    let mut from1 = Vec::new();
    for g in sq.a1.generators() {
        from1.push(id(a, &g.name)?);
    }
    let mut from2 = Vec::new();
    for g in sq.a2.generators() {
        from2.push(id(a, &g.name)?);
    }
    // the sides complex C1 + C2
    let mut side_m = Matrix::zeros(n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            side_m.set(i, j, c1.matrix.get(i, j));
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            side_m.set(n1 + i, n1 + j, c2.matrix.get(i, j));
        }
    }
    let mut side_names = c1.names.clone();
    side_names.extend(c2.names.iter().cloned());
    let mut side_deg = c1.degrees.clone();
    side_deg.extend(c2.degrees.iter().copied());
    let cs = LinearizedComplex {
        names: side_names,
        degrees: side_deg,
        modulus: c.modulus,
        field: f.clone(),
        matrix: side_m,
    };
    let map_f = |v: &[Scalar]| {
        let mut out = alloc::vec![Scalar::ZERO; n1 + n2];
        for (k, &x) in v.iter().enumerate() {
            out[to1[k]] = f.add(out[to1[k]], x);
            out[n1 + to2[k]] = f.sub(out[n1 + to2[k]], x);
        }
        out
    };
    let map_g = |v: &[Scalar]| {
        let mut out = alloc::vec![Scalar::ZERO; c.dim()];
        for (i, &x) in v.iter().enumerate() {
            let j = if i < n1 { from1[i] } else { from2[i - n1] };
            out[j] = f.add(out[j], x);
        }
        out
    };
    let in_a1: Vec<Option<usize>> = (0..c.dim()).map(|j| from1.iter().position(|&x| x == j)).collect();
    let in_a2: Vec<Option<usize>> = (0..c.dim()).map(|j| from2.iter().position(|&x| x == j)).collect();
    let lift = |v: &[Scalar]| {
        let mut out = alloc::vec![Scalar::ZERO; n1 + n2];
        for (j, &x) in v.iter().enumerate() {
            match (in_a1[j], in_a2[j]) {
                (Some(i), _) => out[i] = x,
                (None, Some(i)) => out[n1 + i] = x,
                (None, None) => unreachable!("pushout generator outside both sides"),
            }
        }
        out
    };
    let pull_back = |w: &[Scalar]| -> Result<Vec<Scalar>> {
        let u: Vec<Scalar> = to1.iter().map(|&i| w[i]).collect();
        if map_f(&u) != w {
            return Err(LchError::Validation("connecting map: boundary of the lift is not in the image of A3".into()));
        }
        Ok(u)
    };
    let degrees: Vec<i64> = {
        let mut ks: Vec<i64> = c.degree_window();
        for x in [c3, c1, c2] {
            for k in x.degree_window() {
                if !ks.contains(&k) {
                    ks.push(k);
                }
            }
        }
        ks.sort_unstable();
        ks.reverse();
        ks
    };
    let norm = |k: i64| if c.modulus == 0 { k } else { k.rem_euclid(c.modulus as i64) };
    let rank_f = |k: i64| induced_rank(&c3.cycles(k).iter().map(|z| map_f(z)).collect::<Vec<_>>(), &cs, k);
    let rank_g = |k: i64| induced_rank(&cs.cycles(k).iter().map(|z| map_g(z)).collect::<Vec<_>>(), &c, k);
    let rank_delta = |k: i64| -> Result<usize> {
        let mut imgs = Vec::new();
        for z in c.cycles(k) {
            let w = cs.apply(&lift(&z));
            imgs.push(pull_back(&w)?);
        }
        Ok(induced_rank(&imgs, c3, k - 1))
    };
    let mut nodes = Vec::new();
    let mut connecting = Vec::new();
    for &k in &degrees {
        let (rf, rg, rd, rd_in) = (rank_f(k), rank_g(k), rank_delta(k)?, rank_delta(norm(k + 1))?);
        connecting.push((k, rd));
        nodes.push(MvNode {
            degree: k,
            term: MvTerm::Boundary,
            dim: homology_dim(c3, k),
            rank_in: rd_in,
            rank_out: rf,
        });
        nodes.push(MvNode { degree: k, term: MvTerm::Sides, dim: homology_dim(&cs, k), rank_in: rf, rank_out: rg });
        nodes.push(MvNode { degree: k, term: MvTerm::Total, dim: homology_dim(&c, k), rank_in: rg, rank_out: rd });
    }
    Ok(MvReport { nodes, connecting })
}

/// Which connect-sum identity a triple of Poincare polynomials satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CsumBranch {
    /// `P = P1 + P2 - t^n`
    MinusTN,
    /// `P = P1 + P2 + t^(n-1)`
    PlusTNm1,
    Neither,
}

impl CsumBranch {
    pub fn label(self) -> &'static str {
        match self {
            CsumBranch::MinusTN => "minus_t_n",
            CsumBranch::PlusTNm1 => "plus_t_nm1",
            CsumBranch::Neither => "neither",
        }
    }
}

pub fn csum_poincare_check(p1: &Poincare, p2: &Poincare, p: &Poincare, n: i64) -> CsumBranch {
    let m = p.modulus;
    let sum = p1.reduce(m).plus(&p2.reduce(m));
    if sum.plus(&Poincare::monomial(m, n, -1)) == *p {
        CsumBranch::MinusTN
    } else if sum.plus(&Poincare::monomial(m, n - 1, 1)) == *p {
        CsumBranch::PlusTNm1
    } else {
        CsumBranch::Neither
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{enumerate_augmentations, AugBudget};
    use crate::border::{partition_by_action, PushoutSquare};
    use crate::coeff::Ring;
    use crate::front::{knot_dga, side_labels, Event::*, PlatFront};
    use alloc::string::ToString;

    fn example_l(m: i64) -> Dga {
        Dga::from_spec(
            Ring::f2(),
            0,
            &[("b", 1 + m), ("a", m), ("y", m), ("x", m - 1), ("z", m - 1)],
            &[("a", "z + x")],
        )
        .unwrap()
    }

    fn example_l_prime(m: i64) -> Dga {
        Dga::from_spec(Ring::f2(), 0, &[("b", 1 + m), ("a", m), ("y", m), ("x", m - 1), ("z'", 1 - m)], &[("a", "x")])
            .unwrap()
    }

    #[test]
    fn example_complexes() {
        let d = example_l(3);
        let c = linearize(&d, &Augmentation::zero(&d)).unwrap();
        let a = d.lookup("a").unwrap() as usize;
        for j in 0..5 {
            let col = c.matrix.column(j);
            let nz: Vec<usize> = (0..5).filter(|&i| !col[i].is_zero()).collect();
            if j == a {
                assert_eq!(nz, alloc::vec![d.lookup("x").unwrap() as usize, d.lookup("z").unwrap() as usize]);
            } else {
                assert!(nz.is_empty());
            }
        }
        let p = homology(&c);
        assert_eq!(p.to_string(), "t^2 + t^3 + t^4");
        let dp = example_l_prime(3);
        let pp = homology(&linearize(&dp, &Augmentation::zero(&dp)).unwrap());
        assert_eq!(pp.to_string(), "t^-2 + t^3 + t^4");
        assert_eq!(pp.coeff(-2) - p.coeff(-2), 1);
    }

    #[test]
    fn unknot_and_trefoil_homology() {
        let u = PlatFront::new(alloc::vec![L(1), R(1)]).dga().unwrap().at_one().unwrap();
        assert_eq!(homology(&linearize(&u, &Augmentation::zero(&u)).unwrap()).to_string(), "t");
        let t = PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap().at_one().unwrap();
        for e in enumerate_augmentations(&t, &AugBudget::default()).unwrap() {
            let c = linearize(&t, &e).unwrap();
            let p = homology(&c);
            assert_eq!(p.to_string(), "2 + t");
            assert_eq!(p.euler(), generator_euler(&t));
        }
    }

    #[test]
    fn poincare_printing_round_trips() {
        for s in ["t^-2 + 2 + t", "0", "2t^3 - t", "-1 + t^-1"] {
            let p = Poincare::parse(s, 0).unwrap();
            let again = Poincare::parse(&p.to_string(), 0).unwrap();
            assert_eq!(p, again, "{s}");
        }
        assert_eq!(Poincare::parse("t^-2 + 2 + t", 0).unwrap().to_string(), "t^-2 + 2 + t");
        assert!(Poincare::parse("t^", 0).is_err());
    }

    #[test]
    fn mayer_vietoris_on_dipped_unknot_and_trivial_square() {
        let dd = PlatFront::new(alloc::vec![L(1), R(1)]).resolve().unwrap().dip(1).unwrap();
        let d = knot_dga(&dd).unwrap().at_one().unwrap();
        let p = partition_by_action(&d, &side_labels(&dd), crate::Action::from_integer(1)).unwrap();
        let sq = PushoutSquare::from_partition(&d, &p).unwrap();
        for e in enumerate_augmentations(&d, &AugBudget::default()).unwrap() {
            let e = restrict_augmentation(&d, &e, &sq.a).unwrap();
            let r = mayer_vietoris(&sq, &e).unwrap();
            assert!(r.exact(), "{r:?}");
        }
        let l = example_l(3);
        let sq = crate::border::pushout(&l, &l, &l).unwrap();
        let r = mayer_vietoris(&sq, &Augmentation::zero(&l)).unwrap();
        assert!(r.exact());
        assert!(r.connecting.iter().all(|&(_, k)| k == 0));
    }

    #[test]
    fn csum_branches() {
        let t = Poincare::parse("t", 0).unwrap();
        assert_eq!(csum_poincare_check(&t, &t, &t, 1), CsumBranch::MinusTN);
        let p = Poincare::parse("2t + t^2", 0).unwrap();
        assert_eq!(csum_poincare_check(&t, &t, &p, 3), CsumBranch::PlusTNm1);
        let q = Poincare::parse("5 + t^7", 0).unwrap();
        assert_eq!(csum_poincare_check(&t, &t, &q, 3), CsumBranch::Neither);
    }
}
