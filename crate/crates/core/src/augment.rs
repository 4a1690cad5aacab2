//! Augmentations over finite fields and good points of group-ring DGAs.
//!
//! Enumeration assigns the degree-0 generators in order and checks each
//! equation `eps(d c) = 0` as soon as its last variable is set, so partial
//! assignments die early.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dga::{Dga, Element, GenId};
use crate::error::{LchError, Result};
use crate::field::{Field, Scalar};

/// Values on every generator; nonzero only in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Augmentation {
    pub values: Vec<Scalar>,
}

impl Augmentation {
    pub fn zero(d: &Dga) -> Self {
        Augmentation { values: alloc::vec![Scalar::ZERO; d.num_generators()] }
    }

    /// `(name, value)` for the nonzero values.
    pub fn support<'a>(&self, d: &'a Dga) -> Vec<(&'a str, Scalar)> {
        self.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, &v)| (d.name(i as GenId), v)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugBudget {
    /// Search nodes (partial assignments) visited across one enumeration.
    pub max_nodes: u64,
}

impl Default for AugBudget {
    fn default() -> Self {
        AugBudget { max_nodes: 50_000_000 }
    }
}

/// `eps(x)` with `eps` extended multiplicatively; `d` must be over a field.
pub fn evaluate(d: &Dga, x: &Element, eps: &[Scalar]) -> Scalar {
    let f = d.field();
    let mut acc = Scalar::ZERO;
    for (w, c) in x.terms() {
        let mut v = Dga::field_coefficient(c);
        for &g in w {
            v = f.mul(v, eps[g as usize]);
            if v.is_zero() {
                break;
            }
        }
        acc = f.add(acc, v);
    }
    acc
}

/// `eps . d = 0` on every generator.
pub fn kills_differential(d: &Dga, eps: &[Scalar]) -> bool {
    (0..d.num_generators()).all(|i| evaluate(d, d.d(i as GenId), eps).is_zero())
}

/// The twisted differential has no constant terms.
pub fn twist_has_no_constants(d: &Dga, eps: &[Scalar]) -> bool {
    match d.twist(eps) {
        Ok(t) => (0..t.num_generators()).all(|i| t.d(i as GenId).constant_term().is_none()),
        Err(_) => false,
    }
}

/// Graded assignment satisfying both the twist criterion and `eps . d = 0`.
pub fn is_augmentation(d: &Dga, eps: &[Scalar]) -> bool {
    if d.check_graded_assignment(eps).is_err() {
        return false;
    }
    let a = kills_differential(d, eps);
    let b = twist_has_no_constants(d, eps);
    debug_assert_eq!(a, b, "augmentation criteria disagree");
    a && b
}

/// One equation `eps(d c) = 0` restricted to words in degree-0 generators,
/// with letters rewritten as variable positions.
struct Equation {
    last: usize,
    terms: Vec<(Scalar, Vec<usize>)>,
}

struct Search<'a> {
    f: &'a Field,
    nvars: usize,
    by_last: Vec<Vec<Equation>>,
    nodes: u64,
    budget: u64,
    vals: Vec<Scalar>,
    out: Vec<Vec<Scalar>>,
    limit: Option<usize>,
}

impl Search<'_> {
    fn holds(&self, eq: &Equation) -> bool {
        let mut acc = Scalar::ZERO;
        for (c, w) in &eq.terms {
            let mut v = *c;
            for &x in w {
                v = self.f.mul(v, self.vals[x]);
            }
            acc = self.f.add(acc, v);
        }
        acc.is_zero()
    }

    fn run(&mut self, k: usize) -> Result<()> {
        if self.limit.is_some_and(|l| self.out.len() >= l) {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(LchError::Budget(alloc::format!("augmentation search exceeded {} nodes", self.budget)));
        }
        if k == self.nvars {
            self.out.push(self.vals.clone());
            return Ok(());
        }
        for v in self.f.elements() {
            self.vals[k] = v;
            if self.by_last[k].iter().all(|eq| self.holds(eq)) {
                self.run(k + 1)?;
            }
        }
        self.vals[k] = Scalar::ZERO;
        Ok(())
    }
}

fn search(d: &Dga, budget: &AugBudget, limit: Option<usize>) -> Result<Vec<Augmentation>> {
    if !d.over_field() {
        return Err(LchError::Domain("augmentations need field coefficients; specialize first".into()));
    }
    let vars: Vec<GenId> = (0..d.num_generators() as GenId).filter(|&g| d.degree(g) == 0).collect();
    let mut pos = alloc::vec![usize::MAX; d.num_generators()];
    for (k, &g) in vars.iter().enumerate() {
        pos[g as usize] = k;
    }
    let f = d.field();
    let mut by_last: Vec<Vec<Equation>> = (0..=vars.len()).map(|_| Vec::new()).collect();
    for c in 0..d.num_generators() as GenId {
        let mut terms = Vec::new();
        for (w, coeff) in d.d(c).terms() {
            if w.iter().all(|&g| pos[g as usize] != usize::MAX) {
                terms.push((Dga::field_coefficient(coeff), w.iter().map(|&g| pos[g as usize]).collect::<Vec<_>>()));
            }
        }
        if terms.is_empty() {
            continue;
        }
        // shorter words first, so cheap constraints fail fast
        terms.sort_by_key(|(_, w)| w.len());
        let last = terms.iter().flat_map(|(_, w)| w.iter().copied()).max();
        match last {
            Some(l) => by_last[l].push(Equation { last: l, terms }),
            None => {
                let s = terms.iter().fold(Scalar::ZERO, |a, (c, _)| f.add(a, *c));
                if !s.is_zero() {
                    return Ok(Vec::new());
                }
            }
        }
    }
    for eqs in &mut by_last {
        eqs.sort_by_key(|e| e.terms.last().map_or(0, |(_, w)| w.len()));
        debug_assert!(eqs.iter().all(|e| e.last < vars.len()));
    }
    let mut s = Search {
        f,
        nvars: vars.len(),
        by_last,
        nodes: 0,
        budget: budget.max_nodes,
        vals: alloc::vec![Scalar::ZERO; vars.len()],
        out: Vec::new(),
        limit,
    };
    s.run(0)?;
    Ok(s.out
        .into_iter()
        .map(|v| {
            let mut values = alloc::vec![Scalar::ZERO; d.num_generators()];
            for (k, &g) in vars.iter().enumerate() {
                values[g as usize] = v[k];
            }
            Augmentation { values }
        })
        .collect())
}

/// Every augmentation of a DGA over a field, in lexicographic order of the
/// degree-0 values.
pub fn enumerate_augmentations(d: &Dga, budget: &AugBudget) -> Result<Vec<Augmentation>> {
    search(d, budget, None)
}

/// Whether any augmentation exists.
pub fn is_good(d: &Dga, budget: &AugBudget) -> Result<bool> {
    Ok(!search(d, budget, Some(1))?.is_empty())
}

/// Points of `(F_q^*)^k` whose specialization admits an augmentation, with
/// the number of augmentations at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPointSet {
    pub field: Field,
    pub vars: Vec<String>,
    pub points: Vec<(Vec<Scalar>, usize)>,
}

impl GoodPointSet {
    pub fn contains(&self, p: &[Scalar]) -> bool {
        self.points.iter().any(|(q, _)| q == p)
    }
}

fn all_points(f: &Field, k: usize) -> Vec<Vec<Scalar>> {
    let mut pts = alloc::vec![Vec::new()];
    for _ in 0..k {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                f.nonzero_elements().map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

pub fn good_points(d: &Dga, field: &Field, budget: &AugBudget) -> Result<GoodPointSet> {
    let k = d.ring().rank();
    let mut points = Vec::new();
    for p in all_points(field, k) {
        let sp = d.specialize(field, &p)?;
        let n = enumerate_augmentations(&sp, budget)?.len();
        if n > 0 {
            points.push((p, n));
        }
    }
    Ok(GoodPointSet { field: field.clone(), vars: d.ring().vars().to_vec(), points })
}

/// Whether `g` is exactly `g1 x g2` (coordinates of `g1` first).
pub fn verify_variety_product(g1: &GoodPointSet, g2: &GoodPointSet, g: &GoodPointSet) -> Result<bool> {
    if g.vars.len() != g1.vars.len() + g2.vars.len() {
        return Err(LchError::Format(alloc::format!(
            "product of {} and {} variables compared with {}",
            g1.vars.len(),
            g2.vars.len(),
            g.vars.len()
        )));
    }
    if g.field != g1.field || g.field != g2.field {
        return Err(LchError::Format("good-point sets over different fields".into()));
    }
    let mut want: Vec<Vec<Scalar>> = Vec::new();
    for (p, _) in &g1.points {
        for (q, _) in &g2.points {
            let mut r = p.clone();
            r.extend_from_slice(q);
            want.push(r);
        }
    }
    want.sort();
    let mut have: Vec<Vec<Scalar>> = g.points.iter().map(|(p, _)| p.clone()).collect();
    have.sort();
    Ok(want == have)
}

/// Minimal polynomial over the prime field of `a`, coefficients low to high.
fn minimal_polynomial(f: &Field, a: Scalar) -> Vec<Scalar> {
    let mut orbit = alloc::vec![a];
    let mut x = f.frobenius(a);
    while x != a {
        orbit.push(x);
        x = f.frobenius(x);
    }
    let mut poly = alloc::vec![Scalar::ONE];
    for r in orbit {
        let mut next = alloc::vec![Scalar::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(c, r));
        }
        poly = next;
    }
    poly
}

fn poly_mul(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = alloc::vec![Scalar::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// For one coefficient variable: the product of the minimal polynomials of
/// all good points found over `F_{p^j}`, `j = 1..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodDivisor {
    /// Coefficients over the prime field, low to high.
    pub poly: Vec<Scalar>,
    /// Whether the last extension added no new factor.
    pub stable: bool,
}

pub fn good_divisor(d: &Dga, max_degree: u32, budget: &AugBudget) -> Result<GoodDivisor> {
    if d.ring().rank() != 1 {
        return Err(LchError::Unsupported("divisor report needs exactly one coefficient variable".into()));
    }
    let p = d.field().characteristic();
    if !d.field().is_prime_field() {
        return Err(LchError::Unsupported("divisor report needs a prime coefficient field".into()));
    }
    let mut factors: Vec<Vec<Scalar>> = Vec::new();
    let mut stable = false;
    for j in 1..=max_degree {
        let q = p.checked_pow(j).filter(|&q| q <= crate::field::MAX_ORDER);
        let Some(q) = q else { break };
        let field = Field::new(q)?;
        let before = factors.len();
        for (pt, _) in good_points(d, &field, budget)?.points {
            let m = minimal_polynomial(&field, pt[0]);
            if !factors.contains(&m) {
                factors.push(m);
            }
        }
        stable = factors.len() == before;
    }
    factors.sort();
    let f = Field::prime(p)?;
    let poly = factors.iter().fold(alloc::vec![Scalar::ONE], |acc, m| poly_mul(&f, &acc, m));
    Ok(GoodDivisor { poly, stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::front::{Event::*, PlatFront};

    #[test]
    fn unknot_augmentations_and_good_points() {
        let d = PlatFront::new(alloc::vec![L(1), R(1)]).dga().unwrap();
        let one = d.at_one().unwrap();
        assert!(is_augmentation(&one, &[Scalar::ZERO]));
        assert_eq!(enumerate_augmentations(&one, &AugBudget::default()).unwrap().len(), 1);
        let f4 = Field::new(4).unwrap();
        let w = d.specialize(&f4, &[Scalar(2)]).unwrap();
        assert!(!is_augmentation(&w, &[Scalar::ZERO]));
        for q in [2, 4] {
            let g = good_points(&d, &Field::new(q).unwrap(), &AugBudget::default()).unwrap();
            assert_eq!(g.points, alloc::vec![(alloc::vec![Scalar::ONE], 1)]);
        }
        let div = good_divisor(&d, 3, &AugBudget::default()).unwrap();
        assert_eq!(div.poly, alloc::vec![Scalar::ONE, Scalar::ONE]);
        assert!(div.stable);
    }

    #[test]
    fn trivial_and_forced_cases() {
        let empty = Dga::new(Ring::f2(), 0).unwrap();
        assert!(is_augmentation(&empty, &[]));
        assert_eq!(enumerate_augmentations(&empty, &AugBudget::default()).unwrap().len(), 1);
        let d = Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("a", 1)], &[("a", "x")]).unwrap();
        let augs = enumerate_augmentations(&d, &AugBudget::default()).unwrap();
        assert_eq!(augs, alloc::vec![Augmentation::zero(&d)]);
        let r = Ring::new(Field::f2(), alloc::vec!["t".into()], alloc::vec![0]).unwrap();
        let g = good_points(&Dga::new(r, 0).unwrap(), &Field::new(4).unwrap(), &AugBudget::default()).unwrap();
        assert_eq!(g.points.len(), 3);
    }

    #[test]
    fn trefoil_has_five_augmentations() {
        let d = PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap().at_one().unwrap();
        let augs = enumerate_augmentations(&d, &AugBudget::default()).unwrap();
        assert_eq!(augs.len(), 5);
        // brute force over all 2^3 assignments of the degree-0 crossings
        let zeros: Vec<GenId> = (0..d.num_generators() as GenId).filter(|&g| d.degree(g) == 0).collect();
        assert_eq!(zeros.len(), 3);
        let mut count = 0;
        for mask in 0..8u32 {
            let mut eps = alloc::vec![Scalar::ZERO; d.num_generators()];
            for (k, &g) in zeros.iter().enumerate() {
                eps[g as usize] = Scalar((mask >> k) & 1);
            }
            if kills_differential(&d, &eps) {
                count += 1;
            }
        }
        assert_eq!(count, 5);
        let g = good_points(
            &PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap(),
            &Field::f2(),
            &AugBudget::default(),
        )
        .unwrap();
        assert_eq!(g.points, alloc::vec![(alloc::vec![Scalar::ONE], 5)]);
    }

    #[test]
    fn budget_is_reported() {
        let d = PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap().at_one().unwrap();
        assert!(matches!(enumerate_augmentations(&d, &AugBudget { max_nodes: 2 }), Err(LchError::Budget(_))));
    }

    #[test]
    fn product_sets() {
        let f4 = Field::new(4).unwrap();
        let g1 = GoodPointSet {
            field: f4.clone(),
            vars: alloc::vec!["s".into()],
            points: alloc::vec![(alloc::vec![Scalar(1)], 1), (alloc::vec![Scalar(2)], 1)],
        };
        let g2 = GoodPointSet {
            field: f4.clone(),
            vars: alloc::vec!["t".into()],
            points: alloc::vec![(alloc::vec![Scalar(1)], 2)],
        };
        let g = GoodPointSet {
            field: f4.clone(),
            vars: alloc::vec!["s".into(), "t".into()],
            points: alloc::vec![(alloc::vec![Scalar(1), Scalar(1)], 2), (alloc::vec![Scalar(2), Scalar(1)], 2)],
        };
        assert!(verify_variety_product(&g1, &g2, &g).unwrap());
        let empty = GoodPointSet { points: Vec::new(), ..g2.clone() };
        let none = GoodPointSet { points: Vec::new(), ..g.clone() };
        assert!(verify_variety_product(&g1, &empty, &none).unwrap());
        assert!(verify_variety_product(&g1, &g2, &g1).is_err());
    }
}
