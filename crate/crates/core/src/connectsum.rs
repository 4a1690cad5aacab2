//! Abstract cusp connected sum of two DGAs in ambient dimension `n >= 2`:
//! both generator sets plus one chord `h` of degree `n - 1` with `d h = 0`,
//! over the tensor product of the coefficient rings.

use alloc::string::String;
use alloc::vec::Vec;

use crate::augment::{enumerate_augmentations, is_augmentation, AugBudget, Augmentation};
use crate::coeff::{GroupRingElem, Ring};
use crate::dga::{Dga, Element, GenId};
use crate::error::{LchError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectSum {
    pub dga: Dga,
    /// Id in `dga` of each generator of the first summand.
    pub left: Vec<GenId>,
    pub right: Vec<GenId>,
    pub h: GenId,
    pub n: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn fresh(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut name = String::from(base);
    while taken(&name) {
        name.push('\'');
    }
    name
}

fn shift_coeff(c: &GroupRingElem, offset: usize, ring: &Ring) -> GroupRingElem {
    let mut out = ring.zero();
    for (e, s) in c.terms() {
        let mut exps = alloc::vec![0; ring.rank()];
        exps[offset..offset + e.len()].copy_from_slice(e);
        ring.add_term(&mut out, exps, s);
    }
    out
}

fn carry(x: &Element, ids: &[GenId], offset: usize, ring: &Ring) -> Element {
    Element::from_terms(
        ring,
        x.terms().map(|(w, c)| (w.iter().map(|&g| ids[g as usize]).collect(), shift_coeff(c, offset, ring))),
    )
}

/// Builds the connect sum. Clashing generator names get suffixes `_1`, `_2`;
/// clashing ring variables get suffixes `1`, `2`. `corrections` adds
/// `h`-divisible terms (every word must contain `h`) to the differentials of
/// the named result generators.
pub fn abstract_connect_sum(a1: &Dga, a2: &Dga, n: u32, corrections: &[(String, String)]) -> Result<ConnectSum> {
    if n < 2 {
        return Err(LchError::Unsupported(
            "abstract connect sum needs n >= 2; knots are summed on fronts instead".into(),
        ));
    }
    if a1.field() != a2.field() {
        return Err(LchError::Format(alloc::format!("summands over {} and {}", a1.field(), a2.field())));
    }
    let (r1, r2) = (a1.ring(), a2.ring());
    let mut vars = Vec::new();
    for (r, other, tag) in [(r1, r2, '1'), (r2, r1, '2')] {
        for v in r.vars() {
            let mut name = v.clone();
            if other.var_index(v).is_some() {
                name.push(tag);
            }
            vars.push(name);
        }
    }
    let mut maslov = r1.maslov().to_vec();
    maslov.extend_from_slice(r2.maslov());
    let ring = Ring::new(a1.field().clone(), vars, maslov)?;
    let mut d = Dga::new(ring.clone(), gcd(a1.modulus(), a2.modulus()))?;
    let mut ids = [Vec::new(), Vec::new()];
    for (k, (a, other)) in [(a1, a2), (a2, a1)].into_iter().enumerate() {
        for g in a.generators() {
            let mut name = g.name.clone();
            if other.id(&name).is_some() {
                name = alloc::format!("{name}_{}", k + 1);
            }
            ids[k].push(d.add_generator(&name, g.degree, None)?);
        }
    }
    let h_name = fresh("h", &|s| d.id(s).is_some() || ring.var_index(s).is_some());
    let h = d.add_generator(&h_name, n as i64 - 1, None)?;
    let offsets = [0, r1.rank()];
    for (k, a) in [a1, a2].into_iter().enumerate() {
        for i in 0..a.num_generators() {
            let x = carry(a.d(i as GenId), &ids[k], offsets[k], &ring);
            d.set_differential(ids[k][i], x)?;
        }
    }
    for (name, expr) in corrections {
        let g = d.lookup(name)?;
        if g == h {
            return Err(LchError::Validation("d h = 0 cannot be corrected".into()));
        }
        let x = d.parse_element(expr)?;
        if let Some(w) = x.words().find(|w| !w.contains(&h)) {
            return Err(LchError::Validation(alloc::format!(
                "correction for `{name}` has the word `{}` not divisible by {h_name}",
                d.format_word(w)
            )));
        }
        let mut dx = d.d(g).clone();
        dx.add_assign(&x, &ring);
        d.set_differential(g, dx)?;
    }
    let rep = d.check();
    if !rep.ok() {
        let v = &rep.violations[0];
        return Err(LchError::Validation(alloc::format!(
            "connect sum fails {:?} at `{}`: {}",
            v.kind,
            v.generator,
            d.format_element(&v.residual)
        )));
    }
    let [left, right] = ids;
    Ok(ConnectSum { dga: d, left, right, h, n })
}

/// The correspondence `eps <-> (eps1, eps2)`, checked both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugBijection {
    pub left: usize,
    pub right: usize,
    pub sum: usize,
    /// Every glued pair is an augmentation of the sum, every augmentation of
    /// the sum vanishes on `h` and restricts to a pair, and the maps are
    /// mutually inverse.
    pub bijective: bool,
}

/// Augmentations of `eps1 + eps2` with `eps(h) = 0`; all DGAs over a field.
pub fn csum_aug_bijection(cs: &ConnectSum, a1: &Dga, a2: &Dga, budget: &AugBudget) -> Result<AugBijection> {
    let e1 = enumerate_augmentations(a1, budget)?;
    let e2 = enumerate_augmentations(a2, budget)?;
    let mut sum = enumerate_augmentations(&cs.dga, budget)?;
    sum.sort();
    let mut glued = Vec::with_capacity(e1.len() * e2.len());
    let mut ok = true;
    for x in &e1 {
        for y in &e2 {
            let mut e = Augmentation::zero(&cs.dga);
            for (i, &g) in cs.left.iter().enumerate() {
                e.values[g as usize] = x.values[i];
            }
            for (i, &g) in cs.right.iter().enumerate() {
                e.values[g as usize] = y.values[i];
            }
            ok &= is_augmentation(&cs.dga, &e.values);
            glued.push(e);
        }
    }
    glued.sort();
    for e in &sum {
        ok &= e.values[cs.h as usize].is_zero();
        let x = Augmentation { values: cs.left.iter().map(|&g| e.values[g as usize]).collect() };
        let y = Augmentation { values: cs.right.iter().map(|&g| e.values[g as usize]).collect() };
        ok &= e1.contains(&x) && e2.contains(&y);
    }
    ok &= glued == sum;
    Ok(AugBijection { left: e1.len(), right: e2.len(), sum: sum.len(), bijective: ok })
}
