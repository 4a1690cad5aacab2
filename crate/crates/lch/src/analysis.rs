//! Pipelines shared by the CLI and the acceptance suite.

use lch_core::augment::{enumerate_augmentations, AugBudget, Augmentation};
use lch_core::border::{partition_by_action, PushoutSquare};
use lch_core::front::{knot_dga, side_labels, Column, LagrangianDiagram, PlatFront};
use lch_core::linhom::{homology, linearize, Poincare};
use lch_core::{Action, Dga, LchError};

use crate::error::Result;

/// Poincare polynomial of every augmentation, in enumeration order.
pub fn poincare_all(d: &Dga, budget: &AugBudget) -> Result<Vec<(Augmentation, Poincare)>> {
    let mut out = Vec::new();
    for e in enumerate_augmentations(d, budget)? {
        let p = homology(&linearize(d, &e)?);
        out.push((e, p));
    }
    Ok(out)
}

/// Sorted multiset of the printed polynomials.
pub fn poincare_multiset(d: &Dga, budget: &AugBudget) -> Result<Vec<String>> {
    let mut v: Vec<String> = poincare_all(d, budget)?.into_iter().map(|(_, p)| p.to_string()).collect();
    v.sort();
    Ok(v)
}

/// Whether two multisets agree up to one overall scale of multiplicities.
/// Stabilizing a DGA multiplies every augmentation count by the same power
/// of the field order, so this is the invariant form of the multiset.
pub fn same_distribution(a: &[String], b: &[String]) -> bool {
    let count = |v: &[String]| {
        let mut m = std::collections::BTreeMap::new();
        for p in v {
            *m.entry(p.clone()).or_insert(0usize) += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    ca.keys().eq(cb.keys()) && ca.iter().all(|(p, &n)| n * b.len() == cb[p] * a.len())
}

/// Slices that accept a dip: at least two strands and no loop to the left.
pub fn dip_slots(d: &LagrangianDiagram) -> Result<Vec<usize>> {
    let strands = d.strand_counts()?;
    Ok((0..strands.len())
        .filter(|&s| strands[s] >= 2 && !d.columns[..s].iter().any(|c| matches!(c, Column::Loop { .. })))
        .collect())
}

pub struct Dipped {
    pub slot: usize,
    pub diagram: LagrangianDiagram,
    pub dga: Dga,
    pub square: PushoutSquare,
}

/// The square of a single dip at `slot`, split at action 1.
pub fn dipped(f: &PlatFront, slot: usize, at_one: bool) -> Result<Dipped> {
    let diagram = f.resolve()?.dip(slot)?;
    let mut dga = knot_dga(&diagram)?;
    if at_one {
        dga = dga.at_one()?;
    }
    let p = partition_by_action(&dga, &side_labels(&diagram), Action::from_integer(1))?;
    let square = PushoutSquare::from_partition(&dga, &p)?;
    Ok(Dipped { slot, diagram, dga, square })
}

/// Every single dip of a front.
pub fn all_dips(f: &PlatFront, at_one: bool) -> Result<Vec<Dipped>> {
    dip_slots(&f.resolve()?)?.into_iter().map(|s| dipped(f, s, at_one)).collect()
}

/// Crossing values carry over by position: the sum lists the crossings of
/// the first front, then those of the second.
pub fn glue_front_sum(sum: &Dga, d1: &Dga, e1: &Augmentation, d2: &Dga, e2: &Augmentation) -> Result<Augmentation> {
    let crossings =
        |d: &Dga| -> Vec<u32> { (0..d.num_generators() as u32).filter(|&g| d.name(g).starts_with('x')).collect() };
    let (c1, c2, c) = (crossings(d1), crossings(d2), crossings(sum));
    let mut e = Augmentation::zero(sum);
    for (k, &g) in c1.iter().chain(&c2).enumerate() {
        let v = if k < c1.len() { e1.values[g as usize] } else { e2.values[g as usize] };
        e.values[c[k] as usize] = v;
    }
    for (d, e, c) in [(d1, e1, &c1), (d2, e2, &c2)] {
        if (0..d.num_generators()).any(|g| !c.contains(&(g as u32)) && !e.values[g].is_zero()) {
            return Err(LchError::Unsupported("augmentation nonzero off crossings".into()).into());
        }
    }
    Ok(e)
}
