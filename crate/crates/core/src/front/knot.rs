//! Assembling the knot DGA from disks, with actions read off the disk
//! filtration.
//!
//! Resolved front crossings all sit at zero height difference in the
//! canonical embedding, so actions are not geometric. Instead each chord gets
//! `1 + max` over its disks of the summed actions of the negative corners.
//! Second-wall dip chords form a separate tier scaled by `1 / (2 max)` so that they lie
//! strictly below every other chord.

use alloc::vec::Vec;

use super::diagram::LagrangianDiagram;
use super::disks::{enumerate_disks, Disk, DiskBudget};
use super::PlatFront;
use crate::coeff::Ring;
use crate::dga::{Dga, Element, GenId};
use crate::error::{LchError, Result};
use crate::Action;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DgaOptions {
    pub budget: DiskBudget,
}

/// Side index of every chord: `0` left of the first cut, `1` after it, ...
pub type Side = usize;

pub fn side_labels(d: &LagrangianDiagram) -> Vec<Side> {
    d.chord_columns().iter().map(|&c| d.side_of_column(c)).collect()
}

fn tier(
    p: usize,
    by_pos: &[Vec<&Disk>],
    allowed: &dyn Fn(usize) -> bool,
    memo: &mut Vec<Option<Action>>,
    on_stack: &mut Vec<bool>,
    names: &dyn Fn(usize) -> alloc::string::String,
) -> Result<Action> {
    if let Some(a) = memo[p] {
        return Ok(a);
    }
    if on_stack[p] {
        return Err(LchError::Validation(alloc::format!("disk filtration has a cycle through `{}`", names(p))));
    }
    on_stack[p] = true;
    let mut best = Action::from_integer(0);
    for k in &by_pos[p] {
        let mut sum = Action::from_integer(0);
        for &n in &k.word {
            if !allowed(n) {
                return Err(LchError::Validation(alloc::format!(
                    "short dip chord `{}` has a disk with corner `{}` outside the short tier",
                    names(p),
                    names(n)
                )));
            }
            sum += tier(n, by_pos, allowed, memo, on_stack, names)?;
        }
        if sum > best {
            best = sum;
        }
    }
    on_stack[p] = false;
    let a = best + Action::from_integer(1);
    memo[p] = Some(a);
    Ok(a)
}

/// Actions from the disk filtration; errors if the positive-to-negative
/// corner relation has a cycle.
pub fn chord_actions(d: &LagrangianDiagram, disks: &[Disk]) -> Result<Vec<Action>> {
    let n = d.num_chords();
    let mut by_pos: Vec<Vec<&Disk>> = alloc::vec![Vec::new(); n];
    for k in disks {
        by_pos[k.positive].push(k);
    }
    let names = |i: usize| d.chords[i].name.clone();
    let is_short = |i: usize| d.chords[i].short;
    let mut memo = alloc::vec![None; n];
    let mut stack = alloc::vec![false; n];
    for p in 0..n {
        if is_short(p) {
            tier(p, &by_pos, &is_short, &mut memo, &mut stack, &names)?;
        }
    }
    let top = memo.iter().flatten().copied().max().unwrap_or(Action::from_integer(1));
    let delta = Action::new(1, 2) / top;
    for a in memo.iter_mut().flatten() {
        *a *= delta;
    }
    let any = |_: usize| true;
    let mut out = Vec::with_capacity(n);
    for p in 0..n {
        out.push(tier(p, &by_pos, &any, &mut memo, &mut stack, &names)?);
    }
    Ok(out)
}

/// Knot DGA over `F2[t^±1]` (`|t| = 0`, grading mod `2r`).
pub fn knot_dga_with(d: &LagrangianDiagram, opts: &DgaOptions) -> Result<Dga> {
    let tr = d.validate()?;
    let disks = enumerate_disks(d, &opts.budget)?;
    let actions = chord_actions(d, &disks)?;
    let degrees = d.degrees(&tr);
    let ring = Ring::f2_t();
    let mut dga = Dga::new(ring.clone(), tr.modulus())?;
    for (i, ch) in d.chords.iter().enumerate() {
        dga.add_generator(&ch.name, degrees[i], Some(actions[i]))?;
    }
    let mut diffs = alloc::vec![Element::zero(); d.num_chords()];
    for k in &disks {
        let word = k.word.iter().map(|&g| g as GenId).collect();
        diffs[k.positive].add_term(word, &ring.var(0, k.t), &ring);
    }
    for (i, x) in diffs.into_iter().enumerate() {
        dga.set_differential(i as GenId, x)?;
    }
    Ok(dga)
}

pub fn knot_dga(d: &LagrangianDiagram) -> Result<Dga> {
    knot_dga_with(d, &DgaOptions::default())
}

impl PlatFront {
    /// The DGA of the resolved front.
    pub fn dga(&self) -> Result<Dga> {
        knot_dga(&self.resolve()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::tests::{trefoil, unknot};

    #[test]
    fn unknot_dga() {
        let d = unknot().dga().unwrap();
        assert_eq!(d.num_generators(), 1);
        assert_eq!(d.degree(0), 1);
        assert_eq!(d.d(0), &d.parse_element("1 + t").unwrap());
        assert!(d.check().ok());
    }

    #[test]
    fn trefoil_dga_checks() {
        let d = trefoil().dga().unwrap();
        assert_eq!(d.num_generators(), 5);
        assert!(d.check().ok(), "{:?}", d.check());
        for c in ["c1", "c2"] {
            let dc = d.d(d.lookup(c).unwrap());
            assert!(dc.constant_term().is_some());
        }
    }

    #[test]
    fn dipped_unknot_matches_hand_computation() {
        let dd = unknot().resolve().unwrap().dip(1).unwrap();
        let d = knot_dga(&dd).unwrap();
        assert!(d.check().ok(), "{:?}", d.check());
        let b = d.lookup("b1_1_2").unwrap();
        let a = d.lookup("a1_1_2").unwrap();
        let c = d.lookup("c1").unwrap();
        assert_eq!(d.d(b), &d.parse_element("t + a1_1_2").unwrap());
        assert!(d.d(a).is_zero());
        assert_eq!(d.d(c), &d.parse_element("1 + a1_1_2").unwrap());
        let acts: Vec<_> = d.generators().iter().map(|g| g.action.unwrap()).collect();
        assert!(acts[a as usize] < Action::from_integer(1));
        assert_eq!(side_labels(&dd), alloc::vec![1, 0, 1]);
    }
}
