//! Boundary-walk disk enumeration on resolved diagrams.
//!
//! A disk is swept left to right as a pair of boundary paths `(l, u)`,
//! lower below upper. It opens at a turn or at the E quadrant of a crossing
//! and closes at the W quadrant of a crossing or a loop. On the way the upper
//! path may take S corners and the lower path N corners.

use alloc::vec::Vec;

use super::diagram::{Column, LagrangianDiagram, Quadrant};
use crate::error::{LchError, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disk {
    /// Chord at the positive corner.
    pub positive: usize,
    /// Negative corners in counterclockwise order after the positive one.
    pub word: Vec<usize>,
    /// Signed basepoint count.
    pub t: i32,
    /// Column where the disk opens (the loop column for a loop's own disk).
    pub start: usize,
    /// Column where the disk closes.
    pub end: usize,
    /// Lower and upper boundary level on each slice `start + 1 ..= end`.
    pub lower: Vec<u32>,
    pub upper: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskBudget {
    pub max_states: usize,
}

impl Default for DiskBudget {
    fn default() -> Self {
        DiskBudget { max_states: 5_000_000 }
    }
}

type Corner = (usize, bool);

struct Search<'a> {
    d: &'a LagrangianDiagram,
    bp_dir: i8,
    states: usize,
    budget: usize,
    out: Vec<Disk>,
}

#[derive(Clone)]
struct Partial {
    start: usize,
    left: Option<Corner>,
    lower_c: Vec<Corner>,
    upper_c: Vec<Corner>,
    lower: Vec<u32>,
    upper: Vec<u32>,
    t: i32,
    positives: u32,
}

impl Partial {
    fn add(&mut self, c: Corner) -> bool {
        if c.1 {
            self.positives += 1;
        }
        self.positives <= 1
    }
}

impl Search<'_> {
    /// Records slice `s` (levels `l < u`) and continues through column `s`.
    fn walk(&mut self, s: usize, l: u32, u: u32, mut p: Partial) -> Result<()> {
        self.states += 1;
        if self.states > self.budget {
            return Err(LchError::Budget(alloc::format!("disk search exceeded {} states", self.budget)));
        }
        let bp = self.d.basepoint;
        if s == bp.slice {
            if l == bp.level {
                p.t += self.bp_dir as i32;
            }
            if u == bp.level {
                p.t -= self.bp_dir as i32;
            }
        }
        p.lower.push(l);
        p.upper.push(u);
        if s >= self.d.columns.len() {
            return Ok(());
        }
        let col = self.d.columns[s];
        match col {
            Column::Turn { level } => {
                let sh = |x: u32| if x < level { x } else { x + 2 };
                self.walk(s + 1, sh(l), sh(u), p)
            }
            Column::Loop { level, chord } => {
                if (l, u) == (level, level + 1) {
                    self.finish(s, p, (chord, true));
                    Ok(())
                } else if l == level || l == level + 1 || u == level || u == level + 1 {
                    Ok(())
                } else {
                    let sh = |x: u32| if x < level { x } else { x - 2 };
                    self.walk(s + 1, sh(l), sh(u), p)
                }
            }
            Column::Cross { level: k, chord, .. } => {
                if (l, u) == (k, k + 1) {
                    self.finish(s, p, (chord, col.positive(Quadrant::W)));
                    return Ok(());
                }
                let mut us: Vec<(u32, Option<Corner>)> = Vec::with_capacity(2);
                if u == k + 1 {
                    us.push((k, None));
                } else if u == k {
                    us.push((k + 1, None));
                    us.push((k, Some((chord, col.positive(Quadrant::S)))));
                } else {
                    us.push((u, None));
                }
                let mut ls: Vec<(u32, Option<Corner>)> = Vec::with_capacity(2);
                if l == k {
                    ls.push((k + 1, None));
                } else if l == k + 1 {
                    ls.push((k, None));
                    ls.push((k + 1, Some((chord, col.positive(Quadrant::N)))));
                } else {
                    ls.push((l, None));
                }
                for &(nl, lc) in &ls {
                    for &(nu, uc) in &us {
                        let mut q = p.clone();
                        if let Some(c) = lc {
                            q.lower_c.push(c);
                            if !q.add(c) {
                                continue;
                            }
                        }
                        if let Some(c) = uc {
                            q.upper_c.push(c);
                            if !q.add(c) {
                                continue;
                            }
                        }
                        self.walk(s + 1, nl, nu, q)?;
                    }
                }
                Ok(())
            }
        }
    }

    fn finish(&mut self, end: usize, mut p: Partial, right: Corner) {
        if !p.add(right) || p.positives != 1 {
            return;
        }
        let mut cyc: Vec<Corner> = Vec::new();
        cyc.extend(p.left);
        cyc.extend(p.lower_c.iter().copied());
        cyc.push(right);
        cyc.extend(p.upper_c.iter().rev().copied());
        let pos = cyc.iter().position(|c| c.1).expect("one positive corner");
        let n = cyc.len();
        let word = (1..n).map(|i| cyc[(pos + i) % n].0).collect();
        self.out.push(Disk { positive: cyc[pos].0, word, t: p.t, start: p.start, end, lower: p.lower, upper: p.upper });
    }
}

/// All rigid disks of the diagram, sorted by positive corner and then by
/// word; the `search` budget bounds visited sweep states.
pub fn enumerate_disks(d: &LagrangianDiagram, budget: &DiskBudget) -> Result<Vec<Disk>> {
    let tr = d.validate()?;
    let bp_dir = tr.dir_at(d.basepoint.slice, d.basepoint.level);
    let mut s = Search { d, bp_dir, states: 0, budget: budget.max_states, out: Vec::new() };
    for (c, col) in d.columns.iter().enumerate() {
        let empty = Partial {
            start: c,
            left: None,
            lower_c: Vec::new(),
            upper_c: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            t: 0,
            positives: 0,
        };
        match *col {
            Column::Turn { level } => s.walk(c + 1, level, level + 1, empty)?,
            Column::Cross { level, chord, .. } => {
                let mut p = empty;
                let corner = (chord, col.positive(Quadrant::E));
                p.left = Some(corner);
                if p.add(corner) {
                    s.walk(c + 1, level, level + 1, p)?;
                }
            }
            Column::Loop { chord, .. } => {
                // the loop's own disk
                s.out.push(Disk {
                    positive: chord,
                    word: Vec::new(),
                    t: 0,
                    start: c,
                    end: c,
                    lower: Vec::new(),
                    upper: Vec::new(),
                });
            }
        }
    }
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// Disks with positive corner at `chord`.
pub fn disks_for(disks: &[Disk], chord: usize) -> impl Iterator<Item = &Disk> {
    disks.iter().filter(move |k| k.positive == chord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::tests::{trefoil, unknot};

    #[test]
    fn unknot_two_disks() {
        let d = unknot().resolve().unwrap();
        let disks = enumerate_disks(&d, &DiskBudget::default()).unwrap();
        assert_eq!(disks.len(), 2);
        assert!(disks.iter().all(|k| k.positive == 0 && k.word.is_empty()));
        let mut ts: Vec<i32> = disks.iter().map(|k| k.t).collect();
        ts.sort_unstable();
        assert_eq!(ts, alloc::vec![0, 1]);
    }

    #[test]
    fn trefoil_cusps_have_constant_disks() {
        let d = trefoil().resolve().unwrap();
        let disks = enumerate_disks(&d, &DiskBudget::default()).unwrap();
        for c in [3usize, 4] {
            assert!(disks_for(&disks, c).any(|k| k.word.is_empty()));
        }
        // crossings have degree 0 and receive no disks
        for x in 0..3 {
            assert_eq!(disks_for(&disks, x).count(), 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let d = trefoil().resolve().unwrap();
        let r = enumerate_disks(&d, &DiskBudget { max_states: 3 });
        assert!(matches!(r, Err(LchError::Budget(_))));
    }
}
