//! Legendrian knot fronts in plat position and their resolved diagrams.
//!
//! Front events use 1-based positions counted bottom-up, as in the file
//! format (`l 1`, `x 2`, `r 1`). [`PlatFront::resolve`] turns each left cusp
//! into a turn, each crossing into a falling-over crossing and each right
//! cusp into a loop.

mod diagram;
mod disks;
mod knot;
mod regions;

use alloc::string::String;
use alloc::vec::Vec;

pub use diagram::{Basepoint, Chord, Column, CrossKind, LagrangianDiagram, Quadrant, Trace};
pub use disks::{disks_for, enumerate_disks, Disk, DiskBudget};
pub use knot::{chord_actions, knot_dga, knot_dga_with, side_labels, DgaOptions, Side};
pub use regions::{region_differentials, RegionBudget, RegionDisk};

use crate::error::{LchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// Left cusp creating positions `i`, `i + 1`.
    L(u32),
    /// Crossing of positions `i`, `i + 1`.
    X(u32),
    /// Right cusp joining positions `i`, `i + 1`.
    R(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlatFront {
    pub events: Vec<Event>,
    /// Basepoint: slice after `basepoint.slice - 1` events, 0-based level.
    pub basepoint: Option<Basepoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontReport {
    pub valid: bool,
    pub components: usize,
    /// Strand count after each event.
    pub strands: Vec<u32>,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaslovData {
    pub trace: Trace,
    pub rotation: i64,
    pub modulus: u32,
}

impl PlatFront {
    pub fn new(events: Vec<Event>) -> Self {
        PlatFront { events, basepoint: None }
    }

    pub fn num_crossings(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::X(_))).count()
    }

    pub fn num_right_cusps(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::R(_))).count()
    }

    /// Checks event positions against the running strand count and counts components.
    pub fn validate(&self) -> FrontReport {
        let mut rep = FrontReport { valid: true, components: 0, strands: Vec::new(), problems: Vec::new() };
        let mut n = 0u32;
        for (k, e) in self.events.iter().enumerate() {
            let ok = match *e {
                Event::L(i) => i >= 1 && i <= n + 1,
                Event::X(i) | Event::R(i) => i >= 1 && i < n,
            };
            if !ok {
                rep.valid = false;
                rep.problems.push(alloc::format!("event {k} ({e:?}) out of range for {n} strands"));
                return rep;
            }
            match *e {
                Event::L(_) => n += 2,
                Event::R(_) => n -= 2,
                Event::X(_) => {}
            }
            rep.strands.push(n);
        }
        if let Some(k) = self.plat_violation() {
            rep.valid = false;
            rep.problems.push(alloc::format!("event {k} breaks plat position"));
            return rep;
        }
        if self.events.is_empty() {
            rep.valid = false;
            rep.problems.push("empty front".into());
            return rep;
        }
        if n != 0 {
            rep.valid = false;
            rep.problems.push(alloc::format!("front ends with {n} open strands"));
            return rep;
        }
        match self.resolve_unchecked().trace() {
            Ok(tr) => {
                rep.components = tr.components;
                if tr.components != 1 {
                    rep.valid = false;
                    rep.problems.push(alloc::format!("{} components; knots only", tr.components));
                }
            }
            Err(e) => {
                rep.valid = false;
                rep.problems.push(alloc::format!("{e}"));
            }
        }
        if let Some(bp) = self.basepoint {
            let strands = if bp.slice == 0 { 0 } else { rep.strands.get(bp.slice - 1).copied().unwrap_or(0) };
            if bp.level >= strands {
                rep.valid = false;
                rep.problems.push("basepoint off the knot".into());
            }
        }
        rep
    }

    /// Plat position: left cusps, then crossings, then right cusps, each
    /// right cusp closing an adjacent (odd, even) pair so that all of them
    /// could share one x-coordinate. Returns the first offending event.
    pub fn plat_violation(&self) -> Option<usize> {
        let mut stage = 0;
        for (k, e) in self.events.iter().enumerate() {
            let st = match *e {
                Event::L(_) => 0,
                Event::X(_) => 1,
                Event::R(i) => {
                    if i % 2 == 0 {
                        return Some(k);
                    }
                    2
                }
            };
            if st < stage {
                return Some(k);
            }
            stage = st;
        }
        None
    }

    fn check(&self) -> Result<()> {
        let rep = self.validate();
        if rep.valid {
            Ok(())
        } else {
            Err(LchError::Format(rep.problems.join("; ")))
        }
    }

    /// Default basepoint: just after the first event, on its lower strand.
    pub fn effective_basepoint(&self) -> Basepoint {
        self.basepoint.unwrap_or(Basepoint {
            slice: 1,
            level: match self.events.first() {
                Some(Event::L(i)) => i - 1,
                _ => 0,
            },
        })
    }

    fn resolve_unchecked(&self) -> LagrangianDiagram {
        let mut columns = Vec::with_capacity(self.events.len());
        let mut chords = Vec::new();
        let (mut nx, mut nc) = (0, 0);
        for e in &self.events {
            match *e {
                Event::L(i) => columns.push(Column::Turn { level: i.saturating_sub(1) }),
                Event::X(i) => {
                    nx += 1;
                    columns.push(Column::Cross {
                        level: i.saturating_sub(1),
                        kind: CrossKind::FallingOver,
                        chord: chords.len(),
                    });
                    chords.push(Chord { name: alloc::format!("x{nx}"), short: false });
                }
                Event::R(i) => {
                    nc += 1;
                    columns.push(Column::Loop { level: i.saturating_sub(1), chord: chords.len() });
                    chords.push(Chord { name: alloc::format!("c{nc}"), short: false });
                }
            }
        }
        LagrangianDiagram { columns, chords, basepoint: self.effective_basepoint(), cuts: Vec::new(), dips: 0 }
    }

    /// The resolved diagram: crossings `x1..` and right-cusp loops `c1..`.
    pub fn resolve(&self) -> Result<LagrangianDiagram> {
        self.check()?;
        let d = self.resolve_unchecked();
        d.validate()?;
        Ok(d)
    }

    pub fn maslov(&self) -> Result<MaslovData> {
        let d = self.resolve()?;
        let trace = d.trace()?;
        Ok(MaslovData { rotation: trace.rotation, modulus: trace.modulus(), trace })
    }

    /// Writhe of the front: a crossing is positive when both strands run in
    /// the same x-direction.
    pub fn writhe(&self) -> Result<i64> {
        let d = self.resolve()?;
        let tr = d.trace()?;
        let mut w = 0;
        for (c, col) in d.columns.iter().enumerate() {
            if let Column::Cross { level, .. } = *col {
                w += if tr.dir_at(c, level) == tr.dir_at(c, level + 1) { 1 } else { -1 };
            }
        }
        Ok(w)
    }

    /// Thurston-Bennequin number: writhe minus the number of right cusps.
    pub fn tb(&self) -> Result<i64> {
        Ok(self.writhe()? - self.num_right_cusps() as i64)
    }
}

/// Matching of strand positions (0-based) produced by the leading left cusps.
fn cap_matching(events: &[Event]) -> Vec<usize> {
    let mut ids: Vec<usize> = Vec::new();
    let mut pairs = 0;
    for e in events {
        let Event::L(i) = *e else { break };
        let i = i as usize - 1;
        ids.insert(i, pairs);
        ids.insert(i, pairs);
        pairs += 1;
    }
    let mut mate = alloc::vec![0; ids.len()];
    for a in 0..ids.len() {
        for b in 0..ids.len() {
            if a != b && ids[a] == ids[b] {
                mate[a] = b;
            }
        }
    }
    mate
}

/// Left-cusp events building a non-crossing matching, innermost caps last.
fn cap_events(mate: Vec<usize>) -> Vec<Event> {
    let mut alive: Vec<usize> = (0..mate.len()).collect();
    let mut rev = Vec::new();
    while !alive.is_empty() {
        let k = (0..alive.len() - 1).find(|&k| mate[alive[k]] == alive[k + 1]).expect("non-crossing matching");
        rev.push(Event::L(k as u32 + 1));
        alive.drain(k..k + 2);
    }
    rev.reverse();
    rev
}

/// Connected sum of two plats. The top cap pair of `f1` is identified with
/// the bottom cap pair of `f2`, whose crossings follow those of `f1` two
/// strands lower than its own top; this is the cusp connected sum slid
/// back into plat position.
pub fn front_connect_sum(f1: &PlatFront, f2: &PlatFront) -> Result<PlatFront> {
    f1.check()?;
    f2.check()?;
    let (m1, m2) = (cap_matching(&f1.events), cap_matching(&f2.events));
    let n1 = m1.len();
    if m1[n1 - 1] != n1 - 2 || m2[0] != 1 {
        return Err(LchError::Format(
            "connect sum needs a top cap in the first plat and a bottom cap in the second".into(),
        ));
    }
    let shift = n1 - 2;
    let mut mate = m1;
    mate.extend(m2[2..].iter().map(|&b| b + shift));
    let mut events = cap_events(mate);
    events.extend(f1.events.iter().filter(|e| matches!(e, Event::X(_))).copied());
    events.extend(f2.events.iter().filter_map(|e| match *e {
        Event::X(i) => Some(Event::X(i + shift as u32)),
        _ => None,
    }));
    events.extend((0..f1.num_right_cusps() + f2.num_right_cusps() - 1).map(|_| Event::R(1)));
    let out = PlatFront { events, basepoint: f1.basepoint };
    out.check()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::Event::*;
    use super::*;

    pub(crate) fn unknot() -> PlatFront {
        PlatFront::new(alloc::vec![L(1), R(1)])
    }

    pub(crate) fn trefoil() -> PlatFront {
        PlatFront::new(alloc::vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)])
    }

    #[test]
    fn validation_examples() {
        assert!(unknot().validate().valid);
        let t = trefoil().validate();
        assert!(t.valid);
        assert_eq!(t.components, 1);
        assert!(!PlatFront::new(alloc::vec![L(1), R(2)]).validate().valid);
        // a right cusp nested inside another is not in plat position
        assert!(!PlatFront::new(alloc::vec![L(1), L(1), R(2), R(1)]).validate().valid);
        assert!(!PlatFront::new(alloc::vec![L(1), L(1), R(1), X(1), R(1)]).validate().valid);
        // two nested saucers form a link
        let link = PlatFront::new(alloc::vec![L(1), L(1), R(1), R(1)]).validate();
        assert!(!link.valid);
        assert_eq!(link.components, 2);
    }

    #[test]
    fn maslov_examples() {
        assert_eq!(unknot().maslov().unwrap().modulus, 0);
        let zig = PlatFront::new(alloc::vec![L(1), L(2), R(1), R(1)]);
        let m = zig.maslov().unwrap();
        assert_eq!(m.rotation.abs(), 1);
        assert_eq!(m.modulus, 2);
        let t = trefoil().resolve().unwrap();
        let tr = t.trace().unwrap();
        assert_eq!(tr.rotation, 0);
        let mut degs = t.degrees(&tr);
        assert_eq!(t.capping_degrees().unwrap(), degs);
        degs.sort_unstable();
        assert_eq!(degs, alloc::vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn tb_values() {
        assert_eq!(unknot().tb().unwrap(), -1);
        assert_eq!(trefoil().writhe().unwrap(), 3);
        assert_eq!(trefoil().tb().unwrap(), 1);
    }

    #[test]
    fn connect_sums() {
        let uu = front_connect_sum(&unknot(), &unknot()).unwrap();
        assert_eq!(uu.events, unknot().events);
        assert_eq!(front_connect_sum(&trefoil(), &unknot()).unwrap().events, trefoil().events);
        let tt = front_connect_sum(&trefoil(), &trefoil()).unwrap();
        assert_eq!(tt.num_crossings(), 6);
        assert!(tt.validate().valid);
        // tb is additive up to the +1 of the joining cusp pair
        assert_eq!(tt.tb().unwrap(), 3);
        assert_eq!(tt.events[..3], [L(1), L(1), L(1)]);
        assert_eq!(tt.events[6..9], [X(4), X(4), X(4)]);
    }
}
