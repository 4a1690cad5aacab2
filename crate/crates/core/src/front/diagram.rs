//! Resolved diagrams: x-monotone columns of turns (resolved left cusps),
//! crossings and loops (resolved right cusps). Levels are 0-based and
//! counted bottom-up; slice `s` is the vertical line between column `s - 1`
//! and column `s`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{LchError, Result};

/// Which quadrant pair of a crossing carries the positive Reeb sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossKind {
    /// W and E positive; the strand entering from level `k + 1` is over.
    FallingOver,
    /// N and S positive; the strand entering from level `k` is over.
    RisingOver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    W,
    E,
    N,
    S,
}

impl CrossKind {
    pub fn positive(self, q: Quadrant) -> bool {
        match self {
            CrossKind::FallingOver => matches!(q, Quadrant::W | Quadrant::E),
            CrossKind::RisingOver => matches!(q, Quadrant::N | Quadrant::S),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    /// Creates levels `level`, `level + 1`.
    Turn { level: u32 },
    /// Crossing of levels `level`, `level + 1`.
    Cross { level: u32, kind: CrossKind, chord: usize },
    /// Joins levels `level`, `level + 1`; W and E quadrants positive.
    Loop { level: u32, chord: usize },
}

impl Column {
    pub fn chord(&self) -> Option<usize> {
        match *self {
            Column::Turn { .. } => None,
            Column::Cross { chord, .. } | Column::Loop { chord, .. } => Some(chord),
        }
    }

    pub fn level(&self) -> u32 {
        match *self {
            Column::Turn { level } | Column::Cross { level, .. } | Column::Loop { level, .. } => level,
        }
    }

    pub fn positive(&self, q: Quadrant) -> bool {
        match *self {
            Column::Turn { .. } => false,
            Column::Cross { kind, .. } => kind.positive(q),
            Column::Loop { .. } => matches!(q, Quadrant::W | Quadrant::E),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub name: String,
    /// Second-wall chord of a dip; these form the short-action tier.
    pub short: bool,
}

/// A point on the knot: slice and level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Basepoint {
    pub slice: usize,
    pub level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LagrangianDiagram {
    pub columns: Vec<Column>,
    pub chords: Vec<Chord>,
    pub basepoint: Basepoint,
    /// Column indices where a new side begins (sorted).
    pub cuts: Vec<usize>,
    /// Number of dips inserted so far (used for naming).
    pub dips: u32,
}

/// Strand data along the knot, per slice piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    /// Strand count per slice (`columns.len() + 1` entries).
    pub strands: Vec<u32>,
    offsets: Vec<usize>,
    /// Orientation of each piece: `+1` when the knot runs in `+x`.
    pub dir: Vec<i8>,
    /// Maslov potential of each piece (unreduced).
    pub mu: Vec<i64>,
    pub components: usize,
    /// Rotation number of the knot (sign fixed by the trace orientation).
    pub rotation: i64,
}

impl Trace {
    pub fn piece(&self, slice: usize, level: u32) -> usize {
        self.offsets[slice] + level as usize
    }

    pub fn mu_at(&self, slice: usize, level: u32) -> i64 {
        self.mu[self.piece(slice, level)]
    }

    pub fn dir_at(&self, slice: usize, level: u32) -> i8 {
        self.dir[self.piece(slice, level)]
    }

    /// Grading modulus `|2r|`.
    pub fn modulus(&self) -> u32 {
        (2 * self.rotation).unsigned_abs() as u32
    }
}

/// Position of the traversal: a piece and a direction of travel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Walker {
    pub slice: usize,
    pub level: u32,
    pub right: bool,
}

/// What happened when a walker moved past one column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Passage {
    Straight,
    /// Turned back through a cusp from the lower to the upper branch.
    Up,
    /// Turned back through a cusp from the upper to the lower branch.
    Down,
}

impl LagrangianDiagram {
    pub fn num_chords(&self) -> usize {
        self.chords.len()
    }

    /// Strand counts per slice; errors on out-of-range levels.
    pub fn strand_counts(&self) -> Result<Vec<u32>> {
        let mut n = 0u32;
        let mut out = alloc::vec![0u32];
        for (c, col) in self.columns.iter().enumerate() {
            match *col {
                Column::Turn { level } => {
                    if level > n {
                        return Err(LchError::Format(alloc::format!(
                            "column {c}: turn at level {level} with {n} strands"
                        )));
                    }
                    n += 2;
                }
                Column::Cross { level, .. } => {
                    if level + 1 >= n {
                        return Err(LchError::Format(alloc::format!(
                            "column {c}: crossing at level {level} with {n} strands"
                        )));
                    }
                }
                Column::Loop { level, .. } => {
                    if level + 1 >= n {
                        return Err(LchError::Format(alloc::format!(
                            "column {c}: loop at level {level} with {n} strands"
                        )));
                    }
                    n -= 2;
                }
            }
            out.push(n);
        }
        if n != 0 {
            return Err(LchError::Format(alloc::format!("diagram ends with {n} open strands")));
        }
        Ok(out)
    }

    /// Moves along the knot past the column adjacent to `w` in its direction.
    pub(crate) fn step(&self, w: Walker) -> (Walker, Passage) {
        if w.right {
            let col = self.columns[w.slice];
            let s = w.slice + 1;
            match col {
                Column::Turn { level } => {
                    let l = if w.level < level { w.level } else { w.level + 2 };
                    (Walker { slice: s, level: l, right: true }, Passage::Straight)
                }
                Column::Cross { level, .. } => {
                    let l = if w.level == level {
                        level + 1
                    } else if w.level == level + 1 {
                        level
                    } else {
                        w.level
                    };
                    (Walker { slice: s, level: l, right: true }, Passage::Straight)
                }
                Column::Loop { level, .. } => {
                    if w.level == level {
                        (Walker { slice: w.slice, level: level + 1, right: false }, Passage::Up)
                    } else if w.level == level + 1 {
                        (Walker { slice: w.slice, level, right: false }, Passage::Down)
                    } else {
                        let l = if w.level < level { w.level } else { w.level - 2 };
                        (Walker { slice: s, level: l, right: true }, Passage::Straight)
                    }
                }
            }
        } else {
            let c = w.slice - 1;
            match self.columns[c] {
                Column::Turn { level } => {
                    if w.level == level {
                        (Walker { slice: w.slice, level: level + 1, right: true }, Passage::Up)
                    } else if w.level == level + 1 {
                        (Walker { slice: w.slice, level, right: true }, Passage::Down)
                    } else {
                        let l = if w.level < level { w.level } else { w.level - 2 };
                        (Walker { slice: c, level: l, right: false }, Passage::Straight)
                    }
                }
                Column::Cross { level, .. } => {
                    let l = if w.level == level {
                        level + 1
                    } else if w.level == level + 1 {
                        level
                    } else {
                        w.level
                    };
                    (Walker { slice: c, level: l, right: false }, Passage::Straight)
                }
                Column::Loop { level, .. } => {
                    let l = if w.level < level { w.level } else { w.level + 2 };
                    (Walker { slice: c, level: l, right: false }, Passage::Straight)
                }
            }
        }
    }

    /// First turn's lower piece, oriented to the right.
    pub(crate) fn start_walker(&self) -> Result<Walker> {
        let c = self
            .columns
            .iter()
            .position(|c| matches!(c, Column::Turn { .. }))
            .ok_or_else(|| LchError::Format("diagram has no left cusp".into()))?;
        Ok(Walker { slice: c + 1, level: self.columns[c].level(), right: true })
    }

    /// Traces every component; orientation and potentials follow the
    /// component through the first turn's lower piece.
    pub fn trace(&self) -> Result<Trace> {
        let strands = self.strand_counts()?;
        if self.columns.is_empty() {
            return Err(LchError::Format("empty diagram".into()));
        }
        let mut offsets = Vec::with_capacity(strands.len());
        let mut total = 0usize;
        for &n in &strands {
            offsets.push(total);
            total += n as usize;
        }
        let mut dir = alloc::vec![0i8; total];
        let mut mu = alloc::vec![0i64; total];
        let mut seen = alloc::vec![false; total];
        let mut components = 0;
        let mut rotation = 0;
        let mut starts = alloc::vec![self.start_walker()?];
        // remaining components start at other pieces
        for s in 0..strands.len() {
            for l in 0..strands[s] {
                starts.push(Walker { slice: s, level: l, right: true });
            }
        }
        for st in starts {
            let p = offsets[st.slice] + st.level as usize;
            if seen[p] {
                continue;
            }
            components += 1;
            let mut w = st;
            let mut m = 0i64;
            loop {
                let p = offsets[w.slice] + w.level as usize;
                seen[p] = true;
                dir[p] = if w.right { 1 } else { -1 };
                mu[p] = m;
                let (nw, pass) = self.step(w);
                match pass {
                    Passage::Up => m += 1,
                    Passage::Down => m -= 1,
                    Passage::Straight => {}
                }
                w = nw;
                if w == st {
                    if components == 1 {
                        rotation = m;
                    }
                    break;
                }
            }
        }
        // mismatch m after one circuit is twice the rotation number
        Ok(Trace { strands, offsets, dir, mu, components, rotation: rotation / 2 })
    }

    /// Checks levels, single component, basepoint and chord references.
    pub fn validate(&self) -> Result<Trace> {
        let tr = self.trace()?;
        if tr.components != 1 {
            return Err(LchError::Format(alloc::format!("diagram has {} components; knots only", tr.components)));
        }
        let bp = self.basepoint;
        if bp.slice >= tr.strands.len() || bp.level >= tr.strands[bp.slice] {
            return Err(LchError::Format("basepoint off the knot".into()));
        }
        let mut used = alloc::vec![0u32; self.chords.len()];
        for col in &self.columns {
            if let Some(c) = col.chord() {
                if c >= self.chords.len() {
                    return Err(LchError::Format(alloc::format!("column refers to missing chord {c}")));
                }
                used[c] += 1;
            }
        }
        if let Some(c) = used.iter().position(|&u| u != 1) {
            return Err(LchError::Format(alloc::format!("chord `{}` used {} times", self.chords[c].name, used[c])));
        }
        if self.cuts.windows(2).any(|w| w[0] > w[1]) || self.cuts.iter().any(|&c| c > self.columns.len()) {
            return Err(LchError::Format("cuts must be sorted column positions".into()));
        }
        Ok(tr)
    }

    /// Column index of each chord.
    pub fn chord_columns(&self) -> Vec<usize> {
        let mut out = alloc::vec![usize::MAX; self.chords.len()];
        for (i, col) in self.columns.iter().enumerate() {
            if let Some(c) = col.chord() {
                out[c] = i;
            }
        }
        out
    }

    /// Side index of a column: the number of cuts at or before it.
    pub fn side_of_column(&self, col: usize) -> usize {
        self.cuts.iter().filter(|&&c| c <= col).count()
    }

    /// Maslov potential of the over and under strand of a chord, read on the
    /// slice to its left.
    pub fn over_under(&self, tr: &Trace, chord: usize) -> (i64, i64) {
        let c = self.chord_columns()[chord];
        match self.columns[c] {
            Column::Cross { level, kind: CrossKind::FallingOver, .. } => (tr.mu_at(c, level + 1), tr.mu_at(c, level)),
            Column::Cross { level, kind: CrossKind::RisingOver, .. } => (tr.mu_at(c, level), tr.mu_at(c, level + 1)),
            Column::Loop { level, .. } => (tr.mu_at(c, level + 1), tr.mu_at(c, level)),
            Column::Turn { .. } => unreachable!("turns carry no chord"),
        }
    }

    /// Degree of every chord from the potentials (unreduced).
    pub fn degrees(&self, tr: &Trace) -> Vec<i64> {
        let cols = self.chord_columns();
        (0..self.chords.len())
            .map(|i| match self.columns[cols[i]] {
                Column::Loop { .. } => 1,
                Column::Cross { kind, .. } => {
                    let (o, u) = self.over_under(tr, i);
                    match kind {
                        CrossKind::FallingOver => o - u,
                        CrossKind::RisingOver => o - u - 1,
                    }
                }
                Column::Turn { .. } => unreachable!(),
            })
            .collect()
    }

    /// Capping-path degree: walk the knot from the over point to the under
    /// point of each crossing counting downward (`D`) and upward (`U`) cusp
    /// passages; `|c| = D - U` (shifted by one for rising crossings).
    pub fn capping_degrees(&self) -> Result<Vec<i64>> {
        let tr = self.trace()?;
        let cols = self.chord_columns();
        let mut out = Vec::with_capacity(self.chords.len());
        for i in 0..self.chords.len() {
            let c = cols[i];
            let (over, under, shift) = match self.columns[c] {
                Column::Loop { .. } => {
                    out.push(1);
                    continue;
                }
                Column::Cross { level, kind: CrossKind::FallingOver, .. } => (level + 1, level, 0),
                Column::Cross { level, kind: CrossKind::RisingOver, .. } => (level, level + 1, -1),
                Column::Turn { .. } => unreachable!(),
            };
            // the over and under points both sit at the right end of their
            // left-slice pieces; walk the knot in its own direction
            let start = Walker { slice: c, level: over, right: tr.dir_at(c, over) > 0 };
            let target = (c, under);
            let (mut d, mut u) = (0i64, 0i64);
            let mut w = start;
            let limit = tr.dir.len() + 2;
            let mut steps = 0;
            while (w.slice, w.level) != target {
                let (nw, pass) = self.step(w);
                match pass {
                    Passage::Down => d += 1,
                    Passage::Up => u += 1,
                    Passage::Straight => {}
                }
                w = nw;
                steps += 1;
                if steps > limit {
                    return Err(LchError::Format("capping path did not close".into()));
                }
            }
            out.push(d - u + shift);
        }
        Ok(out)
    }

    /// Inserts a dip at `slice`: a full reversal word of falling crossings
    /// (maxima `b`) followed by its reverse in rising crossings (minima `a`).
    /// A cut is placed where the second wall starts.
    pub fn dip(&self, slice: usize) -> Result<LagrangianDiagram> {
        let strands = self.strand_counts()?;
        if slice >= strands.len() {
            return Err(LchError::Format(alloc::format!("dip position {slice} outside the diagram")));
        }
        if self.columns[..slice].iter().any(|c| matches!(c, Column::Loop { .. })) {
            return Err(LchError::Domain(alloc::format!("dip at slice {slice} lies right of a right-cusp loop")));
        }
        let m = strands[slice];
        if m < 2 {
            return Err(LchError::Domain(alloc::format!("dip at slice {slice} needs at least 2 strands, found {m}")));
        }
        let d = self.dips + 1;
        let mut levels = Vec::new();
        for top in (1..m).rev() {
            levels.extend(0..top);
        }
        let mut out = self.clone();
        out.dips = d;
        let mut label: Vec<u32> = (1..=m).collect();
        let mut inserted = Vec::new();
        for &k in &levels {
            let (i, j) = (label[k as usize], label[k as usize + 1]);
            let chord = out.chords.len();
            out.chords.push(Chord { name: alloc::format!("b{d}_{i}_{j}"), short: false });
            inserted.push(Column::Cross { level: k, kind: CrossKind::FallingOver, chord });
            label.swap(k as usize, k as usize + 1);
        }
        for &k in levels.iter().rev() {
            let (j, i) = (label[k as usize], label[k as usize + 1]);
            let chord = out.chords.len();
            out.chords.push(Chord { name: alloc::format!("a{d}_{i}_{j}"), short: true });
            inserted.push(Column::Cross { level: k, kind: CrossKind::RisingOver, chord });
            label.swap(k as usize, k as usize + 1);
        }
        let wall = levels.len();
        let n_ins = inserted.len();
        out.columns.splice(slice..slice, inserted);
        for c in out.cuts.iter_mut() {
            if *c >= slice {
                *c += n_ins;
            }
        }
        out.cuts.push(slice + wall);
        out.cuts.sort_unstable();
        if out.basepoint.slice > slice {
            out.basepoint.slice += n_ins;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unknot() -> LagrangianDiagram {
        LagrangianDiagram {
            columns: alloc::vec![Column::Turn { level: 0 }, Column::Loop { level: 0, chord: 0 }],
            chords: alloc::vec![Chord { name: "c1".into(), short: false }],
            basepoint: Basepoint { slice: 1, level: 0 },
            cuts: Vec::new(),
            dips: 0,
        }
    }

    #[test]
    fn unknot_trace() {
        let d = unknot();
        let tr = d.validate().unwrap();
        assert_eq!(tr.strands, alloc::vec![0, 2, 0]);
        assert_eq!(tr.rotation, 0);
        assert_eq!(tr.mu_at(1, 1) - tr.mu_at(1, 0), 1);
        assert_eq!(tr.dir_at(1, 0), 1);
        assert_eq!(tr.dir_at(1, 1), -1);
    }

    #[test]
    fn dip_counts_and_degrees() {
        let d = unknot().dip(1).unwrap();
        let tr = d.validate().unwrap();
        assert_eq!(d.num_chords(), 3);
        assert_eq!(d.cuts, alloc::vec![2]);
        let degs = d.degrees(&tr);
        assert_eq!(degs, alloc::vec![1, 1, 0]);
        assert_eq!(d.capping_degrees().unwrap(), degs);
        assert!(unknot().dip(0).is_err());
    }

    #[test]
    fn bad_levels_rejected() {
        let mut d = unknot();
        d.columns[1] = Column::Loop { level: 1, chord: 0 };
        assert!(d.validate().is_err());
    }
}
