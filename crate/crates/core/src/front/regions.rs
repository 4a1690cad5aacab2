//! Second disk enumerator: disks as sets of faces of the diagram.
//!
//! Faces are built with union-find over the gaps of each slice. A candidate
//! disk is a connected set of bounded faces whose quadrant pattern at every
//! crossing or loop is empty, full, one negative corner, or a smooth pass
//! (two adjacent quadrants); the positive corner is fixed at the root. The
//! boundary is then traced counterclockwise to read off the word.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::diagram::{Column, LagrangianDiagram, Quadrant, Trace};
use crate::error::{LchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionBudget {
    pub max_nodes: usize,
}

impl Default for RegionBudget {
    fn default() -> Self {
        RegionBudget { max_nodes: 20_000_000 }
    }
}

const QUADS: [Quadrant; 4] = [Quadrant::W, Quadrant::E, Quadrant::N, Quadrant::S];

struct Vertex {
    chord: usize,
    faces: [usize; 4],
    positive: [bool; 4],
}

struct Faces {
    cell_off: Vec<usize>,
    face_of: Vec<usize>,
    loop_cell: Vec<Option<usize>>,
    num: usize,
    outer: usize,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra.max(rb)] = ra.min(rb);
    }
}

fn build_faces(d: &LagrangianDiagram, tr: &Trace) -> Faces {
    let strands = &tr.strands;
    let mut cell_off = Vec::new();
    let mut total = 0;
    for &n in strands {
        cell_off.push(total);
        total += n as usize + 1;
    }
    let mut loop_cell = alloc::vec![None; d.columns.len()];
    for (c, col) in d.columns.iter().enumerate() {
        if matches!(col, Column::Loop { .. }) {
            loop_cell[c] = Some(total);
            total += 1;
        }
    }
    let mut p: Vec<usize> = (0..total).collect();
    let cell = |s: usize, g: u32| cell_off[s] + g as usize;
    for s in 0..strands.len() {
        union(&mut p, cell(0, 0), cell(s, 0));
        union(&mut p, cell(0, 0), cell(s, strands[s]));
    }
    for (c, col) in d.columns.iter().enumerate() {
        let n = strands[c];
        match *col {
            Column::Cross { level: k, .. } => {
                for g in 0..=n {
                    if g != k + 1 {
                        union(&mut p, cell(c, g), cell(c + 1, g));
                    }
                }
            }
            Column::Turn { level: i } => {
                for g in 0..=n {
                    let r = if g <= i { g } else { g + 2 };
                    union(&mut p, cell(c, g), cell(c + 1, r));
                }
                union(&mut p, cell(c, i), cell(c + 1, i + 2));
            }
            Column::Loop { level: i, .. } => {
                union(&mut p, cell(c, i), cell(c, i + 2));
                for g in 0..=n {
                    if g <= i {
                        union(&mut p, cell(c, g), cell(c + 1, g));
                    } else if g >= i + 2 {
                        union(&mut p, cell(c, g), cell(c + 1, g - 2));
                    }
                }
            }
        }
    }
    // compress to dense face ids
    let mut id = alloc::vec![usize::MAX; total];
    let mut face_of = alloc::vec![0; total];
    let mut num = 0;
    for x in 0..total {
        let r = find(&mut p, x);
        if id[r] == usize::MAX {
            id[r] = num;
            num += 1;
        }
        face_of[x] = id[r];
    }
    let outer = face_of[cell(0, 0)];
    Faces { cell_off, face_of, loop_cell, num, outer }
}

impl Faces {
    fn at(&self, s: usize, g: u32) -> usize {
        self.face_of[self.cell_off[s] + g as usize]
    }
}

struct Oracle<'a> {
    d: &'a LagrangianDiagram,
    tr: &'a Trace,
    f: Faces,
    verts: Vec<Vertex>,
    vert_of_face: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
    state: Vec<i8>,
    in_frontier: Vec<bool>,
    root_vertex: usize,
    root_quad: usize,
    nodes: usize,
    budget: usize,
    found: BTreeSet<Vec<usize>>,
}

impl Oracle<'_> {
    /// Allowed quadrant sets at a vertex, as bitmasks over `QUADS`.
    fn allowed(&self, v: usize, mask: u8) -> bool {
        if v == self.root_vertex {
            return mask == 1 << self.root_quad;
        }
        match mask.count_ones() {
            0 | 4 => true,
            1 => !self.verts[v].positive[mask.trailing_zeros() as usize],
            // adjacent pairs: EN, NW, WS, SE
            2 => matches!(mask, 0b0110 | 0b0101 | 0b1001 | 0b1010),
            _ => false,
        }
    }

    fn feasible(&self, v: usize) -> bool {
        let faces = self.verts[v].faces;
        let mut und: Vec<usize> = Vec::new();
        for &f in &faces {
            if self.state[f] == 0 && !und.contains(&f) {
                und.push(f);
            }
        }
        for bits in 0u32..(1 << und.len()) {
            let mut mask = 0u8;
            for (q, &f) in faces.iter().enumerate() {
                let inside = match self.state[f] {
                    1 => true,
                    -1 => false,
                    _ => bits >> und.iter().position(|&x| x == f).unwrap() & 1 == 1,
                };
                if inside {
                    mask |= 1 << q;
                }
            }
            if self.allowed(v, mask) {
                return true;
            }
        }
        false
    }

    fn consistent(&self, f: usize) -> bool {
        self.vert_of_face[f].iter().all(|&v| self.feasible(v))
    }

    fn search(&mut self, frontier: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(LchError::Budget(alloc::format!("region search exceeded {} nodes", self.budget)));
        }
        let Some(f) = frontier.pop() else {
            let set: Vec<usize> = (0..self.f.num).filter(|&x| self.state[x] == 1).collect();
            self.found.insert(set);
            return Ok(());
        };
        self.in_frontier[f] = false;
        // include
        self.state[f] = 1;
        if self.consistent(f) {
            let mut added = Vec::new();
            for &g in &self.adj[f] {
                if self.state[g] == 0 && !self.in_frontier[g] {
                    self.in_frontier[g] = true;
                    frontier.push(g);
                    added.push(g);
                }
            }
            self.search(frontier)?;
            for _ in &added {
                let g = frontier.pop().unwrap();
                self.in_frontier[g] = false;
            }
        }
        // exclude
        self.state[f] = -1;
        if self.consistent(f) {
            self.search(frontier)?;
        }
        self.state[f] = 0;
        frontier.push(f);
        self.in_frontier[f] = true;
        Ok(())
    }
}

/// One traced disk: `(positive, word, t)`.
pub type RegionDisk = (usize, Vec<usize>, i32);

fn trace_boundary(o: &Oracle<'_>, set: &[usize]) -> Option<RegionDisk> {
    let d = o.d;
    let tr = o.tr;
    let f = &o.f;
    let inside = |face: usize| set.binary_search(&face).is_ok();
    // a loop's own disk
    if set.len() == 1 {
        for (c, lc) in f.loop_cell.iter().enumerate() {
            if let Some(x) = lc {
                if f.face_of[*x] == set[0] {
                    let chord = d.columns[c].chord().unwrap();
                    return Some((chord, Vec::new(), 0));
                }
            }
        }
    }
    let mut boundary = Vec::new();
    for s in 0..tr.strands.len() {
        for l in 0..tr.strands[s] {
            let below = inside(f.at(s, l));
            let above = inside(f.at(s, l + 1));
            if below != above {
                boundary.push((s, l, above));
            }
        }
    }
    let first = *boundary.first()?;
    let bp = d.basepoint;
    let bp_dir = tr.dir_at(bp.slice, bp.level) as i32;
    let mut corners: Vec<(usize, bool)> = Vec::new();
    let mut t = 0;
    let mut visited = 0usize;
    let (mut s, mut l, mut right) = first;
    loop {
        visited += 1;
        if visited > boundary.len() {
            return None;
        }
        if (s, l) == (bp.slice, bp.level) {
            t += if right { bp_dir } else { -bp_dir };
        }
        let (ns, nl, nr) = if right {
            let c = s;
            match d.columns[c] {
                Column::Turn { level: i } => (c + 1, if l < i { l } else { l + 2 }, true),
                Column::Cross { level: k, chord, .. } => {
                    let col = d.columns[c];
                    if l == k {
                        if inside(f.at(c, k + 2)) {
                            (c + 1, k + 1, true)
                        } else {
                            corners.push((chord, col.positive(Quadrant::W)));
                            (c, k + 1, false)
                        }
                    } else if l == k + 1 {
                        if inside(f.at(c + 1, k + 1)) {
                            (c + 1, k, true)
                        } else {
                            corners.push((chord, col.positive(Quadrant::N)));
                            (c + 1, k + 1, true)
                        }
                    } else {
                        (c + 1, l, true)
                    }
                }
                Column::Loop { level: i, chord } => {
                    if l == i {
                        corners.push((chord, true));
                        (c, i + 1, false)
                    } else if l == i + 1 {
                        return None;
                    } else {
                        (c + 1, if l < i { l } else { l - 2 }, true)
                    }
                }
            }
        } else {
            let c = s - 1;
            match d.columns[c] {
                Column::Turn { level: i } => {
                    if l == i {
                        (s, i + 1, true)
                    } else if l == i + 1 {
                        (s, i, true)
                    } else {
                        (c, if l < i { l } else { l - 2 }, false)
                    }
                }
                Column::Cross { level: k, chord, .. } => {
                    let col = d.columns[c];
                    if l == k {
                        if inside(f.at(c, k + 1)) {
                            (c, k + 1, false)
                        } else {
                            corners.push((chord, col.positive(Quadrant::S)));
                            (c, k, false)
                        }
                    } else if l == k + 1 {
                        if inside(f.at(c, k)) {
                            (c, k, false)
                        } else {
                            corners.push((chord, col.positive(Quadrant::E)));
                            (s, k, true)
                        }
                    } else {
                        (c, l, false)
                    }
                }
                Column::Loop { level: i, .. } => (c, if l < i { l } else { l + 2 }, false),
            }
        };
        s = ns;
        l = nl;
        right = nr;
        if (s, l, right) == first {
            break;
        }
    }
    if visited != boundary.len() {
        // more than one boundary cycle
        return None;
    }
    let pos: Vec<usize> = (0..corners.len()).filter(|&i| corners[i].1).collect();
    if pos.len() != 1 {
        return None;
    }
    let n = corners.len();
    let word = (1..n).map(|i| corners[(pos[0] + i) % n].0).collect();
    Some((corners[pos[0]].0, word, t))
}

/// Every disk found by the face search, sorted; comparable with the
/// `(positive, word, t)` projection of [`super::enumerate_disks`].
pub fn region_differentials(d: &LagrangianDiagram, budget: &RegionBudget) -> Result<Vec<RegionDisk>> {
    let tr = d.validate()?;
    let f = build_faces(d, &tr);
    let mut verts = Vec::new();
    for (c, col) in d.columns.iter().enumerate() {
        let (faces, chord) = match *col {
            Column::Turn { .. } => continue,
            Column::Cross { level: k, chord, .. } => {
                ([f.at(c, k + 1), f.at(c + 1, k + 1), f.at(c, k + 2), f.at(c, k)], chord)
            }
            Column::Loop { level: i, chord } => {
                let e = f.face_of[f.loop_cell[c].unwrap()];
                ([f.at(c, i + 1), e, f.at(c, i + 2), f.at(c, i)], chord)
            }
        };
        let positive = QUADS.map(|q| col.positive(q));
        verts.push(Vertex { chord, faces, positive });
    }
    let mut vert_of_face = alloc::vec![Vec::new(); f.num];
    for (v, vx) in verts.iter().enumerate() {
        for &x in &vx.faces {
            if !vert_of_face[x].contains(&v) {
                vert_of_face[x].push(v);
            }
        }
    }
    let mut adj: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); f.num];
    for s in 0..tr.strands.len() {
        for l in 0..tr.strands[s] {
            let (a, b) = (f.at(s, l), f.at(s, l + 1));
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    for (c, lc) in f.loop_cell.iter().enumerate() {
        if let (Some(x), Column::Loop { level: i, .. }) = (lc, d.columns[c]) {
            let (a, b) = (f.face_of[*x], f.at(c, i));
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let outer = f.outer;
    let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().filter(|&x| x != outer).collect()).collect();
    let nf = f.num;
    let mut o = Oracle {
        d,
        tr: &tr,
        f,
        verts,
        vert_of_face,
        adj,
        state: alloc::vec![0; nf],
        in_frontier: alloc::vec![false; nf],
        root_vertex: 0,
        root_quad: 0,
        nodes: 0,
        budget: budget.max_nodes,
        found: BTreeSet::new(),
    };
    let mut out = Vec::new();
    for v in 0..o.verts.len() {
        for q in 0..4 {
            if !o.verts[v].positive[q] {
                continue;
            }
            let root = o.verts[v].faces[q];
            if root == outer || o.verts[v].faces.iter().enumerate().any(|(j, &x)| j != q && x == root) {
                continue;
            }
            o.root_vertex = v;
            o.root_quad = q;
            o.state.iter_mut().for_each(|s| *s = 0);
            o.state[outer] = -1;
            for &x in &o.verts[v].faces {
                if x != root {
                    o.state[x] = -1;
                }
            }
            o.state[root] = 1;
            o.found.clear();
            if o.consistent(root) && o.vert_of_face[outer].iter().all(|&w| o.feasible(w)) {
                let mut frontier = Vec::new();
                for i in 0..o.adj[root].len() {
                    let g = o.adj[root][i];
                    if o.state[g] == 0 {
                        o.in_frontier[g] = true;
                        frontier.push(g);
                    }
                }
                o.search(&mut frontier)?;
                for g in frontier {
                    o.in_frontier[g] = false;
                }
            }
            let sets: Vec<Vec<usize>> = o.found.iter().cloned().collect();
            for set in sets {
                if let Some(disk) = trace_boundary(&o, &set) {
                    if disk.0 == o.verts[v].chord {
                        out.push(disk);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::disks::{enumerate_disks, DiskBudget};
    use crate::front::tests::{trefoil, unknot};

    fn projected(d: &LagrangianDiagram) -> Vec<RegionDisk> {
        let mut v: Vec<RegionDisk> = enumerate_disks(d, &DiskBudget::default())
            .unwrap()
            .into_iter()
            .map(|k| (k.positive, k.word, k.t))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn agrees_on_small_knots() {
        for f in [unknot(), trefoil()] {
            let d = f.resolve().unwrap();
            assert_eq!(region_differentials(&d, &RegionBudget::default()).unwrap(), projected(&d));
            let dd = d.dip(1).unwrap();
            assert_eq!(region_differentials(&dd, &RegionBudget::default()).unwrap(), projected(&dd));
        }
    }
}
