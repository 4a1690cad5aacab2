//! Sub-DGAs, action/side partitions and pushouts of free DGAs along
//! generator-name inclusions.
//!
//! All DGAs here are free as algebras, so the pushout of `A1 <- A3 -> A2` is
//! the free DGA on the amalgamated generator set with the inherited
//! differential. [`mediating_morphism`] realizes the universal property.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dga::{Dga, DgaMorphism, Element, GenId, MorphismReport};
use crate::error::{LchError, Result};
use crate::front::Side;
use crate::Action;

/// Sub-DGA on `names`, in the generator order of `d`.
pub fn sub_dga(d: &Dga, names: &[String]) -> Result<Dga> {
    let mut ids = Vec::with_capacity(names.len());
    for n in names {
        ids.push(d.lookup(n)?);
    }
    ids.sort_unstable();
    ids.dedup();
    d.restrict(&ids)
}

/// Generators split into two sides `s1`, `s2` and a shared boundary `s3`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Partition {
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub s3: Vec<String>,
}

impl Partition {
    fn union(a: &[String], b: &[String]) -> Vec<String> {
        a.iter().chain(b).cloned().collect()
    }

    /// Checks disjointness, coverage and that `s3`, `s1 + s3`, `s2 + s3` are
    /// closed under the differential.
    pub fn check(&self, d: &Dga) -> Result<()> {
        let mut seen = BTreeSet::new();
        for n in self.s1.iter().chain(&self.s2).chain(&self.s3) {
            d.lookup(n)?;
            if !seen.insert(n.as_str()) {
                return Err(LchError::Validation(alloc::format!("`{n}` lies in two parts")));
            }
        }
        if seen.len() != d.num_generators() {
            let missing = d.generators().iter().find(|g| !seen.contains(g.name.as_str())).unwrap();
            return Err(LchError::Validation(alloc::format!("`{}` lies in no part", missing.name)));
        }
        self.pieces(d).map(|_| ())
    }

    /// The sub-DGAs `(A1, A2, A3)` on `s1 + s3`, `s2 + s3` and `s3`.
    pub fn pieces(&self, d: &Dga) -> Result<(Dga, Dga, Dga)> {
        let a3 = sub_dga(d, &self.s3)?;
        let a1 = sub_dga(d, &Self::union(&self.s1, &self.s3))?;
        let a2 = sub_dga(d, &Self::union(&self.s2, &self.s3))?;
        Ok((a1, a2, a3))
    }
}

fn action_of(d: &Dga, g: GenId) -> Result<Action> {
    d.generator(g).action.ok_or_else(|| LchError::Domain(alloc::format!("`{}` has no action", d.name(g))))
}

/// `s3` = generators of action below `delta`; the rest go to `s1` when on
/// side 0 and to `s2` otherwise.
pub fn partition_by_action(d: &Dga, sides: &[Side], delta: Action) -> Result<Partition> {
    if sides.len() != d.num_generators() {
        return Err(LchError::Format("one side label per generator required".into()));
    }
    let mut p = Partition::default();
    for (i, g) in d.generators().iter().enumerate() {
        let part = if action_of(d, i as GenId)? < delta {
            &mut p.s3
        } else if sides[i] == 0 {
            &mut p.s1
        } else {
            &mut p.s2
        };
        part.push(g.name.clone());
    }
    p.check(d)?;
    Ok(p)
}

/// Three-piece split for two cuts: `s3` holds side 1 and every generator of
/// action below `delta`, `s1` the rest of side 0 and `s2` the rest of side 2.
pub fn triple_partition(d: &Dga, sides: &[Side], delta: Action) -> Result<Partition> {
    if sides.len() != d.num_generators() {
        return Err(LchError::Format("one side label per generator required".into()));
    }
    let mut p = Partition::default();
    for (i, g) in d.generators().iter().enumerate() {
        let part = if sides[i] == 1 || action_of(d, i as GenId)? < delta {
            &mut p.s3
        } else if sides[i] == 0 {
            &mut p.s1
        } else if sides[i] == 2 {
            &mut p.s2
        } else {
            return Err(LchError::Domain(alloc::format!("`{}` has side {} beyond two cuts", g.name, sides[i])));
        };
        part.push(g.name.clone());
    }
    p.check(d)?;
    Ok(p)
}

/// The square `A3 -> A1, A3 -> A2, A1 -> A, A2 -> A` of name inclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutSquare {
    pub a3: Dga,
    pub a1: Dga,
    pub a2: Dga,
    pub a: Dga,
    pub i31: DgaMorphism,
    pub i32: DgaMorphism,
    pub i1: DgaMorphism,
    pub i2: DgaMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub commutes: bool,
    /// Reports of `i31, i32, i1, i2` in that order.
    pub maps: Vec<MorphismReport>,
}

impl SquareReport {
    pub fn ok(&self) -> bool {
        self.commutes && self.maps.iter().all(|m| m.ok())
    }
}

impl PushoutSquare {
    pub fn check(&self) -> SquareReport {
        let maps = [&self.i31, &self.i32, &self.i1, &self.i2].iter().map(|m| m.check()).collect();
        let left = crate::dga::compose(&self.i31, &self.i1);
        let right = crate::dga::compose(&self.i32, &self.i2);
        let commutes = matches!((left, right), (Ok(l), Ok(r)) if l.agrees_with(&r));
        SquareReport { commutes, maps }
    }

    /// Builds the square of a partition of `d`; the pushout vertex is
    /// computed from the pieces, not copied from `d`.
    pub fn from_partition(d: &Dga, p: &Partition) -> Result<Self> {
        p.check(d)?;
        let (a1, a2, a3) = p.pieces(d)?;
        pushout(&a1, &a2, &a3)
    }
}

fn check_included(small: &Dga, big: &Dga, which: &str) -> Result<()> {
    if small.ring() != big.ring() || small.modulus() != big.modulus() {
        return Err(LchError::Format(alloc::format!("A3 and {which} have different coefficients or grading")));
    }
    for (i, g) in small.generators().iter().enumerate() {
        let Some(j) = big.id(&g.name) else {
            return Err(LchError::Format(alloc::format!("`{}` of A3 is missing from {which}", g.name)));
        };
        if big.degree(j) != g.degree {
            return Err(LchError::Conflict {
                generator: g.name.clone(),
                detail: alloc::format!("degree {} in A3 but {} in {which}", g.degree, big.degree(j)),
            });
        }
        if &small.transport(small.d(i as GenId), big)? != big.d(j) {
            return Err(LchError::Conflict {
                generator: g.name.clone(),
                detail: alloc::format!(
                    "d = {} in A3 but {} in {which}",
                    small.format_element(small.d(i as GenId)),
                    big.format_element(big.d(j))
                ),
            });
        }
    }
    Ok(())
}

/// Pushout of `A1 <- A3 -> A2` along name inclusions. Generators of `A1`
/// come first, then the generators of `A2` outside `A3`. Names shared by
/// `A1` and `A2` must belong to `A3`.
pub fn pushout(a1: &Dga, a2: &Dga, a3: &Dga) -> Result<PushoutSquare> {
    check_included(a3, a1, "A1")?;
    check_included(a3, a2, "A2")?;
    for g in a2.generators() {
        if a1.id(&g.name).is_some() && a3.id(&g.name).is_none() {
            return Err(LchError::Conflict {
                generator: g.name.clone(),
                detail: "shared by A1 and A2 but not in A3".into(),
            });
        }
    }
    let mut a = Dga::new(a1.ring().clone(), a1.modulus())?;
    for g in a1.generators() {
        a.add_generator(&g.name, g.degree, g.action)?;
    }
    let extra: Vec<GenId> = (0..a2.num_generators() as GenId).filter(|&j| a3.id(a2.name(j)).is_none()).collect();
    for &j in &extra {
        let g = a2.generator(j);
        a.add_generator(&g.name, g.degree, g.action)?;
    }
    for i in 0..a1.num_generators() as GenId {
        let x = a1.transport(a1.d(i), &a)?;
        a.set_differential(i, x)?;
    }
    for &j in &extra {
        let x = a2.transport(a2.d(j), &a)?;
        let id = a.lookup(a2.name(j))?;
        a.set_differential(id, x)?;
    }
    Ok(PushoutSquare {
        i31: DgaMorphism::inclusion(a3, a1)?,
        i32: DgaMorphism::inclusion(a3, a2)?,
        i1: DgaMorphism::inclusion(a1, &a)?,
        i2: DgaMorphism::inclusion(a2, &a)?,
        a3: a3.clone(),
        a1: a1.clone(),
        a2: a2.clone(),
        a,
    })
}

/// Pushout for three pieces `L1, L2, L3` with `L1` and `L2` disjoint:
/// `A13` and `A23` may share exactly the generators of `A3`.
pub fn triple_pushout(a3: &Dga, a13: &Dga, a23: &Dga) -> Result<PushoutSquare> {
    let shared: BTreeSet<&str> =
        a13.generators().iter().map(|g| g.name.as_str()).filter(|n| a23.id(n).is_some()).collect();
    let base: BTreeSet<&str> = a3.generators().iter().map(|g| g.name.as_str()).collect();
    if shared != base {
        let odd = shared.symmetric_difference(&base).next().unwrap();
        return Err(LchError::Conflict {
            generator: String::from(*odd),
            detail: "A13 and A23 must overlap exactly in A3".into(),
        });
    }
    pushout(a13, a23, a3)
}

/// The unique `h: A -> B` with `h i1 = h1` and `h i2 = h2`.
pub fn mediating_morphism(sq: &PushoutSquare, h1: &DgaMorphism, h2: &DgaMorphism) -> Result<DgaMorphism> {
    if !h1.source.same_as(&sq.a1) || !h2.source.same_as(&sq.a2) {
        return Err(LchError::Format("h1, h2 must start at A1 and A2".into()));
    }
    if h1.target != h2.target {
        return Err(LchError::Format("h1 and h2 need a common target".into()));
    }
    if h1.coeff_map != h2.coeff_map {
        return Err(LchError::Conflict {
            generator: "<coefficients>".into(),
            detail: "h1 and h2 differ on ring variables".into(),
        });
    }
    let b = &h1.target;
    for g in sq.a3.generators() {
        let (x1, x2) = (h1.image_of(h1.source.lookup(&g.name)?), h2.image_of(h2.source.lookup(&g.name)?));
        if x1 != x2 {
            return Err(LchError::Conflict {
                generator: g.name.clone(),
                detail: alloc::format!("h1 gives {} but h2 gives {}", b.format_element(x1), b.format_element(x2)),
            });
        }
    }
    let mut images: Vec<Element> = Vec::with_capacity(sq.a.num_generators());
    for g in sq.a.generators() {
        let img = match h1.source.id(&g.name) {
            Some(i) => h1.image_of(i).clone(),
            None => h2.image_of(h2.source.lookup(&g.name)?).clone(),
        };
        images.push(img);
    }
    let h = DgaMorphism::new(sq.a.clone(), b.clone(), images, h1.coeff_map.clone())?;
    let rep = h.check();
    if !rep.ok() {
        return Err(LchError::Validation(alloc::format!("glued map is not a chain map: {:?}", rep)));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::front::{knot_dga, side_labels, Event::*, PlatFront};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| String::from(*s)).collect()
    }

    fn example_l() -> Dga {
        Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("z", 0), ("a", 1)], &[("a", "z + x")]).unwrap()
    }

    #[test]
    fn sub_dga_closure() {
        let d = example_l();
        assert_eq!(sub_dga(&d, &names(&["z", "x"])).unwrap().num_generators(), 2);
        let err = sub_dga(&d, &names(&["a"])).unwrap_err();
        assert!(matches!(err, LchError::NotClosed { ref generator, .. } if generator == "a"));
        assert!(sub_dga(&d, &names(&["x", "z", "a"])).unwrap().same_as(&d));
    }

    #[test]
    fn coproduct_and_trivial_pushouts() {
        let a1 = Dga::from_spec(Ring::f2(), 0, &[("a", 1)], &[]).unwrap();
        let a2 = Dga::from_spec(Ring::f2(), 0, &[("b", 2)], &[]).unwrap();
        let a3 = Dga::new(Ring::f2(), 0).unwrap();
        let sq = pushout(&a1, &a2, &a3).unwrap();
        assert_eq!(sq.a.num_generators(), 2);
        assert!(sq.check().ok());
        let d = example_l();
        let sq = pushout(&d, &d, &d).unwrap();
        assert!(sq.a.same_as(&d));
        assert!(triple_pushout(&d, &d, &d).unwrap().a.same_as(&d));
    }

    #[test]
    fn pushout_conflicts() {
        let a3 = Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("y", 0)], &[]).unwrap();
        let a1 = Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("y", 0)], &[("x", "y")]).unwrap();
        let err = pushout(&a1, &a3, &a3).unwrap_err();
        assert!(matches!(err, LchError::Conflict { ref generator, .. } if generator == "x"));
        let b1 = Dga::from_spec(Ring::f2(), 0, &[("x", 0), ("w", 1)], &[]).unwrap();
        let b2 = Dga::from_spec(Ring::f2(), 0, &[("w", 1)], &[]).unwrap();
        let b3 = Dga::new(Ring::f2(), 0).unwrap();
        assert!(matches!(triple_pushout(&b3, &b1, &b2), Err(LchError::Conflict { .. })));
    }

    #[test]
    fn dipped_unknot_square_recovers_the_dga() {
        let dd = PlatFront::new(alloc::vec![L(1), R(1)]).resolve().unwrap().dip(1).unwrap();
        let d = knot_dga(&dd).unwrap();
        let p = partition_by_action(&d, &side_labels(&dd), Action::new(1, 1)).unwrap();
        assert_eq!(p.s3, names(&["a1_1_2"]));
        assert_eq!(p.s1, names(&["b1_1_2"]));
        assert_eq!(p.s2, names(&["c1"]));
        let sq = PushoutSquare::from_partition(&d, &p).unwrap();
        assert!(sq.check().ok());
        assert!(sq.a.same_as(&d));
        // a threshold below every action leaves the boundary empty, and then
        // the disk crossing the cut breaks closure
        assert!(partition_by_action(&d, &side_labels(&dd), Action::new(1, 100)).is_err());
    }

    #[test]
    fn mediating_identity_and_conflict() {
        let dd = PlatFront::new(alloc::vec![L(1), R(1)]).resolve().unwrap().dip(1).unwrap();
        let d = knot_dga(&dd).unwrap();
        let p = partition_by_action(&d, &side_labels(&dd), Action::new(1, 1)).unwrap();
        let sq = PushoutSquare::from_partition(&d, &p).unwrap();
        let h = mediating_morphism(&sq, &sq.i1, &sq.i2).unwrap();
        assert!(h.agrees_with(&DgaMorphism::identity(&sq.a)));
        let mut bad = sq.i2.clone();
        let a = bad.source.lookup("a1_1_2").unwrap();
        bad.images[a as usize] = Element::zero();
        assert!(matches!(mediating_morphism(&sq, &sq.i1, &bad), Err(LchError::Conflict { .. })));
    }
}
