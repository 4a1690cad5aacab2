//! Versioned JSON documents. DGAs are embedded in their text format; maps
//! are given by the image expression of each source generator.

use std::collections::BTreeMap;

use lch_core::augment::{Augmentation, GoodPointSet};
use lch_core::border::PushoutSquare;
use lch_core::{Dga, DgaMorphism, Field, LchError, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{parse_dga, print_dga};

pub const SQUARE_SCHEMA: &str = "lch.square/1";
pub const MORPHISM_SCHEMA: &str = "lch.morphism/1";
pub const AUG_SCHEMA: &str = "lch.aug/1";
pub const GOOD_SCHEMA: &str = "lch.goodpoints/1";
pub const REPORT_SCHEMA: &str = "lch.report/1";

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Core(LchError::Format(format!("expected schema `{want}`, found `{found}`"))));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    /// Source generator name to image expression in the target.
    pub images: BTreeMap<String, String>,
    /// Source ring variable to a unit monomial of the target ring.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coeff: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn from_morphism(m: &DgaMorphism) -> MapDoc {
        let images = m
            .source
            .generators()
            .iter()
            .zip(&m.images)
            .map(|(g, x)| (g.name.clone(), m.target.format_element(x)))
            .collect();
        let coeff = m
            .source
            .ring()
            .vars()
            .iter()
            .zip(&m.coeff_map)
            .map(|(v, c)| (v.clone(), m.target.ring().format_elem(c)))
            .collect();
        MapDoc { images, coeff }
    }

    pub fn to_morphism(&self, source: &Dga, target: &Dga) -> Result<DgaMorphism> {
        let mut images = Vec::with_capacity(source.num_generators());
        for g in source.generators() {
            let e = self
                .images
                .get(&g.name)
                .ok_or_else(|| LchError::Format(format!("no image for generator `{}`", g.name)))?;
            images.push(target.parse_element(e)?);
        }
        if let Some(k) = self.images.keys().find(|k| source.id(k).is_none()) {
            return Err(LchError::UnknownGenerator(k.clone()).into());
        }
        let mut coeff = DgaMorphism::default_coeff_map(source, target);
        for (v, e) in &self.coeff {
            let i =
                source.ring().var_index(v).ok_or_else(|| LchError::Format(format!("unknown ring variable `{v}`")))?;
            let x = target.parse_element(e)?;
            coeff[i] = x
                .constant_term()
                .filter(|_| x.num_terms() == 1)
                .cloned()
                .ok_or_else(|| LchError::Format(format!("image of `{v}` must be a ring monomial")))?;
        }
        Ok(DgaMorphism::new(source.clone(), target.clone(), images, coeff)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub schema: String,
    pub a3: String,
    pub a1: String,
    pub a2: String,
    pub a: String,
    pub i31: MapDoc,
    pub i32: MapDoc,
    pub i1: MapDoc,
    pub i2: MapDoc,
}

impl SquareDoc {
    pub fn from_square(sq: &PushoutSquare) -> SquareDoc {
        SquareDoc {
            schema: SQUARE_SCHEMA.into(),
            a3: print_dga(&sq.a3),
            a1: print_dga(&sq.a1),
            a2: print_dga(&sq.a2),
            a: print_dga(&sq.a),
            i31: MapDoc::from_morphism(&sq.i31),
            i32: MapDoc::from_morphism(&sq.i32),
            i1: MapDoc::from_morphism(&sq.i1),
            i2: MapDoc::from_morphism(&sq.i2),
        }
    }

    pub fn to_square(&self) -> Result<PushoutSquare> {
        check_schema(&self.schema, SQUARE_SCHEMA)?;
        let a3 = parse_dga(&self.a3, "square.a3")?;
        let a1 = parse_dga(&self.a1, "square.a1")?;
        let a2 = parse_dga(&self.a2, "square.a2")?;
        let a = parse_dga(&self.a, "square.a")?;
        Ok(PushoutSquare {
            i31: self.i31.to_morphism(&a3, &a1)?,
            i32: self.i32.to_morphism(&a3, &a2)?,
            i1: self.i1.to_morphism(&a1, &a)?,
            i2: self.i2.to_morphism(&a2, &a)?,
            a3,
            a1,
            a2,
            a,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub schema: String,
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub map: MapDoc,
}

impl MorphismDoc {
    pub fn from_morphism(m: &DgaMorphism) -> MorphismDoc {
        MorphismDoc {
            schema: MORPHISM_SCHEMA.into(),
            source: print_dga(&m.source),
            target: print_dga(&m.target),
            map: MapDoc::from_morphism(m),
        }
    }

    pub fn to_morphism(&self) -> Result<DgaMorphism> {
        check_schema(&self.schema, MORPHISM_SCHEMA)?;
        let s = parse_dga(&self.source, "morphism.source")?;
        let t = parse_dga(&self.target, "morphism.target")?;
        self.map.to_morphism(&s, &t)
    }
}

/// One augmentation; generators left out take the value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugDoc {
    pub schema: String,
    pub field: String,
    pub values: BTreeMap<String, u32>,
}

impl AugDoc {
    pub fn from_aug(d: &Dga, e: &Augmentation) -> AugDoc {
        AugDoc {
            schema: AUG_SCHEMA.into(),
            field: d.field().name(),
            values: e.support(d).into_iter().map(|(n, v)| (n.to_string(), v.0)).collect(),
        }
    }

    pub fn to_aug(&self, d: &Dga) -> Result<Augmentation> {
        check_schema(&self.schema, AUG_SCHEMA)?;
        if Field::parse(&self.field)? != *d.field() {
            return Err(
                LchError::Format(format!("augmentation over {} for a DGA over {}", self.field, d.field())).into()
            );
        }
        let mut e = Augmentation::zero(d);
        for (n, &v) in &self.values {
            e.values[d.lookup(n)? as usize] = d.field().from_code(v as i64)?;
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPoint {
    pub at: Vec<u32>,
    pub augmentations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPointsDoc {
    pub schema: String,
    pub field: String,
    pub vars: Vec<String>,
    pub points: Vec<GoodPoint>,
}

impl GoodPointsDoc {
    pub fn from_set(g: &GoodPointSet) -> GoodPointsDoc {
        GoodPointsDoc {
            schema: GOOD_SCHEMA.into(),
            field: g.field.name(),
            vars: g.vars.clone(),
            points: g
                .points
                .iter()
                .map(|(p, n)| GoodPoint { at: p.iter().map(|s| s.0).collect(), augmentations: *n })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<GoodPointSet> {
        check_schema(&self.schema, GOOD_SCHEMA)?;
        let field = Field::parse(&self.field)?;
        let mut points = Vec::new();
        for p in &self.points {
            if p.at.len() != self.vars.len() {
                return Err(LchError::Format("good point with the wrong number of coordinates".into()).into());
            }
            let at: Vec<Scalar> =
                p.at.iter().map(|&c| field.from_code(c as i64)).collect::<std::result::Result<_, _>>()?;
            points.push((at, p.augmentations));
        }
        Ok(GoodPointSet { field, vars: self.vars.clone(), points })
    }
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lch_core::border::partition_by_action;
    use lch_core::front::{knot_dga, side_labels, Event::*, PlatFront};

    #[test]
    fn square_round_trip() {
        let dd = PlatFront::new(vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).resolve().unwrap().dip(2).unwrap();
        let d = knot_dga(&dd).unwrap();
        let p = partition_by_action(&d, &side_labels(&dd), lch_core::Action::from_integer(1)).unwrap();
        let sq = PushoutSquare::from_partition(&d, &p).unwrap();
        let doc = SquareDoc::from_square(&sq);
        let text = to_json(&doc);
        let back: SquareDoc = from_json(&text).unwrap();
        let sq2 = back.to_square().unwrap();
        assert_eq!(sq2, sq);
        assert_eq!(to_json(&SquareDoc::from_square(&sq2)), text);
    }

    #[test]
    fn augmentation_round_trip() {
        let d = PlatFront::new(vec![L(1), L(1), X(2), X(2), X(2), R(1), R(1)]).dga().unwrap().at_one().unwrap();
        for e in lch_core::augment::enumerate_augmentations(&d, &Default::default()).unwrap() {
            let doc = AugDoc::from_aug(&d, &e);
            let back: AugDoc = from_json(&to_json(&doc)).unwrap();
            assert_eq!(back.to_aug(&d).unwrap(), e);
        }
        let bad = AugDoc { schema: AUG_SCHEMA.into(), field: "F2".into(), values: [("q".to_string(), 1)].into() };
        assert!(bad.to_aug(&d).is_err());
    }
}
