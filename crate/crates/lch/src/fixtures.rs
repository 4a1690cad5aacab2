//! The fixture corpus, compiled into the binary.

use lch_core::front::PlatFront;
use lch_core::Dga;

use crate::error::{Error, Result};
use crate::text::{parse_dga, parse_front};

pub struct Fixture {
    pub file: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($f:literal) => {
        Fixture { file: $f, text: include_str!(concat!("../fixtures/", $f)) }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("unknot.front"),
    fixture!("stabilized_unknot.front"),
    fixture!("trefoil.front"),
    fixture!("chekanov_a.front"),
    fixture!("chekanov_b.front"),
    fixture!("example_l.dga"),
    fixture!("example_l_prime.dga"),
    fixture!("sphere3.dga"),
    fixture!("example_l_sphere.corrections"),
    fixture!("dipped_unknot.square.json"),
    fixture!("dipped_trefoil.square.json"),
];

pub fn get(file: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.file == file || f.file.split('.').next() == Some(file))
        .ok_or_else(|| Error::Usage(format!("no fixture `{file}`")))
}

pub fn front(name: &str) -> PlatFront {
    let f = get(name).expect("known fixture");
    parse_front(f.text, f.file).expect("fixture parses")
}

pub fn dga(name: &str) -> Dga {
    let f = get(name).expect("known fixture");
    parse_dga(f.text, f.file).expect("fixture parses")
}

/// Knot fixtures, by stem.
pub const KNOTS: &[&str] = &["unknot", "stabilized_unknot", "trefoil", "chekanov_a", "chekanov_b"];
