//! Legendrian contact homology DGAs over finite group rings.
//!
//! The core is `no_std` with `alloc`: coefficient rings, free DGAs, plat
//! fronts and their resolved diagrams, pushout squares, augmentations,
//! linearized homology and characteristic algebras.

#![no_std]

extern crate alloc;

pub mod augment;
pub mod border;
pub mod charalg;
pub mod coeff;
pub mod connectsum;
pub mod dga;
pub mod error;
pub mod field;
pub mod front;
pub mod linalg;
pub mod linhom;

/// Chord lengths and filtration levels.
pub type Action = num_rational::Ratio<i128>;

pub use coeff::{GroupRingElem, Ring};
pub use dga::{Dga, DgaMorphism, Element, GenId, Generator};
pub use error::{LchError, Result};
pub use field::{Field, Scalar};
