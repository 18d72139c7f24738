//! Construction and certification of cyclic locally repairable codes (LRCs)
//! with availability.
//!
//! The crate builds q-ary cyclic codes from defining sets assembled out of
//! per-component local root sets plus an optional global set, then
//! certifies what the construction promises: locality and availability of
//! every repair group, lower bounds on the minimum distance (BCH and
//! Hartmann-Tzeng with explicit witnesses), upper bounds on distance and
//! dimension, and exact or bracketed minimum distance by enumeration.
//! Erasure repair through the local groups is included, along with a
//! search for the global root set that maximizes the Hartmann-Tzeng bound.

pub mod bounds;
pub mod construction;
pub mod distance;
mod error;
pub mod gf;
mod linalg;
pub mod locality;
pub mod search;

pub use error::{Error, Result};

pub use construction::{ConstructionParams, CyclicLrc, DefiningSet};
pub use gf::{FieldElement, FiniteField, Poly};
