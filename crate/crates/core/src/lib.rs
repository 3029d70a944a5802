//! Exact lattice arithmetic for counting prenilpotent pairs of roots in E10.
//!
//! The pipeline runs from the E10 root lattice through p-adic genus symbols,
//! genus existence, the Smith-Minkowski-Siegel mass of the orthogonal
//! complement genus, discriminant-form gluing, and finally the polynomial
//! lower bound on the number of Weyl-orbits of prenilpotent pairs.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod e10;
pub mod error;
pub mod genus;
pub mod lattice;
pub mod mass;
pub mod padic;
pub mod verify;

pub use error::{Error, Result};
