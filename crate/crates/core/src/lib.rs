//! Exact computations for finite crystallographic reflection groups and
//! Coxeter matroids: Bruhat order, tight containment of polyhedra in
//! translated root cones, the universal valuation `F`, the universal
//! valuative invariants `G` and `G+`, Coxeter Schubert matroids and
//! interlace polynomials of delta-matroids.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod coxeter;
pub mod exactmath;
pub mod invariants;
pub mod io;
pub mod matroid;
pub mod polyhedral;

pub use error::{Error, Result};
