//! Exact level-1 models of planar simple nested fractals.
//!
//! Points live in the ring of cyclotomic integers, so every coincidence of
//! vertices is decided without rounding. On top of that sit the axiom
//! checks, the good-labeling deciders and the constructive generators.

#![no_std]

extern crate alloc;

pub mod construct;
pub mod cyclotomic;
pub mod geometry;
pub mod glp;
pub mod model;

pub use cyclotomic::{CycError, CycInt, IntPolynomial};
pub use model::{FractalSpec, ModelError};
