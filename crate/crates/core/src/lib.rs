//! Exact symbolic calculus for contact metric and symplectic structures.
//!
//! Scalars are rational functions with rational coefficients, optionally
//! taken modulo one polynomial relation. On top of them sit vector fields and
//! forms, frame geometry, contact metric structures, and the Levi-Civita,
//! Tanaka-Webster, canonical and bi-Legendrian connections with checkers for
//! their characterizing properties.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod scalar;
pub mod tensor;
pub mod report;
pub mod contact;
pub mod connection;
pub mod symplectic;
pub mod catalog;
