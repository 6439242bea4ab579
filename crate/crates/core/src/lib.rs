//! Generalized Niho-type cyclic codes over GF(q).
//!
//! The crate builds the two code families `C1 = C_(d0,…,dt)` and
//! `C2 = C_(d̃1,…,d̃t)`, derives their parameters, and computes weight
//! distributions two independent ways: in closed form from power moments
//! ([`theory`]) and by exhaustive enumeration over an explicit field tower
//! ([`enumerator`]).

pub mod arith;
pub mod fields;
pub mod fixtures;
pub mod distribution;
pub mod enumerator;
pub mod params;
pub mod theory;
