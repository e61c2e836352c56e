//! Exact counting of physical Bethe states in twisted, partially twisted and
//! untwisted integrable spin chains.
//!
//! The pipeline is: restricted-occupancy coefficients `c(M)` from a
//! generating function ([`occupancy`]), a signed difference stencil read off
//! a Weyl denominator ([`characters`]), and the resulting multiplicities,
//! branching coefficients and completeness sums ([`counting`]). Every count
//! has an independent brute-force route for verification.

pub mod characters;
pub mod combinat;
pub mod counting;
pub mod error;
pub mod occupancy;
pub mod poly;
pub mod rootsys;

pub use error::{Error, Result};
