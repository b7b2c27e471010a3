//! Exact bounds, certificates and search for the real Buchstaber invariant
//! `s_R(m, p)` of simplex skeleta and the integer program `m_k(b)` behind it.

pub mod cache;
pub mod check;
pub mod closed_forms;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod realizability;
pub mod solver;
pub mod table;

pub use error::{Error, Result};
