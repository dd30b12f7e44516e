//! Exact computations for degenerate Eisenstein series on the split group
//! of type F4: root data and Weyl-group combinatorics, the finite
//! Iwahori–Hecke algebra and normalised intertwining operators at
//! reducibility points, Gindikin–Karpelevich factors over a formal
//! completed zeta function, and the constant-term class analysis.

pub mod chars;
pub mod constant_term;
pub mod error;
pub mod fixtures;
pub mod hecke;
pub mod rootsys;
pub mod scalars;
pub mod verify;
pub mod weyl;
pub mod zeta_gk;

pub use error::{Error, Result};
