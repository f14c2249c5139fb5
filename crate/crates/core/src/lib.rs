//! Symbolic-numeric toolkit for limit cycles of planar polynomial vector
//! fields: Lyapunov quantities, Melnikov functions, invariant curves and a
//! numerical cycle finder.

pub mod algebra;
pub mod error;
pub mod invariants;
pub mod lyapunov;
pub mod melnikov;
pub mod numerics;
pub mod reproduce;
pub mod sysdef;

pub use error::{Error, Result};
