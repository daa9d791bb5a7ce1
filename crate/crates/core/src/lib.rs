//! Exact algebra on the Grassmannian of `k((z))` over the rationals and
//! prime fields.
//!
//! Infinite objects (Laurent series, subspaces of `k((z))`, tau-functions)
//! are carried at explicit finite precision, and every operation reports the
//! window on which its result is exact.

pub mod error;
pub mod gamma;
pub mod grassmann;
pub mod laurent;
pub mod linalg;
pub mod pairings;
pub mod scalars;
pub mod schur;
pub mod serial;
pub mod tau;
pub mod testgen;
pub mod verify;

pub use error::{Error, Result};
