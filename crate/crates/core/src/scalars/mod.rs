//! Exact arithmetic: base fields and truncated polynomial rings over them.

mod field;
mod ring;

pub use field::{BaseField, Scalar};
pub use ring::{Algebra, CoeffRing, Monomial, RingElement, RingRef};

use crate::error::Result;

/// `a + b` in a common ring.
pub fn ring_add(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.checked_add(b)
}

/// `a * b` in a common ring, truncated at the degree bound.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.checked_mul(b)
}

pub fn is_nilpotent(a: &RingElement) -> bool {
    a.is_nilpotent()
}

pub fn ring_inverse(a: &RingElement) -> Result<RingElement> {
    a.inverse()
}
