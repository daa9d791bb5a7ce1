//! The residue pairing on the Lie algebra of `Gamma` and the commutator
//! pairing of the central extension.
//!
//! Lifts are Toeplitz operators `T(f) v = [f v]_+` on `V^+ = k[[z]]`. For
//! `g = g_- u g_+` one has `T(g) = T(g_-) u T(g_+)`, inverted factorwise, and
//! the commutator `T(g1) T(g2) T(g1)^-1 T(g2)^-1` differs from the identity
//! only on low exponents. Its determinant on `span{z^0..z^(W-1)}` is the
//! pairing once `W` clears the principal lengths involved.

use crate::error::{Error, Result};
use crate::gamma::GammaElement;
use crate::laurent::LaurentElement;
use crate::linalg;
use crate::scalars::RingElement;

/// Orientation of the commutator pairing, reported with every result.
pub const COMMUTATOR_ORIENTATION: &str = "T(g1) T(g2) T(g1)^-1 T(g2)^-1 on k[[z]]";

/// A tangent vector `1 + eps f` to `Gamma` at the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub series: LaurentElement,
}

impl LieElement {
    pub fn new(series: LaurentElement) -> Self {
        LieElement { series }
    }
}

/// `res(f dg)`, the coefficient of `z^-1` in `f g'`.
pub fn residue_pairing(f: &LieElement, g: &LieElement) -> Result<RingElement> {
    let prod = f.series.checked_mul(&g.series.derivative())?;
    prod.residue()
}

/// Principal length of the inverse of the `Gamma_-` factor.
fn inverse_minus_length(g: &GammaElement) -> Result<i64> {
    Ok(g.gminus().invert()?.principal_length() as i64)
}

/// Smallest window at which [`commutator_pairing`] is exact.
pub fn commutator_window_bound(g1: &GammaElement, g2: &GammaElement) -> Result<i64> {
    let p1 = g1.principal_length() as i64;
    let p2 = g2.principal_length() as i64;
    Ok(p1.max(p2) + inverse_minus_length(g1)? + inverse_minus_length(g2)?)
}

struct Lift {
    minus: LaurentElement,
    unit: RingElement,
    plus: LaurentElement,
    plus_inv: LaurentElement,
    minus_inv: LaurentElement,
    unit_inv: RingElement,
}

impl Lift {
    fn new(g: &GammaElement, height: i64) -> Result<Self> {
        Ok(Lift {
            minus: g.gminus().clone(),
            unit: g.unit().clone(),
            plus: g.gplus().truncated(height),
            plus_inv: g.gplus().truncated(height).invert()?,
            minus_inv: g.gminus().invert()?,
            unit_inv: g.unit().inverse()?,
        })
    }

    fn toeplitz(f: &LaurentElement, v: &LaurentElement, height: i64) -> LaurentElement {
        f.mul(v).nonnegative_part().truncated(height)
    }

    fn apply(&self, v: &LaurentElement, height: i64) -> LaurentElement {
        let v = Self::toeplitz(&self.plus, v, height).scale(&self.unit);
        Self::toeplitz(&self.minus, &v, height)
    }

    fn apply_inverse(&self, v: &LaurentElement, height: i64) -> LaurentElement {
        let v = Self::toeplitz(&self.minus_inv, v, height).scale(&self.unit_inv);
        Self::toeplitz(&self.plus_inv, &v, height)
    }
}

/// `[g1, g2]`, the determinant of the commutator of the lifts on the first
/// `w` powers of `z`.
pub fn commutator_pairing(g1: &GammaElement, g2: &GammaElement, w: i64) -> Result<RingElement> {
    if g1.ring() != g2.ring() {
        return Err(Error::RingMismatch("pairing arguments".into()));
    }
    if g1.zpower() != 0 || g2.zpower() != 0 {
        return Err(Error::precondition("the pairing is defined for zpower 0"));
    }
    let bound = commutator_window_bound(g1, g2)?;
    if w < bound.max(1) {
        return Err(Error::precision(format!(
            "window {w} is below the stable bound {}",
            bound.max(1)
        )));
    }
    let ring = g1.ring();
    let height = w
        + g1.principal_length() as i64
        + g2.principal_length() as i64
        + inverse_minus_length(g1)?
        + inverse_minus_length(g2)?
        + 1;
    let a = Lift::new(g1, height)?;
    let b = Lift::new(g2, height)?;
    let cols: Vec<LaurentElement> = (0..w)
        .map(|n| {
            let v = LaurentElement::z_power(ring, n).truncated(height);
            let v = b.apply_inverse(&v, height);
            let v = a.apply_inverse(&v, height);
            let v = b.apply(&v, height);
            a.apply(&v, height)
        })
        .collect();
    let m: Vec<Vec<RingElement>> = (0..w)
        .map(|r| cols.iter().map(|c| c.coeff_unchecked(r)).collect())
        .collect();
    Ok(linalg::det(ring, &m))
}
