//! `psi_U = v^-1 tau_U(g phi_1(z)) / tau_U(g)`.
//!
//! The translate `g phi_1(z)` is the product of `v = 1 + sum x_i z^-i` with
//! `(1 - z/w)^-1` in the group variable `w`, whose coordinates are
//! `x'_n = sum_{k <= n} x_{n-k} z^k`. Only products and sums occur, so the
//! same code runs in every characteristic.

use crate::error::{Error, Result};
use crate::gamma::universal_v;
use crate::grassmann::GrassPoint;
use crate::laurent::LaurentElement;
use crate::scalars::{CoeffRing, RingElement};

use super::tau_direct;

/// The Baker function, known below `z^M`, with coefficients in
/// `k[x_1..x_d]` truncated above weight `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BakerFunction {
    pub value: LaurentElement,
    pub point_ref: String,
}

/// Degree of `tau` needed for `psi` to be exact below `z^M` at weight `d`.
pub fn baker_tau_degree(d: u32, m: i64) -> u32 {
    (2 * d as i64 + m - 1).max(d as i64) as u32
}

pub fn baker(u: &GrassPoint, d: u32, m: i64) -> Result<BakerFunction> {
    if m < 1 {
        return Err(Error::precision("the Baker window must reach z^0"));
    }
    let big = baker_tau_degree(d, m);
    let tau = tau_direct(u, big)?;
    let base = u.ring().base();
    let ring = CoeffRing::graded(base, d);
    let x = |j: usize| -> RingElement {
        match j {
            0 => RingElement::one(&ring),
            j if j <= d as usize => RingElement::var(&ring, j - 1),
            _ => RingElement::zero(&ring),
        }
    };
    let top = m + d as i64;
    let shifted: Vec<LaurentElement> = (1..=big as usize)
        .map(|n| {
            LaurentElement::new(
                &ring,
                (0..=n).map(|k| (k as i64, x(n - k))).filter(|(e, _)| *e < top),
                Some(top),
            )
        })
        .collect::<Result<_>>()?;
    let one = LaurentElement::one(&ring).truncated(top);
    let numerator = tau.value.substitute(&shifted, &one);
    let plain: Vec<RingElement> = (1..=big as usize).map(x).collect();
    let denominator = tau.value.substitute(&plain, &RingElement::one(&ring));
    let v_inv = universal_v(base, d).gminus().invert()?;
    let value = v_inv
        .mul(&numerator)
        .scale(&denominator.inverse()?)
        .truncated(m);
    Ok(BakerFunction {
        value,
        point_ref: tau.point_ref,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BaseField;

    #[test]
    fn vacuum_baker_is_v_inverse() {
        let q = BaseField::Rationals;
        let r = CoeffRing::field(q);
        let u = GrassPoint::v_minus(&r, 12);
        let psi = baker(&u, 3, 4).unwrap();
        let v_inv = universal_v(q, 3).gminus().invert().unwrap();
        assert_eq!(psi.value, v_inv.truncated(4));
    }

    #[test]
    fn window_must_be_positive() {
        let r = CoeffRing::field(BaseField::Rationals);
        let u = GrassPoint::v_minus(&r, 12);
        assert!(baker(&u, 2, 0).is_err());
    }
}
