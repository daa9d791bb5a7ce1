//! Tau-functions of big-cell points, Baker functions and the Hirota check.
//!
//! For a point `U` over the base field, `tau_U(g) = Omega_+(gU) / Omega_+(U)`
//! as a function of `g` in `Gamma_-`, computed at the universal element
//! `v = 1 + sum x_i z^-i` over `k[x_1..x_d]`. The result is a polynomial of
//! weight at most `d`.

mod baker;
mod hirota;

use std::collections::BTreeMap;

pub use baker::{baker, BakerFunction};
pub use hirota::hirota_kp_check;

use crate::error::{Error, Result};
use crate::gamma::universal_v;
use crate::grassmann::{GrassPoint, MayaDiagram, Partition};
use crate::scalars::{BaseField, RingElement, RingRef, Scalar};
use crate::schur;

/// `tau_U` modulo weight `> d`, together with its normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPolynomial {
    pub value: RingElement,
    /// `Omega_+(U)`, the value the polynomial was divided by.
    pub delta: RingElement,
    /// Human-readable description of the source point.
    pub point_ref: String,
}

impl TauPolynomial {
    pub fn degree_bound(&self) -> u32 {
        self.value.ring().degree_bound()
    }

    pub fn base(&self) -> BaseField {
        self.value.ring().base()
    }
}

/// Checks shared by both paths; returns `Omega_+(U)`.
fn big_cell_delta(u: &GrassPoint, d: u32) -> Result<RingElement> {
    if !u.ring().is_field() {
        return Err(Error::precondition(
            "tau-functions are computed for points over the base field",
        ));
    }
    if u.window_high() < d as i64 {
        return Err(Error::precision(format!(
            "window below z^{} but degree {d} needs rows up to z^{}",
            u.window_high(),
            d as i64 - 1
        )));
    }
    if u.index()? != 0 {
        return Err(Error::precondition("point is not of index zero"));
    }
    let delta = u.plucker(&MayaDiagram::vacuum())?;
    if !delta.is_unit() {
        return Err(Error::precondition("point is not in the big cell"));
    }
    Ok(delta)
}

fn lift_scalar(ring: &RingRef, c: &RingElement) -> RingElement {
    RingElement::constant(ring, c.constant_term())
}

/// `Omega_+(vU) / Omega_+(U)` through the action of the universal element.
pub fn tau_direct(u: &GrassPoint, d: u32) -> Result<TauPolynomial> {
    let delta = big_cell_delta(u, d)?;
    let v = universal_v(u.ring().base(), d);
    let ring = v.ring().clone();
    let moved = u.map_into(&ring)?.act(&v)?;
    let top = moved.plucker(&MayaDiagram::vacuum())?;
    let inv = lift_scalar(&ring, &delta).inverse()?;
    Ok(TauPolynomial {
        value: &top * &inv,
        delta,
        point_ref: u.to_string(),
    })
}

/// The Plücker coordinates `Omega_lambda(U)` for `|lambda| <= d`.
pub fn plucker_vector(u: &GrassPoint, d: u32) -> Result<BTreeMap<Partition, Scalar>> {
    let mut out = BTreeMap::new();
    for lambda in Partition::up_to(d) {
        let c = u.plucker(&MayaDiagram::from_partition(&lambda))?;
        out.insert(lambda, c.constant_term());
    }
    Ok(out)
}

/// `sum_lambda F_lambda Omega_lambda(U) / Omega_+(U)`.
pub fn tau_schur(u: &GrassPoint, d: u32) -> Result<TauPolynomial> {
    let delta = big_cell_delta(u, d)?;
    let base = u.ring().base();
    let dinv = delta.constant_term().inv().expect("delta is a unit");
    let coords: BTreeMap<Partition, Scalar> = plucker_vector(u, d)?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (p, c.mul(&dinv)))
        .collect();
    Ok(TauPolynomial {
        value: schur::bosonize(base, &coords, d)?,
        delta,
        point_ref: u.to_string(),
    })
}
