//! Schur polynomials in the coordinates `x_i = h_i`, the duality pairing in
//! which they are orthonormal, and bosonization.
//!
//! Polynomials live in `k[x_1..x_d]` graded by `deg x_i = i` and truncated
//! above `d`, so `F_lambda` with `|lambda| <= d` survives intact.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grassmann::Partition;
use crate::linalg;
use crate::scalars::{BaseField, CoeffRing, Monomial, RingElement, RingRef, Scalar};

/// The ring of symmetric polynomials of weight at most `d`.
pub fn symmetric_ring(base: BaseField, d: u32) -> RingRef {
    CoeffRing::graded(base, d)
}

fn h(ring: &RingRef, i: i64) -> RingElement {
    match i {
        i if i < 0 => RingElement::zero(ring),
        0 => RingElement::one(ring),
        i if (i as usize) <= ring.num_vars() => RingElement::var(ring, i as usize - 1),
        _ => RingElement::zero(ring),
    }
}

fn is_graded(ring: &RingRef) -> bool {
    ring.weights()
        .iter()
        .enumerate()
        .all(|(i, &w)| w as usize == i + 1)
        && ring.num_vars() == ring.degree_bound() as usize
}

/// `F_lambda = det(h_{lambda_i - i + j})` in the given graded ring.
pub fn schur_in(ring: &RingRef, lambda: &Partition) -> Result<RingElement> {
    if !is_graded(ring) {
        return Err(Error::RingMismatch(
            "Schur polynomials live in the graded ring k[x_1..x_d]".into(),
        ));
    }
    if lambda.size() > ring.degree_bound() {
        return Err(Error::precondition(format!(
            "|{lambda}| = {} exceeds the degree bound {}",
            lambda.size(),
            ring.degree_bound()
        )));
    }
    let n = lambda.len();
    let m: Vec<Vec<RingElement>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| h(ring, lambda.part(i) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    Ok(linalg::berkowitz_det(ring, &m))
}

/// `F_lambda` over `k[x_1..x_d]` with `deg x_i = i`.
pub fn schur(base: BaseField, lambda: &Partition, d: u32) -> Result<RingElement> {
    schur_in(&symmetric_ring(base, d), lambda)
}

/// The monomial `prod x_i^{m_i}` attached to a partition with `m_i` parts
/// equal to `i`.
fn monomial_of(lambda: &Partition, vars: usize) -> Monomial {
    let mut m = vec![0; vars];
    for &p in lambda.parts() {
        m[p as usize - 1] += 1;
    }
    m
}

/// Coordinates of a polynomial in the basis `{F_lambda : |lambda| <= d}`.
pub fn expand_in_schur(f: &RingElement) -> Result<BTreeMap<Partition, Scalar>> {
    let ring = f.ring();
    if !is_graded(ring) {
        return Err(Error::RingMismatch("expected the graded ring k[x_1..x_d]".into()));
    }
    let d = ring.degree_bound();
    let vars = ring.num_vars();
    let mut out = BTreeMap::new();
    for w in 0..=d {
        let part = f.component(w);
        if part.is_zero() {
            continue;
        }
        let shapes = Partition::of_size(w);
        let monos: Vec<Monomial> = shapes.iter().map(|p| monomial_of(p, vars)).collect();
        let basis: Vec<RingElement> = shapes
            .iter()
            .map(|p| schur_in(ring, p))
            .collect::<Result<_>>()?;
        let a: Vec<Vec<Scalar>> = monos
            .iter()
            .map(|m| basis.iter().map(|b| b.coeff(m)).collect())
            .collect();
        let rhs: Vec<Vec<Scalar>> = monos.iter().map(|m| vec![part.coeff(m)]).collect();
        let sol = linalg::field_solve(&a, &rhs)?;
        for (p, row) in shapes.into_iter().zip(sol) {
            if !row[0].is_zero() {
                out.insert(p, row[0].clone());
            }
        }
    }
    Ok(out)
}

/// The pairing with `(F_lambda, F_mu) = delta_{lambda mu}`.
pub fn duality_pair(f: &RingElement, g: &RingElement) -> Result<Scalar> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch("pairing arguments".into()));
    }
    let a = expand_in_schur(f)?;
    let b = expand_in_schur(g)?;
    let mut acc = f.ring().base().zero();
    for (p, c) in &a {
        if let Some(c2) = b.get(p) {
            acc = acc.add(&c.mul(c2));
        }
    }
    Ok(acc)
}

/// `B(sum c_lambda Omega_lambda) = sum c_lambda F_lambda`.
pub fn bosonize(
    base: BaseField,
    coords: &BTreeMap<Partition, Scalar>,
    d: u32,
) -> Result<RingElement> {
    let ring = symmetric_ring(base, d);
    let mut acc = RingElement::zero(&ring);
    for (p, c) in coords {
        if BaseField::of(c) != base {
            return Err(Error::RingMismatch("coordinate outside the base field".into()));
        }
        acc = &acc + &schur_in(&ring, p)?.scale(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn small_schur_polynomials() {
        assert_eq!(schur(q(), &p(&[1]), 3).unwrap().to_string(), "x1");
        assert!(schur(q(), &p(&[]), 3).unwrap().is_one());
        assert_eq!(schur(q(), &p(&[1, 1]), 3).unwrap().to_string(), "x1^2 - x2");
        assert_eq!(schur(q(), &p(&[2]), 3).unwrap().to_string(), "x2");
        assert!(schur(q(), &p(&[2, 2]), 3).is_err());
    }

    #[test]
    fn pairing_examples() {
        let r = symmetric_ring(q(), 3);
        let f1 = schur_in(&r, &p(&[1])).unwrap();
        let f2 = schur_in(&r, &p(&[2])).unwrap();
        assert!(duality_pair(&f1, &f1).unwrap().is_one());
        assert!(duality_pair(&f1, &f2).unwrap().is_zero());
        let x1 = RingElement::var(&r, 0);
        let sq = &x1 * &x1;
        assert_eq!(duality_pair(&sq, &sq).unwrap(), q().from_i64(2));
    }

    #[test]
    fn expansion_of_x1_squared() {
        let r = symmetric_ring(q(), 2);
        let x1 = RingElement::var(&r, 0);
        let e = expand_in_schur(&(&x1 * &x1)).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e[&p(&[2])].is_one());
        assert!(e[&p(&[1, 1])].is_one());
    }

    #[test]
    fn bosonization_examples() {
        let mut coords = BTreeMap::new();
        coords.insert(Partition::empty(), q().one());
        assert!(bosonize(q(), &coords, 3).unwrap().is_one());
        let mut coords = BTreeMap::new();
        coords.insert(p(&[1]), q().one());
        assert_eq!(bosonize(q(), &coords, 3).unwrap().to_string(), "x1");
        let mut coords = BTreeMap::new();
        coords.insert(Partition::empty(), q().one());
        coords.insert(p(&[1]), q().from_i64(4));
        assert_eq!(bosonize(q(), &coords, 2).unwrap().to_string(), "1 + 4*x1");
    }

    #[test]
    fn prime_field_schur() {
        let f2 = BaseField::prime(2).unwrap();
        assert_eq!(schur(f2, &p(&[1, 1]), 2).unwrap().to_string(), "x1^2 + x2");
    }
}
