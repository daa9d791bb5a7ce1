//! The KP hierarchy in Hirota form:
//! `sum_j p_j(-2y) p_{j+1}(D~) exp(sum y_i D_i) tau . tau = 0` identically
//! in `y`, with `D~ = (D_1, D_2/2, D_3/3, ...)` and `p_j` the elementary
//! Schur polynomials. Since `exp(y.D) f.g = f(t+y) g(t-y)` and a Hirota
//! derivative at `y` is an ordinary `y`-derivative of that product, the
//! left side is `E = sum_j p_j(-2y) p_{j+1}(d~_y) [tau(t+y) tau(t-y)]`.

use crate::error::{Error, Result};
use crate::scalars::{CoeffRing, RingElement, RingRef};

use super::TauPolynomial;

/// `p_0..p_n` of the given arguments, from `n p_n = sum_k k a_k p_{n-k}`.
fn elementary_schur(args: &[RingElement], one: &RingElement, n: usize) -> Vec<RingElement> {
    let base = one.ring().base();
    let mut p = vec![one.clone()];
    for m in 1..=n {
        let mut acc = RingElement::zero(one.ring());
        for k in 1..=m.min(args.len()) {
            acc = &acc + &(&args[k - 1] * &p[m - k]).scale(&base.from_i64(k as i64));
        }
        p.push(acc.scale(&base.ratio(1, m as i64)));
    }
    p
}

/// Whether the components of `E` of total weight at most `order + 2`
/// vanish. Those components only involve `tau` below weight `d`, so the
/// check is exact when `order <= d - 3`.
pub fn hirota_kp_check(tau: &TauPolynomial, order: u32) -> Result<bool> {
    let base = tau.base();
    if base.characteristic() != 0 {
        return Err(Error::Characteristic(base.characteristic()));
    }
    let d = tau.degree_bound();
    if d < 3 || order > d - 3 {
        return Err(Error::precision(format!(
            "order {order} needs degree at least {}, tau has degree {d}",
            order + 3
        )));
    }
    let top = order + 2;
    let nv = d as usize;
    let mut weights: Vec<u32> = (1..=d).collect();
    weights.extend(1..=d);
    let ring: RingRef = CoeffRing::weighted(base, weights, d)?;
    let one = RingElement::one(&ring);
    let t = |i: usize| RingElement::var(&ring, i);
    let y = |i: usize| RingElement::var(&ring, nv + i);
    let plus: Vec<RingElement> = (0..nv).map(|i| &t(i) + &y(i)).collect();
    let minus: Vec<RingElement> = (0..nv).map(|i| &t(i) - &y(i)).collect();
    let xp = elementary_schur(&plus, &one, nv);
    let xm = elementary_schur(&minus, &one, nv);
    let g = &tau.value.substitute(&xp[1..], &one) * &tau.value.substitute(&xm[1..], &one);

    let minus_two_y: Vec<RingElement> = (0..nv).map(|i| y(i).scale(&base.from_i64(-2))).collect();
    let py = elementary_schur(&minus_two_y, &one, top as usize);

    let sym = CoeffRing::graded(base, top + 1);
    let sym_one = RingElement::one(&sym);
    let sym_vars: Vec<RingElement> = (0..=top as usize).map(|i| RingElement::var(&sym, i)).collect();
    let ops = elementary_schur(&sym_vars, &sym_one, top as usize + 1);

    let mut e = RingElement::zero(&ring);
    for j in 0..=top as usize {
        let mut applied = RingElement::zero(&ring);
        for (mono, c) in ops[j + 1].terms() {
            let mut h = g.clone();
            let mut scale = c.clone();
            for (i, &k) in mono.iter().enumerate() {
                for _ in 0..k {
                    if i < nv {
                        h = h.derivative(nv + i);
                    } else {
                        h = RingElement::zero(&ring);
                    }
                    scale = scale.mul(&base.ratio(1, i as i64 + 1));
                }
            }
            applied = &applied + &h.scale(&scale);
        }
        e = &e + &(&py[j] * &applied);
    }
    Ok(e.truncate_weight(top).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::BaseField;
    use crate::grassmann::Partition;
    use crate::schur::{schur, symmetric_ring};

    fn wrap(value: RingElement) -> TauPolynomial {
        let delta = RingElement::one(&CoeffRing::field(value.ring().base()));
        TauPolynomial {
            value,
            delta,
            point_ref: String::new(),
        }
    }

    #[test]
    fn vacuum_and_schur_functions_pass() {
        let q = BaseField::Rationals;
        let r = symmetric_ring(q, 6);
        assert!(hirota_kp_check(&wrap(RingElement::one(&r)), 3).unwrap());
        for lambda in Partition::up_to(4) {
            let f = schur(q, &lambda, 6).unwrap();
            assert!(hirota_kp_check(&wrap(f), 3).unwrap(), "{lambda}");
        }
    }

    #[test]
    fn witness_fails() {
        let q = BaseField::Rationals;
        let r = symmetric_ring(q, 6);
        let x1 = RingElement::var(&r, 0);
        let f = &RingElement::one(&r) + &(&x1 * &x1);
        assert!(!hirota_kp_check(&wrap(f), 3).unwrap());
    }

    #[test]
    fn characteristic_p_is_not_applicable() {
        let f3 = BaseField::prime(3).unwrap();
        let r = symmetric_ring(f3, 4);
        let res = hirota_kp_check(&wrap(RingElement::one(&r)), 1);
        assert_eq!(res, Err(Error::Characteristic(3)));
    }
}
