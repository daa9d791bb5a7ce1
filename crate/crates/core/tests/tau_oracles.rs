//! Tau and Baker functions against closed forms and against each other
//! across characteristics.

use std::collections::BTreeMap;

use algtau::grassmann::GrassPoint;
use algtau::laurent::LaurentElement;
use algtau::scalars::{BaseField, CoeffRing, RingElement, Scalar};
use algtau::schur::expand_in_schur;
use algtau::tau::{baker, plucker_vector, tau_direct, tau_schur};
use algtau::testgen::Generator;
use algtau::Error;

fn point_from_ints(base: BaseField, depth: i64, window: i64, cols: &[Vec<(i64, i64)>]) -> Option<GrassPoint> {
    let ring = CoeffRing::field(base);
    let cols = cols
        .iter()
        .map(|c| {
            let terms: Vec<(i64, Scalar)> = c.iter().map(|&(e, a)| (e, base.from_i64(a))).collect();
            LaurentElement::from_scalars(&ring, &terms).truncated(window)
        })
        .collect();
    GrassPoint::new(&ring, depth, window, cols).ok()
}

#[test]
fn baker_of_a_one_column_point() {
    // tau = 1 + c x1, so psi = v^-1 (1 + c z / (1 + c x1))
    let q = BaseField::Rationals;
    let (d, m) = (3u32, 4i64);
    for c in [-2i64, 1, 5] {
        let u = point_from_ints(q, 1, 20, &[vec![(-1, 1), (0, c)]]).unwrap();
        let psi = baker(&u, d, m).unwrap();
        let ring = CoeffRing::graded(q, d);
        let x1 = RingElement::var(&ring, 0);
        let cc = RingElement::from_i64(&ring, c);
        let mut w = vec![RingElement::one(&ring)];
        for n in 1..=d as usize {
            let mut acc = RingElement::zero(&ring);
            for i in 1..=n {
                acc = &acc - &(&RingElement::var(&ring, i - 1) * &w[n - i]);
            }
            w.push(acc);
        }
        let mut u_inv = RingElement::zero(&ring);
        let mut pow = RingElement::one(&ring);
        let step = -&(&cc * &x1);
        while !pow.is_zero() {
            u_inv = &u_inv + &pow;
            pow = &pow * &step;
        }
        let lead = &cc * &u_inv;
        let mut want: BTreeMap<i64, RingElement> = BTreeMap::new();
        for (n, wn) in w.iter().enumerate() {
            let e = -(n as i64);
            let slot = want.entry(e).or_insert_with(|| RingElement::zero(&ring));
            *slot = &*slot + wn;
            let slot = want.entry(e + 1).or_insert_with(|| RingElement::zero(&ring));
            *slot = &*slot + &(&lead * wn);
        }
        let want = LaurentElement::new(&ring, want, Some(m)).unwrap();
        assert_eq!(psi.value, want, "c = {c}");
    }
}

#[test]
fn baker_needs_a_deep_enough_window() {
    let q = BaseField::Rationals;
    let u = point_from_ints(q, 1, 6, &[vec![(-1, 1), (0, 3)]]).unwrap();
    assert!(matches!(baker(&u, 3, 4), Err(Error::Precision(_))));
}

#[test]
fn reduction_mod_p_commutes_with_tau() {
    let mut gen = Generator::new(11);
    let d = 5;
    let mut compared = 0;
    for _ in 0..30 {
        let n = gen.int(1, 3);
        let cols: Vec<Vec<(i64, i64)>> = (0..n)
            .map(|j| {
                let mut c = vec![(-n + j, 1)];
                c.extend((-n + j + 1..d as i64).map(|e| (e, gen.int(-4, 4))));
                c
            })
            .collect();
        let uq = point_from_ints(BaseField::Rationals, n, d as i64, &cols).unwrap();
        let tq = tau_direct(&uq, d).unwrap();
        for p in [3u64, 5, 7] {
            let fp = BaseField::prime(p).unwrap();
            let Some(up) = point_from_ints(fp, n, d as i64, &cols) else {
                continue;
            };
            let tp = match tau_direct(&up, d) {
                Ok(t) => t,
                // delta vanishes mod p
                Err(Error::Precondition(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let ring_p = CoeffRing::graded(fp, d);
            let reduced = RingElement::from_terms(
                &ring_p,
                tq.value.terms().map(|(m, c)| (m.clone(), fp.parse(&c.encode()).unwrap())),
            )
            .unwrap();
            assert_eq!(reduced, tp.value, "p = {p}, point {uq}");
            assert_eq!(tau_schur(&up, d).unwrap().value, tp.value);
            compared += 1;
        }
    }
    assert!(compared > 40, "only {compared} reductions were comparable");
}

#[test]
fn schur_coordinates_of_tau_are_the_pluecker_vector() {
    let q = BaseField::Rationals;
    let field = CoeffRing::field(q);
    let mut gen = Generator::new(5);
    for _ in 0..10 {
        let u = gen.big_cell_point(&field, 3, 5, 4);
        let t = tau_direct(&u, 5).unwrap();
        let coords = expand_in_schur(&t.value).unwrap();
        let delta = t.delta.constant_term();
        for (lambda, omega) in plucker_vector(&u, 5).unwrap() {
            let got = coords.get(&lambda).cloned().unwrap_or_else(|| q.zero());
            assert_eq!(got, omega.div(&delta).unwrap(), "{lambda} at {u}");
        }
    }
}

#[test]
fn tau_has_constant_term_one_and_bounded_weight() {
    let field = CoeffRing::field(BaseField::prime(7).unwrap());
    let mut gen = Generator::new(9);
    for _ in 0..10 {
        let u = gen.big_cell_point(&field, 3, 4, 6);
        let t = tau_direct(&u, 4).unwrap();
        assert!(t.value.constant_term().is_one());
        assert!(t.value.max_weight().unwrap_or(0) <= 4);
        assert_eq!(t.value, tau_schur(&u, 4).unwrap().value);
    }
}
