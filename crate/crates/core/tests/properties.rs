//! Algebraic invariants under random inputs.

use algtau::gamma::{factorize, witt_add, GammaElement};
use algtau::grassmann::{maya_to_partition, partition_to_maya, MayaDiagram, Partition};
use algtau::laurent::LaurentElement;
use algtau::pairings::{residue_pairing, LieElement};
use algtau::scalars::{BaseField, CoeffRing, RingElement, RingRef};
use algtau::testgen::Generator;
use proptest::prelude::*;

fn ring_q() -> RingRef {
    CoeffRing::new(BaseField::Rationals, 2, 3)
}

fn ring_f5() -> RingRef {
    CoeffRing::weighted(BaseField::prime(5).unwrap(), vec![1, 2], 4).unwrap()
}

/// Sparse polynomials from `(e1, e2, a, b)` tuples meaning `a/b x1^e1 x2^e2`.
fn element(ring: &RingRef) -> impl Strategy<Value = RingElement> {
    let ring = ring.clone();
    prop::collection::vec((0u32..4, 0u32..3, -9i64..10, 1i64..5), 0..6).prop_map(move |ts| {
        let base = ring.base();
        ts.into_iter().fold(RingElement::zero(&ring), |acc, (e1, e2, a, b)| {
            let m = RingElement::monomial(&ring, vec![e1, e2], base.ratio(a, b));
            &acc + &m
        })
    })
}

fn rings() -> impl Strategy<Value = RingRef> {
    prop_oneof![Just(ring_q()), Just(ring_f5())]
}

fn triple() -> impl Strategy<Value = (RingElement, RingElement, RingElement)> {
    rings().prop_flat_map(|r| (element(&r), element(&r), element(&r)))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        let ring = a.ring().clone();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &RingElement::one(&ring), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn units_are_exactly_the_elements_with_invertible_constant_term(a in rings().prop_flat_map(|r| element(&r))) {
        let ring = a.ring().clone();
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(!a.constant_term().is_zero());
                prop_assert!((&a * &inv).is_one());
            }
            Err(_) => prop_assert!(a.constant_term().is_zero()),
        }
        // everything without constant term is nilpotent
        let n = &a - &RingElement::constant(&ring, a.constant_term());
        prop_assert!(n.pow(ring.nilpotency_bound() + 1).is_zero());
    }

    #[test]
    fn lowering_the_bound_is_a_homomorphism((a, b, _) in triple()) {
        let src = a.ring().clone();
        let dst = CoeffRing::weighted(src.base(), src.weights().to_vec(), src.degree_bound() - 1).unwrap();
        let f = |x: &RingElement| x.map_into(&dst).unwrap();
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        prop_assert!(f(&RingElement::one(&src)).is_one());
    }

    #[test]
    fn laurent_inverse_multiplies_back(seed in any::<u64>(), m in 4i64..10) {
        let mut gen = Generator::new(seed);
        let ring = if seed % 2 == 0 { ring_q() } else { ring_f5() };
        let f = gen.invertible_series(&ring, m);
        let inv = f.invert().unwrap();
        let prod = f.mul(&inv);
        prop_assert!(prod.agrees_with(&LaurentElement::one(&ring)));
    }

    #[test]
    fn factorization_is_unique(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let ring = if seed % 2 == 0 { ring_q() } else { ring_f5() };
        let g = gen.gamma(&ring, 2, 3);
        let n = gen.int(-3, 3);
        let g = GammaElement::new(g.gminus().clone(), g.unit().clone(), g.gplus().clone(), n).unwrap();
        prop_assert_eq!(factorize(&g.to_laurent()).unwrap(), g);
    }

    #[test]
    fn group_law_agrees_with_series_product(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let ring = ring_q();
        let g = gen.gamma(&ring, 2, 2);
        let h = gen.gamma(&ring, 1, 3);
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(gh.to_laurent(), g.to_laurent().mul(&h.to_laurent()));
        // the inverse of an exact plus factor is infinite, so cut it first
        let cut = gh.truncated(8);
        let e = cut.mul(&cut.inverse().unwrap()).unwrap();
        prop_assert!(e.to_laurent().agrees_with(&LaurentElement::one(&ring)));
        prop_assert!(gh.inverse().is_err());
    }

    #[test]
    fn residue_pairing_is_alternating(
        f in prop::collection::vec((-4i64..5, -5i64..6), 0..5),
        g in prop::collection::vec((-4i64..5, -5i64..6), 0..5),
    ) {
        let q = BaseField::Rationals;
        let ring = CoeffRing::field(q);
        let mk = |ts: &[(i64, i64)]| {
            let terms: Vec<_> = ts.iter().map(|&(e, c)| (e, q.from_i64(c))).collect();
            LieElement::new(LaurentElement::from_scalars(&ring, &terms))
        };
        let (f, g) = (mk(&f), mk(&g));
        let fg = residue_pairing(&f, &g).unwrap();
        let gf = residue_pairing(&g, &f).unwrap();
        prop_assert!((&fg + &gf).is_zero());
        prop_assert!(residue_pairing(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn witt_sum_is_commutative_with_identity(
        a in prop::collection::vec(0i64..7, 4),
        b in prop::collection::vec(0i64..7, 4),
    ) {
        let ring = CoeffRing::field(BaseField::prime(7).unwrap());
        let lift = |v: &[i64]| v.iter().map(|&c| RingElement::from_i64(&ring, c)).collect::<Vec<_>>();
        let (a, b) = (lift(&a), lift(&b));
        prop_assert_eq!(witt_add(&ring, &a, &b, 4).unwrap(), witt_add(&ring, &b, &a, 4).unwrap());
        let zero = lift(&[0, 0, 0, 0]);
        prop_assert_eq!(witt_add(&ring, &a, &zero, 4).unwrap(), a);
    }

    #[test]
    fn maya_partition_bijection(parts in prop::collection::vec(1u32..6, 0..5)) {
        let mut parts = parts;
        parts.sort_unstable_by(|x, y| y.cmp(x));
        let lambda = Partition::new(parts).unwrap();
        let s = partition_to_maya(&lambda);
        prop_assert!(s.is_virtual_cardinal_zero());
        prop_assert_eq!(maya_to_partition(&s).unwrap(), lambda.clone());
        prop_assert_eq!(lambda.transpose().transpose(), lambda);
    }

    #[test]
    fn charged_diagrams_round_trip(parts in prop::collection::vec(1u32..5, 0..4), c in -3i64..4) {
        let mut parts = parts;
        parts.sort_unstable_by(|x, y| y.cmp(x));
        let lambda = Partition::new(parts).unwrap();
        let s = MayaDiagram::from_charged_partition(&lambda, c);
        prop_assert_eq!(s.charge(), c);
        prop_assert_eq!(s.to_charged_partition(), (lambda, c));
    }

    #[test]
    fn plucker_vanishes_exactly_off_chart(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let field = CoeffRing::field(BaseField::Rationals);
        let u = gen.big_cell_point(&field, 3, 4, 3);
        for lambda in Partition::up_to(3) {
            let s = MayaDiagram::from_partition(&lambda);
            prop_assert_eq!(u.in_chart(&s).unwrap(), !u.plucker(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn gamma_preserves_the_index(seed in any::<u64>()) {
        let mut gen = Generator::new(seed);
        let field = CoeffRing::field(BaseField::Rationals);
        let ring = CoeffRing::new(BaseField::Rationals, 1, 2);
        let l = gen.point(&field, 3, 4, 8);
        let g = gen.gamma(&ring, 2, 2);
        let moved = l.map_into(&ring).unwrap().act(&g).unwrap();
        prop_assert_eq!(moved.index().unwrap(), l.index().unwrap());
    }
}
