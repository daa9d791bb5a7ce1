//! Seeded random instances for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gamma::GammaElement;
use crate::grassmann::GrassPoint;
use crate::laurent::LaurentElement;
use crate::linalg;
use crate::scalars::{BaseField, RingElement, RingRef, Scalar};

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// `a/b` with `|a| <= bound` and `1 <= b <= bound`, reduced into `base`.
    pub fn scalar(&mut self, base: BaseField, bound: i64) -> Scalar {
        let a = self.int(-bound, bound);
        match base {
            BaseField::Rationals => base.ratio(a, self.int(1, bound.max(1))),
            BaseField::Prime(_) => base.from_i64(a),
        }
    }

    pub fn nonzero_scalar(&mut self, base: BaseField, bound: i64) -> Scalar {
        loop {
            let s = self.scalar(base, bound);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// A sparse element with a few monomials of weight at most the bound.
    pub fn ring_element(&mut self, ring: &RingRef, terms: usize, nilpotent: bool) -> RingElement {
        let base = ring.base();
        let mut acc = if nilpotent {
            RingElement::zero(ring)
        } else {
            RingElement::constant(ring, self.scalar(base, 4))
        };
        if ring.is_field() {
            return acc;
        }
        for _ in 0..terms {
            let mut m = vec![0u32; ring.num_vars()];
            let target = self.int(1, ring.degree_bound().max(1) as i64) as u32;
            let mut w = 0;
            while w < target {
                let i = self.rng.gen_range(0..ring.num_vars());
                if w + ring.weights()[i] > target {
                    break;
                }
                m[i] += 1;
                w += ring.weights()[i];
            }
            if w == 0 {
                continue;
            }
            acc = &acc + &RingElement::monomial(ring, m, self.scalar(base, 4));
        }
        acc
    }

    pub fn unit(&mut self, ring: &RingRef, terms: usize) -> RingElement {
        let c = RingElement::constant(ring, self.nonzero_scalar(ring.base(), 4));
        &c + &self.ring_element(ring, terms, true)
    }

    /// `1 + sum a_i z^-i` with nilpotent `a_i`, `i <= len`.
    pub fn gamma_minus_series(&mut self, ring: &RingRef, len: i64) -> LaurentElement {
        let mut f = LaurentElement::one(ring);
        for i in 1..=len {
            let a = self.ring_element(ring, 2, true);
            f = f.add(&LaurentElement::monomial(ring, -i, a));
        }
        f
    }

    /// `1 + sum b_i z^i` with `i <= len`, exact.
    pub fn gamma_plus_series(&mut self, ring: &RingRef, len: i64) -> LaurentElement {
        let mut f = LaurentElement::one(ring);
        for i in 1..=len {
            let b = self.ring_element(ring, 2, false);
            f = f.add(&LaurentElement::monomial(ring, i, b));
        }
        f
    }

    /// A random element of `Gamma` with zpower 0.
    pub fn gamma(&mut self, ring: &RingRef, minus_len: i64, plus_len: i64) -> GammaElement {
        let gm = self.gamma_minus_series(ring, minus_len);
        let gp = self.gamma_plus_series(ring, plus_len);
        let u = self.unit(ring, 2);
        GammaElement::new(gm, u, gp, 0).expect("valid factors")
    }

    /// An invertible series `z^n (g_- u g_+)` known below `z^m`.
    pub fn invertible_series(&mut self, ring: &RingRef, m: i64) -> LaurentElement {
        let n = self.int(-2, 2);
        let g = self.gamma(ring, 2, 3);
        g.to_laurent().truncated(m - n).shift(n)
    }

    /// A point of the big cell over the base field: `N <= max_depth`
    /// columns whose residues on the rows `-N..-1` form an invertible
    /// matrix, with random entries on the rows `0..window`.
    pub fn big_cell_point(
        &mut self,
        ring: &RingRef,
        max_depth: i64,
        window: i64,
        bound: i64,
    ) -> GrassPoint {
        let base = ring.base();
        let n = self.int(0, max_depth);
        loop {
            let top: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| self.scalar(base, bound)).collect())
                .collect();
            if n > 0 && linalg::rank(&top) < n as usize {
                continue;
            }
            let cols: Vec<LaurentElement> = (0..n as usize)
                .map(|j| {
                    let mut terms: Vec<(i64, Scalar)> =
                        (0..n).map(|i| (-n + i, top[i as usize][j].clone())).collect();
                    for e in 0..window {
                        if self.coin(0.6) {
                            terms.push((e, self.scalar(base, bound)));
                        }
                    }
                    LaurentElement::from_scalars(ring, &terms).truncated(window)
                })
                .collect();
            return GrassPoint::new(ring, n, window, cols).expect("independent frame");
        }
    }

    /// A point over the base field of arbitrary index: a tail of depth
    /// `N` plus random independent columns supported on the rows
    /// `-N..support`, known below `z^window`.
    pub fn point(&mut self, ring: &RingRef, max_depth: i64, support: i64, window: i64) -> GrassPoint {
        let base = ring.base();
        let n = self.int(0, max_depth);
        let rows = n + support;
        loop {
            let k = self.int(0, rows.min(n + 2)) as usize;
            let cols: Vec<LaurentElement> = (0..k)
                .map(|_| {
                    let mut terms: Vec<(i64, Scalar)> = Vec::new();
                    for e in -n..support.min(window) {
                        if self.coin(0.5) {
                            terms.push((e, self.scalar(base, 3)));
                        }
                    }
                    LaurentElement::from_scalars(ring, &terms).truncated(window)
                })
                .collect();
            if let Ok(p) = GrassPoint::new(ring, n, window, cols) {
                return p;
            }
        }
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        xs.choose(&mut self.rng).expect("non-empty choice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::MayaDiagram;
    use crate::scalars::CoeffRing;

    #[test]
    fn deterministic_and_in_the_big_cell() {
        let r = CoeffRing::field(BaseField::Rationals);
        let mut a = Generator::new(7);
        let mut b = Generator::new(7);
        for _ in 0..10 {
            let p = a.big_cell_point(&r, 4, 6, 5);
            assert_eq!(p, b.big_cell_point(&r, 4, 6, 5));
            assert!(p.in_chart(&MayaDiagram::vacuum()).unwrap());
        }
    }

    #[test]
    fn invertible_series_are_invertible() {
        let r = CoeffRing::new(BaseField::prime(5).unwrap(), 1, 2);
        let mut g = Generator::new(3);
        for _ in 0..10 {
            assert!(g.invertible_series(&r, 6).is_invertible());
        }
    }
}
