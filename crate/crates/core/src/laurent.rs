//! Truncated formal Laurent series `A((z))` over a truncated ring `A`.
//!
//! An element stores finitely many coefficients and a truncation order `M`:
//! coefficients at exponents `>= M` are unknown, everything below `M` is
//! exact (absent keys are zero). `M = None` marks a Laurent polynomial known
//! exactly. Every operation computes the widest window on which its result
//! is determined; asking for a coefficient outside it is an error.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Algebra, RingElement, RingRef, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement {
    ring: RingRef,
    coeffs: BTreeMap<i64, RingElement>,
    trunc: Option<i64>,
}

/// Order of an invertible series together with the number of nilpotent
/// coefficients sitting below the leading unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedValuation {
    pub value: i64,
    pub nilpotent_depth: u64,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentElement {
    /// Build from explicit coefficients. Terms at or above `trunc` are
    /// rejected since they lie outside the known window.
    pub fn new(
        ring: &RingRef,
        coeffs: impl IntoIterator<Item = (i64, RingElement)>,
        trunc: Option<i64>,
    ) -> Result<Self> {
        let mut map: BTreeMap<i64, RingElement> = BTreeMap::new();
        for (e, c) in coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch(format!("coefficient at z^{e}")));
            }
            if let Some(m) = trunc {
                if e >= m {
                    return Err(Error::precision(format!(
                        "coefficient at z^{e} lies outside the window below {m}"
                    )));
                }
            }
            let slot = map.entry(e).or_insert_with(|| RingElement::zero(ring));
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentElement {
            ring: ring.clone(),
            coeffs: map,
            trunc,
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        LaurentElement {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::monomial(ring, 0, RingElement::one(ring))
    }

    /// `c * z^e`, exact.
    pub fn monomial(ring: &RingRef, e: i64, c: RingElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentElement {
            ring: ring.clone(),
            coeffs,
            trunc: None,
        }
    }

    /// `z^e`, exact.
    pub fn z_power(ring: &RingRef, e: i64) -> Self {
        Self::monomial(ring, e, RingElement::one(ring))
    }

    /// Exact Laurent polynomial from scalar coefficients `(exp, c)`.
    pub fn from_scalars(ring: &RingRef, terms: &[(i64, Scalar)]) -> Self {
        Self::new(
            ring,
            terms
                .iter()
                .map(|(e, c)| (*e, RingElement::constant(ring, c.clone()))),
            None,
        )
        .expect("exact polynomial")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lowest exponent that can be nonzero: the first stored term, or the
    /// truncation order when nothing below it survives.
    fn low(&self) -> Option<i64> {
        self.min_exp().or(self.trunc)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &RingElement)> {
        self.coeffs.iter()
    }

    /// Coefficient of `z^e`; fails outside the determined window.
    pub fn coeff(&self, e: i64) -> Result<RingElement> {
        if let Some(m) = self.trunc {
            if e >= m {
                return Err(Error::precision(format!(
                    "coefficient of z^{e} requested, series known below z^{m}"
                )));
            }
        }
        Ok(self
            .coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.ring)))
    }

    /// Coefficient lookup that treats stored-but-missing as zero without a
    /// window check; callers must have verified the window.
    pub(crate) fn coeff_unchecked(&self, e: i64) -> RingElement {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forget everything at exponents `>= m`.
    pub fn truncated(&self, m: i64) -> Self {
        let m = min_opt(self.trunc, Some(m)).unwrap();
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .range(..m)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            trunc: Some(m),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("Laurent series over different rings".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let trunc = min_opt(self.trunc, other.trunc);
        let mut coeffs = BTreeMap::new();
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        for e in keys {
            if trunc.is_some_and(|m| e >= m) {
                break;
            }
            let s = &self.coeff_unchecked(e) + &other.coeff_unchecked(e);
            if !s.is_zero() {
                coeffs.insert(e, s);
            }
        }
        Ok(LaurentElement {
            ring: self.ring.clone(),
            coeffs,
            trunc,
        })
    }

    pub fn neg(&self) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Product, exact on the window where the convolution only involves
    /// known coefficients of both factors.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let (Some(lf), Some(lg)) = (self.low(), other.low()) else {
            // one factor is the exact zero
            return Ok(LaurentElement::zero(&self.ring));
        };
        let trunc = min_opt(self.trunc.map(|m| m + lg), other.trunc.map(|m| m + lf));
        let mut coeffs: BTreeMap<i64, RingElement> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if trunc.is_some_and(|m| e >= m) {
                    break;
                }
                let p = ca * cb;
                if p.is_zero() {
                    continue;
                }
                let slot = coeffs.entry(e).or_insert_with(|| RingElement::zero(&self.ring));
                *slot = &*slot + &p;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(LaurentElement {
            ring: self.ring.clone(),
            coeffs,
            trunc,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("ring mismatch in Laurent product")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("ring mismatch in Laurent sum")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("ring mismatch in Laurent difference")
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, a)| (*e, a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, a)| (*e, a.scale(s)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Multiply by `z^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + n, c.clone())).collect(),
            trunc: self.trunc.map(|m| m + n),
        }
    }

    /// Terms with exponent `< 0` (always exact).
    pub fn negative_part(&self) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.range(..0).map(|(e, c)| (*e, c.clone())).collect(),
            trunc: None,
        }
    }

    /// Terms with exponent `>= 0`, keeping the truncation.
    pub fn nonnegative_part(&self) -> Self {
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.range(0..).map(|(e, c)| (*e, c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// Number of negative exponents that can carry a nonzero coefficient.
    pub fn principal_length(&self) -> u64 {
        match self.min_exp() {
            Some(e) if e < 0 => (-e) as u64,
            _ => 0,
        }
    }

    /// Termwise formal derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        let base = self.ring.base();
        LaurentElement {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e - 1, c.scale(&base.from_i64(*e))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            trunc: self.trunc.map(|m| m - 1),
        }
    }

    /// Apply a map to every coefficient (used for base change).
    pub fn map_coeffs(
        &self,
        ring: &RingRef,
        f: impl Fn(&RingElement) -> Result<RingElement>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let c2 = f(c)?;
            if !c2.is_zero() {
                coeffs.insert(*e, c2);
            }
        }
        Ok(LaurentElement {
            ring: ring.clone(),
            coeffs,
            trunc: self.trunc,
        })
    }

    /// Base change along the natural map of coefficient rings.
    pub fn map_into(&self, ring: &RingRef) -> Result<Self> {
        self.map_coeffs(ring, |c| c.map_into(ring))
    }

    /// Equality on the common window of two truncated series.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        let m = min_opt(self.trunc, other.trunc);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|e| m.is_none_or(|m| *e < m))
            .all(|e| self.coeff_unchecked(e) == other.coeff_unchecked(e))
    }

    /// The order `n` of the series with a unit coefficient at `z^n` and only
    /// nilpotent coefficients below it.
    pub fn reduced_valuation(&self) -> Result<ReducedValuation> {
        let low = self.min_exp();
        for (e, c) in &self.coeffs {
            if c.is_unit() {
                return Ok(ReducedValuation {
                    value: *e,
                    nilpotent_depth: (e - low.unwrap()) as u64,
                });
            }
        }
        match self.trunc {
            Some(m) => Err(Error::precision(format!(
                "valuation undetermined at this precision: no unit coefficient below z^{m}"
            ))),
            None => Err(Error::precondition(
                "series has no unit coefficient and is not invertible",
            )),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.reduced_valuation().is_ok()
    }

    /// Multiplicative inverse, exact on the window it reports.
    ///
    /// Writing `z^-n f = h + m` with `h` a power series with unit constant
    /// term and `m` the nilpotent principal part, the inverse is
    /// `z^-n h^-1 sum_k (-h^-1 m)^k`, a finite sum because the ring is
    /// truncated.
    pub fn invert(&self) -> Result<Self> {
        let v = self.reduced_valuation()?;
        let f = self.shift(-v.value);
        let h = f.nonnegative_part();
        let m = f.negative_part();
        let h_inv = power_series_inverse(&h)?;
        let e = h_inv.mul(&m).neg();
        let mut acc = LaurentElement::one(&self.ring);
        let mut power = LaurentElement::one(&self.ring);
        for _ in 0..self.ring.nilpotency_bound() {
            power = power.mul(&e);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        let inv = h_inv.mul(&acc).shift(-v.value);
        if let (Some(t), Some(lo)) = (inv.trunc, inv.low()) {
            if t <= lo && inv.is_zero() {
                return Err(Error::precision(
                    "truncation order too low to determine any coefficient of the inverse",
                ));
            }
        }
        Ok(inv)
    }

    pub fn residue(&self) -> Result<RingElement> {
        self.coeff(-1)
    }
}

/// Inverse of a power series with unit constant term. Exact polynomials with
/// a nonconstant tail have infinite inverses and must be truncated first.
fn power_series_inverse(h: &LaurentElement) -> Result<LaurentElement> {
    let ring = h.ring();
    let h0 = h.coeff(0)?;
    let h0_inv = h0.inverse()?;
    let degree = h.coeffs.keys().next_back().copied().unwrap_or(0);
    let trunc = match h.trunc {
        Some(m) => m,
        None if degree == 0 => {
            return Ok(LaurentElement::monomial(ring, 0, h0_inv));
        }
        None => {
            return Err(Error::precision(
                "inverse of an exact series is infinite; truncate the input first",
            ))
        }
    };
    let mut g: Vec<RingElement> = Vec::new();
    for k in 0..trunc.max(0) {
        let mut s = RingElement::zero(ring);
        for j in 1..=k {
            if let Some(hj) = h.coeffs.get(&j) {
                s = &s + &(hj * &g[(k - j) as usize]);
            }
        }
        let gk = if k == 0 {
            h0_inv.clone()
        } else {
            -&(&s * &h0_inv)
        };
        g.push(gk);
    }
    LaurentElement::new(
        ring,
        g.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        Some(trunc),
    )
}

impl Algebra for LaurentElement {
    fn alg_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn alg_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn alg_scale(&self, s: &Scalar) -> Self {
        self.scale_scalar(s)
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let zpart = match *e {
                0 => String::new(),
                1 => "z".to_string(),
                e => format!("z^{e}"),
            };
            if zpart.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "({c})*{zpart}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(m) = self.trunc {
            write!(f, " + O(z^{m})")?;
        }
        Ok(())
    }
}

pub fn laurent_mul(f: &LaurentElement, g: &LaurentElement) -> Result<LaurentElement> {
    f.checked_mul(g)
}

pub fn reduced_valuation(f: &LaurentElement) -> Result<ReducedValuation> {
    f.reduced_valuation()
}

pub fn is_invertible(f: &LaurentElement) -> bool {
    f.is_invertible()
}

pub fn laurent_invert(f: &LaurentElement) -> Result<LaurentElement> {
    f.invert()
}

pub fn residue(f: &LaurentElement) -> Result<RingElement> {
    f.residue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{BaseField, CoeffRing};

    fn q() -> RingRef {
        CoeffRing::field(BaseField::Rationals)
    }

    fn eps_ring() -> RingRef {
        CoeffRing::new(BaseField::Rationals, 1, 1)
    }

    fn poly(ring: &RingRef, terms: &[(i64, i64)]) -> LaurentElement {
        let base = ring.base();
        LaurentElement::from_scalars(
            ring,
            &terms.iter().map(|(e, c)| (*e, base.from_i64(*c))).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn products() {
        let r = q();
        let p = poly(&r, &[(0, 1), (1, 1)]).mul(&poly(&r, &[(0, 1), (1, -1)]));
        assert_eq!(p, poly(&r, &[(0, 1), (2, -1)]));
        assert_eq!(
            LaurentElement::z_power(&r, -1).mul(&LaurentElement::z_power(&r, 1)),
            LaurentElement::one(&r)
        );
        let er = eps_ring();
        let eps = RingElement::var(&er, 0);
        let a = LaurentElement::one(&er).add(&LaurentElement::monomial(&er, -1, eps.clone()));
        let b = LaurentElement::one(&er).add(&LaurentElement::monomial(&er, -1, -&eps));
        assert_eq!(a.mul(&b), LaurentElement::one(&er));
    }

    #[test]
    fn product_window() {
        let r = q();
        let f = poly(&r, &[(-2, 1), (0, 3)]).truncated(4);
        let g = poly(&r, &[(1, 1)]).truncated(5);
        // f known below 4 and starts at -2; g known below 5 and starts at 1
        assert_eq!(f.mul(&g).trunc(), Some(3));
    }

    #[test]
    fn valuations() {
        let r = q();
        let f = poly(&r, &[(2, 1), (3, 1)]);
        assert_eq!(
            f.reduced_valuation().unwrap(),
            ReducedValuation { value: 2, nilpotent_depth: 0 }
        );
        let er = eps_ring();
        let eps = RingElement::var(&er, 0);
        let f = LaurentElement::monomial(&er, -1, eps.clone()).add(&LaurentElement::one(&er));
        assert_eq!(
            f.reduced_valuation().unwrap(),
            ReducedValuation { value: 0, nilpotent_depth: 1 }
        );
        let g = LaurentElement::monomial(&er, -1, eps.clone()).truncated(3);
        assert!(matches!(g.reduced_valuation(), Err(Error::Precision(_))));
        assert!(!g.is_invertible());
        let h = LaurentElement::monomial(&er, 0, eps).add(&LaurentElement::z_power(&er, 1));
        assert!(h.is_invertible());
        assert_eq!(h.reduced_valuation().unwrap().value, 1);
        let f5 = CoeffRing::field(BaseField::prime(5).unwrap());
        let k = poly(&f5, &[(1, 1), (2, 1)]);
        assert_eq!(k.reduced_valuation().unwrap().value, 1);
    }

    #[test]
    fn inverses_multiply_back() {
        let r = q();
        let f = poly(&r, &[(0, 1), (1, 1)]).truncated(6);
        let g = f.invert().unwrap();
        assert_eq!(g, poly(&r, &[(0, 1), (1, -1), (2, 1), (3, -1), (4, 1), (5, -1)]).truncated(6));
        assert!(f.mul(&g).agrees_with(&LaurentElement::one(&r)));
        assert_eq!(
            LaurentElement::z_power(&r, 1).invert().unwrap(),
            LaurentElement::z_power(&r, -1)
        );
        let er = eps_ring();
        let eps = RingElement::var(&er, 0);
        let f = LaurentElement::one(&er).add(&LaurentElement::monomial(&er, -1, eps.clone()));
        let expected = LaurentElement::one(&er).add(&LaurentElement::monomial(&er, -1, -&eps));
        assert_eq!(f.invert().unwrap(), expected);
    }

    #[test]
    fn exact_series_with_infinite_inverse_needs_truncation() {
        let r = q();
        assert!(matches!(poly(&r, &[(0, 1), (1, 1)]).invert(), Err(Error::Precision(_))));
    }

    #[test]
    fn residues() {
        let r = q();
        assert!(LaurentElement::z_power(&r, -1).residue().unwrap().is_one());
        assert!(poly(&r, &[(0, 1), (1, 1)]).residue().unwrap().is_zero());
        assert_eq!(
            poly(&r, &[(-1, 3), (-2, 5)]).residue().unwrap(),
            RingElement::from_i64(&r, 3)
        );
        assert!(matches!(
            poly(&r, &[(-3, 1)]).truncated(-1).residue(),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn coefficient_outside_window_is_an_error() {
        let r = q();
        let f = poly(&r, &[(0, 1)]).truncated(2);
        assert!(f.coeff(1).is_ok());
        assert!(matches!(f.coeff(2), Err(Error::Precision(_))));
    }
}
