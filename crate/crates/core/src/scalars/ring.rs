//! Truncated multivariate polynomial rings `k[x_1..x_m] / (weight > d)`.
//!
//! Every generator has a positive weight and every monomial whose weighted
//! degree exceeds the bound `d` is zero, so all generators are nilpotent and
//! the ring is local: an element is a unit exactly when its constant term is
//! nonzero. With all weights equal to one the truncation is by ordinary
//! total degree; the coordinate rings of `Gamma_-` use weight `i` for `x_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{BaseField, Scalar};
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

/// Description of a truncated polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffRing {
    base: BaseField,
    weights: Vec<u32>,
    degree_bound: u32,
}

pub type RingRef = Arc<CoeffRing>;

impl CoeffRing {
    /// `k[x_1..x_m]` truncated at total degree `> d`.
    pub fn new(base: BaseField, num_vars: usize, degree_bound: u32) -> RingRef {
        Arc::new(CoeffRing {
            base,
            weights: vec![1; num_vars],
            degree_bound,
        })
    }

    /// Generators with explicit positive weights.
    pub fn weighted(base: BaseField, weights: Vec<u32>, degree_bound: u32) -> Result<RingRef> {
        if weights.contains(&0) {
            return Err(Error::Parse("generator weights must be positive".into()));
        }
        Ok(Arc::new(CoeffRing {
            base,
            weights,
            degree_bound,
        }))
    }

    /// `k[x_1..x_d]` with `x_i` of weight `i`, truncated at weight `> d`:
    /// the coordinate ring of `Gamma_-` modulo its `d`-th graded piece.
    pub fn graded(base: BaseField, d: u32) -> RingRef {
        Arc::new(CoeffRing {
            base,
            weights: (1..=d).collect(),
            degree_bound: d,
        })
    }

    /// The base field itself, viewed as a ring without generators.
    pub fn field(base: BaseField) -> RingRef {
        Arc::new(CoeffRing {
            base,
            weights: Vec::new(),
            degree_bound: 0,
        })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn is_field(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight_of(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// Bound on `k` with `n^k != 0` for a nilpotent `n`.
    pub fn nilpotency_bound(&self) -> u32 {
        if self.is_field() {
            1
        } else {
            self.degree_bound + 1
        }
    }
}

/// An element of a [`CoeffRing`], in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl RingElement {
    pub fn zero(ring: &RingRef) -> Self {
        RingElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.base.one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ring.num_vars()], c);
        }
        RingElement {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_i64(ring: &RingRef, n: i64) -> Self {
        Self::constant(ring, ring.base.from_i64(n))
    }

    /// The generator `x_{i+1}` (zero-based index `i`).
    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut m = vec![0; ring.num_vars()];
        m[i] = 1;
        Self::monomial(ring, m, ring.base.one())
    }

    /// `c * x^m`, already truncated.
    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.len(), ring.num_vars(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() && ring.weight_of(&m) <= ring.degree_bound {
            terms.insert(m, c);
        }
        RingElement {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from a term list, summing duplicates and truncating.
    pub fn from_terms(
        ring: &RingRef,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.len() != ring.num_vars() {
                return Err(Error::Parse(format!(
                    "monomial {m:?} has {} exponents, ring has {} generators",
                    m.len(),
                    ring.num_vars()
                )));
            }
            if BaseField::of(&c) != ring.base {
                return Err(Error::RingMismatch("coefficient field".into()));
            }
            if ring.weight_of(&m) > ring.degree_bound {
                continue;
            }
            accumulate(&mut acc, m, c);
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(RingElement {
            ring: ring.clone(),
            terms: acc,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn coeff(&self, m: &[u32]) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.base.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.ring.num_vars()])
    }

    /// True iff the element is a scalar (no generator appears).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    /// Nilpotent iff the constant term vanishes (the ring is local with
    /// nilpotent maximal ideal).
    pub fn is_nilpotent(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !self.is_nilpotent()
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                describe(&self.ring),
                describe(&other.ring)
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RingElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RingElement::zero(&self.ring));
        }
        let bound = self.ring.degree_bound;
        let mut rhs: Vec<(u32, &Monomial, &Scalar)> = other
            .terms
            .iter()
            .map(|(m, c)| (self.ring.weight_of(m), m, c))
            .collect();
        rhs.sort_by_key(|t| t.0);
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            let wa = self.ring.weight_of(ma);
            for &(wb, mb, cb) in &rhs {
                if wa + wb > bound {
                    break;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> RingElement {
        if s.is_zero() {
            return RingElement::zero(&self.ring);
        }
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut base = self.clone();
        let mut acc = RingElement::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact inverse by the finite geometric series in the nilpotent part.
    pub fn inverse(&self) -> Result<RingElement> {
        let c = self.constant_term();
        let c_inv = c
            .inv()
            .ok_or_else(|| Error::NotUnit(format!("constant term of {self} is zero")))?;
        let ring = &self.ring;
        // self = c (1 + n), n nilpotent
        let n = &self.scale(&c_inv) - &RingElement::one(ring);
        let minus_n = -&n;
        let mut acc = RingElement::one(ring);
        let mut power = RingElement::one(ring);
        loop {
            power = &power * &minus_n;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c_inv))
    }

    /// Largest weighted degree among the stored terms.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.weight_of(m)).max()
    }

    /// The homogeneous component of the given weight.
    pub fn component(&self, weight: u32) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.weight_of(m) == weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term of weight above `w` (a ring endomorphism).
    pub fn truncate_weight(&self, w: u32) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.weight_of(m) <= w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative in generator `i`.
    pub fn derivative(&self, i: usize) -> RingElement {
        let base = self.ring.base;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            let c2 = c.mul(&base.from_i64(m[i] as i64));
            if !c2.is_zero() {
                terms.insert(m2, c2);
            }
        }
        RingElement {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Image under the natural map into `target`: generators go to the
    /// generators with the same index, terms beyond the target bound are
    /// dropped. Only defined when this is a ring homomorphism.
    pub fn map_into(&self, target: &RingRef) -> Result<RingElement> {
        check_map(&self.ring, target)?;
        let pad = target.num_vars() - self.ring.num_vars();
        RingElement::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.extend(std::iter::repeat_n(0, pad));
                (m2, c.clone())
            }),
        )
    }

    /// Evaluate at `x_i -> images[i]` in any commutative algebra over the
    /// base field. The caller guarantees the substitution respects the
    /// truncation ideal.
    pub fn substitute<A: Algebra>(&self, images: &[A], one: &A) -> A {
        assert_eq!(images.len(), self.ring.num_vars(), "substitution arity");
        let mut powers: Vec<Vec<A>> = images.iter().map(|x| vec![one.clone(), x.clone()]).collect();
        let mut acc = one.alg_scale(&self.ring.base.zero());
        for (m, c) in &self.terms {
            let mut t = one.alg_scale(c);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().alg_mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.alg_mul(&powers[i][e as usize]);
            }
            acc = acc.alg_add(&t);
        }
        acc
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    match acc.get_mut(&m) {
        Some(x) => *x = x.add(&c),
        None => {
            acc.insert(m, c);
        }
    }
}

pub(crate) fn check_map(source: &CoeffRing, target: &CoeffRing) -> Result<()> {
    if source.base != target.base {
        return Err(Error::RingMismatch("different base fields".into()));
    }
    if source.is_field() {
        return Ok(());
    }
    let ok = target.num_vars() >= source.num_vars()
        && target.weights[..source.num_vars()] == source.weights[..]
        && target.degree_bound <= source.degree_bound;
    if ok {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "no natural map {} -> {}",
            describe(source),
            describe(target)
        )))
    }
}

pub(crate) fn describe(r: &CoeffRing) -> String {
    if r.is_field() {
        return r.base.to_string();
    }
    format!(
        "{}[x1..x{}]/(w>{}; weights {:?})",
        r.base,
        r.num_vars(),
        r.degree_bound,
        r.weights
    )
}

/// Minimal algebra interface used by [`RingElement::substitute`].
pub trait Algebra: Clone {
    fn alg_add(&self, other: &Self) -> Self;
    fn alg_mul(&self, other: &Self) -> Self;
    fn alg_scale(&self, s: &Scalar) -> Self;
}

impl Algebra for RingElement {
    fn alg_add(&self, other: &Self) -> Self {
        self + other
    }
    fn alg_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn alg_scale(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

impl<'a> Add for &'a RingElement {
    type Output = RingElement;
    fn add(self, rhs: &'a RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<'a> Sub for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &'a RingElement) -> RingElement {
        self.checked_add(&-rhs).expect("ring mismatch in sub")
    }
}

impl<'a> Mul for &'a RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &'a RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.ring
                .weight_of(a)
                .cmp(&self.ring.weight_of(b))
                .then_with(|| b.cmp(a))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vars: usize, d: u32) -> RingRef {
        CoeffRing::new(BaseField::Rationals, vars, d)
    }

    #[test]
    fn additive_inverse_and_linearity() {
        let r = q(1, 2);
        let x = RingElement::var(&r, 0);
        assert!((&x + &-&x).is_zero());
        let one = RingElement::one(&r);
        let lhs = &(&one + &x) + &x;
        assert_eq!(lhs.to_string(), "1 + 2*x1");
    }

    #[test]
    fn characteristic_two_cancels() {
        let r = CoeffRing::new(BaseField::prime(2).unwrap(), 1, 2);
        let a = &RingElement::one(&r) + &RingElement::var(&r, 0);
        assert!((&a + &a).is_zero());
    }

    #[test]
    fn products_truncate() {
        let r = q(1, 2);
        let one = RingElement::one(&r);
        let x = RingElement::var(&r, 0);
        assert_eq!((&(&one + &x) * &(&one - &x)).to_string(), "1 - x1^2");
        let r1 = q(1, 1);
        let x = RingElement::var(&r1, 0);
        assert!((&x * &x).is_zero());
        let r2 = q(2, 2);
        let s = &RingElement::var(&r2, 0) + &RingElement::var(&r2, 1);
        assert_eq!((&s * &s).to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn nilpotency() {
        let r = q(1, 3);
        let x = RingElement::var(&r, 0);
        assert!(x.is_nilpotent());
        assert!(x.pow(4).is_zero());
        assert!(!(&RingElement::one(&r) + &x).is_nilpotent());
        assert!(RingElement::zero(&r).is_nilpotent());
    }

    #[test]
    fn inverses() {
        let r = q(1, 2);
        let one = RingElement::one(&r);
        let x = RingElement::var(&r, 0);
        let inv = (&one + &x).inverse().unwrap();
        assert_eq!(inv.to_string(), "1 - x1 + x1^2");
        assert!((&inv * &(&one + &x)).is_one());
        let two = RingElement::from_i64(&r, 2);
        assert_eq!(two.inverse().unwrap().to_string(), "1/2");
        let r2 = CoeffRing::new(BaseField::prime(2).unwrap(), 1, 1);
        let a = &RingElement::one(&r2) + &RingElement::var(&r2, 0);
        assert_eq!(a.inverse().unwrap(), a);
        assert!(matches!(x.inverse(), Err(Error::NotUnit(_))));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = RingElement::one(&q(1, 2));
        let b = RingElement::one(&q(2, 2));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn weighted_truncation() {
        let r = CoeffRing::graded(BaseField::Rationals, 3);
        let x1 = RingElement::var(&r, 0);
        let x2 = RingElement::var(&r, 1);
        assert!(!(&x1 * &x2).is_zero());
        assert!((&x2 * &x2).is_zero());
        assert!(x1.pow(4).is_zero());
    }

    #[test]
    fn substitution_is_evaluation() {
        let r = q(2, 3);
        let x = RingElement::var(&r, 0);
        let y = RingElement::var(&r, 1);
        let p = &(&x * &y) + &RingElement::from_i64(&r, 3);
        let t = q(1, 3);
        let s = RingElement::var(&t, 0);
        let img = p.substitute(&[s.clone(), &s + &s], &RingElement::one(&t));
        assert_eq!(img.to_string(), "3 + 2*x1^2");
    }
}
