//! The group `k((z))*` in factored form `Gamma_- x G_m x Gamma_+ x z^Z`,
//! exponential maps, the Witt law, Abel morphisms and the universal element.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentElement;
use crate::scalars::{BaseField, CoeffRing, RingElement, RingRef};

/// An invertible series `gminus * unit * gplus * z^zpower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement {
    gminus: LaurentElement,
    unit: RingElement,
    gplus: LaurentElement,
    zpower: i64,
}

/// Which half of the group an exponential or product lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    /// Series in `z^-1` with nilpotent coefficients.
    Minus,
    /// Series in `z`.
    Plus,
}

impl GammaElement {
    /// Assemble and validate a factored element.
    pub fn new(
        gminus: LaurentElement,
        unit: RingElement,
        gplus: LaurentElement,
        zpower: i64,
    ) -> Result<Self> {
        let ring = unit.ring().clone();
        if gminus.ring() != &ring || gplus.ring() != &ring {
            return Err(Error::RingMismatch("factors over different rings".into()));
        }
        check_minus(&gminus)?;
        check_plus(&gplus)?;
        if !unit.is_unit() {
            return Err(Error::NotUnit(format!("unit factor {unit}")));
        }
        Ok(GammaElement {
            gminus,
            unit,
            gplus,
            zpower,
        })
    }

    pub fn identity(ring: &RingRef) -> Self {
        GammaElement {
            gminus: LaurentElement::one(ring),
            unit: RingElement::one(ring),
            gplus: LaurentElement::one(ring),
            zpower: 0,
        }
    }

    /// The element `g` of `Gamma_-`; `g - 1` must be nilpotent in `z^-1`.
    pub fn minus(g: LaurentElement) -> Result<Self> {
        let ring = g.ring().clone();
        Self::new(
            g,
            RingElement::one(&ring),
            LaurentElement::one(&ring),
            0,
        )
    }

    /// The element `g` of `Gamma_+`; `g - 1` must involve only positive powers.
    pub fn plus(g: LaurentElement) -> Result<Self> {
        let ring = g.ring().clone();
        Self::new(
            LaurentElement::one(&ring),
            RingElement::one(&ring),
            g,
            0,
        )
    }

    pub fn ring(&self) -> &RingRef {
        self.unit.ring()
    }

    pub fn gminus(&self) -> &LaurentElement {
        &self.gminus
    }

    pub fn unit(&self) -> &RingElement {
        &self.unit
    }

    pub fn gplus(&self) -> &LaurentElement {
        &self.gplus
    }

    pub fn zpower(&self) -> i64 {
        self.zpower
    }

    /// Principal length of the `Gamma_-` factor.
    pub fn principal_length(&self) -> u64 {
        self.gminus.principal_length()
    }

    /// The series obtained by multiplying the factors back together.
    pub fn to_laurent(&self) -> LaurentElement {
        self.gminus
            .mul(&self.gplus)
            .scale(&self.unit)
            .shift(self.zpower)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        gamma_mul(self, other)
    }

    /// Componentwise inverse. An exact nontrivial `Gamma_+` factor has an
    /// infinite inverse, so it must carry a truncation.
    pub fn inverse(&self) -> Result<Self> {
        Ok(GammaElement {
            gminus: self.gminus.invert()?,
            unit: self.unit.inverse()?,
            gplus: self.gplus.invert()?,
            zpower: -self.zpower,
        })
    }

    /// Forget the `Gamma_+` factor at exponents `>= m`.
    pub fn truncated(&self, m: i64) -> Self {
        GammaElement {
            gplus: self.gplus.truncated(m),
            ..self.clone()
        }
    }

    /// Base change along the natural map of coefficient rings.
    pub fn map_into(&self, ring: &RingRef) -> Result<Self> {
        Ok(GammaElement {
            gminus: self.gminus.map_into(ring)?,
            unit: self.unit.map_into(ring)?,
            gplus: self.gplus.map_into(ring)?,
            zpower: self.zpower,
        })
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] * ({}) * [{}] * z^{}",
            self.gminus, self.unit, self.gplus, self.zpower
        )
    }
}

fn check_minus(g: &LaurentElement) -> Result<()> {
    if !g.is_exact() {
        return Err(Error::precondition("Gamma_- factor must be exact"));
    }
    for (e, c) in g.terms() {
        let ok = match e.cmp(&0) {
            std::cmp::Ordering::Less => c.is_nilpotent(),
            std::cmp::Ordering::Equal => c.is_one(),
            std::cmp::Ordering::Greater => false,
        };
        if !ok {
            return Err(Error::precondition(format!(
                "{g} is not of the form 1 + sum a_i z^-i with nilpotent a_i"
            )));
        }
    }
    if g.coeff_unchecked(0).is_zero() {
        return Err(Error::precondition("Gamma_- factor must have constant term 1"));
    }
    Ok(())
}

fn check_plus(g: &LaurentElement) -> Result<()> {
    let ok = g.terms().all(|(e, c)| *e > 0 || (*e == 0 && c.is_one()))
        && !g.coeff_unchecked(0).is_zero()
        && g.trunc().is_none_or(|m| m > 0);
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{g} is not of the form 1 + sum b_i z^i"
        )))
    }
}

/// Factor an invertible series as `gminus * unit * gplus * z^n`.
///
/// With `h = z^-n f`, the `Gamma_-` factor is found by repeatedly splitting
/// off the principal part of `h` divided by its regular part; each round
/// pushes the remaining principal part deeper into the nilpotent ideal, so
/// the loop ends after at most `d + 1` rounds.
pub fn factorize(f: &LaurentElement) -> Result<GammaElement> {
    let ring = f.ring().clone();
    let n = f.reduced_valuation()?.value;
    let h = f.shift(-n);
    let mut gminus = LaurentElement::one(&ring);
    let mut r = h.clone();
    let mut rounds = 0;
    loop {
        if r.trunc().is_some_and(|m| m <= 0) {
            return Err(Error::precision(
                "window too short to separate the factors of the series",
            ));
        }
        let rm = r.negative_part();
        if rm.is_zero() {
            break;
        }
        rounds += 1;
        if rounds > ring.nilpotency_bound() + 1 {
            return Err(Error::precision("factorization did not stabilize"));
        }
        let p = rm.principal_length() as i64;
        let rp_inv = r.nonnegative_part().truncated(p).invert()?;
        let q = rm.mul(&rp_inv).negative_part();
        gminus = gminus.mul(&LaurentElement::one(&ring).add(&q));
        // dividing h once by the accumulated factor loses only its length
        r = gminus.invert()?.mul(&h);
    }
    let unit = r.coeff(0)?;
    let gplus = r.scale(&unit.inverse()?);
    GammaElement::new(gminus, unit, gplus, n)
}

/// Product in the group; the factors multiply componentwise.
pub fn gamma_mul(g: &GammaElement, h: &GammaElement) -> Result<GammaElement> {
    if g.ring() != h.ring() {
        return Err(Error::RingMismatch("Gamma elements over different rings".into()));
    }
    Ok(GammaElement {
        gminus: g.gminus.mul(&h.gminus),
        unit: &g.unit * &h.unit,
        gplus: g.gplus.mul(&h.gplus),
        zpower: g.zpower + h.zpower,
    })
}

fn nilpotent_all(xs: &[RingElement], what: &str) -> Result<()> {
    if let Some(x) = xs.iter().find(|x| !x.is_nilpotent()) {
        return Err(Error::precondition(format!("{what} {x} is not nilpotent")));
    }
    Ok(())
}

fn same_ring_all(ring: &RingRef, xs: &[RingElement]) -> Result<()> {
    if xs.iter().any(|x| x.ring() != ring) {
        return Err(Error::RingMismatch("coefficient list".into()));
    }
    Ok(())
}

/// `exp(sum y_i z^{-i})` or `exp(sum y_i z^i)` in characteristic zero. The
/// minus series terminates by nilpotency; the plus series is cut at `trunc`.
pub fn exp_char0(
    ring: &RingRef,
    y: &[RingElement],
    sign: Sign,
    trunc: Option<i64>,
) -> Result<GammaElement> {
    let p = ring.base().characteristic();
    if p != 0 {
        return Err(Error::Characteristic(p));
    }
    same_ring_all(ring, y)?;
    let s = match sign {
        Sign::Minus => {
            nilpotent_all(y, "exponent coefficient")?;
            LaurentElement::new(
                ring,
                y.iter().enumerate().map(|(i, c)| (-(i as i64) - 1, c.clone())),
                None,
            )?
        }
        Sign::Plus => {
            let m = trunc
                .ok_or_else(|| Error::precondition("the plus exponential needs a truncation"))?;
            if m < 1 {
                return Err(Error::precision("truncation must be at least 1"));
            }
            LaurentElement::new(
                ring,
                y.iter()
                    .enumerate()
                    .map(|(i, c)| (i as i64 + 1, c.clone()))
                    .filter(|(e, _)| *e < m),
                None,
            )?
            .truncated(m)
        }
    };
    let base = ring.base();
    let mut acc = LaurentElement::one(ring);
    let mut term = LaurentElement::one(ring);
    let mut k = 1i64;
    loop {
        term = term.mul(&s).scale_scalar(&base.ratio(1, k));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }
    match sign {
        Sign::Minus => GammaElement::minus(acc),
        Sign::Plus => GammaElement::plus(acc),
    }
}

/// `prod (1 - a_i z^{-i})` or `prod (1 - a_i z^i)`, a finite exact product
/// valid in every characteristic.
pub fn exp_charp(ring: &RingRef, a: &[RingElement], sign: Sign) -> Result<GammaElement> {
    same_ring_all(ring, a)?;
    if sign == Sign::Minus {
        nilpotent_all(a, "coefficient")?;
    }
    let dir = match sign {
        Sign::Minus => -1,
        Sign::Plus => 1,
    };
    let acc = witt_product(ring, a, dir);
    match sign {
        Sign::Minus => GammaElement::minus(acc),
        Sign::Plus => GammaElement::plus(acc),
    }
}

fn witt_product(ring: &RingRef, a: &[RingElement], dir: i64) -> LaurentElement {
    let mut acc = LaurentElement::one(ring);
    for (i, ai) in a.iter().enumerate() {
        let factor = LaurentElement::one(ring)
            .add(&LaurentElement::monomial(ring, dir * (i as i64 + 1), -ai));
        acc = acc.mul(&factor);
    }
    acc
}

/// The Witt sum: the unique `c_1..c_n` with
/// `prod(1 - a_i w^i) prod(1 - b_i w^i) = prod(1 - c_i w^i) mod w^{n+1}`.
pub fn witt_add(
    ring: &RingRef,
    a: &[RingElement],
    b: &[RingElement],
    n: usize,
) -> Result<Vec<RingElement>> {
    same_ring_all(ring, a)?;
    same_ring_all(ring, b)?;
    let m = n as i64 + 1;
    let cut = |xs: &[RingElement]| xs.iter().take(n).cloned().collect::<Vec<_>>();
    let mut p = witt_product(ring, &cut(a), 1)
        .mul(&witt_product(ring, &cut(b), 1))
        .truncated(m);
    let mut c = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let ci = -&p.coeff(i)?;
        // divide by (1 - c_i w^i) = multiply by sum_k c_i^k w^{ik}
        let mut geo = Vec::new();
        let mut pow = RingElement::one(ring);
        let mut e = 0;
        while e < m {
            geo.push((e, pow.clone()));
            pow = &pow * &ci;
            e += i;
        }
        p = p.mul(&LaurentElement::new(ring, geo, Some(m))?);
        c.push(ci);
    }
    Ok(c)
}

/// The Abel morphism `prod_j (1 - t_j/z)^{-1} = 1 + sum_i h_i(t) z^{-i}`.
/// The points must be nilpotent so the series is a finite element of
/// `Gamma_-`.
pub fn abel(ring: &RingRef, points: &[RingElement]) -> Result<GammaElement> {
    same_ring_all(ring, points)?;
    nilpotent_all(points, "point")?;
    let mut acc = LaurentElement::one(ring);
    for t in points {
        let mut terms = Vec::new();
        let mut pow = RingElement::one(ring);
        let mut k = 0i64;
        while !pow.is_zero() {
            terms.push((-k, pow.clone()));
            pow = &pow * t;
            k += 1;
        }
        acc = acc.mul(&LaurentElement::new(ring, terms, None)?);
    }
    GammaElement::minus(acc)
}

/// `v = 1 + sum_{i=1..d} x_i z^{-i}` over `k[x_1..x_d]` graded by
/// `deg x_i = i` and truncated above `d`.
pub fn universal_v(base: BaseField, d: u32) -> GammaElement {
    let ring = CoeffRing::graded(base, d);
    let g = LaurentElement::new(
        &ring,
        std::iter::once((0, RingElement::one(&ring))).chain(
            (0..d as usize).map(|i| (-(i as i64) - 1, RingElement::var(&ring, i))),
        ),
        None,
    )
    .expect("exact polynomial");
    GammaElement::minus(g).expect("generators are nilpotent")
}
