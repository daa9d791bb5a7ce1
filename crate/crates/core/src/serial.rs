//! JSON wire formats.
//!
//! Polynomials are lists of `{exponents, coeff}` with coefficients written
//! as `"p/q"` (rationals) or decimal residues (prime fields). Everything else
//! is built from polynomials. Decoding needs the ring, which travels
//! separately as a [`RingSpec`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaElement;
use crate::grassmann::{GrassPoint, MayaDiagram, Partition};
use crate::laurent::LaurentElement;
use crate::scalars::{BaseField, CoeffRing, RingElement, RingRef};
use crate::tau::BakerFunction;

/// Parse `"q"` or `"fp:<p>"`.
pub fn parse_field(s: &str) -> Result<BaseField> {
    match s.trim() {
        "q" | "Q" => Ok(BaseField::Rationals),
        other => {
            let p = other
                .strip_prefix("fp:")
                .ok_or_else(|| Error::Parse(format!("unknown field {other:?}")))?;
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad characteristic in {other:?}")))?;
            BaseField::prime(p)
        }
    }
}

/// A coefficient ring: the base field, generator weights and the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: String,
    #[serde(default)]
    pub weights: Vec<u32>,
    #[serde(default)]
    pub degree_bound: u32,
}

impl RingSpec {
    pub fn build(&self) -> Result<RingRef> {
        let base = parse_field(&self.field)?;
        if self.weights.is_empty() {
            return Ok(CoeffRing::field(base));
        }
        CoeffRing::weighted(base, self.weights.clone(), self.degree_bound)
    }

    pub fn of(ring: &CoeffRing) -> Self {
        RingSpec {
            field: ring.base().to_string(),
            weights: ring.weights().to_vec(),
            degree_bound: ring.degree_bound(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

pub type PolyWire = Vec<TermWire>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTermWire {
    pub exp: i64,
    pub coeff: PolyWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentWire {
    #[serde(default)]
    pub min_exp: Option<i64>,
    /// Exponent from which on nothing is known; absent for exact elements.
    #[serde(default)]
    pub trunc_order: Option<i64>,
    pub terms: Vec<LaurentTermWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaWire {
    pub gminus: LaurentWire,
    pub unit: PolyWire,
    pub gplus: LaurentWire,
    pub zpower: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointWire {
    pub tail_depth: i64,
    pub window_high: i64,
    pub columns: Vec<LaurentWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MayaWire {
    pub tail_start: i64,
    #[serde(default)]
    pub members_below_tail: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BakerTermWire {
    pub exp: i64,
    pub poly: PolyWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BakerWire {
    pub z_terms: Vec<BakerTermWire>,
    pub trunc_order: Option<i64>,
}

pub fn encode_poly(f: &RingElement) -> PolyWire {
    f.terms()
        .map(|(m, c)| TermWire {
            exponents: m.clone(),
            coeff: c.encode(),
        })
        .collect()
}

pub fn decode_poly(ring: &RingRef, w: &[TermWire]) -> Result<RingElement> {
    let base = ring.base();
    let terms = w
        .iter()
        .map(|t| Ok((t.exponents.clone(), base.parse(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    RingElement::from_terms(ring, terms)
}

pub fn encode_laurent(f: &LaurentElement) -> LaurentWire {
    LaurentWire {
        min_exp: f.min_exp(),
        trunc_order: f.trunc(),
        terms: f
            .terms()
            .map(|(e, c)| LaurentTermWire {
                exp: *e,
                coeff: encode_poly(c),
            })
            .collect(),
    }
}

pub fn decode_laurent(ring: &RingRef, w: &LaurentWire) -> Result<LaurentElement> {
    let terms = w
        .terms
        .iter()
        .map(|t| Ok((t.exp, decode_poly(ring, &t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    LaurentElement::new(ring, terms, w.trunc_order)
}

pub fn encode_gamma(g: &GammaElement) -> GammaWire {
    GammaWire {
        gminus: encode_laurent(g.gminus()),
        unit: encode_poly(g.unit()),
        gplus: encode_laurent(g.gplus()),
        zpower: g.zpower(),
    }
}

pub fn decode_gamma(ring: &RingRef, w: &GammaWire) -> Result<GammaElement> {
    GammaElement::new(
        decode_laurent(ring, &w.gminus)?,
        decode_poly(ring, &w.unit)?,
        decode_laurent(ring, &w.gplus)?,
        w.zpower,
    )
}

pub fn encode_point(p: &GrassPoint) -> PointWire {
    PointWire {
        tail_depth: p.tail_depth(),
        window_high: p.window_high(),
        columns: p.columns().iter().map(encode_laurent).collect(),
    }
}

pub fn decode_point(ring: &RingRef, w: &PointWire) -> Result<GrassPoint> {
    let cols = w
        .columns
        .iter()
        .map(|c| decode_laurent(ring, c))
        .collect::<Result<Vec<_>>>()?;
    GrassPoint::new(ring, w.tail_depth, w.window_high, cols)
}

pub fn encode_maya(s: &MayaDiagram) -> MayaWire {
    MayaWire {
        tail_start: s.tail_start(),
        members_below_tail: s.members_below_tail().collect(),
    }
}

pub fn decode_maya(w: &MayaWire) -> Result<MayaDiagram> {
    MayaDiagram::new(w.tail_start, w.members_below_tail.iter().copied())
}

pub fn encode_partition(p: &Partition) -> Vec<u32> {
    p.parts().to_vec()
}

pub fn decode_partition(w: &[u32]) -> Result<Partition> {
    Partition::new(w.to_vec())
}

pub fn encode_baker(b: &BakerFunction) -> BakerWire {
    BakerWire {
        z_terms: b
            .value
            .terms()
            .map(|(e, c)| BakerTermWire {
                exp: *e,
                poly: encode_poly(c),
            })
            .collect(),
        trunc_order: b.value.trunc(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::factorize;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("q").unwrap(), BaseField::Rationals);
        assert_eq!(parse_field("fp:7").unwrap(), BaseField::prime(7).unwrap());
        assert!(parse_field("fp:8").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn round_trips() {
        let spec = RingSpec {
            field: "q".into(),
            weights: vec![1],
            degree_bound: 2,
        };
        let r = spec.build().unwrap();
        assert_eq!(RingSpec::of(&r), spec);
        let x = RingElement::var(&r, 0);
        let q = r.base();
        let f = LaurentElement::new(
            &r,
            [
                (-1, x.clone()),
                (0, RingElement::constant(&r, q.ratio(3, 2))),
                (2, &x * &x),
            ],
            Some(4),
        )
        .unwrap();
        let json = serde_json::to_string(&encode_laurent(&f)).unwrap();
        let back: LaurentWire = serde_json::from_str(&json).unwrap();
        assert_eq!(decode_laurent(&r, &back).unwrap(), f);
        let g = factorize(&f).unwrap();
        assert_eq!(decode_gamma(&r, &encode_gamma(&g)).unwrap(), g);
        let s = MayaDiagram::new(1, [-1]).unwrap();
        assert_eq!(decode_maya(&encode_maya(&s)).unwrap(), s);
    }

    #[test]
    fn malformed_coefficients_are_parse_errors() {
        let r = CoeffRing::new(BaseField::Rationals, 1, 2);
        let bad = vec![TermWire {
            exponents: vec![1],
            coeff: "1/0".into(),
        }];
        assert!(matches!(decode_poly(&r, &bad), Err(Error::Parse(_))));
        let arity = vec![TermWire {
            exponents: vec![1, 0],
            coeff: "1".into(),
        }];
        assert!(matches!(decode_poly(&r, &arity), Err(Error::Parse(_))));
    }
}
