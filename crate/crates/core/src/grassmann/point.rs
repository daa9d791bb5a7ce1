//! Points of the Grassmannian of `k((z))` as windowed frames.
//!
//! A point is the span of finitely many explicit columns together with the
//! standard tail `z^-i`, `i > N`. Columns are stored reduced modulo the tail
//! (no exponent below `-N`) and are known on the rows `[-N, M)`. Plücker
//! coordinates are frame minors on the rows complementary to a Maya
//! diagram, in increasing order, with columns in stored order; the frame of
//! `V^-` is `z^-N, ..., z^-1`, whose vacuum minor is 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::gamma::GammaElement;
use crate::laurent::LaurentElement;
use crate::linalg;
use crate::scalars::{RingElement, RingRef, Scalar};

use super::maya::MayaDiagram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassPoint {
    ring: RingRef,
    tail_depth: i64,
    window_high: i64,
    columns: Vec<LaurentElement>,
    /// Deepest row at which the tail is still known to be standard. Set
    /// after a `Gamma_+` action, whose image of the tail is only modelled
    /// down to a chosen depth.
    depth_limit: Option<i64>,
}

impl GrassPoint {
    /// `span(columns) + span{z^-i : i > tail_depth}`, known below `window_high`.
    pub fn new(
        ring: &RingRef,
        tail_depth: i64,
        window_high: i64,
        columns: Vec<LaurentElement>,
    ) -> Result<Self> {
        let p = Self::build(ring, tail_depth, window_high, columns, None)?;
        p.check_independent()?;
        Ok(p)
    }

    fn build(
        ring: &RingRef,
        tail_depth: i64,
        window_high: i64,
        columns: Vec<LaurentElement>,
        depth_limit: Option<i64>,
    ) -> Result<Self> {
        if tail_depth < 0 {
            return Err(Error::Parse("tail depth must be non-negative".into()));
        }
        if window_high < -tail_depth {
            return Err(Error::Parse("window ends below the tail".into()));
        }
        let mut cols = Vec::with_capacity(columns.len());
        for c in columns {
            if c.ring() != ring {
                return Err(Error::RingMismatch("frame column".into()));
            }
            if c.trunc().is_some_and(|m| m < window_high) {
                return Err(Error::precision(format!(
                    "column known only below z^{}, window needs z^{}",
                    c.trunc().unwrap(),
                    window_high
                )));
            }
            let reduced = LaurentElement::new(
                ring,
                c.terms()
                    .filter(|(e, _)| **e >= -tail_depth && **e < window_high)
                    .map(|(e, v)| (*e, v.clone())),
                Some(window_high),
            )?;
            cols.push(reduced);
        }
        Ok(GrassPoint {
            ring: ring.clone(),
            tail_depth,
            window_high,
            columns: cols,
            depth_limit,
        })
    }

    /// `V^- = span{z^-1, z^-2, ...}`.
    pub fn v_minus(ring: &RingRef, window_high: i64) -> Self {
        Self::build(ring, 0, window_high, Vec::new(), None).expect("valid window")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn tail_depth(&self) -> i64 {
        self.tail_depth
    }

    pub fn window_high(&self) -> i64 {
        self.window_high
    }

    pub fn columns(&self) -> &[LaurentElement] {
        &self.columns
    }

    pub fn depth_limit(&self) -> Option<i64> {
        self.depth_limit
    }

    fn rows(&self) -> std::ops::Range<i64> {
        -self.tail_depth..self.window_high
    }

    /// Constant terms of the frame on the window rows.
    fn residue_matrix(&self, rows: std::ops::Range<i64>) -> Vec<Vec<Scalar>> {
        rows.map(|r| {
            self.columns
                .iter()
                .map(|c| c.coeff_unchecked(r).constant_term())
                .collect()
        })
        .collect()
    }

    fn check_independent(&self) -> Result<()> {
        let k = self.columns.len();
        if k == 0 {
            return Ok(());
        }
        if linalg::rank(&self.residue_matrix(self.rows())) < k {
            return Err(Error::precondition(
                "frame columns are dependent modulo the tail within the window",
            ));
        }
        Ok(())
    }

    /// `(dim L cap V^+, dim V / (L + V^+))` on the residue field.
    pub fn index_parts(&self) -> Result<(usize, usize)> {
        self.check_independent()?;
        let n = self.tail_depth as usize;
        let rho = if self.columns.is_empty() || n == 0 {
            0
        } else {
            linalg::rank(&self.residue_matrix(-self.tail_depth..0))
        };
        Ok((self.columns.len() - rho, n - rho))
    }

    /// `dim(L cap V^+) - dim(V / (L + V^+))`.
    pub fn index(&self) -> Result<i64> {
        let (a, b) = self.index_parts()?;
        Ok(a as i64 - b as i64)
    }

    /// Same subspace with the tail split at a deeper row: the columns
    /// `z^-depth, ..., z^-(N+1)` are prepended to the frame.
    pub fn extend_depth(&self, depth: i64) -> Result<Self> {
        if depth <= self.tail_depth {
            return Ok(self.clone());
        }
        if let Some(limit) = self.depth_limit {
            if depth > limit {
                return Err(Error::precision(format!(
                    "point is modelled only down to z^-{limit}, depth {depth} requested"
                )));
            }
        }
        let mut cols: Vec<LaurentElement> = (self.tail_depth + 1..=depth)
            .rev()
            .map(|i| LaurentElement::z_power(&self.ring, -i).truncated(self.window_high))
            .collect();
        cols.extend(self.columns.iter().cloned());
        Ok(GrassPoint {
            ring: self.ring.clone(),
            tail_depth: depth,
            window_high: self.window_high,
            columns: cols,
            depth_limit: self.depth_limit,
        })
    }

    /// Minor of the frame on the given rows (all inside the window).
    fn minor(&self, rows: &[i64]) -> RingElement {
        let m: Vec<Vec<RingElement>> = rows
            .iter()
            .map(|&r| self.columns.iter().map(|c| c.coeff_unchecked(r)).collect())
            .collect();
        linalg::det(&self.ring, &m)
    }

    /// The Plücker coordinate `Omega_S(L)`. The chart's charge must equal
    /// the index of the point.
    pub fn plucker(&self, s: &MayaDiagram) -> Result<RingElement> {
        let index = self.index()?;
        if s.charge() != index {
            return Err(Error::precondition(format!(
                "chart {s} has charge {}, point has index {index}",
                s.charge()
            )));
        }
        let p = self.extend_depth(-s.min())?;
        let rows = s.complement_from(-p.tail_depth);
        if let Some(r) = rows.iter().find(|&&r| r >= p.window_high) {
            return Err(Error::precision(format!(
                "chart {s} needs row {r}, window ends below {}",
                p.window_high
            )));
        }
        debug_assert_eq!(rows.len(), p.columns.len());
        Ok(p.minor(&rows))
    }

    /// Whether the point lies in the chart `F_{A_S}`.
    pub fn in_chart(&self, s: &MayaDiagram) -> Result<bool> {
        if s.charge() != self.index()? {
            return Ok(false);
        }
        Ok(self.plucker(s)?.is_unit())
    }

    /// `det(delta_AB)(L) = Omega_A(L) / Omega_B(L)`.
    pub fn chart_transition(&self, a: &MayaDiagram, b: &MayaDiagram) -> Result<RingElement> {
        let pa = self.plucker(a)?;
        let pb = self.plucker(b)?;
        if !pa.is_unit() || !pb.is_unit() {
            return Err(Error::precondition(format!(
                "point is not in both charts {a} and {b}"
            )));
        }
        Ok(&pa * &pb.inverse()?)
    }

    /// Base change along the natural map of coefficient rings.
    pub fn map_into(&self, ring: &RingRef) -> Result<Self> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.map_into(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(GrassPoint {
            ring: ring.clone(),
            columns,
            ..self.clone()
        })
    }

    /// `g L` with the default modelling depth for the `Gamma_+` factor.
    pub fn act(&self, g: &GammaElement) -> Result<Self> {
        let p = g.principal_length() as i64;
        let d = self.ring.degree_bound() as i64;
        self.act_with_depth(g, self.tail_depth + p * (d + 1))
    }

    /// `g L`. The `Gamma_-` factor maps the tail into itself and acts
    /// exactly. The `Gamma_+` factor moves the tail, so the tail is split at
    /// `depth` first; the image frame is then exact for every chart whose
    /// diagram lies in `[-depth, infinity)`.
    pub fn act_with_depth(&self, g: &GammaElement, depth: i64) -> Result<Self> {
        if g.zpower() != 0 {
            return Err(Error::precondition(
                "only elements with zpower 0 act on the Grassmannian",
            ));
        }
        if g.ring() != &self.ring {
            return Err(Error::RingMismatch("group element and point".into()));
        }
        let one = LaurentElement::one(&self.ring);
        let mut point = self.clone();
        if g.gminus() != &one {
            if self.depth_limit.is_some() {
                return Err(Error::precondition(
                    "apply the Gamma_- factor before any Gamma_+ factor",
                ));
            }
            let shrink = g.principal_length() as i64;
            let window = self.window_high - shrink;
            let cols: Vec<LaurentElement> =
                self.columns.iter().map(|c| g.gminus().mul(c)).collect();
            point = Self::build(&self.ring, self.tail_depth, window, cols, None)?;
        }
        if g.gplus() != &one {
            let depth = depth.max(point.tail_depth);
            let ext = point.extend_depth(depth)?;
            let cols: Vec<LaurentElement> =
                ext.columns.iter().map(|c| g.gplus().mul(c)).collect();
            let window = cols
                .iter()
                .filter_map(|c| c.trunc())
                .min()
                .unwrap_or(ext.window_high)
                .min(ext.window_high);
            let limit = Some(ext.depth_limit.map_or(depth, |l| l.min(depth)));
            point = Self::build(&self.ring, depth, window, cols, limit)?;
        }
        point.check_independent().map_err(|_| {
            Error::precision("window too short to keep the moved frame independent")
        })?;
        Ok(point)
    }
}

impl fmt::Display for GrassPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}} + tail below z^-{}", self.tail_depth)
    }
}

pub fn index(l: &GrassPoint) -> Result<i64> {
    l.index()
}

pub fn in_chart(l: &GrassPoint, s: &MayaDiagram) -> Result<bool> {
    l.in_chart(s)
}

pub fn plucker(l: &GrassPoint, s: &MayaDiagram) -> Result<RingElement> {
    l.plucker(s)
}

pub fn chart_transition(l: &GrassPoint, a: &MayaDiagram, b: &MayaDiagram) -> Result<RingElement> {
    l.chart_transition(a, b)
}

pub fn act(g: &GammaElement, l: &GrassPoint) -> Result<GrassPoint> {
    l.act(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::maya::Partition;
    use crate::scalars::{BaseField, CoeffRing};

    fn q() -> RingRef {
        CoeffRing::field(BaseField::Rationals)
    }

    fn col(ring: &RingRef, terms: &[(i64, i64)]) -> LaurentElement {
        let b = ring.base();
        LaurentElement::from_scalars(
            ring,
            &terms.iter().map(|(e, c)| (*e, b.from_i64(*c))).collect::<Vec<_>>(),
        )
    }

    fn maya(parts: &[u32]) -> MayaDiagram {
        MayaDiagram::from_partition(&Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn index_examples() {
        let r = q();
        assert_eq!(GrassPoint::v_minus(&r, 4).index().unwrap(), 0);
        let l = GrassPoint::new(&r, 0, 4, vec![col(&r, &[(0, 1)])]).unwrap();
        assert_eq!(l.index().unwrap(), 1);
        let l = GrassPoint::new(&r, 1, 4, vec![col(&r, &[(1, 1)])]).unwrap();
        assert_eq!(l.index_parts().unwrap(), (1, 1));
        assert_eq!(l.index().unwrap(), 0);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let r = q();
        let c = col(&r, &[(0, 1)]);
        assert!(GrassPoint::new(&r, 0, 3, vec![c.clone(), c]).is_err());
        // a column that vanishes modulo the tail
        assert!(GrassPoint::new(&r, 1, 3, vec![col(&r, &[(-2, 1)])]).is_err());
    }

    #[test]
    fn chart_membership() {
        let r = q();
        let vm = GrassPoint::v_minus(&r, 4);
        assert!(vm.in_chart(&MayaDiagram::vacuum()).unwrap());
        assert!(!vm.in_chart(&maya(&[1])).unwrap());
        let l = GrassPoint::new(&r, 1, 4, vec![col(&r, &[(0, 1)])]).unwrap();
        assert!(l.in_chart(&maya(&[1])).unwrap());
    }

    #[test]
    fn plucker_of_a_one_parameter_point() {
        let r = q();
        let c = 5;
        let l = GrassPoint::new(&r, 1, 6, vec![col(&r, &[(-1, 1), (0, c)])]).unwrap();
        assert!(l.plucker(&MayaDiagram::vacuum()).unwrap().is_one());
        assert_eq!(l.plucker(&maya(&[1])).unwrap(), RingElement::from_i64(&r, c));
        for lambda in Partition::up_to(3).into_iter().skip(2) {
            assert!(l.plucker(&MayaDiagram::from_partition(&lambda)).unwrap().is_zero());
        }
        let t = l.chart_transition(&MayaDiagram::vacuum(), &maya(&[1])).unwrap();
        assert_eq!(t, RingElement::constant(&r, r.base().ratio(1, c)));
        assert!(GrassPoint::v_minus(&r, 4).plucker(&MayaDiagram::vacuum()).unwrap().is_one());
    }

    #[test]
    fn window_too_small_is_reported() {
        let r = q();
        let l = GrassPoint::v_minus(&r, 1);
        assert!(matches!(l.plucker(&maya(&[3])), Err(Error::Precision(_))));
        assert!(l.plucker(&maya(&[1])).is_ok());
    }

    #[test]
    fn charge_must_match_index() {
        let r = q();
        let l = GrassPoint::new(&r, 0, 4, vec![col(&r, &[(0, 1)])]).unwrap();
        assert!(l.plucker(&MayaDiagram::vacuum()).is_err());
        assert!(l.plucker(&MayaDiagram::shifted(1)).unwrap().is_one());
        assert!(!l.in_chart(&MayaDiagram::vacuum()).unwrap());
    }

    #[test]
    fn gamma_minus_preserves_v_minus() {
        let r = CoeffRing::new(BaseField::Rationals, 2, 2);
        let x = RingElement::var(&r, 0);
        let y = RingElement::var(&r, 1);
        let g = LaurentElement::new(
            &r,
            vec![(0, RingElement::one(&r)), (-1, x), (-2, y)],
            None,
        )
        .unwrap();
        let g = GammaElement::minus(g).unwrap();
        let vm = GrassPoint::v_minus(&r, 5).extend_depth(2).unwrap();
        let moved = vm.act(&g).unwrap();
        for lambda in Partition::up_to(3) {
            let s = MayaDiagram::from_partition(&lambda);
            assert_eq!(moved.plucker(&s).unwrap(), vm.plucker(&s).unwrap());
        }
    }

    #[test]
    fn gamma_plus_moves_v_minus() {
        // (1 + a z) V^- has Omega_(1^k) = a^k and Omega_lambda = 0 otherwise
        let r = q();
        let g = GammaElement::plus(col(&r, &[(0, 1), (1, 3)])).unwrap();
        let moved = GrassPoint::v_minus(&r, 4).act_with_depth(&g, 3).unwrap();
        assert_eq!(moved.index().unwrap(), 0);
        assert!(moved.plucker(&MayaDiagram::vacuum()).unwrap().is_one());
        assert_eq!(moved.plucker(&maya(&[1])).unwrap(), RingElement::from_i64(&r, 3));
        assert!(moved.plucker(&maya(&[2])).unwrap().is_zero());
        assert_eq!(moved.plucker(&maya(&[1, 1])).unwrap(), RingElement::from_i64(&r, 9));
        assert_eq!(moved.plucker(&maya(&[1, 1, 1])).unwrap(), RingElement::from_i64(&r, 27));
        assert!(moved.plucker(&maya(&[2, 1])).unwrap().is_zero());
        assert!(matches!(moved.plucker(&maya(&[1, 1, 1, 1])), Err(Error::Precision(_))));
        let g_minus = GammaElement::minus(LaurentElement::one(&r)).unwrap();
        assert_eq!(moved.act(&g_minus).unwrap(), moved);
    }

    #[test]
    fn identity_action() {
        let r = q();
        let l = GrassPoint::new(&r, 1, 4, vec![col(&r, &[(-1, 1), (0, 2), (2, 1)])]).unwrap();
        assert_eq!(l.act(&GammaElement::identity(&r)).unwrap(), l);
    }
}
