//! Finite Grassmannians: their Plücker coordinates and the embedding
//! `j(M) = pi^-1(M)` of `Gr(L'/L)` into the Grassmannian of `k((z))`.

use crate::error::{Error, Result};
use crate::laurent::LaurentElement;
use crate::linalg;
use crate::scalars::{BaseField, RingElement, Scalar};

use super::point::GrassPoint;

/// Plücker coordinates of the span of `vectors` in `k^n`: for every
/// increasing `J` with `|J| = k`, the minor of the coordinate matrix on the
/// rows `J`.
pub fn finite_coordinates(
    base: BaseField,
    n: usize,
    vectors: &[Vec<Scalar>],
) -> Vec<(Vec<usize>, Scalar)> {
    let k = vectors.len();
    subsets(n, k)
        .into_iter()
        .map(|rows| {
            let m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|&r| vectors.iter().map(|v| v[r].clone()).collect())
                .collect();
            let v = field_det(base, m);
            (rows, v)
        })
        .collect()
}

fn field_det(base: BaseField, mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut acc = base.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return base.zero();
        };
        if p != c {
            a.swap(p, c);
            acc = acc.neg();
        }
        acc = acc.mul(&a[c][c]);
        let inv = a[c][c].inv().unwrap();
        for r in c + 1..n {
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
            }
        }
    }
    acc
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every subspace of `F_p^n`, each given by its reduced row echelon basis.
pub fn all_subspaces(base: BaseField, n: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let p = match base {
        BaseField::Prime(p) => p,
        BaseField::Rationals => {
            return Err(Error::precondition("subspaces can only be enumerated over F_p"))
        }
    };
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in subsets(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pivots = pivots.clone();
                    (pivots[i] + 1..n)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let count = (p as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut rows = vec![vec![base.zero(); n]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = base.one();
                }
                let mut c = code;
                for &(i, j) in &free {
                    rows[i][j] = base.from_i64((c % p as usize) as i64);
                    c /= p as usize;
                }
                out.push(rows);
            }
        }
    }
    Ok(out)
}

/// `L` at a common depth with `L'`, and lifts of a basis of `L'/L`.
#[derive(Clone, Debug)]
pub struct FiniteEmbedding {
    pub lower: GrassPoint,
    pub basis: Vec<LaurentElement>,
}

fn residue_columns(p: &GrassPoint) -> Vec<Vec<Scalar>> {
    p.columns()
        .iter()
        .map(|c| {
            (-p.tail_depth()..p.window_high())
                .map(|r| c.coeff_unchecked(r).constant_term())
                .collect()
        })
        .collect()
}

fn rank_of_columns(cols: &[Vec<Scalar>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let m: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::rank(&m)
}

/// A basis of `L'/L` chosen greedily among the frame columns of `L'`.
pub fn quotient_basis(l: &GrassPoint, lprime: &GrassPoint) -> Result<FiniteEmbedding> {
    if l.ring() != lprime.ring() {
        return Err(Error::RingMismatch("points over different rings".into()));
    }
    if !l.ring().is_field() {
        return Err(Error::precondition("finite embedding needs rational points"));
    }
    let depth = l.tail_depth().max(lprime.tail_depth());
    let window = l.window_high().min(lprime.window_high());
    let clip = |p: &GrassPoint| -> Result<GrassPoint> {
        let p = p.extend_depth(depth)?;
        GrassPoint::new(
            p.ring(),
            depth,
            window,
            p.columns().iter().map(|c| c.truncated(window)).collect(),
        )
    };
    let lo = clip(l)?;
    let hi = clip(lprime)?;
    let a = residue_columns(&lo);
    let b = residue_columns(&hi);
    let rb = rank_of_columns(&b);
    let mut both = b.clone();
    both.extend(a.iter().cloned());
    if rank_of_columns(&both) != rb {
        return Err(Error::precondition("L is not contained in L' at these windows"));
    }
    let mut chosen = a.clone();
    let mut basis = Vec::new();
    for (col, res) in hi.columns().iter().zip(&b) {
        let before = rank_of_columns(&chosen);
        chosen.push(res.clone());
        if rank_of_columns(&chosen) > before {
            basis.push(col.clone());
        } else {
            chosen.pop();
        }
    }
    Ok(FiniteEmbedding { lower: lo, basis })
}

impl FiniteEmbedding {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `j(M)` for `M` spanned by the given coordinate vectors.
    pub fn embed(&self, m: &[Vec<Scalar>]) -> Result<GrassPoint> {
        let ring = self.lower.ring();
        let mut cols = self.lower.columns().to_vec();
        for v in m {
            if v.len() != self.basis.len() {
                return Err(Error::Parse(format!(
                    "vector of length {} in a quotient of dimension {}",
                    v.len(),
                    self.basis.len()
                )));
            }
            let mut c = LaurentElement::zero(ring).truncated(self.lower.window_high());
            for (coef, b) in v.iter().zip(&self.basis) {
                c = c.add(&b.scale(&RingElement::constant(ring, coef.clone())));
            }
            cols.push(c);
        }
        GrassPoint::new(
            ring,
            self.lower.tail_depth(),
            self.lower.window_high(),
            cols,
        )
    }
}

/// `j(M) = pi^-1(M)` for `M` a subspace of `L'/L` in the greedy basis.
pub fn embed_finite(m: &[Vec<Scalar>], l: &GrassPoint, lprime: &GrassPoint) -> Result<GrassPoint> {
    quotient_basis(l, lprime)?.embed(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::maya::MayaDiagram;
    use crate::scalars::CoeffRing;

    #[test]
    fn gr_1_2() {
        let q = BaseField::Rationals;
        let lambda = q.from_i64(7);
        let coords = finite_coordinates(q, 2, &[vec![q.one(), lambda.clone()]]);
        assert_eq!(coords, vec![(vec![0], q.one()), (vec![1], lambda)]);
    }

    #[test]
    fn subspace_counts() {
        let f2 = BaseField::prime(2).unwrap();
        assert_eq!(all_subspaces(f2, 4).unwrap().len(), 67);
        let f3 = BaseField::prime(3).unwrap();
        assert_eq!(all_subspaces(f3, 2).unwrap().len(), 6);
    }

    #[test]
    fn extremes_of_the_embedding() {
        let r = CoeffRing::field(BaseField::Rationals);
        let l = GrassPoint::new(&r, 2, 6, vec![]).unwrap();
        let lp = GrassPoint::new(
            &r,
            2,
            6,
            (-2..2).map(|e| LaurentElement::z_power(&r, e)).collect(),
        )
        .unwrap();
        let emb = quotient_basis(&l, &lp).unwrap();
        assert_eq!(emb.dim(), 4);
        let q = BaseField::Rationals;
        let full: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| q.from_i64((i == j) as i64)).collect())
            .collect();
        let top = emb.embed(&full).unwrap();
        assert_eq!(top.index().unwrap(), lp.index().unwrap());
        assert_eq!(
            top.plucker(&MayaDiagram::shifted(2)).unwrap(),
            lp.plucker(&MayaDiagram::shifted(2)).unwrap()
        );
        let bottom = emb.embed(&[]).unwrap();
        assert_eq!(bottom, l);
        assert!(quotient_basis(&lp, &l).is_err());
    }
}
