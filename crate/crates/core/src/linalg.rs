//! Dense linear algebra over the base field and over truncated local rings.
//!
//! Rings here are local with nilpotent maximal ideal, so elimination can
//! always pivot on a unit as long as one exists; a residual block with no
//! unit entry is finished with the division-free Berkowitz recursion.

use crate::error::{Error, Result};
use crate::scalars::{RingElement, RingRef, Scalar};

pub type RingMatrix = Vec<Vec<RingElement>>;

/// Determinant of a square matrix over a truncated ring.
pub fn det(ring: &RingRef, m: &[Vec<RingElement>]) -> RingElement {
    let n = m.len();
    if n == 0 {
        return RingElement::one(ring);
    }
    let mut a: RingMatrix = m.to_vec();
    let mut acc = RingElement::one(ring);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c].is_unit()) else {
            let rest: RingMatrix = a[c..].iter().map(|row| row[c..].to_vec()).collect();
            return &acc * &berkowitz_det(ring, &rest);
        };
        if p != c {
            a.swap(p, c);
            acc = -&acc;
        }
        let inv = a[c][c].inverse().expect("pivot is a unit");
        acc = &acc * &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] * &inv;
            for k in c..n {
                let t = &factor * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    acc
}

/// Division-free determinant (Samuelson-Berkowitz).
pub fn berkowitz_det(ring: &RingRef, a: &[Vec<RingElement>]) -> RingElement {
    let n = a.len();
    if n == 0 {
        return RingElement::one(ring);
    }
    // characteristic polynomial det(tI - A_k) of the trailing block, highest
    // coefficient first
    let mut poly = vec![RingElement::one(ring), -&a[n - 1][n - 1]];
    for k in (0..n - 1).rev() {
        let m = n - k;
        let mut q = Vec::with_capacity(m + 1);
        q.push(RingElement::one(ring));
        q.push(-&a[k][k]);
        let mut v: Vec<RingElement> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        for _ in 0..m.saturating_sub(1) {
            let mut rv = RingElement::zero(ring);
            for (j, vj) in v.iter().enumerate() {
                rv = &rv + &(&a[k][k + 1 + j] * vj);
            }
            q.push(-&rv);
            v = (k + 1..n)
                .map(|i| {
                    let mut s = RingElement::zero(ring);
                    for (j, vj) in v.iter().enumerate() {
                        s = &s + &(&a[i][k + 1 + j] * vj);
                    }
                    s
                })
                .collect();
        }
        let mut next = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut s = RingElement::zero(ring);
            for j in 0..=i.min(m - 1) {
                if i - j < q.len() {
                    s = &s + &(&q[i - j] * &poly[j]);
                }
            }
            next.push(s);
        }
        poly = next;
    }
    let c = poly[n].clone();
    if n % 2 == 1 {
        -&c
    } else {
        c
    }
}

/// Solve `A x = b` for an invertible square `A` over a local ring.
pub fn solve(a: &[Vec<RingElement>], b: &[RingElement]) -> Result<Vec<RingElement>> {
    let n = a.len();
    let mut aug: RingMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| aug[r][c].is_unit())
            .ok_or_else(|| Error::NotUnit("matrix is not invertible over the ring".into()))?;
        aug.swap(p, c);
        let inv = aug[c][c].inverse()?;
        for k in c..=n {
            aug[c][k] = &aug[c][k] * &inv;
        }
        for r in 0..n {
            if r == c || aug[r][c].is_zero() {
                continue;
            }
            let factor = aug[r][c].clone();
            for k in c..=n {
                let t = &factor * &aug[c][k];
                aug[r][k] = &aug[r][k] - &t;
            }
        }
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a matrix over the base field.
pub fn rank(m: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for k in c..cols {
                let t = f.mul(&a[r][k]);
                a[i][k] = a[i][k].sub(&t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solve `A X = B` over the base field for square invertible `A`.
pub fn field_solve(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let w = b.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(r, s)| r.iter().chain(s.iter()).cloned().collect())
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !aug[r][c].is_zero())
            .ok_or_else(|| Error::NotUnit("singular matrix over the base field".into()))?;
        aug.swap(p, c);
        let inv = aug[c][c].inv().unwrap();
        for k in c..n + w {
            aug[c][k] = aug[c][k].mul(&inv);
        }
        for r in 0..n {
            if r == c || aug[r][c].is_zero() {
                continue;
            }
            let f = aug[r][c].clone();
            for k in c..n + w {
                let t = f.mul(&aug[c][k]);
                aug[r][k] = aug[r][k].sub(&t);
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{BaseField, CoeffRing};

    fn leibniz(ring: &RingRef, m: &[Vec<RingElement>]) -> RingElement {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = RingElement::zero(ring);
        permute(&mut perm, 0, &mut |p| {
            let mut sign = 1;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        sign = -sign;
                    }
                }
            }
            let mut t = RingElement::from_i64(ring, sign);
            for (i, &j) in p.iter().enumerate() {
                t = &t * &m[i][j];
            }
            total = &total + &t;
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn nilpotent_diagonal_needs_berkowitz() {
        let r = CoeffRing::new(BaseField::Rationals, 2, 2);
        let e = RingElement::var(&r, 0);
        let d = RingElement::var(&r, 1);
        let z = RingElement::zero(&r);
        let m = vec![vec![e.clone(), z.clone()], vec![z, d.clone()]];
        assert_eq!(det(&r, &m), &e * &d);
    }

    #[test]
    fn determinant_agrees_with_leibniz() {
        let r = CoeffRing::new(BaseField::Rationals, 2, 3);
        let x = RingElement::var(&r, 0);
        let y = RingElement::var(&r, 1);
        let one = RingElement::one(&r);
        let two = RingElement::from_i64(&r, 2);
        let m = vec![
            vec![x.clone(), &one + &y, y.clone(), two.clone()],
            vec![&x * &y, x.clone(), one.clone(), y.clone()],
            vec![two.clone(), y.clone(), &x * &x, one.clone()],
            vec![one.clone(), x.clone(), y.clone(), &x + &y],
        ];
        let expected = leibniz(&r, &m);
        assert_eq!(det(&r, &m), expected);
        assert_eq!(berkowitz_det(&r, &m), expected);
    }

    #[test]
    fn solve_round_trips() {
        let r = CoeffRing::new(BaseField::Rationals, 1, 2);
        let x = RingElement::var(&r, 0);
        let one = RingElement::one(&r);
        let a = vec![vec![x.clone(), &one + &x], vec![one.clone(), x.clone()]];
        let b = vec![one.clone(), x.clone()];
        let sol = solve(&a, &b).unwrap();
        for i in 0..2 {
            let lhs = &(&a[i][0] * &sol[0]) + &(&a[i][1] * &sol[1]);
            assert_eq!(lhs, b[i]);
        }
    }

    #[test]
    fn field_rank() {
        let q = BaseField::Rationals;
        let m = vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(2), q.from_i64(4)],
        ];
        assert_eq!(rank(&m), 1);
    }
}
