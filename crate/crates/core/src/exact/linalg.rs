//! Row reduction, kernels, solves, and spans of matrices.
//!
//! The row-level routines are generic over [`Scalar`]. Pivots are always
//! units, so over [`super::Dual`] a column whose remaining entries are all
//! infinitesimal is treated as pivot-free.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Mat;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Reduced row echelon form. Returns the non-zero rows and pivot columns.
pub fn rref<S: Scalar>(mut rows: Vec<Vec<S>>) -> (Vec<Vec<S>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some((p, inv)) = (r..rows.len()).find_map(|k| rows[k][c].try_inv().map(|inv| (k, inv))) else {
            continue;
        };
        rows.swap(r, p);
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Null space of the `rows × ncols` matrix given by `rows`.
pub fn kernel_basis<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let (red, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); ncols];
            v[fc] = S::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

/// One solution of `A x = b` (free variables set to zero).
pub fn solve<S: Scalar>(rows: &[Vec<S>], b: &[S], ncols: usize) -> Result<Vec<S>> {
    if rows.len() != b.len() {
        return Err(Error::DimensionMismatch(rows.len(), b.len()));
    }
    let aug: Vec<Vec<S>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&ncols) {
        return Err(Error::SingularSystem("inconsistent".into()));
    }
    // over a local ring a leftover non-unit in the augmented column still means no solution
    if red.iter().any(|row| row[..ncols].iter().all(Zero::is_zero) && !row[ncols].is_zero()) {
        return Err(Error::SingularSystem("inconsistent".into()));
    }
    let mut x = vec![S::zero(); ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    let residual_ok = rows.iter().zip(b).all(|(r, bi)| {
        let lhs = r.iter().zip(&x).fold(S::zero(), |acc, (a, y)| acc + a.clone() * y.clone());
        lhs == *bi
    });
    if !residual_ok {
        return Err(Error::SingularSystem("no unit pivot available".into()));
    }
    Ok(x)
}

/// Like [`solve`] but fails unless the solution is unique.
pub fn solve_unique<S: Scalar>(rows: &[Vec<S>], b: &[S], ncols: usize) -> Result<Vec<S>> {
    let x = solve(rows, b, ncols)?;
    if rref(rows.to_vec()).1.len() != ncols {
        return Err(Error::SingularSystem("solution not unique".into()));
    }
    Ok(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse<S: Scalar>(m: &Mat<S>) -> Option<Mat<S>> {
    let n = m.n();
    let rows: Vec<Vec<S>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { S::one() } else { S::zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(rows);
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    Some(Mat::from_flat(n, red.into_iter().flat_map(|r| r[n..].to_vec()).collect()))
}

/// Rank of a single matrix.
pub fn mat_rank(m: &Mat) -> usize {
    rank(&(0..m.n()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>())
}

/// A linear span of `n × n` matrices with an independent basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Mat>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new() }
    }

    /// Span of `gens`, keeping the first independent generators in order.
    pub fn span(n: usize, gens: impl IntoIterator<Item = Mat>) -> Self {
        let mut basis: Vec<Mat> = Vec::new();
        let mut echelon: Vec<Vec<Rational>> = Vec::new();
        for g in gens {
            assert_eq!(g.n(), n, "generator dimension mismatch");
            let mut trial = echelon.clone();
            trial.push(g.flat().to_vec());
            let (red, _) = rref(trial);
            if red.len() > echelon.len() {
                echelon = red;
                basis.push(g);
            }
        }
        Subspace { n, basis }
    }

    pub fn from_flat_vectors(n: usize, vs: Vec<Vec<Rational>>) -> Self {
        Self::span(n, vs.into_iter().map(|v| Mat::from_flat(n, v)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|b| b.flat().to_vec()).collect()
    }

    /// Coordinates of `x` in the basis, if `x` lies in the span.
    pub fn coords(&self, x: &Mat) -> Option<Vec<Rational>> {
        let n2 = self.n * self.n;
        let cols: Vec<Vec<Rational>> = (0..n2)
            .map(|e| self.basis.iter().map(|b| b.flat()[e].clone()).collect())
            .collect();
        solve(&cols, x.flat(), self.dim()).ok()
    }

    pub fn contains(&self, x: &Mat) -> bool {
        if self.dim() == 0 {
            return x.is_zero();
        }
        self.coords(x).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.n, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        let n2 = self.n * self.n;
        let cols: Vec<Vec<Rational>> = (0..n2)
            .map(|e| {
                self.basis
                    .iter()
                    .map(|v| v.flat()[e].clone())
                    .chain(other.basis.iter().map(|w| -w.flat()[e].clone()))
                    .collect()
            })
            .collect();
        let ker = kernel_basis(&cols, a + b);
        Subspace::span(
            self.n,
            ker.into_iter().map(|k| self.combine(&k[..a])),
        )
    }

    /// `Σ c_k basis_k`.
    pub fn combine(&self, c: &[Rational]) -> Mat {
        assert_eq!(c.len(), self.dim());
        self.basis
            .iter()
            .zip(c)
            .fold(Mat::zeros(self.n), |acc, (b, x)| &acc + &b.scale(x))
    }

    /// Independence check of the stored basis.
    pub fn is_independent(&self) -> bool {
        rank(&self.rows()) == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{int, Dual};
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![int(1), int(2), int(3)]];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = v.iter().zip(&rows[0]).fold(int(0), |a, (x, y)| a + x * y);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn dual_solve_differentiates_inverse() {
        // (2 + ε) x = 1  ⇒  x = 1/2 − ε/4
        let a = vec![vec![Dual::new(int(2), int(1))]];
        let x = solve_unique(&a, &[Dual::from_int(1)], 1).unwrap();
        assert_eq!(x[0], Dual::new(super::super::scalar::frac(1, 2), super::super::scalar::frac(-1, 4)));
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![int(1)], vec![int(1)]];
        assert!(solve(&a, &[int(0), int(1)], 1).is_err());
    }

    #[test]
    fn span_keeps_first_generators() {
        let e = Mat::<Rational>::unit(2, 1, 2);
        let s = Subspace::span(2, [e.clone(), e.scale(&int(3)), Mat::unit(2, 2, 1)]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis[0], e);
        let t = Subspace::span(2, [Mat::unit(2, 2, 1), Mat::unit(2, 1, 1)]);
        assert_eq!(s.intersection(&t).dim(), 1);
        assert!(s.intersection(&t).contains(&Mat::unit(2, 2, 1)));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_ints(&[&[2, 1], &[5, 3]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(inverse(&Mat::from_ints(&[&[1, 2], &[2, 4]])).is_none());
    }
}
