//! Square matrices over a [`Scalar`], the carrier for elements of gl_n and sl_n.
//!
//! Convention: `unit(n, i, j)` (1-based) has a single 1 in row `i`, column
//! `j`, so it sends basis vector `j` to basis vector `i`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{int, parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<S = Rational> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            entries: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m[(k, k)] = S::one();
        }
        m
    }

    /// Elementary matrix with a 1 at (row `i`, column `j`), 1-based.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n, "unit({i},{j}) out of range for n={n}");
        let mut m = Self::zeros(n);
        m[(i - 1, j - 1)] = S::one();
        m
    }

    pub fn diag(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len());
        for (k, x) in d.iter().enumerate() {
            m[(k, k)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, bad.len()));
        }
        Ok(Mat {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_flat(n: usize, entries: Vec<S>) -> Self {
        assert_eq!(entries.len(), n * n);
        Mat { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flat(&self) -> &[S] {
        &self.entries
    }

    pub fn into_flat(self) -> Vec<S> {
        self.entries
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Commutator `XY − YX`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32).is_zero()
    }
}

impl Mat<Rational> {
    /// Builds a matrix from integer rows; panics if the rows are ragged.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("square integer matrix")
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.entries[r * self.n + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.entries[r * self.n + c]
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Mat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Mat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Mat::<S>::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: Mat<S>) -> Mat<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: Mat<S>) -> Mat<S> {
        &self - &rhs
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for r in 0..self.n {
            let line: Vec<String> = (0..self.n)
                .map(|c| format!("{:>width$}", cells[r * self.n + c]))
                .collect();
            writeln!(f, "[ {} ]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat<Rational> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Mat::from_rows(parsed).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_placement_and_action() {
        let e = Mat::<Rational>::unit(3, 1, 2);
        assert_eq!(e[(0, 1)], int(1));
        // sends basis vector 2 to basis vector 1
        assert_eq!(e.apply(&[int(0), int(1), int(0)]), vec![int(1), int(0), int(0)]);
    }

    #[test]
    fn json_encoding() {
        let m = Mat::from_rows(vec![
            vec![super::super::scalar::frac(-3, 4), int(2)],
            vec![int(0), int(1)],
        ])
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["-3/4","2"],["0","1"]]"#);
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Mat::from_rows(vec![vec![int(1), int(2)], vec![int(3)]]).is_err());
    }
}
