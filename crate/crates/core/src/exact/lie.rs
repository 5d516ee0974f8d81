//! sl_n / gl_n structure: bracket, invariant forms, ad, centralizers, Jordan type.

use num_traits::Zero;

use super::linalg::{kernel_basis, mat_rank, Subspace};
use super::matrix::Mat;
use super::scalar::{int, Rational, Scalar};
use crate::error::{Error, Result};
use crate::partitions::Partition;

fn same_dim<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Result<()> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(x.n(), y.n()));
    }
    Ok(())
}

/// `XY − YX`.
pub fn bracket<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Result<Mat<S>> {
    same_dim(x, y)?;
    Ok(x.commutator(y))
}

/// The trace form `tr(XY)`.
pub fn trace_pair<S: Scalar>(x: &Mat<S>, y: &Mat<S>) -> Result<S> {
    same_dim(x, y)?;
    let n = x.n();
    let mut acc = S::zero();
    for r in 0..n {
        for c in 0..n {
            let a = &x[(r, c)];
            let b = &y[(c, r)];
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
    }
    Ok(acc)
}

/// Killing form of sl_n, `2n·tr(XY)`.
pub fn killing(x: &Mat, y: &Mat) -> Result<Rational> {
    Ok(trace_pair(x, y)? * int(2 * x.n() as i64))
}

/// Basis of gl_n: all `unit(i,j)` in row-major order.
pub fn gl_basis(n: usize) -> Vec<Mat> {
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| Mat::unit(n, i, j)))
        .collect()
}

/// Basis of sl_n: off-diagonal units in row-major order, then `unit(k,k) − unit(k+1,k+1)`.
pub fn sl_basis(n: usize) -> Vec<Mat> {
    let mut out: Vec<Mat> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| Mat::unit(n, i, j)))
        .collect();
    out.extend((1..n).map(|k| &Mat::unit(n, k, k) - &Mat::unit(n, k + 1, k + 1)));
    out
}

/// Matrix of `B ↦ [X, B]` on the span of `basis`, as rows over flattened entries.
pub fn ad_rows(x: &Mat, basis: &[Mat]) -> Vec<Vec<Rational>> {
    let images: Vec<Mat> = basis.iter().map(|b| x.commutator(b)).collect();
    let n2 = x.n() * x.n();
    (0..n2)
        .map(|e| images.iter().map(|m| m.flat()[e].clone()).collect())
        .collect()
}

/// Elements `Σ c_k B_k` of span(basis) commuting with `x`.
pub fn centralizer_in(x: &Mat, basis: &[Mat]) -> Subspace {
    let ker = kernel_basis(&ad_rows(x, basis), basis.len());
    let n = x.n();
    Subspace::span(
        n,
        ker.into_iter().map(|c| {
            basis
                .iter()
                .zip(&c)
                .fold(Mat::zeros(n), |acc, (b, k)| &acc + &b.scale(k))
        }),
    )
}

pub fn centralizer_gl(x: &Mat) -> Subspace {
    centralizer_in(x, &gl_basis(x.n()))
}

pub fn centralizer_sl(x: &Mat) -> Subspace {
    centralizer_in(x, &sl_basis(x.n()))
}

/// `[𝔤, x]` for 𝔤 = sl_n.
pub fn ad_image(x: &Mat) -> Subspace {
    Subspace::span(x.n(), sl_basis(x.n()).iter().map(|b| b.commutator(x)))
}

/// `k` with `[h, x] = k x`, when `x` is an ad-h eigenvector.
pub fn ad_eigenvalue(h: &Mat, x: &Mat) -> Option<Rational> {
    let hx = h.commutator(x);
    let n = x.n();
    let (r, c) = (0..n * n).map(|e| (e / n, e % n)).find(|&p| !x[p].is_zero())?;
    let k = hx[(r, c)].clone() / x[(r, c)].clone();
    (hx == x.scale(&k)).then_some(k)
}

/// Elements of span(basis) orthogonal under the trace form to every element of `v`.
pub fn trace_perp_in(v: &Subspace, basis: &[Mat]) -> Subspace {
    let rows: Vec<Vec<Rational>> = v
        .basis
        .iter()
        .map(|w| basis.iter().map(|b| trace_pair(w, b).expect("same n")).collect())
        .collect();
    let n = basis.first().map_or(v.n, Mat::n);
    let ker = if rows.is_empty() {
        (0..basis.len())
            .map(|k| (0..basis.len()).map(|j| if j == k { int(1) } else { int(0) }).collect())
            .collect()
    } else {
        kernel_basis(&rows, basis.len())
    };
    Subspace::span(
        n,
        ker.into_iter().map(|c: Vec<Rational>| {
            basis
                .iter()
                .zip(&c)
                .fold(Mat::zeros(n), |acc, (b, k)| &acc + &b.scale(k))
        }),
    )
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(m: &Mat) -> Result<Partition> {
    let n = m.n();
    if !m.pow(n as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut ranks = vec![n];
    let mut p = Mat::identity(n);
    while *ranks.last().unwrap() > 0 {
        p = &p * m;
        ranks.push(mat_rank(&p));
    }
    // number of parts ≥ k is ranks[k-1] − ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(k).take(exactly));
    }
    Partition::new(parts)
}
