//! Pyramids, their canonical fillings, and the nilpotent element and good
//! grading attached to a filled pyramid.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::lie::sl_basis;
use crate::exact::{frac, int, Mat, Rational, Subspace};
use crate::partitions::Partition;

/// Rows of boxes of width 2; `offsets[ℓ]` is the column of the leftmost box of row `ℓ + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pyramid {
    pub shape: Partition,
    pub offsets: Vec<i64>,
}

impl Pyramid {
    pub fn new(shape: Partition, offsets: Vec<i64>) -> Result<Self> {
        let p = Pyramid { shape, offsets };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let k = self.shape.len();
        if self.offsets.len() != k {
            return Err(Error::InvalidPyramid(format!(
                "{} offsets for {} rows",
                self.offsets.len(),
                k
            )));
        }
        if k == 0 {
            return Ok(());
        }
        if self.offsets[0] != -(self.shape.part(1) as i64 - 1) {
            return Err(Error::InvalidPyramid("first row is not centred at 0".into()));
        }
        for l in 1..k {
            if self.offsets[l] < self.offsets[l - 1] {
                return Err(Error::InvalidPyramid(format!(
                    "row {} starts left of row {}",
                    l + 1,
                    l
                )));
            }
            if self.last_col(l) > self.last_col(l - 1) {
                return Err(Error::InvalidPyramid(format!(
                    "row {} ends right of row {}",
                    l + 1,
                    l
                )));
            }
        }
        Ok(())
    }

    fn row_len(&self, l: usize) -> i64 {
        self.shape.parts()[l] as i64
    }

    /// `F_ℓ` for the 0-based row `l`.
    pub fn last_col(&self, l: usize) -> i64 {
        self.offsets[l] + 2 * (self.row_len(l) - 1)
    }

    /// All pyramids of a shape; the right-aligned one comes first.
    pub fn enumerate(shape: &Partition) -> Vec<Pyramid> {
        fn go(shape: &Partition, cur: &mut Vec<i64>, out: &mut Vec<Pyramid>) {
            let l = cur.len();
            if l == shape.len() {
                out.push(Pyramid {
                    shape: shape.clone(),
                    offsets: cur.clone(),
                });
                return;
            }
            let len = shape.parts()[l] as i64;
            let prev_f = cur[l - 1];
            let prev_last = prev_f + 2 * (shape.parts()[l - 1] as i64 - 1);
            let hi = prev_last - 2 * (len - 1);
            for f in (prev_f..=hi).rev() {
                cur.push(f);
                go(shape, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if shape.is_empty() {
            return vec![Pyramid {
                shape: shape.clone(),
                offsets: vec![],
            }];
        }
        go(shape, &mut vec![-(shape.part(1) as i64 - 1)], &mut out);
        out
    }

    /// Every row ends at the last column of the first row.
    pub fn right_aligned(shape: &Partition) -> Pyramid {
        let top = shape.part(1) as i64 - 1;
        let offsets = shape
            .parts()
            .iter()
            .map(|&p| top - 2 * (p as i64 - 1))
            .collect();
        Pyramid {
            shape: shape.clone(),
            offsets,
        }
    }

    /// Every row centred at column 0.
    pub fn symmetric(shape: &Partition) -> Pyramid {
        let offsets = shape.parts().iter().map(|&p| -(p as i64 - 1)).collect();
        Pyramid {
            shape: shape.clone(),
            offsets,
        }
    }

    /// All box columns share one parity.
    pub fn is_even(&self) -> bool {
        self.offsets.windows(2).all(|w| (w[0] - w[1]) % 2 == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.shape.len()).all(|l| self.offsets[l] == -self.last_col(l))
    }

    pub fn predicates(&self) -> (bool, bool) {
        (self.is_even(), self.is_symmetric())
    }

    pub fn filling(&self) -> Filling {
        let mut boxes: Vec<(i64, usize)> = (0..self.shape.len())
            .flat_map(|l| (0..self.row_len(l)).map(move |p| (self.offsets[l] + 2 * p, l + 1)))
            .collect();
        boxes.sort_unstable();
        Filling {
            pyramid: self.clone(),
            col: boxes.iter().map(|b| b.0).collect(),
            row: boxes.iter().map(|b| b.1).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = self.filling();
        json!({
            "shape": self.shape,
            "offsets": self.offsets,
            "labels": f.rows(),
        })
    }

    /// Boxes drawn as bordered cells, top row first, with the column axis underneath.
    pub fn render_ascii(&self) -> String {
        const W: i64 = 3;
        let f = self.filling();
        let k = self.shape.len();
        if k == 0 {
            return String::new();
        }
        let cmin = f.col.iter().min().copied().unwrap_or(0) - 1;
        let cmax = f.col.iter().max().copied().unwrap_or(0) + 1;
        let width = ((cmax - cmin) * W + 1) as usize;
        let x = |c: i64| ((c - cmin) * W) as usize;
        let row_boxes = |r: usize| -> Vec<(i64, usize)> {
            (0..f.n()).filter(|&a| f.row[a] == r).map(|a| (f.col[a], a + 1)).collect()
        };
        let border = |rows: &[usize]| -> String {
            let mut line = vec![' '; width];
            for &r in rows {
                for (c, _) in row_boxes(r) {
                    for ch in line.iter_mut().take(x(c + 1)).skip(x(c - 1)) {
                        if *ch == ' ' {
                            *ch = '-';
                        }
                    }
                    line[x(c - 1)] = '+';
                    line[x(c + 1)] = '+';
                }
            }
            line.into_iter().collect::<String>().trim_end().to_string()
        };
        let mut out = Vec::new();
        out.push(border(&[k]));
        for r in (1..=k).rev() {
            let mut line = vec![' '; width];
            for (c, label) in row_boxes(r) {
                line[x(c - 1)] = '|';
                line[x(c + 1)] = '|';
                let s = label.to_string();
                let start = x(c) + 1 - s.len().div_ceil(2);
                for (o, ch) in s.chars().enumerate() {
                    line[start + o] = ch;
                }
            }
            out.push(line.into_iter().collect::<String>().trim_end().to_string());
            let below: Vec<usize> = if r > 1 { vec![r, r - 1] } else { vec![r] };
            out.push(border(&below));
        }
        let mut axis = vec![' '; width + 2];
        let mut cols: Vec<i64> = f.col.clone();
        cols.sort_unstable();
        cols.dedup();
        for c in cols {
            let s = c.to_string();
            let start = (x(c) + 1).saturating_sub(s.len().div_ceil(2));
            for (o, ch) in s.chars().enumerate() {
                axis[start + o] = ch;
            }
        }
        out.push(axis.into_iter().collect::<String>().trim_end().to_string());
        out.join("\n") + "\n"
    }
}

/// The filling that increases up columns, then left to right. Labels are 1-based;
/// `col[k-1]`, `row[k-1]` locate the box labelled `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub pyramid: Pyramid,
    pub col: Vec<i64>,
    pub row: Vec<usize>,
}

impl Filling {
    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn col(&self, k: usize) -> i64 {
        self.col[k - 1]
    }

    pub fn row(&self, k: usize) -> usize {
        self.row[k - 1]
    }

    /// Labels of row `r` (1-based), left to right.
    pub fn row_labels(&self, r: usize) -> Vec<usize> {
        (1..=self.n()).filter(|&k| self.row(k) == r).collect()
    }

    /// All rows bottom first.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.pyramid.shape.len()).map(|r| self.row_labels(r)).collect()
    }

    /// Pairs `k → ℓ` of right-adjacent boxes.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        self.rows()
            .iter()
            .flat_map(|r| r.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            .collect()
    }

    pub fn e(&self) -> Mat {
        let n = self.n();
        self.adjacency()
            .into_iter()
            .fold(Mat::zeros(n), |acc, (k, l)| &acc + &Mat::unit(n, k, l))
    }

    pub fn grading(&self) -> GradingVec {
        GradingVec {
            col_of_label: self.col.clone(),
        }
    }

    pub fn nilpotent_and_grading(&self) -> (Mat, GradingVec) {
        (self.e(), self.grading())
    }

    /// Basis of the gl_n centralizer of `e_P`, built row by row from the pyramid.
    pub fn centralizer_basis(&self) -> Vec<Mat> {
        let n = self.n();
        let rows = self.rows();
        let k = rows.len();
        let map = |src: &[usize], tgt: &[usize], shift: usize| -> Mat {
            src.iter().enumerate().fold(Mat::zeros(n), |acc, (p, &a)| match tgt.get(p + shift) {
                Some(&b) => &acc + &Mat::unit(n, a, b),
                None => acc,
            })
        };
        let mut out = Vec::new();
        for row in &rows {
            for r in 0..row.len() {
                out.push(map(row, row, r));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let (ri, rj) = (&rows[i], &rows[j]);
                for r in 0..rj.len() {
                    out.push(map(ri, rj, r));
                }
                let d = ri.len() - rj.len();
                for r in 0..rj.len() {
                    out.push(map(rj, ri, d + r));
                }
            }
        }
        out
    }
}

/// Integer grading of gl_n with `deg unit(i,j) = col(j) − col(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingVec {
    pub col_of_label: Vec<i64>,
}

impl GradingVec {
    pub fn trivial(n: usize) -> Self {
        GradingVec {
            col_of_label: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.col_of_label.len()
    }

    /// Degree of `unit(i, j)`, 1-based.
    pub fn deg(&self, i: usize, j: usize) -> i64 {
        self.col_of_label[j - 1] - self.col_of_label[i - 1]
    }

    pub fn degree_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (1..=n).map(|i| (1..=n).map(|j| self.deg(i, j)).collect()).collect()
    }

    /// `diag(−col) − (tr/n)·Id`; `ad h` has eigenvalue `deg(i,j)` on `unit(i,j)`.
    pub fn h(&self) -> Mat {
        let n = self.n() as i64;
        let total: i64 = self.col_of_label.iter().sum();
        let shift = frac(total, n);
        Mat::diag(
            &self
                .col_of_label
                .iter()
                .map(|&c| int(-c) + shift.clone())
                .collect::<Vec<Rational>>(),
        )
    }

    /// `Some(d)` if `x ≠ 0` lies in degree `d`; `None` for zero or mixed support.
    pub fn degree_of(&self, x: &Mat) -> Option<i64> {
        let n = self.n();
        let mut found = None;
        for i in 1..=n {
            for j in 1..=n {
                if !num_traits::Zero::is_zero(&x[(i - 1, j - 1)]) {
                    let d = self.deg(i, j);
                    if found.is_some_and(|f| f != d) {
                        return None;
                    }
                    found = Some(d);
                }
            }
        }
        found
    }

    /// The part of a homogeneous sl_n basis in each degree.
    pub fn sl_components(&self) -> BTreeMap<i64, Vec<Mat>> {
        let mut out: BTreeMap<i64, Vec<Mat>> = BTreeMap::new();
        for b in sl_basis(self.n()) {
            let d = self.degree_of(&b).expect("unit basis is homogeneous");
            out.entry(d).or_default().push(b);
        }
        out
    }

    /// `𝔤_d` inside sl_n.
    pub fn sl_piece(&self, d: i64) -> Subspace {
        Subspace::span(self.n(), self.sl_components().remove(&d).unwrap_or_default())
    }

    /// Units `unit(i,j)` with degree in the given range, as a subspace of sl_n.
    pub fn sl_pieces_where(&self, keep: impl Fn(i64) -> bool) -> Subspace {
        Subspace::span(
            self.n(),
            self.sl_components()
                .into_iter()
                .filter(|(d, _)| keep(*d))
                .flat_map(|(_, v)| v),
        )
    }

    /// Degrees of the simple roots for the positive system `deg > 0`, ties broken by `i < j`.
    pub fn characteristic(&self) -> Vec<i64> {
        let n = self.n();
        let positive = |a: usize, b: usize| {
            let d = self.deg(a, b);
            d > 0 || (d == 0 && a < b)
        };
        let mut out = Vec::new();
        for a in 1..=n {
            for c in 1..=n {
                if a == c || !positive(a, c) {
                    continue;
                }
                let decomposable = (1..=n).any(|b| b != a && b != c && positive(a, b) && positive(b, c));
                if !decomposable {
                    out.push(self.deg(a, c));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_pyramid() {
        let pyr = Pyramid::new(p(&[3, 2, 2]), vec![-2, -1, -1]).unwrap();
        let f = pyr.filling();
        assert_eq!(f.col, vec![-2, -1, -1, 0, 1, 1, 2]);
        assert_eq!(f.adjacency(), vec![(1, 4), (4, 7), (2, 5), (3, 6)]);
        assert_eq!(f.grading().degree_matrix()[0], vec![0, 1, 1, 2, 3, 3, 4]);
        assert_eq!(f.row(2), 2);
        assert_eq!(f.col(7), 2);
    }

    #[test]
    fn census_4_3() {
        let all = Pyramid::enumerate(&p(&[4, 3]));
        assert_eq!(all.len(), 3);
        assert_eq!(all[0], Pyramid::right_aligned(&p(&[4, 3])));
    }

    #[test]
    fn invalid_pyramids() {
        assert!(Pyramid::new(p(&[2, 1]), vec![0, 0]).is_err());
        assert!(Pyramid::new(p(&[2, 1]), vec![-1, 2]).is_err());
        assert!(Pyramid::new(p(&[2, 1]), vec![-1]).is_err());
    }

    #[test]
    fn predicates_2_1() {
        assert_eq!(Pyramid::new(p(&[2, 1]), vec![-1, 1]).unwrap().predicates(), (true, false));
        assert_eq!(Pyramid::new(p(&[2, 1]), vec![-1, 0]).unwrap().predicates(), (false, true));
    }

    #[test]
    fn characteristic_row() {
        let g = Pyramid::symmetric(&p(&[4])).filling().grading();
        assert_eq!(g.characteristic(), vec![2, 2, 2]);
        assert_eq!(GradingVec::trivial(3).characteristic(), vec![0, 0]);
    }

    #[test]
    fn ascii_has_all_labels() {
        let s = Pyramid::new(p(&[3, 2, 2]), vec![-2, -1, -1]).unwrap().render_ascii();
        for k in 1..=7 {
            assert!(s.contains(&k.to_string()));
        }
    }
}
