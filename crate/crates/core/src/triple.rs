//! sl2-triples, Slodowy slices, good-grading checks, the symplectic form on
//! `𝔤₋₁` and Premet subalgebras.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::lie::{ad_eigenvalue, ad_image, centralizer_in, centralizer_sl, sl_basis, trace_pair};
use crate::exact::linalg::{inverse, rank, rref, solve_unique, Subspace};
use crate::exact::{int, Mat, Rational};
use crate::partitions::Partition;
use crate::poly::{ambient_vars, Polynomial, Vars};
use crate::pyramid::{Filling, GradingVec};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub e: Mat,
    pub h: Mat,
    pub f: Mat,
}

impl Sl2Triple {
    pub fn n(&self) -> usize {
        self.e.n()
    }

    /// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn is_valid(&self) -> bool {
        let two = int(2);
        self.h.commutator(&self.e) == self.e.scale(&two)
            && self.h.commutator(&self.f) == self.f.scale(&-two)
            && self.e.commutator(&self.f) == self.h
    }
}

/// Block-diagonal triple with one Jordan block per part.
pub fn jordan_triple(shape: &Partition) -> Sl2Triple {
    let n = shape.n();
    let (mut e, mut h, mut f) = (Mat::zeros(n), Mat::zeros(n), Mat::zeros(n));
    let mut start = 1;
    for &k in shape.parts() {
        for a in 0..k {
            h[(start + a - 1, start + a - 1)] = int(k as i64 - 1 - 2 * a as i64);
        }
        for i in 1..k {
            let idx = start + i - 1;
            e[(idx - 1, idx)] = int(1);
            f[(idx, idx - 1)] = int((i * (k - i)) as i64);
        }
        start += k;
    }
    Sl2Triple { e, h, f }
}

/// Triple with `e = e_P`, `h` diagonal of degree 0 and `f` of degree −2.
pub fn graded_triple(filling: &Filling) -> Result<Sl2Triple> {
    let n = filling.n();
    let e = filling.e();
    let mut h = Mat::zeros(n);
    for row in filling.rows() {
        let len = row.len() as i64;
        for (p, &k) in row.iter().enumerate() {
            h[(k - 1, k - 1)] = int(len - 1 - 2 * p as i64);
        }
    }
    let g = filling.grading();
    let minus2: Vec<Mat> = g.sl_components().remove(&-2).unwrap_or_default();
    let f = if minus2.is_empty() {
        Mat::zeros(n)
    } else {
        // [e, Σ c_k B_k] = h
        let images: Vec<Mat> = minus2.iter().map(|b| e.commutator(b)).collect();
        let rows: Vec<Vec<Rational>> = (0..n * n)
            .map(|x| images.iter().map(|m| m.flat()[x].clone()).collect())
            .collect();
        let c = solve_unique(&rows, h.flat(), minus2.len())?;
        minus2
            .iter()
            .zip(&c)
            .fold(Mat::zeros(n), |acc, (b, k)| &acc + &b.scale(k))
    };
    let t = Sl2Triple { e, h, f };
    if !t.is_valid() {
        return Err(Error::SingularSystem("graded triple fails the sl2 relations".into()));
    }
    Ok(t)
}

/// A parametrized slice `base + …` with polynomial entries in the chart variables.
#[derive(Clone, Debug)]
pub struct SliceChart {
    pub base: Mat,
    pub directions: Subspace,
    pub vars: Vars,
    /// Row-major `n²` entries over `vars`.
    pub embedding: Vec<Polynomial>,
    /// Kazhdan weight of each chart coordinate.
    pub weights: Vec<i64>,
    /// Chart coordinates as polynomials in the matrix entries `x{i}_{j}`.
    pub coordinate_polys: Option<Vec<Polynomial>>,
}

impl SliceChart {
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn point(&self, coords: &[Rational]) -> Mat {
        Mat::from_flat(self.n(), self.embedding.iter().map(|p| p.eval(coords)).collect())
    }

    /// Chart coordinates of a slice point.
    pub fn coords_of(&self, x: &Mat) -> Option<Vec<Rational>> {
        self.coordinate_polys
            .as_ref()
            .map(|cs| cs.iter().map(|c| c.eval(x.flat())).collect())
    }

    /// `coords_of(point(c)) = c` and `point(c) ∈ base + directions`.
    pub fn round_trips(&self, c: &[Rational]) -> bool {
        let x = self.point(c);
        self.directions.contains(&(&x - &self.base)) && self.coords_of(&x).as_deref() == Some(c)
    }
}

/// `e + 𝔷(f)` with a basis of `𝔷(f)` made of ad-h weight vectors.
pub fn slice(t: &Sl2Triple) -> SliceChart {
    let n = t.n();
    let directions = zf_weight_basis(t);
    let d = directions.dim();
    let names: Vec<String> = (1..=d).map(|m| format!("z{m}")).collect();
    let vars: Vars = std::sync::Arc::new(names);
    let embedding: Vec<Polynomial> = (0..n * n)
        .map(|x| {
            let mut p = Polynomial::constant_in(&vars, t.e.flat()[x].clone());
            for (m, z) in directions.basis.iter().enumerate() {
                p = &p + &Polynomial::var(&vars, m).scale(&z.flat()[x]);
            }
            p
        })
        .collect();
    let weights = directions
        .basis
        .iter()
        .map(|z| {
            let w = ad_eigenvalue(&t.h, z).expect("weight vector");
            2 - w.to_integer().try_into().unwrap_or(0i64)
        })
        .collect();
    let coordinate_polys = Some(linear_coordinates(&t.e, &directions));
    SliceChart {
        base: t.e.clone(),
        directions,
        vars,
        embedding,
        weights,
        coordinate_polys,
    }
}

/// Basis of `𝔷(f) ⊂ sl_n` computed weight space by weight space, highest weight first.
pub fn zf_weight_basis(t: &Sl2Triple) -> Subspace {
    let n = t.n();
    let mut by_weight: Vec<(Rational, Vec<Mat>)> = Vec::new();
    for b in sl_basis(n) {
        let w = ad_eigenvalue(&t.h, &b).unwrap_or_else(|| panic!("h must be diagonal"));
        match by_weight.iter_mut().find(|(x, _)| *x == w) {
            Some((_, v)) => v.push(b),
            None => by_weight.push((w, vec![b])),
        }
    }
    by_weight.sort_by(|a, b| b.0.cmp(&a.0));
    Subspace::span(
        n,
        by_weight
            .into_iter()
            .flat_map(|(_, group)| centralizer_in(&t.f, &group).basis),
    )
}

fn linear_coordinates(base: &Mat, dirs: &Subspace) -> Vec<Polynomial> {
    let n = base.n();
    let d = dirs.dim();
    let ambient = ambient_vars(n);
    if d == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<Rational>> = dirs.basis.iter().map(|z| z.flat().to_vec()).collect();
    let (_, pivots) = rref(rows.clone());
    // (X − base)_P = Dᵀ z on the pivot entries
    let dt = Mat::from_flat(
        d,
        (0..d)
            .flat_map(|k| (0..d).map(|m| rows[m][pivots[k]].clone()).collect::<Vec<_>>())
            .collect(),
    );
    let inv = inverse(&dt).expect("pivot block is invertible");
    (0..d)
        .map(|m| {
            (0..d).fold(Polynomial::zero_in(&ambient), |acc, k| {
                let x = &Polynomial::var(&ambient, pivots[k])
                    - &Polynomial::constant_in(&ambient, base.flat()[pivots[k]].clone());
                &acc + &x.scale(&inv[(m, k)])
            })
        })
        .collect()
}

/// ad-h weights of the slice directions.
pub fn slice_weights(t: &Sl2Triple) -> Vec<Rational> {
    zf_weight_basis(t)
        .basis
        .iter()
        .map(|z| ad_eigenvalue(&t.h, z).expect("weight vector"))
        .collect()
}

/// Transversality of `𝔷(f)` to `[𝔤, e]` and negativity of the contracting weights.
pub fn slice_checks(t: &Sl2Triple) -> Report {
    let n = t.n();
    let zf = zf_weight_basis(t);
    let image = ad_image(&t.e);
    let mut r = Report::new();
    r.push("zf_meets_image_trivially", zf.intersection(&image).dim() == 0);
    r.push_detail(
        "dimensions_sum",
        zf.dim() + image.dim() == n * n - 1,
        format!("{} + {} vs {}", zf.dim(), image.dim(), n * n - 1),
    );
    let two = int(2);
    r.push(
        "contraction_weights_negative",
        slice_weights(t).iter().all(|w| w.clone() - two.clone() < int(0)),
    );
    r
}

/// Runs GG1–GG6 for `e` against the grading.
pub fn check_good_grading(e: &Mat, g: &GradingVec) -> Result<Report> {
    let deg_e = g.degree_of(e);
    if deg_e.is_none() && !e.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let comps = g.sl_components();
    let piece = |d: i64| Subspace::span(e.n(), comps.get(&d).cloned().unwrap_or_default());
    let (lo, hi) = (
        *comps.keys().next().unwrap_or(&0),
        *comps.keys().next_back().unwrap_or(&0),
    );
    let mut r = Report::new();
    r.push("GG1", e.is_zero() || deg_e == Some(2));

    let injective = (lo..=-1).all(|j| {
        let basis = comps.get(&j).cloned().unwrap_or_default();
        basis.is_empty() || centralizer_in(e, &basis).dim() == 0
    });
    r.push("GG2", injective);

    let surjective = (-1..=hi).all(|j| {
        let src = comps.get(&j).cloned().unwrap_or_default();
        let image = Subspace::span(e.n(), src.iter().map(|b| e.commutator(b)));
        image.same_span(&piece(j + 2))
    });
    r.push("GG3", surjective);

    let ze = centralizer_sl(e);
    let nonneg = g.sl_pieces_where(|d| d >= 0);
    r.push("GG4", nonneg.contains_space(&ze));

    let mut orthogonal = true;
    'outer: for (i, bi) in &comps {
        for (j, bj) in &comps {
            if i + j == 0 {
                continue;
            }
            for x in bi {
                for y in bj {
                    if !trace_pair(x, y)?.is_zero() {
                        orthogonal = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    r.push("GG5", orthogonal);

    let g0g1 = piece(0).dim() + piece(1).dim();
    r.push_detail("GG6", ze.dim() == g0g1, format!("{} vs {}", ze.dim(), g0g1));
    Ok(r)
}

/// `ω(x,y) = tr(e[x,y])` on a basis of `𝔤₋₁`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticGram {
    pub basis: Vec<Mat>,
    #[serde(serialize_with = "crate::exact::scalar::ser_rational_rows")]
    pub gram: Vec<Vec<Rational>>,
}

impl SymplecticGram {
    pub fn new(e: &Mat, g: &GradingVec) -> Self {
        let basis = g.sl_components().remove(&-1).unwrap_or_default();
        let gram = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| trace_pair(e, &x.commutator(y)).expect("same n"))
                    .collect()
            })
            .collect();
        SymplecticGram { basis, gram }
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank(&self.gram) == self.basis.len()
    }

    fn omega(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = int(0);
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                acc += ua * &self.gram[a][b] * vb;
            }
        }
        acc
    }

    fn to_mat(&self, c: &[Rational]) -> Mat {
        let n = self.basis.first().map_or(0, Mat::n);
        self.basis
            .iter()
            .zip(c)
            .fold(Mat::zeros(n), |acc, (b, k)| &acc + &b.scale(k))
    }

    /// Greedy Darboux reduction over the basis, visited in `order`; returns the span of the first vectors of each pair.
    pub fn lagrangian_in_order(&self, order: &[usize]) -> Result<Vec<Mat>> {
        let d = self.basis.len();
        let unit = |k: usize| (0..d).map(|j| int((j == k) as i64)).collect::<Vec<_>>();
        let mut rest: Vec<Vec<Rational>> = order.iter().map(|&k| unit(k)).collect();
        let mut lag = Vec::new();
        while !rest.is_empty() {
            let p = rest.remove(0);
            let Some(qi) = rest.iter().position(|q| !self.omega(&p, q).is_zero()) else {
                return Err(Error::DegenerateForm);
            };
            let q = rest.remove(qi);
            let s = self.omega(&p, &q).recip();
            let q: Vec<Rational> = q.iter().map(|x| x * &s).collect();
            for v in rest.iter_mut() {
                let (vq, vp) = (self.omega(v, &q), self.omega(v, &p));
                for k in 0..d {
                    v[k] = &v[k] - &vq * &p[k] + &vp * &q[k];
                }
            }
            lag.push(self.to_mat(&p));
        }
        Ok(lag)
    }

    /// Whether `l` is a Lagrangian subspace of `𝔤₋₁` for `ω`.
    pub fn is_lagrangian(&self, e: &Mat, l: &Subspace) -> bool {
        let n = e.n();
        let ambient = Subspace::span(n, self.basis.iter().cloned());
        2 * l.dim() == self.basis.len()
            && ambient.contains_space(l)
            && l.basis.iter().all(|x| {
                l.basis
                    .iter()
                    .all(|y| trace_pair(e, &x.commutator(y)).map(|v| v.is_zero()).unwrap_or(false))
            })
    }
}

/// The Gram matrix on `𝔤₋₁` and the greedy Darboux Lagrangian.
pub fn symplectic_and_lagrangian(filling: &Filling) -> Result<(SymplecticGram, Subspace)> {
    let e = filling.e();
    let gram = SymplecticGram::new(&e, &filling.grading());
    if !gram.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let order: Vec<usize> = (0..gram.basis.len()).collect();
    let lag = gram.lagrangian_in_order(&order)?;
    Ok((gram, Subspace::span(e.n(), lag)))
}

/// A Premet subalgebra `𝔩 ⊕ ⊕_{j ≤ −2} 𝔤_j` with its character `y ↦ tr(e y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PremetData {
    pub m: Subspace,
    pub lagrangian: Subspace,
    pub chi: Mat,
}

impl PremetData {
    pub fn chi_values(&self) -> Vec<Rational> {
        self.m
            .basis
            .iter()
            .map(|y| trace_pair(&self.chi, y).expect("same n"))
            .collect()
    }

    /// Half the orbit dimension, ad-nilpotency and the character property.
    pub fn report(&self) -> Report {
        let orbit = orbit_dim(&self.chi);
        let mut r = Report::new();
        r.push_detail(
            "half_orbit_dimension",
            2 * self.m.dim() == orbit,
            format!("dim m = {}, dim O = {}", self.m.dim(), orbit),
        );
        r.push("nilpotent", subspace_is_nilpotent(&self.m));
        let character = self.m.basis.iter().all(|x| {
            self.m
                .basis
                .iter()
                .all(|y| trace_pair(&self.chi, &x.commutator(y)).expect("same n").is_zero())
        });
        r.push("character", character);
        r
    }
}

/// `dim G·e = dim sl_n − dim 𝔷(e)`.
pub fn orbit_dim(e: &Mat) -> usize {
    let n = e.n();
    n * n - 1 - centralizer_sl(e).dim()
}

/// Each basis element and a generic fixed combination are nilpotent matrices.
pub fn subspace_is_nilpotent(m: &Subspace) -> bool {
    let combo = m
        .basis
        .iter()
        .enumerate()
        .fold(Mat::zeros(m.n), |acc, (k, b)| &acc + &b.scale(&int(k as i64 + 1)));
    m.basis.iter().all(Mat::is_nilpotent) && combo.is_nilpotent()
}

pub fn premet(filling: &Filling, l: Option<&Subspace>) -> Result<PremetData> {
    let e = filling.e();
    let g = filling.grading();
    let gram = SymplecticGram::new(&e, &g);
    let lagrangian = match l {
        Some(l) => {
            if !gram.is_lagrangian(&e, l) {
                return Err(Error::NotLagrangian(format!("{} vectors", l.dim())));
            }
            l.clone()
        }
        None => symplectic_and_lagrangian(filling)?.1,
    };
    let low = g.sl_pieces_where(|d| d <= -2);
    Ok(PremetData {
        m: lagrangian.sum(&low),
        lagrangian,
        chi: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramid::Pyramid;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jordan_triple_regular_sl3() {
        let t = jordan_triple(&p(&[3]));
        assert_eq!(t.h, Mat::diag(&[int(2), int(0), int(-2)]));
        assert_eq!(t.f, Mat::from_ints(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0]]));
        assert!(t.is_valid());
    }

    #[test]
    fn graded_triple_2_1() {
        let f = Pyramid::right_aligned(&p(&[2, 1])).filling();
        let t = graded_triple(&f).unwrap();
        assert_eq!(t.e, Mat::unit(3, 1, 2));
        assert_eq!(t.h, Mat::diag(&[int(1), int(-1), int(0)]));
        assert_eq!(t.f, Mat::unit(3, 2, 1));
    }

    #[test]
    fn minimal_slice_sl3() {
        let t = jordan_triple(&p(&[2, 1]));
        let s = slice(&t);
        let expected = Subspace::span(
            3,
            [
                Mat::diag(&[int(1), int(1), int(-2)]),
                Mat::unit(3, 2, 1),
                Mat::unit(3, 3, 1),
                Mat::unit(3, 2, 3),
            ],
        );
        assert!(s.directions.same_span(&expected));
        let mut w = slice_weights(&t);
        w.sort();
        assert_eq!(w, vec![int(-2), int(-1), int(-1), int(0)]);
        assert!(s.round_trips(&[int(1), int(-2), int(3), int(5)]));
        assert!(slice_checks(&t).all_pass());
    }

    #[test]
    fn symplectic_symmetric_2_1() {
        let f = Pyramid::symmetric(&p(&[2, 1])).filling();
        let (g, l) = symplectic_and_lagrangian(&f).unwrap();
        assert_eq!(g.basis, vec![Mat::unit(3, 2, 1), Mat::unit(3, 3, 2)]);
        assert_eq!(g.gram, vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
        assert_eq!(l.basis, vec![Mat::unit(3, 2, 1)]);
    }

    #[test]
    fn premet_right_aligned_2_1() {
        let f = Pyramid::right_aligned(&p(&[2, 1])).filling();
        let pd = premet(&f, None).unwrap();
        assert_eq!(pd.m.basis, vec![Mat::unit(3, 2, 1), Mat::unit(3, 3, 1)]);
        assert_eq!(pd.chi_values(), vec![int(1), int(0)]);
        assert!(pd.report().all_pass());
    }

    #[test]
    fn non_lagrangian_rejected() {
        let f = Pyramid::symmetric(&p(&[2, 1])).filling();
        let bad = Subspace::span(3, [Mat::unit(3, 2, 1), Mat::unit(3, 3, 2)]);
        assert!(matches!(premet(&f, Some(&bad)), Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn zero_nilpotent_gradings() {
        let e = Mat::zeros(3);
        assert!(check_good_grading(&e, &GradingVec::trivial(3)).unwrap().all_pass());
        let g = Pyramid::symmetric(&p(&[3])).filling().grading();
        assert_eq!(check_good_grading(&e, &g).unwrap().get("GG2"), Some(false));
    }
}
