//! A section of the reduced space `(e + 𝔪^⊥)/M` and canonicalization onto it.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::lie::{sl_basis, trace_pair, trace_perp_in};
use crate::exact::linalg::{rref, solve};
use crate::exact::{int, Dual, Mat, Rational, Scalar, Subspace};
use crate::poly::{ambient_vars, Polynomial, Vars};

#[derive(Clone, Debug)]
pub struct SectionChart {
    pub e: Mat,
    /// The Lie algebra of the unipotent group acting on `e + 𝔪^⊥`.
    pub m: Subspace,
    pub vars: Vars,
    /// Row-major `n²` entries over `vars`.
    pub section: Vec<Polynomial>,
    /// Section coordinates as polynomials in the entries `x{i}_{j}`.
    pub extraction: Vec<Polynomial>,
    pub weights: Vec<i64>,
    /// Basis of `𝔪^⊥ ∩ sl_n`, the tangent space of the constraint surface.
    pub tangent: Subspace,
    /// Entries of `X − σ(ε(X))`; a surface point lies on the section iff all vanish.
    equations: Vec<Polynomial>,
}

/// `exp(T)` for nilpotent `T`.
pub fn exp_nilpotent<S: Scalar>(t: &Mat<S>) -> Mat<S> {
    let n = t.n();
    let mut acc = Mat::<S>::identity(n);
    let mut term = Mat::<S>::identity(n);
    for k in 1..n {
        term = (&term * t).scale(&S::from_rational(Rational::one() / int(k as i64)));
        acc = &acc + &term;
    }
    acc
}

fn lift<S: Scalar>(m: &Mat) -> Mat<S> {
    m.map(|x| S::from_rational(x.clone()))
}

impl SectionChart {
    pub fn new(
        e: Mat,
        m: Subspace,
        vars: Vars,
        section: Vec<Polynomial>,
        extraction: Vec<Polynomial>,
        weights: Vec<i64>,
    ) -> Result<Self> {
        let n = e.n();
        if section.len() != n * n {
            return Err(Error::DimensionMismatch(section.len(), n * n));
        }
        if extraction.len() != vars.len() || weights.len() != vars.len() {
            return Err(Error::DimensionMismatch(extraction.len(), vars.len()));
        }
        let ambient = ambient_vars(n);
        let section: Vec<Polynomial> = section
            .iter()
            .map(|p| p.with_vars(&vars))
            .collect::<Result<_>>()?;
        let extraction: Vec<Polynomial> = extraction
            .iter()
            .map(|p| p.with_vars(&ambient))
            .collect::<Result<_>>()?;

        let zero = vec![int(0); vars.len()];
        let origin = Mat::from_flat(n, section.iter().map(|p| p.eval(&zero)).collect());
        if origin != e {
            return Err(Error::Fixture("section does not pass through e".into()));
        }
        let symbolic = Mat::from_flat(n, section.clone());
        let offset = &symbolic - &e.map(|x| Polynomial::constant_in(&vars, x.clone()));
        if !symbolic.trace().is_zero() {
            return Err(Error::NotOnSurface("section is not traceless".into()));
        }
        for y in &m.basis {
            let y = y.map(|x| Polynomial::constant_in(&vars, x.clone()));
            if !trace_pair(&offset, &y)?.is_zero() {
                return Err(Error::NotOnSurface("section leaves e + m-perp".into()));
            }
        }
        for (k, c) in extraction.iter().enumerate() {
            if c.compose(&section) != Polynomial::var(&vars, k) {
                return Err(Error::Fixture(format!("extraction of {} is not a left inverse", vars[k])));
            }
        }
        let xs: Vec<Polynomial> = (0..n * n).map(|k| Polynomial::var(&ambient, k)).collect();
        let equations = section
            .iter()
            .zip(&xs)
            .map(|(s, x)| x - &s.compose(&extraction))
            .filter(|p| !p.is_zero())
            .collect();
        let tangent = trace_perp_in(&m, &sl_basis(n));
        Ok(SectionChart {
            e,
            m,
            vars,
            section,
            extraction,
            weights,
            tangent,
            equations,
        })
    }

    pub fn n(&self) -> usize {
        self.e.n()
    }

    pub fn point(&self, coords: &[Rational]) -> Mat {
        Mat::from_flat(self.n(), self.section.iter().map(|p| p.eval(coords)).collect())
    }

    /// `p` is traceless and `tr((p − e) y) = 0` for `y ∈ 𝔪`.
    pub fn on_surface<S: Scalar>(&self, p: &Mat<S>) -> bool {
        let offset = p - &lift::<S>(&self.e);
        p.trace().is_zero()
            && self
                .m
                .basis
                .iter()
                .all(|y| trace_pair(&offset, &lift(y)).map_or(false, |v| v.is_zero()))
    }

    /// `exp(Σ t_s y_s)` for the basis `y_s` of `𝔪`.
    pub fn group_element<S: Scalar>(&self, t: &[S]) -> Mat<S> {
        let n = self.n();
        let x = self
            .m
            .basis
            .iter()
            .zip(t)
            .fold(Mat::<S>::zeros(n), |acc, (y, c)| &acc + &lift::<S>(y).scale(c));
        exp_nilpotent(&x)
    }

    /// Finds `g = exp(Σ t_s y_s)` with `g p g⁻¹` on the section; returns its coordinates and `g`.
    pub fn canonicalize<S: Scalar>(&self, p: &Mat<S>) -> Result<(Vec<S>, Mat<S>)> {
        if !self.on_surface(p) {
            return Err(Error::NotOnSurface("canonicalize needs a point of e + m-perp".into()));
        }
        let k = self.m.dim();
        let tvars: Vars = Arc::new((1..=k).map(|s| format!("t{s}")).collect());
        let tvec: Vec<Polynomial<S>> = (0..k).map(|s| Polynomial::var(&tvars, s)).collect();
        let neg: Vec<Polynomial<S>> = tvec.iter().map(|t| -t).collect();
        let pp = p.map(|x| Polynomial::constant_in(&tvars, x.clone()));
        let q = &(&self.group_element(&tvec) * &pp) * &self.group_element(&neg);
        let lift_c = |c: &Rational| Polynomial::constant_in(&tvars, S::from_rational(c.clone()));
        let eqs: Vec<Polynomial<S>> = self
            .equations
            .iter()
            .map(|eq| eq.eval_with(q.flat(), lift_c))
            .collect();
        let t = solve_unipotent(&eqs, k)?;
        let g = self.group_element(&t);
        let ginv = self.group_element(&t.iter().map(|x| -x.clone()).collect::<Vec<_>>());
        let image = &(&g * p) * &ginv;
        let coords: Vec<S> = self
            .extraction
            .iter()
            .map(|c| c.eval_with(image.flat(), |r| S::from_rational(r.clone())))
            .collect();
        let back: Vec<S> = self
            .section
            .iter()
            .map(|s| s.eval_with(&coords, |r| S::from_rational(r.clone())))
            .collect();
        if back != image.flat() {
            return Err(Error::Canonicalization("solution does not land on the section".into()));
        }
        Ok((coords, g))
    }

    /// Gradients in `gl_n` of the invariant extensions of `fs` at the surface point `p`.
    ///
    /// Only the pairing with the tangent space is determined; the component solved for
    /// is the one with free coordinates set to zero.
    pub fn reduced_gradients(&self, fs: &[Polynomial], p: &Mat) -> Result<Vec<Mat>> {
        let n = self.n();
        let fs: Vec<Polynomial> = fs.iter().map(|f| f.with_vars(&self.vars)).collect::<Result<_>>()?;
        let mut derivs = vec![Vec::with_capacity(self.tangent.dim()); fs.len()];
        for v in &self.tangent.basis {
            let pd: Mat<Dual> = Mat::from_flat(
                n,
                p.flat()
                    .iter()
                    .zip(v.flat())
                    .map(|(a, b)| Dual::new(a.clone(), b.clone()))
                    .collect(),
            );
            let (coords, _) = self.canonicalize(&pd)?;
            for (f, d) in fs.iter().zip(derivs.iter_mut()) {
                d.push(f.eval_with(&coords, |c| Dual::constant(c.clone())).eps);
            }
        }
        // tr(G V) = Σ_ij G_ij V_ji
        let rows: Vec<Vec<Rational>> = self.tangent.basis.iter().map(|v| v.transpose().into_flat()).collect();
        derivs
            .iter()
            .map(|d| solve(&rows, d, n * n).map(|g| Mat::from_flat(n, g)))
            .collect()
    }

    /// `tr(p [∇F, ∇G])` for the invariant extensions of `F`, `G`.
    pub fn reduced_bracket_at(&self, f: &Polynomial, g: &Polynomial, p: &Mat) -> Result<Rational> {
        let grads = self.reduced_gradients(&[f.clone(), g.clone()], p)?;
        trace_pair(p, &grads[0].commutator(&grads[1]))
    }
}

/// Solves polynomial equations in `k` unknowns by repeatedly solving the sub-block that
/// is linear in the unknowns not yet fixed.
fn solve_unipotent<S: Scalar>(eqs: &[Polynomial<S>], k: usize) -> Result<Vec<S>> {
    let mut eqs: Vec<Polynomial<S>> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    let mut value: Vec<Option<S>> = vec![None; k];
    loop {
        let open: Vec<usize> = (0..k).filter(|&s| value[s].is_none()).collect();
        let linear: Vec<&Polynomial<S>> = eqs
            .iter()
            .filter(|e| e.total_degree().unwrap_or(0) <= 1)
            .collect();
        if let Some(bad) = linear.iter().find(|e| e.is_constant()) {
            return Err(Error::Canonicalization(format!("inconsistent equation {bad}")));
        }
        if open.is_empty() {
            if eqs.is_empty() {
                break;
            }
            return Err(Error::Canonicalization(format!("{} equations left unsatisfied", eqs.len())));
        }
        let rows: Vec<Vec<S>> = linear
            .iter()
            .map(|e| {
                let mut r: Vec<S> = open
                    .iter()
                    .map(|&s| {
                        let mut x = vec![0; k];
                        x[s] = 1;
                        e.terms()
                            .find(|(m, _)| **m == x)
                            .map_or_else(S::zero, |(_, c)| c.clone())
                    })
                    .collect();
                r.push(e.constant_term());
                r
            })
            .collect();
        let (red, pivots) = rref(rows);
        let w = open.len();
        let mut progress = false;
        for (row, &pc) in red.iter().zip(&pivots) {
            if pc == w {
                return Err(Error::Canonicalization("inconsistent linear block".into()));
            }
            if row[..w].iter().enumerate().all(|(c, x)| c == pc || x.is_zero()) {
                value[open[pc]] = Some(-row[w].clone());
                progress = true;
            }
        }
        if !progress {
            return Err(Error::Canonicalization(format!(
                "stalled with {} unknowns free",
                open.len()
            )));
        }
        eqs = eqs
            .iter()
            .map(|e| {
                open.iter().fold(e.clone(), |acc, &s| match &value[s] {
                    Some(v) => acc.substitute(s, v),
                    None => acc,
                })
            })
            .filter(|e| !e.is_zero())
            .collect();
    }
    Ok(value.into_iter().map(|v| v.expect("all solved")).collect())
}
