//! The Lie–Poisson bracket on polynomial functions of a Lie algebra's dual.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::lie::{sl_basis, trace_pair};
use crate::exact::{int, Mat, Rational, Subspace};
use crate::poly::{Polynomial, Vars};

/// A matrix Lie algebra with named linear coordinates `x_A`, one per basis element.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub names: Vars,
    pub basis: Vec<Mat>,
    /// `structure[a][b]` holds the coordinates of `[B_a, B_b]`.
    structure: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn new(names: Vars, basis: Vec<Mat>) -> Result<Self> {
        if names.len() != basis.len() {
            return Err(Error::DimensionMismatch(names.len(), basis.len()));
        }
        let n = basis.first().map_or(0, Mat::n);
        let span = Subspace {
            n,
            basis: basis.clone(),
        };
        if !span.is_independent() {
            return Err(Error::Fixture("Lie algebra basis is dependent".into()));
        }
        let mut structure = Vec::with_capacity(basis.len());
        for x in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in &basis {
                let c = span
                    .coords(&x.commutator(y))
                    .ok_or_else(|| Error::Fixture("basis is not closed under the bracket".into()))?;
                row.push(c);
            }
            structure.push(row);
        }
        Ok(LieAlgebra {
            names,
            basis,
            structure,
        })
    }

    /// sl_2 with coordinates `e, h, f`.
    pub fn sl2() -> Self {
        let basis = vec![
            Mat::unit(2, 1, 2),
            &Mat::unit(2, 1, 1) - &Mat::unit(2, 2, 2),
            Mat::unit(2, 2, 1),
        ];
        Self::new(crate::poly::vars(&["e", "h", "f"]), basis).expect("sl2")
    }

    /// sl_n over the unit basis: `x{i}_{j}` off the diagonal and `h{k}` for `unit(k,k) − unit(k+1,k+1)`.
    pub fn sl(n: usize) -> Self {
        let mut names: Vec<String> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| format!("x{i}_{j}")))
            .collect();
        names.extend((1..n).map(|k| format!("h{k}")));
        Self::new(Arc::new(names), sl_basis(n)).expect("sl_n")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinate(&self, name: &str) -> Option<Polynomial> {
        Polynomial::var_named(&self.names, name)
    }

    /// `x_{[B_a, B_b]}` as a linear polynomial.
    pub fn bracket_coordinate(&self, a: usize, b: usize) -> Polynomial {
        self.structure[a][b]
            .iter()
            .enumerate()
            .fold(Polynomial::zero_in(&self.names), |acc, (c, k)| {
                &acc + &Polynomial::var(&self.names, c).scale(k)
            })
    }

    fn check_vars(&self, p: &Polynomial) -> Result<()> {
        if p.vars().as_slice() != self.names.as_slice() && !p.vars().is_empty() {
            return Err(Error::VariableMismatch(p.vars().to_vec(), self.names.to_vec()));
        }
        Ok(())
    }

    /// `{F, G} = Σ ∂_a F ∂_b G x_{[B_a, B_b]}`.
    pub fn lie_poisson(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_vars(f)?;
        self.check_vars(g)?;
        let df: Vec<Polynomial> = (0..self.dim()).map(|a| f.with_vars(&self.names).map(|p| p.partial(a))).collect::<Result<_>>()?;
        let dg: Vec<Polynomial> = (0..self.dim()).map(|b| g.with_vars(&self.names).map(|p| p.partial(b))).collect::<Result<_>>()?;
        let mut out = Polynomial::zero_in(&self.names);
        for (a, fa) in df.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in dg.iter().enumerate() {
                if gb.is_zero() || self.structure[a][b].iter().all(Zero::is_zero) {
                    continue;
                }
                out = &out + &(&(fa * gb) * &self.bracket_coordinate(a, b));
            }
        }
        Ok(out)
    }

    /// Coordinates of the functional `tr(x ·)`: `x_A = tr(x B_A)`.
    pub fn point_of(&self, x: &Mat) -> Vec<Rational> {
        self.basis
            .iter()
            .map(|b| trace_pair(x, b).expect("same n"))
            .collect()
    }

    /// The Poisson tensor `({x_a, x_b}(p))_{ab}` at a point given in coordinates.
    pub fn tensor_at(&self, p: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.dim())
            .map(|a| {
                (0..self.dim())
                    .map(|b| {
                        self.structure[a][b]
                            .iter()
                            .zip(p)
                            .fold(int(0), |acc, (c, x)| acc + c * x)
                    })
                    .collect()
            })
            .collect()
    }
}

/// `∇F` at `x` for `F` over the entry coordinates `x{i}_{j}`: the matrix with `(j,i)` entry `∂F/∂x_{ij}`,
/// so that `tr(∇F · Y)` is the derivative along `Y`.
pub fn entry_gradient(f_partials: &[Polynomial], x: &Mat) -> Mat {
    let n = x.n();
    let mut g = Mat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(j, i)] = f_partials[i * n + j].eval(x.flat());
        }
    }
    g
}

/// `tr(X [A, B])`, the Lie–Poisson bracket of functions with gradients `A`, `B` at `X`.
pub fn bracket_at(x: &Mat, a: &Mat, b: &Mat) -> Rational {
    trace_pair(x, &a.commutator(b)).expect("same n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let g = LieAlgebra::sl2();
        let (e, h, f) = (
            g.coordinate("e").unwrap(),
            g.coordinate("h").unwrap(),
            g.coordinate("f").unwrap(),
        );
        assert_eq!(g.lie_poisson(&e, &f).unwrap(), h);
        assert_eq!(
            g.lie_poisson(&e.pow(2), &f).unwrap(),
            (&e * &h).scale(&int(2))
        );
        let other = Polynomial::var(&crate::poly::vars(&["q"]), 0);
        assert!(matches!(g.lie_poisson(&e, &other), Err(Error::VariableMismatch(..))));
    }
}
