//! Poisson brackets: Lie–Poisson, Dirac brackets on slices, brackets on reduced spaces.

pub mod dirac;
pub mod fixture;
pub mod lie_poisson;
pub mod phi;
pub mod section;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Vars};

pub use dirac::{dirac_bracket_poly, DiracContext};
pub use fixture::{sl4_fixture, Sl4Fixture};
pub use lie_poisson::LieAlgebra;
pub use phi::{phi_check, phi_check_sl4, phi_check_sl4_corrected};
pub use section::SectionChart;

/// A Poisson bracket on a polynomial ring given by its values on generators.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub vars: Vars,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

impl BracketTable {
    pub fn new(vars: &Vars) -> Self {
        BracketTable {
            vars: vars.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// Sets `{x_i, x_j} = value` (and `{x_j, x_i} = −value`).
    pub fn set(&mut self, a: &str, b: &str, value: Polynomial) -> Result<()> {
        let idx = |s: &str| {
            self.vars
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| Error::Fixture(format!("unknown generator {s}")))
        };
        let (i, j) = (idx(a)?, idx(b)?);
        if i == j {
            return Err(Error::Fixture(format!("bracket of {a} with itself")));
        }
        let value = value.with_vars(&self.vars)?;
        if i < j {
            self.entries.insert((i, j), value);
        } else {
            self.entries.insert((j, i), -&value);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Polynomial {
        if i < j {
            self.entries.get(&(i, j)).cloned()
        } else {
            self.entries.get(&(j, i)).map(|p| -p)
        }
        .unwrap_or_else(|| Polynomial::zero_in(&self.vars))
    }

    /// Generator pairs `(i, j)`, `i < j`, with a stored value.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.entries.keys().copied().collect()
    }

    /// `{F, G} = Σ ∂_i F ∂_j G {x_i, x_j}`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let (f, g) = (f.with_vars(&self.vars)?, g.with_vars(&self.vars)?);
        let k = self.vars.len();
        let df: Vec<Polynomial> = (0..k).map(|i| f.partial(i)).collect();
        let dg: Vec<Polynomial> = (0..k).map(|j| g.partial(j)).collect();
        let mut out = Polynomial::zero_in(&self.vars);
        for (&(i, j), v) in &self.entries {
            let term = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            out = &out + &(&term * v);
        }
        Ok(out)
    }
}
