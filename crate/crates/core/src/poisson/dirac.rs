//! Dirac brackets on a Slodowy slice, cut out of `sl_n` by `tr(W (X − e)) = 0` for `W ∈ [f, 𝔤]`.

use rand::Rng;

use super::lie_poisson::{bracket_at, entry_gradient};
use crate::error::{Error, Result};
use crate::exact::lie::ad_image;
use crate::exact::linalg::{solve, solve_unique, Subspace};
use crate::exact::{frac, int, Mat, Rational};
use crate::poly::{monomials_of_weight, Polynomial};
use crate::triple::{SliceChart, Sl2Triple};

#[derive(Clone, Debug)]
pub struct DiracContext {
    pub triple: Sl2Triple,
    pub chart: SliceChart,
    /// Basis `W_k` of `[f, 𝔤]`.
    pub constraints: Vec<Mat>,
}

impl DiracContext {
    pub fn new(triple: Sl2Triple, chart: SliceChart) -> Result<Self> {
        let constraints = ad_image(&triple.f).basis;
        Self::with_constraints(triple, chart, constraints)
    }

    /// Uses a caller-supplied basis of `[f, 𝔤]`.
    pub fn with_constraints(triple: Sl2Triple, chart: SliceChart, constraints: Vec<Mat>) -> Result<Self> {
        let n = triple.n();
        if chart.coordinate_polys.is_none() {
            return Err(Error::Fixture("slice chart has no coordinate polynomials".into()));
        }
        let span = Subspace::span(n, constraints.clone());
        if span.dim() != constraints.len() || !span.same_span(&ad_image(&triple.f)) {
            return Err(Error::Fixture("constraints are not a basis of [f, g]".into()));
        }
        if constraints.len() + chart.dim() != n * n - 1 {
            return Err(Error::DimensionMismatch(constraints.len() + chart.dim(), n * n - 1));
        }
        Ok(DiracContext {
            triple,
            chart,
            constraints,
        })
    }

    /// Partial derivatives in the entries `x{i}_{j}` of `F ∘ (chart coordinates)`.
    pub fn ambient_partials(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        let coords = self.chart.coordinate_polys.as_ref().expect("checked in new");
        let lifted = f.with_vars(&self.chart.vars)?.compose(coords);
        let n = self.triple.n();
        let ambient = crate::poly::ambient_vars(n);
        let lifted = lifted.with_vars(&ambient)?;
        Ok((0..n * n).map(|k| lifted.partial(k)).collect())
    }

    /// Gram matrix `C_kl = tr(p [W_k, W_l])`.
    pub fn gram(&self, p: &Mat) -> Vec<Vec<Rational>> {
        self.constraints
            .iter()
            .map(|a| self.constraints.iter().map(|b| bracket_at(p, a, b)).collect())
            .collect()
    }

    fn bracket_from_partials(&self, df: &[Polynomial], dg: &[Polynomial], p: &Mat) -> Result<Rational> {
        let (gf, gg) = (entry_gradient(df, p), entry_gradient(dg, p));
        let c = self.gram(p);
        let vf: Vec<Rational> = self.constraints.iter().map(|w| bracket_at(p, &gf, w)).collect();
        let vg: Vec<Rational> = self.constraints.iter().map(|w| bracket_at(p, w, &gg)).collect();
        let y = solve_unique(&c, &vg, c.len()).map_err(|_| Error::SingularConstraints)?;
        let correction = vf.iter().zip(&y).fold(int(0), |acc, (a, b)| acc + a * b);
        Ok(bracket_at(p, &gf, &gg) - correction)
    }

    /// `{F, G}_D` at the slice point with chart coordinates `coords`.
    pub fn dirac_bracket_at(&self, f: &Polynomial, g: &Polynomial, coords: &[Rational]) -> Result<Rational> {
        let p = self.chart.point(coords);
        self.bracket_from_partials(&self.ambient_partials(f)?, &self.ambient_partials(g)?, &p)
    }
}

fn sample_point(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
        .collect()
}

fn monomial_value(e: &[u32], x: &[Rational]) -> Rational {
    e.iter().zip(x).fold(int(1), |acc, (&k, v)| {
        (0..k).fold(acc, |a, _| a * v)
    })
}

/// Interpolates `{F, G}_D` as a polynomial in the chart coordinates.
///
/// Candidates are first the monomials of Kazhdan weight `wt F + wt G − 2`, then all of weight up
/// to two more; the fit is accepted only if it matches at three held-out points.
pub fn dirac_bracket_poly(
    ctx: &DiracContext,
    f: &Polynomial,
    g: &Polynomial,
    rng: &mut impl Rng,
) -> Result<Polynomial> {
    let weights = &ctx.chart.weights;
    let vars = &ctx.chart.vars;
    let (f, g) = (f.with_vars(vars)?, g.with_vars(vars)?);
    let (df, dg) = (ctx.ambient_partials(&f)?, ctx.ambient_partials(&g)?);
    let wt = |p: &Polynomial| p.weighted_degree(weights).unwrap_or(0);
    let target = wt(&f) + wt(&g) - 2;
    let homogeneous = f.is_weighted_homogeneous(weights, wt(&f)) && g.is_weighted_homogeneous(weights, wt(&g));

    let value_at = |rng: &mut dyn FnMut() -> Vec<Rational>| -> Result<(Vec<Rational>, Rational)> {
        for _ in 0..50 {
            let x = rng();
            match ctx.bracket_from_partials(&df, &dg, &ctx.chart.point(&x)) {
                Ok(v) => return Ok((x, v)),
                Err(Error::SingularConstraints) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SingularConstraints)
    };
    let mut draw = || sample_point(rng, vars.len());

    let up_to = |d: i64| -> Vec<Vec<u32>> { (0..=d).flat_map(|k| monomials_of_weight(weights, k)).collect() };
    let mut attempts = vec![if homogeneous { monomials_of_weight(weights, target) } else { up_to(target) }];
    attempts.push(up_to(target + 2));

    let mut last = String::new();
    for monos in attempts {
        let fit_count = monos.len() + 2;
        let mut samples = Vec::with_capacity(fit_count + 3);
        for _ in 0..fit_count + 3 {
            samples.push(value_at(&mut draw)?);
        }
        let (fit, held) = samples.split_at(fit_count);
        let rows: Vec<Vec<Rational>> = fit
            .iter()
            .map(|(x, _)| monos.iter().map(|e| monomial_value(e, x)).collect())
            .collect();
        let b: Vec<Rational> = fit.iter().map(|(_, v)| v.clone()).collect();
        let coeffs = match solve(&rows, &b, monos.len()) {
            Ok(c) => c,
            Err(_) => {
                last = format!("no fit with {} monomials", monos.len());
                continue;
            }
        };
        let p = Polynomial::from_terms(vars, monos.iter().cloned().zip(coeffs));
        if held.iter().all(|(x, v)| p.eval(x) == *v) {
            return Ok(p);
        }
        last = format!("held-out mismatch with {} monomials", monos.len());
    }
    Err(Error::Interpolation(last))
}
