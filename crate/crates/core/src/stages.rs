//! Two-stage reduction data for a cover `λ > μ` and its verification.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::lie::{centralizer_sl, sl_basis, trace_pair, trace_perp_in};
use crate::exact::linalg::{rank, Subspace};
use crate::exact::{int, Mat, Rational};
use crate::partitions::{CoverWitness, Partition};
use crate::pyramid::{Filling, Pyramid};
use crate::report::Report;
use crate::triple::{orbit_dim, subspace_is_nilpotent};

#[derive(Clone, Debug, Serialize)]
pub struct ReductionData {
    pub mu: Partition,
    pub lambda: Partition,
    pub witness: CoverWitness,
    pub pyramid: Pyramid,
    pub e1: Mat,
    pub m1: Subspace,
    pub e2: Mat,
    pub m2: Subspace,
    pub k: Subspace,
    pub chi1: Mat,
    pub chi2: Mat,
    #[serde(skip)]
    pub filling: Filling,
}

pub fn stage_data(lambda: &Partition, mu: &Partition) -> Result<ReductionData> {
    let not_cover = || Error::NotACover {
        lambda: lambda.to_string(),
        mu: mu.to_string(),
    };
    let witness = lambda.covers(mu)?.ok_or_else(not_cover)?;
    let (i, j) = (witness.i, witness.j);
    let pyramid = Pyramid::right_aligned(mu);
    let filling = pyramid.filling();
    let n = filling.n();
    let e1 = filling.e();
    let g = filling.grading();
    let m1 = g.sl_pieces_where(|d| d <= -2);

    let same_col = |k: usize, l: usize| filling.col(k) == filling.col(l);
    let mut e2 = e1.clone();
    for k in 1..=n {
        for l in 1..=n {
            if filling.row(k) == i && filling.row(l) == j && same_col(k, l) {
                e2 = &e2 + &Mat::unit(n, k, l);
            }
        }
    }
    let gens: Vec<Mat> = (1..=j - i)
        .map(|m| {
            let mut em = Mat::zeros(n);
            for k in 1..=n {
                for l in 1..=n {
                    let (rk, rl) = (filling.row(k), filling.row(l));
                    if i <= rk && rk < rl && rl <= j && rl - rk == m && same_col(k, l) {
                        em = &em + &Mat::unit(n, l, k);
                    }
                }
            }
            em
        })
        .collect();
    let k = Subspace::span(n, gens);
    let m2 = m1.sum(&k);
    Ok(ReductionData {
        mu: mu.clone(),
        lambda: lambda.clone(),
        witness,
        pyramid,
        chi1: e1.clone(),
        chi2: e2.clone(),
        e1,
        m1,
        e2,
        m2,
        k,
        filling,
    })
}

fn brackets_within(a: &Subspace, b: &Subspace, target: &Subspace) -> bool {
    a.basis
        .iter()
        .all(|x| b.basis.iter().all(|y| target.contains(&x.commutator(y))))
}

fn chi_kills_brackets(chi: &Mat, a: &Subspace, b: &Subspace) -> bool {
    a.basis.iter().all(|x| {
        b.basis
            .iter()
            .all(|y| trace_pair(chi, &x.commutator(y)).expect("same n").is_zero())
    })
}

/// Conditions SR1–SR4.
pub fn verify_sr(rd: &ReductionData) -> Report {
    let n = rd.e1.n();
    let mut r = Report::new();

    let ideal = brackets_within(&rd.m2, &rd.m1, &rd.m1);
    let subalgebra = brackets_within(&rd.k, &rd.k, &rd.k);
    let disjoint = rd.m1.intersection(&rd.k).dim() == 0;
    let fills = rd.m1.sum(&rd.k).same_span(&rd.m2);
    r.push_detail(
        "SR1",
        ideal && subalgebra && disjoint && fills,
        format!("ideal={ideal} subalgebra={subalgebra} trivial_intersection={disjoint} sum={fills}"),
    );

    let character = chi_kills_brackets(&rd.chi2, &rd.m2, &rd.m2);
    let restricts = rd.m1.basis.iter().all(|x| {
        trace_pair(&rd.chi2, x).expect("same n") == trace_pair(&rd.chi1, x).expect("same n")
    });
    r.push_detail(
        "SR2",
        character && restricts,
        format!("character={character} restricts={restricts}"),
    );

    let chi1_ok = chi_kills_brackets(&rd.chi1, &rd.k, &rd.m1);
    let chi2_ok = chi_kills_brackets(&rd.chi2, &rd.k, &rd.m1);
    r.push_detail(
        "SR3",
        chi1_ok && chi2_ok,
        format!("chi1={chi1_ok} chi2={chi2_ok}"),
    );

    let perp = trace_perp_in(&rd.m1, &sl_basis(n));
    let pairing: Vec<Vec<Rational>> = rd
        .k
        .basis
        .iter()
        .map(|ks| {
            perp.basis
                .iter()
                .map(|x| trace_pair(x, ks).expect("same n"))
                .collect()
        })
        .collect();
    let rk = if pairing.is_empty() { 0 } else { rank(&pairing) };
    r.push_detail(
        "SR4",
        rk == rd.k.dim(),
        format!("rank {} of {}", rk, rd.k.dim()),
    );
    r
}

/// `χ([𝔪,𝔪]) = 0`, `𝔪 ∩ 𝔷(e) = 0`, `dim 𝔪 = ½ dim G·e`, for `χ = tr(e ·)`.
pub fn premet_conditions(e2: &Mat, m2: &Subspace) -> Result<Report> {
    if !e2.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut r = Report::new();
    r.push("chi_vanishes_on_brackets", chi_kills_brackets(e2, m2, m2));
    r.push(
        "meets_centralizer_trivially",
        m2.intersection(&centralizer_sl(e2)).dim() == 0,
    );
    let orbit = orbit_dim(e2);
    r.push_detail(
        "half_orbit_dimension",
        2 * m2.dim() == orbit,
        format!("dim m = {}, dim O = {}", m2.dim(), orbit),
    );
    r.push("nilpotent", subspace_is_nilpotent(m2));
    Ok(r)
}

/// A Jordan basis string: each vector is sent to the next by `v ↦ v·e₂`, the last to 0.
pub type JordanString = Vec<Vec<Rational>>;

/// Jordan strings for `e₂` acting on row vectors; rows other than `i`, `j` are unchanged.
pub fn jordan_strings(rd: &ReductionData) -> Vec<JordanString> {
    let n = rd.e1.n();
    let basis = |k: usize| -> Vec<Rational> { (1..=n).map(|x| int((x == k) as i64)).collect() };
    let comb = |terms: &[(i64, usize)]| -> Vec<Rational> {
        let mut v = vec![int(0); n];
        for &(c, k) in terms {
            v[k - 1] += int(c);
        }
        v
    };
    let rows = rd.filling.rows();
    let (i, j) = (rd.witness.i, rd.witness.j);
    let (ri, rj) = (&rows[i - 1], &rows[j - 1]);
    let (mi, mj) = (ri.len(), rj.len());
    let d = mi - mj;
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if r + 1 != i && r + 1 != j {
            out.push(row.iter().map(|&k| basis(k)).collect());
        }
    }
    let mut first: JordanString = Vec::new();
    for p in 1..=mi {
        if p <= d + 1 {
            first.push(basis(ri[p - 1]));
        } else {
            let c = p - d - 1;
            first.push(comb(&[(1, ri[p - 1]), (c as i64, rj[c - 1])]));
        }
    }
    first.push(comb(&[(mj as i64, rj[mj - 1])]));
    out.push(first);
    let second: JordanString = (1..mj)
        .map(|s| comb(&[(1, ri[d + s]), (-((mj - s) as i64), rj[s - 1])]))
        .collect();
    if !second.is_empty() {
        out.push(second);
    }
    out
}

/// `v·M`.
pub fn row_action(v: &[Rational], m: &Mat) -> Vec<Rational> {
    m.transpose().apply(v)
}

/// Every string maps along itself under `e₂`, and together they form a basis.
pub fn verify_jordan_strings(rd: &ReductionData, strings: &[JordanString]) -> bool {
    let chains_ok = strings.iter().all(|s| {
        s.iter().enumerate().all(|(p, v)| {
            let image = row_action(v, &rd.e2);
            match s.get(p + 1) {
                Some(next) => image == *next,
                None => image.iter().all(Zero::is_zero),
            }
        })
    });
    let all: Vec<Vec<Rational>> = strings.iter().flatten().cloned().collect();
    let n = rd.e1.n();
    let mut lengths: Vec<usize> = strings.iter().map(Vec::len).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    chains_ok && all.len() == n && rank(&all) == n && lengths == rd.lambda.parts()
}
