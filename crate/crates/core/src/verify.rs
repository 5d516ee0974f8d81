//! Verification sweeps, one per acceptance area, each producing a [`Report`].

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;

use crate::error::Result;
use crate::exact::lie::{jordan_type, trace_pair};
use crate::exact::linalg::{rank, Subspace};
use crate::exact::{frac, int, Mat, Rational};
use crate::partitions::hasse::hasse;
use crate::partitions::Partition;
use crate::poisson::section::SectionChart;
use crate::poisson::{dirac_bracket_poly, phi_check_sl4, phi_check_sl4_corrected, sl4_fixture, DiracContext, LieAlgebra};
use crate::poly::Polynomial;
use crate::pyramid::Pyramid;
use crate::report::Report;
use crate::stages::{jordan_strings, premet_conditions, stage_data, verify_jordan_strings, verify_sr};
use crate::triple::{check_good_grading, graded_triple, jordan_triple, orbit_dim, premet, slice, slice_checks};

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("valid partition")
}

fn all_pyramids(max_n: usize) -> Vec<Pyramid> {
    (1..=max_n)
        .flat_map(Partition::all)
        .flat_map(|s| Pyramid::enumerate(&s))
        .collect()
}

fn failures_detail(bad: &[String], total: usize) -> String {
    match bad.first() {
        None => format!("{total} cases"),
        Some(first) => format!("{} of {total} failed, first {first}", bad.len()),
    }
}

/// Cover edges of the dominance order on partitions of 6, covered first.
pub const SL6_HASSE_EDGES: [(&[usize], &[usize]); 12] = [
    (&[5, 1], &[6]),
    (&[4, 2], &[5, 1]),
    (&[4, 1, 1], &[4, 2]),
    (&[3, 3], &[4, 2]),
    (&[3, 2, 1], &[4, 1, 1]),
    (&[3, 2, 1], &[3, 3]),
    (&[3, 1, 1, 1], &[3, 2, 1]),
    (&[2, 2, 2], &[3, 2, 1]),
    (&[2, 2, 1, 1], &[3, 1, 1, 1]),
    (&[2, 2, 1, 1], &[2, 2, 2]),
    (&[2, 1, 1, 1, 1], &[2, 2, 1, 1]),
    (&[1, 1, 1, 1, 1, 1], &[2, 1, 1, 1, 1]),
];

pub fn hasse_suite() -> Report {
    let h = hasse(6);
    let mut r = Report::new();
    r.push_detail("nodes", h.nodes.len() == 11, format!("{} nodes", h.nodes.len()));
    let got: BTreeSet<(Partition, Partition)> = h.edges.iter().cloned().collect();
    let want: BTreeSet<(Partition, Partition)> = SL6_HASSE_EDGES.iter().map(|(a, b)| (p(a), p(b))).collect();
    r.push_detail("edges", got == want && h.edges.len() == 12, format!("{} edges", h.edges.len()));
    r
}

/// `covers` against the transitive reduction of dominance, and the worked examples.
pub fn cover_suite(max_n: usize) -> Report {
    let mut r = Report::new();
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=max_n {
        let ps = Partition::all(n);
        let dom = |a: &Partition, b: &Partition| a.dominates(b).expect("same n");
        for l in &ps {
            for m in &ps {
                total += 1;
                let strictly = l != m && dom(l, m);
                let brute = strictly && !ps.iter().any(|x| x != l && x != m && dom(l, x) && dom(x, m));
                let fast = l.covers(m).expect("same n").is_some();
                if brute != fast {
                    bad.push(format!("{l} / {m}"));
                }
            }
        }
    }
    r.push_detail("transitive_reduction", bad.is_empty(), failures_detail(&bad, total));
    let is_cover = |a: &[usize], b: &[usize]| p(a).covers(&p(b)).expect("same n").is_some();
    r.push("example_3+1_covers_2+2", is_cover(&[3, 1], &[2, 2]));
    r.push("example_3+3_covers_3+2+1", is_cover(&[3, 3], &[3, 2, 1]));
    r.push(
        "example_3+2+1_covers_both",
        is_cover(&[3, 2, 1], &[2, 2, 2]) && is_cover(&[3, 2, 1], &[3, 1, 1, 1]),
    );
    r.push(
        "example_4+3+1_not_over_3+3+2",
        !is_cover(&[4, 3, 1], &[3, 3, 2]) && is_cover(&[4, 3, 1], &[4, 2, 2]) && is_cover(&[4, 2, 2], &[3, 3, 2]),
    );
    r
}

/// The (3,2,2) pyramid with its leftmost column at −2.
pub fn worked_pyramid() -> Pyramid {
    Pyramid::new(p(&[3, 2, 2]), vec![-2, -1, -1]).expect("valid pyramid")
}

pub const WORKED_DEGREES: [[i64; 7]; 7] = [
    [0, 1, 1, 2, 3, 3, 4],
    [-1, 0, 0, 1, 2, 2, 3],
    [-1, 0, 0, 1, 2, 2, 3],
    [-2, -1, -1, 0, 1, 1, 2],
    [-3, -2, -2, -1, 0, 0, 1],
    [-3, -2, -2, -1, 0, 0, 1],
    [-4, -3, -3, -2, -1, -1, 0],
];

pub fn pyramid_suite(max_n: usize) -> Report {
    let mut r = Report::new();
    let census = Pyramid::enumerate(&p(&[4, 3])).len();
    r.push_detail("census_4+3", census == 3, format!("{census} pyramids"));
    let mut bad = Vec::new();
    let all = all_pyramids(max_n);
    for pyr in &all {
        let f = pyr.filling();
        let ok = check_good_grading(&f.e(), &f.grading()).map_or(false, |rep| rep.all_pass());
        if !ok {
            bad.push(format!("{pyr:?}"));
        }
    }
    r.push_detail("good_gradings", bad.is_empty(), failures_detail(&bad, all.len()));
    let f = worked_pyramid().filling();
    let mut e = Mat::zeros(7);
    for (a, b) in [(1, 4), (2, 5), (3, 6), (4, 7)] {
        e = &e + &Mat::unit(7, a, b);
    }
    r.push("worked_e", f.e() == e);
    let degrees: Vec<Vec<i64>> = WORKED_DEGREES.iter().map(|row| row.to_vec()).collect();
    r.push("worked_degrees", f.grading().degree_matrix() == degrees);
    r
}

pub fn centralizer_suite(max_n: usize, tower_n: usize) -> Report {
    let mut r = Report::new();
    let all = all_pyramids(max_n);
    let mut bad = Vec::new();
    for pyr in &all {
        let f = pyr.filling();
        let (e, g) = (f.e(), f.grading());
        let basis = f.centralizer_basis();
        let count = basis.len() == pyr.shape.dual_square_sum();
        let commute = basis.iter().all(|z| z.commutator(&e).is_zero());
        let independent = Subspace::span(f.n(), basis.clone()).dim() == basis.len();
        let graded = basis.iter().all(|z| g.degree_of(z).map_or(false, |d| d >= 0));
        if !(count && commute && independent && graded) {
            bad.push(format!("{pyr:?}"));
        }
    }
    r.push_detail("basis", bad.is_empty(), failures_detail(&bad, all.len()));
    let mut tower_bad = Vec::new();
    let mut total = 0;
    for n in 1..=tower_n {
        for l in Partition::all(n) {
            total += 1;
            if l.tower_count() != l.dual_square_sum() {
                tower_bad.push(l.to_string());
            }
        }
    }
    r.push_detail("block_tower", tower_bad.is_empty(), failures_detail(&tower_bad, total));
    r
}

pub fn triple_suite(triple_n: usize, slice_n: usize) -> Report {
    let mut r = Report::new();
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=triple_n {
        for l in Partition::all(n) {
            total += 1;
            if !jordan_triple(&l).is_valid() {
                bad.push(format!("jordan {l}"));
            }
            for pyr in Pyramid::enumerate(&l) {
                total += 1;
                if !graded_triple(&pyr.filling()).map_or(false, |t| t.is_valid()) {
                    bad.push(format!("graded {pyr:?}"));
                }
            }
        }
    }
    r.push_detail("sl2_relations", bad.is_empty(), failures_detail(&bad, total));
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=slice_n {
        for l in Partition::all(n) {
            total += 1;
            if !slice_checks(&jordan_triple(&l)).all_pass() {
                bad.push(l.to_string());
            }
        }
    }
    r.push_detail("transversality_and_weights", bad.is_empty(), failures_detail(&bad, total));

    let t = jordan_triple(&p(&[2, 1]));
    let triple_ok = t.e == Mat::unit(3, 1, 2)
        && t.h == Mat::diag(&[int(1), int(-1), int(0)])
        && t.f == Mat::unit(3, 2, 1);
    let family = Subspace::span(
        3,
        [
            Mat::diag(&[int(1), int(1), int(-2)]),
            Mat::unit(3, 2, 1),
            Mat::unit(3, 3, 1),
            Mat::unit(3, 2, 3),
        ],
    );
    let s = slice(&t);
    r.push(
        "sl3_minimal_slice",
        triple_ok && s.base == t.e && s.directions.same_span(&family) && s.dim() == 4,
    );
    r
}

pub fn premet_suite(max_n: usize) -> Report {
    let mut r = Report::new();
    let all = all_pyramids(max_n);
    let mut bad = Vec::new();
    let mut odd = 0;
    for pyr in &all {
        if !pyr.is_even() {
            odd += 1;
        }
        let ok = premet(&pyr.filling(), None).map_or(false, |pd| {
            let rep = pd.report();
            rep.get("half_orbit_dimension") == Some(true) && rep.get("character") == Some(true)
        });
        if !ok {
            bad.push(format!("{pyr:?}"));
        }
    }
    r.push_detail(
        "premet",
        bad.is_empty(),
        format!("{}; {odd} odd", failures_detail(&bad, all.len())),
    );
    r
}

fn lower_span(n: usize, entries: &[(usize, usize)]) -> Subspace {
    Subspace::span(n, entries.iter().map(|&(a, b)| Mat::unit(n, a, b)))
}

/// The three worked reductions, as `(name, λ, μ, e₁, m₁, e₂, m₂, k)`.
fn worked_stages() -> Vec<(&'static str, Partition, Partition, Mat, Subspace, Mat, Subspace, Subspace)> {
    let u = Mat::unit;
    let sl3_k = lower_span(3, &[(3, 2)]);
    let sl4_k = Subspace::span(4, [&u(4, 2, 1) + &u(4, 4, 3)]);
    let sl3z_m2 = Subspace::span(3, [&u(3, 2, 1) + &u(3, 3, 2), u(3, 3, 1)]);
    vec![
        (
            "sl3_subregular",
            p(&[3]),
            p(&[2, 1]),
            u(3, 1, 2),
            lower_span(3, &[(2, 1), (3, 1)]),
            &u(3, 1, 2) + &u(3, 2, 3),
            lower_span(3, &[(2, 1), (3, 1), (3, 2)]),
            sl3_k,
        ),
        (
            "sl4_middle",
            p(&[3, 1]),
            p(&[2, 2]),
            &u(4, 1, 3) + &u(4, 2, 4),
            lower_span(4, &[(3, 1), (3, 2), (4, 1), (4, 2)]),
            &(&(&u(4, 1, 2) + &u(4, 1, 3)) + &u(4, 2, 4)) + &u(4, 3, 4),
            lower_span(4, &[(3, 1), (3, 2), (4, 1), (4, 2)]).sum(&sl4_k),
            sl4_k.clone(),
        ),
        (
            "sl3_zero",
            p(&[2, 1]),
            p(&[1, 1, 1]),
            Mat::zeros(3),
            Subspace::zero(3),
            u(3, 1, 3),
            sl3z_m2.clone(),
            sl3z_m2,
        ),
    ]
}

pub fn stages_suite(max_n: usize) -> Report {
    let mut r = Report::new();
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            for (mu, _) in lambda.covered() {
                total += 1;
                let ok = stage_data(&lambda, &mu).map_or(false, |rd| {
                    jordan_type(&rd.e2).map_or(false, |t| t == lambda)
                        && verify_sr(&rd).all_pass()
                        && premet_conditions(&rd.e2, &rd.m2).map_or(false, |c| c.all_pass())
                        && verify_jordan_strings(&rd, &jordan_strings(&rd))
                });
                if !ok {
                    bad.push(format!("{lambda} > {mu}"));
                }
            }
        }
    }
    r.push_detail("cover_pairs", bad.is_empty(), failures_detail(&bad, total));
    for (name, lambda, mu, e1, m1, e2, m2, k) in worked_stages() {
        let ok = stage_data(&lambda, &mu).map_or(false, |rd| {
            rd.e1 == e1 && rd.m1.same_span(&m1) && rd.e2 == e2 && rd.m2.same_span(&m2) && rd.k.same_span(&k)
        });
        r.push(format!("worked_{name}"), ok);
    }
    r
}

fn random_poly(rng: &mut impl Rng, g: &LieAlgebra, max_deg: u32, terms: usize) -> Polynomial {
    let d = g.dim();
    let mut out = Polynomial::zero_in(&g.names);
    for _ in 0..terms {
        let mut e = vec![0u32; d];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..d)] += 1;
        }
        let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        out = &out + &Polynomial::from_terms(&g.names, [(e, int(c))]);
    }
    out
}

fn random_point(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| frac(rng.gen_range(-7..=7), rng.gen_range(1..=3))).collect()
}

pub fn poisson_core_suite(rng: &mut impl Rng) -> Result<Report> {
    let mut r = Report::new();
    let g = LieAlgebra::sl(3);
    let mut jacobi = 0;
    let mut antisym = 0;
    for _ in 0..20 {
        let (a, b, c) = (random_poly(rng, &g, 3, 3), random_poly(rng, &g, 3, 3), random_poly(rng, &g, 3, 3));
        let bc = g.lie_poisson(&b, &c)?;
        let ca = g.lie_poisson(&c, &a)?;
        let ab = g.lie_poisson(&a, &b)?;
        let sum = &(&g.lie_poisson(&a, &bc)? + &g.lie_poisson(&b, &ca)?) + &g.lie_poisson(&c, &ab)?;
        if sum.is_zero() {
            jacobi += 1;
        }
        if (&ab + &g.lie_poisson(&b, &a)?).is_zero() {
            antisym += 1;
        }
    }
    r.push_detail("jacobi_sl3", jacobi == 20, format!("{jacobi} of 20"));
    r.push_detail("antisymmetry_sl3", antisym == 20, format!("{antisym} of 20"));

    let mut bad = Vec::new();
    let all = all_pyramids(4);
    for pyr in &all {
        let e = pyr.filling().e();
        let n = e.n();
        if n < 2 {
            continue;
        }
        let alg = LieAlgebra::sl(n);
        let rk = rank(&alg.tensor_at(&alg.point_of(&e)));
        if rk != orbit_dim(&e) {
            bad.push(format!("{pyr:?}"));
        }
    }
    r.push_detail("tensor_rank", bad.is_empty(), failures_detail(&bad, all.len()));

    for n in [2, 3] {
        let t = jordan_triple(&Partition::row(n));
        let ctx = DiracContext::new(t.clone(), slice(&t))?;
        let d = ctx.chart.dim();
        let z = |k| Polynomial::var(&ctx.chart.vars, k);
        let mut ok = true;
        for i in 0..d {
            for j in 0..d {
                ok &= dirac_bracket_poly(&ctx, &z(i), &z(j), rng)?.is_zero();
                for _ in 0..5 {
                    ok &= ctx.dirac_bracket_at(&z(i), &z(j), &random_point(rng, d))?.is_zero();
                }
            }
        }
        r.push(format!("regular_slice_sl{n}"), ok);
    }
    Ok(r)
}

/// Computed brackets against `σ ·` a table, σ fixed by the first stored pair.
fn sigma_of(computed: &Polynomial, table: &Polynomial) -> Option<Rational> {
    let (e, c) = table.terms().next()?;
    let got = computed.terms().find(|(f, _)| *f == e).map(|(_, v)| v.clone())?;
    Some(got / c)
}

pub fn sl4_suite(rng: &mut impl Rng) -> Result<Report> {
    let mut r = Report::new();
    let fx = sl4_fixture()?;
    let ctx = DiracContext::new(fx.triple(), fx.slice_chart()?)?;
    let sv = &fx.slice_vars;
    let k = sv.len();
    let gen = |i| Polynomial::var(sv, i);
    let mut computed = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            computed[i][j] = Some(dirac_bracket_poly(&ctx, &gen(i), &gen(j), rng)?);
        }
    }
    let (ia, id) = (0, 3);
    let sigma = sigma_of(computed[ia][id].as_ref().expect("computed"), &fx.slice_table.get(ia, id));
    r.push_detail(
        "sigma",
        sigma.as_ref().map_or(false, |s| !s.is_zero()),
        sigma.as_ref().map_or("undetermined".into(), |s| format!("sigma = {s}")),
    );
    let sigma = sigma.unwrap_or_else(|| int(0));
    for i in 0..k {
        for j in i + 1..k {
            let got = computed[i][j].as_ref().expect("computed");
            let want = fx.slice_table.get(i, j).scale(&sigma);
            r.push_detail(format!("dirac{{{},{}}}", sv[i], sv[j]), *got == want, format!("{got}"));
        }
    }

    let phi = phi_check_sl4();
    for name in ["phi(a,d)", "phi(a,f)", "phi(c,d)", "phi(c,f)"] {
        r.push(name, phi.get(name) == Some(true));
    }
    let documented = Polynomial::parse(&fx.section_vars, "1/4*y*(x - u - v)")?;
    let df = phi.checks.iter().find(|c| c.name == "phi(d,f)");
    let df_ok = df.map_or(false, |c| !c.pass && c.detail == format!("RHS - LHS = {documented}"));
    r.push_detail(
        "phi(d,f)_documented_discrepancy",
        df_ok,
        df.map_or(String::new(), |c| c.detail.clone()),
    );
    r.push("phi_corrected_table", phi_check_sl4_corrected().all_pass());

    let sc = fx.section_chart()?;
    let rv = &fx.section_vars;
    let m = rv.len();
    let rgens: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(rv, i)).collect();
    let points = 5;
    let mut vs_dirac = vec![vec![0usize; m]; m];
    let mut vs_table = vec![vec![0usize; m]; m];
    let mut vs_corrected = vec![vec![0usize; m]; m];
    for _ in 0..points {
        let c: Vec<Rational> = (0..m).map(|_| int(rng.gen_range(-6..=6))).collect();
        let pt = sc.point(&c);
        let grads = sc.reduced_gradients(&rgens, &pt)?;
        let s: Vec<Rational> = fx.phi.iter().map(|q| q.eval(&c)).collect();
        for i in 0..m {
            for j in i + 1..m {
                let red = trace_pair(&pt, &grads[i].commutator(&grads[j]))?;
                let dirac = ctx.dirac_bracket_at(&fx.phi_inverse[i], &fx.phi_inverse[j], &s)?;
                vs_dirac[i][j] += (red == dirac) as usize;
                vs_table[i][j] += (red == fx.reduced_table.get(i, j).eval(&c) * &sigma) as usize;
                vs_corrected[i][j] += (red == fx.reduced_table_corrected.get(i, j).eval(&c) * &sigma) as usize;
            }
        }
    }
    let name = |i: usize, j: usize| format!("{{{},{}}}", rv[i], rv[j]);
    for i in 0..m {
        for j in i + 1..m {
            r.push_detail(
                format!("reduced_vs_dirac{}", name(i, j)),
                vs_dirac[i][j] == points,
                format!("{} of {points} points", vs_dirac[i][j]),
            );
        }
    }
    let uv = (0, 1);
    for i in 0..m {
        for j in i + 1..m {
            if (i, j) == uv {
                continue;
            }
            r.push(format!("reduced_vs_table{}", name(i, j)), vs_table[i][j] == points);
        }
    }
    r.push_detail(
        "reduced{u,v}_corrected_entry",
        vs_corrected[0][1] == points,
        format!(
            "corrected entry at {} of {points} points, printed entry at {}",
            vs_corrected[0][1], vs_table[0][1]
        ),
    );
    Ok(r)
}

pub fn roundtrip_suite(rng: &mut impl Rng, trials: usize) -> Result<Report> {
    let mut r = Report::new();
    let fx = sl4_fixture()?;
    let sc: SectionChart = fx.section_chart()?;
    let (zero, g0) = sc.canonicalize(&sc.e)?;
    r.push("e2_has_zero_coordinates", zero.iter().all(Zero::is_zero) && g0 == Mat::identity(sc.n()));
    let mut ok = 0;
    let mut fixed = 0;
    for _ in 0..trials {
        let c: Vec<Rational> = (0..sc.vars.len()).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=2))).collect();
        let pt = sc.point(&c);
        let (c0, g) = sc.canonicalize(&pt)?;
        fixed += (c0 == c && g == Mat::identity(sc.n())) as usize;
        let t: Vec<Rational> = (0..sc.m.dim()).map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
        let h = sc.group_element(&t);
        let hinv = sc.group_element(&t.iter().map(|x| -x).collect::<Vec<_>>());
        let q = &(&h * &pt) * &hinv;
        let (c1, m) = sc.canonicalize(&q)?;
        let minv = crate::exact::linalg::inverse(&m).expect("unipotent");
        ok += (c1 == c && &(&m * &q) * &minv == pt) as usize;
    }
    r.push_detail("section_fixed", fixed == trials, format!("{fixed} of {trials}"));
    r.push_detail("orbit_invariance", ok == trials, format!("{ok} of {trials}"));
    Ok(r)
}

pub struct SuiteResult {
    pub name: &'static str,
    pub report: Report,
    pub elapsed: Duration,
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<Report>) -> SuiteResult {
    let start = Instant::now();
    let report = f().unwrap_or_else(|e| {
        let mut r = Report::new();
        r.push_detail("error", false, e.to_string());
        r
    });
    SuiteResult {
        name,
        report,
        elapsed: start.elapsed(),
    }
}

/// Every suite, with bounds scaled from `max_n` (6 gives the acceptance bounds).
pub fn verify_all(max_n: usize, rng: &mut impl Rng) -> Vec<SuiteResult> {
    vec![
        timed("hasse", || Ok(hasse_suite())),
        timed("covers", || Ok(cover_suite(max_n + 2))),
        timed("pyramids", || Ok(pyramid_suite(max_n))),
        timed("centralizer", || Ok(centralizer_suite(max_n, 5 * max_n))),
        timed("triples", || Ok(triple_suite(max_n + 1, max_n))),
        timed("premet", || Ok(premet_suite(max_n))),
        timed("stages", || Ok(stages_suite(max_n + 1))),
        timed("poisson_core", || poisson_core_suite(rng)),
        timed("sl4", || sl4_suite(rng)),
        timed("roundtrip", || roundtrip_suite(rng, 20)),
    ]
}
