//! `nilorbit` command-line front end.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use nilorbit::exact::lie::jordan_type;
use nilorbit::partitions::hasse::hasse;
use nilorbit::poisson::{dirac_bracket_poly, sl4_fixture, DiracContext};
use nilorbit::poly::Polynomial;
use nilorbit::pyramid::Pyramid;
use nilorbit::report::Report;
use nilorbit::stages::{jordan_strings, premet_conditions, stage_data, verify_jordan_strings, verify_sr};
use nilorbit::triple::{check_good_grading, graded_triple, jordan_triple, premet, slice, slice_checks, Sl2Triple};
use nilorbit::verify::{sl4_suite, verify_all};
use nilorbit::{Partition, Subspace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Hasse,
    Pyramids,
    Grading,
    Triple,
    Slice,
    Check,
    Stages,
    Poisson,
    VerifyAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Ascii,
    Text,
}

/// Nilpotent orbits in type A: dominance order, pyramids, slices, reduction by stages.
#[derive(Debug, Parser)]
#[command(name = "nilorbit", version)]
struct Cli {
    verb: Verb,
    /// Size of the matrices.
    #[arg(long)]
    n: Option<usize>,
    /// Partition as comma-separated parts, e.g. 3,2,2.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Pyramid index in enumeration order.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    verify: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

struct Usage(String);

enum Outcome {
    Done(String),
    Checked(String, bool),
}

type Run = Result<Outcome, Usage>;

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

fn parse_partition(flag: &str, s: &str) -> Result<Partition, Usage> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("--{flag} {s:?}: {e}")))?;
    let (p, resorted) = Partition::from_unsorted(parts).map_err(|e| usage(format!("--{flag}: {e}")))?;
    if resorted {
        eprintln!("warning: --{flag} {s} re-sorted to {}", p.label().replace('+', ","));
    }
    Ok(p)
}

impl Cli {
    fn allowed(&self) -> (&'static [&'static str], &'static [Format]) {
        use Format::*;
        match self.verb {
            Verb::Hasse => (&["n", "format", "out"], &[Dot, Json, Text]),
            Verb::Pyramids => (&["shape", "format", "out"], &[Ascii, Json, Text]),
            Verb::Grading => (&["shape", "index", "format", "out"], &[Text, Json, Ascii]),
            Verb::Triple => (&["shape", "index", "format", "verify", "out"], &[Text, Json]),
            Verb::Slice => (&["shape", "format", "verify", "out"], &[Text, Json]),
            Verb::Check => (&["shape", "index", "format", "out"], &[Text, Json]),
            Verb::Stages => (&["lambda", "mu", "format", "verify", "out"], &[Text, Json]),
            Verb::Poisson => (&["shape", "seed", "format", "verify", "out"], &[Text, Json]),
            Verb::VerifyAll => (&["max-n", "seed", "format", "out"], &[Text, Json]),
        }
    }

    fn validate(&self) -> Result<(), Usage> {
        let given = [
            ("n", self.n.is_some()),
            ("shape", self.shape.is_some()),
            ("lambda", self.lambda.is_some()),
            ("mu", self.mu.is_some()),
            ("index", self.index.is_some()),
            ("format", self.format.is_some()),
            ("seed", self.seed.is_some()),
            ("max-n", self.max_n.is_some()),
            ("verify", self.verify),
            ("out", self.out.is_some()),
        ];
        let (flags, formats) = self.allowed();
        let verb = self.verb.to_possible_value().expect("named").get_name().to_string();
        for (name, set) in given {
            if set && !flags.contains(&name) {
                return Err(usage(format!("{verb} does not take --{name}")));
            }
        }
        if let Some(f) = self.format {
            if !formats.contains(&f) {
                let name = f.to_possible_value().expect("named").get_name().to_string();
                return Err(usage(format!("{verb} does not support --format {name}")));
            }
        }
        let need = |name: &str, set: bool| if set { Ok(()) } else { Err(usage(format!("{verb} requires --{name}"))) };
        match self.verb {
            Verb::Hasse => need("n", self.n.is_some()),
            Verb::Pyramids | Verb::Grading | Verb::Triple | Verb::Slice | Verb::Check => {
                need("shape", self.shape.is_some())
            }
            Verb::Stages => need("lambda", self.lambda.is_some()).and(need("mu", self.mu.is_some())),
            Verb::Poisson | Verb::VerifyAll => Ok(()),
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(self.allowed().1[0])
    }

    fn shape(&self) -> Result<Partition, Usage> {
        parse_partition("shape", self.shape.as_deref().expect("validated"))
    }

    fn pyramid(&self, shape: &Partition) -> Result<Pyramid, Usage> {
        let all = Pyramid::enumerate(shape);
        let i = self.index.unwrap_or(0);
        all.get(i)
            .cloned()
            .ok_or_else(|| usage(format!("--index {i}: shape {shape} has {} pyramids", all.len())))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0))
    }
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn report_json(r: &Report) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect(),
    )
}

fn grid(cells: &[Vec<String>]) -> String {
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("[ {} ]\n", line.join(" "))
        })
        .collect()
}

fn basis_text(name: &str, s: &Subspace) -> String {
    let mut out = format!("{name}: dimension {}\n", s.dim());
    for b in &s.basis {
        out += &indent(&b.to_string());
    }
    out
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn hasse_cmd(cli: &Cli) -> Run {
    let n = cli.n.expect("validated");
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let h = hasse(n);
    Ok(Outcome::Done(match cli.format() {
        Format::Json => to_json(&h.to_json()),
        Format::Text => {
            let mut out = format!("{} partitions, {} cover edges\n", h.nodes.len(), h.edges.len());
            for (a, b) in &h.edges {
                let _ = writeln!(out, "{a} < {b}");
            }
            out
        }
        _ => h.to_dot(),
    }))
}

fn pyramids_cmd(cli: &Cli) -> Run {
    let shape = cli.shape()?;
    let all = Pyramid::enumerate(&shape);
    Ok(Outcome::Done(match cli.format() {
        Format::Json => to_json(&Value::Array(
            all.iter()
                .map(|p| {
                    let mut v = p.to_json();
                    v["even"] = json!(p.is_even());
                    v["symmetric"] = json!(p.is_symmetric());
                    v
                })
                .collect(),
        )),
        fmt => {
            let mut out = format!("{} pyramids of shape {shape}\n", all.len());
            for (i, p) in all.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "\n[{i}] offsets {:?} even={} symmetric={}",
                    p.offsets,
                    p.is_even(),
                    p.is_symmetric()
                );
                if fmt == Format::Ascii {
                    out += &p.render_ascii();
                }
            }
            out
        }
    }))
}

fn grading_cmd(cli: &Cli) -> Run {
    let shape = cli.shape()?;
    let p = cli.pyramid(&shape)?;
    let f = p.filling();
    let g = f.grading();
    let degrees = g.degree_matrix();
    Ok(Outcome::Done(match cli.format() {
        Format::Json => to_json(&json!({
            "pyramid": p.to_json(),
            "e": f.e(),
            "h": g.h(),
            "degrees": degrees,
            "characteristic": g.characteristic(),
        })),
        fmt => {
            let mut out = String::new();
            if fmt == Format::Ascii {
                out += &p.render_ascii();
            }
            let _ = writeln!(out, "pyramid {shape} offsets {:?}", p.offsets);
            out += "e_P:\n";
            out += &f.e().to_string();
            out += "degrees:\n";
            out += &grid(&degrees.iter().map(|r| r.iter().map(|d| d.to_string()).collect()).collect::<Vec<_>>());
            out += "h:\n";
            out += &g.h().to_string();
            let _ = writeln!(out, "characteristic: {:?}", g.characteristic());
            out
        }
    }))
}

fn triple_text(t: &Sl2Triple) -> String {
    format!("e:\n{}h:\n{}f:\n{}", t.e, t.h, t.f)
}

fn triple_cmd(cli: &Cli) -> Run {
    let shape = cli.shape()?;
    let (t, source) = match cli.index {
        Some(_) => {
            let p = cli.pyramid(&shape)?;
            let t = graded_triple(&p.filling()).map_err(|e| usage(e.to_string()))?;
            (t, format!("graded triple of pyramid offsets {:?}", p.offsets))
        }
        None => (jordan_triple(&shape), format!("Jordan triple of shape {shape}")),
    };
    let mut r = Report::new();
    r.push("sl2_relations", t.is_valid());
    let jt = jordan_type(&t.e).map(|p| p == shape).unwrap_or(false);
    r.push("jordan_type", jt);
    let out = match cli.format() {
        Format::Json => to_json(&json!({"source": source, "triple": t, "checks": report_json(&r)})),
        _ => {
            let mut out = format!("{source}\n{}", triple_text(&t));
            if cli.verify {
                out += &r.to_string();
            }
            out
        }
    };
    Ok(if cli.verify { Outcome::Checked(out, r.all_pass()) } else { Outcome::Done(out) })
}

fn poly_grid(entries: &[Polynomial], n: usize) -> String {
    let cells: Vec<Vec<String>> = (0..n)
        .map(|r| (0..n).map(|c| entries[r * n + c].to_string()).collect())
        .collect();
    grid(&cells)
}

fn slice_cmd(cli: &Cli) -> Run {
    let shape = cli.shape()?;
    let t = jordan_triple(&shape);
    let s = slice(&t);
    let r = slice_checks(&t);
    let out = match cli.format() {
        Format::Json => to_json(&json!({
            "shape": shape,
            "triple": t,
            "vars": *s.vars,
            "weights": s.weights,
            "point": (0..s.n()).map(|r| (0..s.n()).map(|c| s.embedding[r * s.n() + c].to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "checks": report_json(&r),
        })),
        _ => {
            let mut out = format!("Slodowy slice e + z(f) for shape {shape}, dimension {}\n", s.dim());
            let weights: Vec<String> = s.vars.iter().zip(&s.weights).map(|(v, w)| format!("{v}:{w}")).collect();
            let _ = writeln!(out, "coordinate weights: {}", weights.join(" "));
            out += &poly_grid(&s.embedding, s.n());
            if cli.verify {
                out += &r.to_string();
            }
            out
        }
    };
    Ok(if cli.verify { Outcome::Checked(out, r.all_pass()) } else { Outcome::Done(out) })
}

fn check_cmd(cli: &Cli) -> Run {
    let shape = cli.shape()?;
    let pyramids = match cli.index {
        Some(_) => vec![cli.pyramid(&shape)?],
        None => Pyramid::enumerate(&shape),
    };
    let mut ok = true;
    let mut text = String::new();
    let mut items = Vec::new();
    for p in &pyramids {
        let f = p.filling();
        let mut r = check_good_grading(&f.e(), &f.grading()).map_err(|e| usage(e.to_string()))?;
        match premet(&f, None) {
            Ok(pd) => {
                for c in pd.report().checks {
                    r.push_detail(format!("premet_{}", c.name), c.pass, c.detail);
                }
            }
            Err(e) => r.push_detail("premet", false, e.to_string()),
        }
        ok &= r.all_pass();
        let _ = writeln!(text, "pyramid offsets {:?}", p.offsets);
        text += &indent(&r.to_string());
        items.push(json!({"pyramid": p.to_json(), "checks": report_json(&r)}));
    }
    let out = match cli.format() {
        Format::Json => to_json(&Value::Array(items)),
        _ => text,
    };
    Ok(Outcome::Checked(out, ok))
}

fn stages_cmd(cli: &Cli) -> Run {
    let lambda = parse_partition("lambda", cli.lambda.as_deref().expect("validated"))?;
    let mu = parse_partition("mu", cli.mu.as_deref().expect("validated"))?;
    let rd = stage_data(&lambda, &mu).map_err(|e| usage(e.to_string()))?;
    let mut r = Report::new();
    if cli.verify {
        let jt = jordan_type(&rd.e2).map_err(|e| usage(e.to_string()))?;
        r.push_detail("jordan_type(e2)", jt == lambda, jt.to_string());
        r.extend(verify_sr(&rd));
        match premet_conditions(&rd.e2, &rd.m2) {
            Ok(pc) => {
                for c in pc.checks {
                    r.push_detail(format!("premet_{}", c.name), c.pass, c.detail);
                }
            }
            Err(e) => r.push_detail("premet", false, e.to_string()),
        }
        r.push("jordan_strings", verify_jordan_strings(&rd, &jordan_strings(&rd)));
    }
    let out = match cli.format() {
        Format::Json => {
            let mut v = serde_json::to_value(&rd).expect("serializable");
            if cli.verify {
                v["checks"] = report_json(&r);
            }
            to_json(&v)
        }
        _ => {
            let mut out = format!(
                "reduction by stages {mu} < {lambda}, box move rows ({}, {})\n",
                rd.witness.i, rd.witness.j
            );
            let _ = write!(out, "e1:\n{}", rd.e1);
            out += &basis_text("m1", &rd.m1);
            let _ = write!(out, "e2:\n{}", rd.e2);
            out += &basis_text("m2", &rd.m2);
            out += &basis_text("k", &rd.k);
            if cli.verify {
                out += &r.to_string();
            }
            out
        }
    };
    Ok(if cli.verify { Outcome::Checked(out, r.all_pass()) } else { Outcome::Done(out) })
}

fn bracket_table(ctx: &DiracContext, rng: &mut ChaCha8Rng) -> Result<Vec<(String, Polynomial)>, Usage> {
    let vars = &ctx.chart.vars;
    let mut rows = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let (a, b) = (Polynomial::var(vars, i), Polynomial::var(vars, j));
            let p = dirac_bracket_poly(ctx, &a, &b, rng).map_err(|e| usage(e.to_string()))?;
            rows.push((format!("{{{},{}}}", vars[i], vars[j]), p));
        }
    }
    Ok(rows)
}

fn poisson_cmd(cli: &Cli) -> Run {
    let mut rng = cli.rng();
    let (title, ctx) = match &cli.shape {
        Some(_) => {
            let shape = cli.shape()?;
            let t = jordan_triple(&shape);
            let ctx = DiracContext::new(t.clone(), slice(&t)).map_err(|e| usage(e.to_string()))?;
            (format!("Dirac brackets on the slice of shape {shape}"), ctx)
        }
        None => {
            let fx = sl4_fixture().map_err(|e| usage(e.to_string()))?;
            let chart = fx.slice_chart().map_err(|e| usage(e.to_string()))?;
            let ctx = DiracContext::new(fx.triple(), chart).map_err(|e| usage(e.to_string()))?;
            ("Dirac brackets on the subregular slice in sl4".to_string(), ctx)
        }
    };
    let table = bracket_table(&ctx, &mut rng)?;
    let report = if cli.verify && cli.shape.is_none() {
        Some(sl4_suite(&mut rng).map_err(|e| usage(e.to_string()))?)
    } else {
        None
    };
    let out = match cli.format() {
        Format::Json => {
            let entries: serde_json::Map<String, Value> =
                table.iter().map(|(k, p)| (k.clone(), json!(p.to_string()))).collect();
            let mut v = json!({"title": title, "vars": *ctx.chart.vars, "weights": ctx.chart.weights, "brackets": entries});
            if let Some(r) = &report {
                v["checks"] = report_json(r);
            }
            to_json(&v)
        }
        _ => {
            let width = table.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            let mut out = format!("{title}\n");
            for (k, p) in &table {
                let _ = writeln!(out, "{k:<width$} = {p}");
            }
            if let Some(r) = &report {
                out += &r.to_string();
            }
            out
        }
    };
    Ok(match report {
        Some(r) => Outcome::Checked(out, r.all_pass()),
        None => Outcome::Done(out),
    })
}

fn verify_all_cmd(cli: &Cli) -> Run {
    let max_n = cli.max_n.unwrap_or(6);
    if max_n < 4 {
        return Err(usage("--max-n must be at least 4"));
    }
    let mut rng = cli.rng();
    let results = verify_all(max_n, &mut rng);
    let ok = results.iter().all(|s| s.report.all_pass());
    for s in &results {
        eprintln!("{}: {:.2?}", s.name, s.elapsed);
    }
    let out = match cli.format() {
        Format::Json => {
            let suites: serde_json::Map<String, Value> = results
                .iter()
                .map(|s| (s.name.to_string(), report_json(&s.report)))
                .collect();
            to_json(&json!({"max_n": max_n, "pass": ok, "suites": suites}))
        }
        _ => {
            let mut out = String::new();
            for s in &results {
                let verdict = if s.report.all_pass() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "== {} {verdict}", s.name);
                out += &indent(&s.report.to_string());
            }
            let _ = writeln!(out, "verify-all --max-n {max_n}: {}", if ok { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Outcome::Checked(out, ok))
}

fn run(cli: &Cli) -> Run {
    cli.validate()?;
    match cli.verb {
        Verb::Hasse => hasse_cmd(cli),
        Verb::Pyramids => pyramids_cmd(cli),
        Verb::Grading => grading_cmd(cli),
        Verb::Triple => triple_cmd(cli),
        Verb::Slice => slice_cmd(cli),
        Verb::Check => check_cmd(cli),
        Verb::Stages => stages_cmd(cli),
        Verb::Poisson => poisson_cmd(cli),
        Verb::VerifyAll => verify_all_cmd(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, ok) = match run(&cli) {
        Ok(Outcome::Done(t)) => (t, true),
        Ok(Outcome::Checked(t, ok)) => (t, ok),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
