use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use reltype::blowup::{
    gr_presentation, is_linear_type, jacobian_dual, linear_relation_matrix, rees_ideal, relation_type,
    relation_type_cyclic, sym_ideal, BaseRing, GeneratorInfo, PolyMatrix,
};
use reltype::corpus::{run_manifest, standard_corpus, Manifest, RunOptions, Verdict};
use reltype::geometry::{self, ExampleInstance};
use reltype::groebner::ideal_equal;
use reltype::oracle::minimal_generator_bidegrees;
use reltype::{exec, Config, Error, Exec, Field, FieldSpec, Limits, Poly, PrimeField, Rationals, Result, Ring, RingSpec};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, Family, InputArgs, Job, RunArgs};

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
macro_rules! emit_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const EXIT_INCOMPLETE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Clone, Copy, Debug)]
enum Kind {
    Rt,
    Rees,
    Sym,
    Gr,
    Jdual,
    Cyclic,
    Oracle { d_max: u32, n_max: u32 },
}

#[derive(Serialize)]
struct GeneratorJson {
    poly: String,
    tdeg: u32,
    xdeg: Option<u32>,
}

impl<F: Field> From<&GeneratorInfo<F>> for GeneratorJson {
    fn from(g: &GeneratorInfo<F>) -> Self {
        GeneratorJson { poly: g.poly.to_string(), tdeg: g.t_degree, xdeg: g.x_degree }
    }
}

impl<F: Field> From<&Poly<F>> for GeneratorJson {
    fn from(p: &Poly<F>) -> Self {
        GeneratorJson { poly: p.to_string(), tdeg: p.t_degree().unwrap_or(0), xdeg: p.x_homogeneous_degree() }
    }
}

/// Output of one computation: the stable JSON fields, extra per-command
/// fields, and the text rendering.
#[derive(Serialize)]
struct Report {
    rt: u32,
    exact: bool,
    generators: Vec<GeneratorJson>,
    timings_ms: BTreeMap<String, f64>,
    #[serde(flatten)]
    extra: Map<String, Value>,
    #[serde(skip)]
    text: Vec<String>,
    #[serde(skip)]
    incomplete: bool,
}

impl Report {
    fn new(rt: u32, exact: bool) -> Self {
        Report {
            rt,
            exact,
            generators: Vec::new(),
            timings_ms: BTreeMap::new(),
            extra: Map::new(),
            text: Vec::new(),
            incomplete: !exact,
        }
    }

    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.timings_ms.insert(label.to_string(), (ms * 1e3).round() / 1e3);
        Ok(out)
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn render(&self) -> String {
        let mut out = self.text.join("\n");
        if !self.timings_ms.is_empty() {
            let t: Vec<String> = self.timings_ms.iter().map(|(k, v)| format!("{k} {v:.3} ms")).collect();
            out.push_str(&format!("\ntimings: {}", t.join(", ")));
        }
        out
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Rt(job) => job_command(Kind::Rt, job),
        Command::Rees(job) => job_command(Kind::Rees, job),
        Command::Sym(job) => job_command(Kind::Sym, job),
        Command::Gr(job) => job_command(Kind::Gr, job),
        Command::Jdual(job) => job_command(Kind::Jdual, job),
        Command::Cyclic(job) => job_command(Kind::Cyclic, job),
        Command::Oracle { job, d_max, n_max } => job_command(Kind::Oracle { d_max, n_max }, job),
        Command::Corpus { manifest, oracle, run } => {
            let config = config_of(&run);
            let options = RunOptions {
                field: run.field.as_deref().map(str::parse).transpose()?,
                oracle_bounds: oracle.as_deref().map(parse_bounds).transpose()?,
            };
            let summary = run_manifest(&Manifest::load(&manifest)?, &options, &config);
            if run.json {
                emit!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
            } else {
                emit_raw!("{}", summary.table());
            }
            Ok(if !summary.is_success() && summary.failures().any(|o| o.verdict != Verdict::Incomplete) {
                EXIT_MISMATCH
            } else if summary.has_incomplete() {
                EXIT_INCOMPLETE
            } else {
                0
            })
        }
        Command::CorpusExport { path } => {
            let text = standard_corpus()?.to_toml()?;
            match path {
                Some(p) => std::fs::write(p, text)?,
                None => emit_raw!("{text}"),
            }
            Ok(0)
        }
        Command::Points { count, max_points, run } => {
            let config = config_of(&run);
            match run.field.as_deref().unwrap_or("GF(32003)").parse::<FieldSpec>()? {
                FieldSpec::Rationals => points(Rationals, count, max_points, &run, &config),
                FieldSpec::Prime(p) => points(PrimeField::new(p)?, count, max_points, &run, &config),
            }
        }
    }
}

fn config_of(run: &RunArgs) -> Config {
    if let Some(n) = run.jobs {
        exec::set_workers(n.max(1));
    }
    let exec = if run.jobs == Some(1) { Exec::Sequential } else { Exec::Parallel };
    Config { limits: Limits { max_degree: run.max_degree, timeout: Duration::from_secs(run.timeout) }, exec }
}

fn parse_bounds(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidInput(format!("expected bounds like 8,6, got {s:?}"));
    let (d, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((d.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidInput(format!("not an integer list: {s:?}"))))
        .collect()
}

fn job_command(kind: Kind, job: Job) -> Result<u8> {
    let config = config_of(&job.run);
    let field = resolve_field(&job.input, &job.run)?;
    let report = match field {
        FieldSpec::Rationals => execute(Rationals, kind, &job.input, &config)?,
        FieldSpec::Prime(p) => execute(PrimeField::new(p)?, kind, &job.input, &config)?,
    };
    if job.run.json {
        emit!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        emit!("{}", report.render());
    }
    Ok(if report.incomplete { EXIT_INCOMPLETE } else { 0 })
}

fn resolve_field(input: &InputArgs, run: &RunArgs) -> Result<FieldSpec> {
    if let Some(f) = &run.field {
        return f.parse();
    }
    match &input.ring {
        Some(r) => Ok(r.parse::<RingSpec>()?.field),
        None => Ok(FieldSpec::Rationals),
    }
}

/// Identifiers in order of first appearance.
fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for text in texts {
        let mut chars = text.char_indices().peekable();
        while let Some((i, c)) = chars.next() {
            if c.is_ascii_alphabetic() || c == '_' {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let name = &text[i..end];
                if !vars.iter().any(|v| v == name) {
                    vars.push(name.to_string());
                }
            }
        }
    }
    vars
}

struct Loaded<F: Field> {
    base: BaseRing<F>,
    f: Vec<Poly<F>>,
    syzygies: Option<Vec<Vec<Poly<F>>>>,
}

fn load<F: Field>(field: F, input: &InputArgs) -> Result<Loaded<F>> {
    if let Some(family) = input.family {
        if input.ideal.is_some() || !input.base.is_empty() {
            return Err(Error::InvalidInput("--family replaces --ideal and --base".into()));
        }
        let inst: ExampleInstance<F> = match family {
            Family::Veronese => geometry::monomial_algebra_gens(field, input.n.unwrap_or(2), input.d.unwrap_or(2) as u32)?,
            Family::Unbounded => geometry::unbounded_family_gens(field, input.d.unwrap_or(4))?,
            Family::SixPoints => {
                let a = parse_ints(input.a.as_deref().unwrap_or("2,3,5"))?;
                let a: [i64; 3] = a.try_into().map_err(|_| Error::InvalidInput("six-points takes three parameters".into()))?;
                geometry::six_points_instance(field, a)?
            }
            Family::Nodal => {
                let g = input.g.unwrap_or(3);
                let (da, db) = geometry::nodal_default_parameters(g);
                let a = input.a.as_deref().map(parse_ints).transpose()?.unwrap_or(da);
                let b = input.b.as_deref().map(parse_ints).transpose()?.unwrap_or(db);
                geometry::nodal_curve_instance(field, g, &a, &b)?
            }
        };
        return Ok(Loaded { base: inst.base.clone(), f: inst.generators.clone(), syzygies: inst.syzygies.clone() });
    }
    let ideal = input.ideal.as_deref().ok_or_else(|| Error::InvalidInput("pass --ideal or --family".into()))?;
    let vars = match &input.ring {
        Some(r) => r.parse::<RingSpec>()?.vars,
        None => infer_vars(&[ideal, &input.base]),
    };
    if vars.is_empty() {
        return Err(Error::InvalidInput("no variables; pass --ring".into()));
    }
    let ring = Ring::polynomial(field, &vars)?;
    let base = BaseRing::quotient(ring.clone(), ring.parse_list(&input.base)?)?;
    let f = ring.parse_list(ideal)?;
    Ok(Loaded { base, f, syzygies: None })
}

fn matrix_json<F: Field>(m: &PolyMatrix<F>) -> Value {
    Value::from(m.to_rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn execute<F: Field>(field: F, kind: Kind, input: &InputArgs, config: &Config) -> Result<Report> {
    let loaded = load(field, input)?;
    let (base, f) = (&loaded.base, &loaded.f);

    if let Kind::Cyclic = kind {
        let [g] = f.as_slice() else {
            return Err(Error::InvalidInput("cyclic takes exactly one generator".into()));
        };
        let mut report = Report::new(1, true);
        report.rt = report.time("cyclic", || relation_type_cyclic(base, g, config))?;
        report.line(format!("rt: {}", report.rt));
        return Ok(report);
    }
    if let Kind::Oracle { d_max, n_max } = kind {
        if !base.is_polynomial() {
            return Err(Error::InvalidInput("the oracle works over a polynomial ring".into()));
        }
        let mut report = Report::new(1, false);
        let table = report.time("oracle", || minimal_generator_bidegrees(f, d_max, n_max, config))?;
        report.rt = table.rt_lower_bound();
        report.incomplete = false;
        let bideg = table.generator_bidegrees();
        report.extra.insert("bounds".into(), json!([d_max, n_max]));
        report.extra.insert("bidegrees".into(), json!(bideg));
        report.extra.insert(
            "dimensions".into(),
            Value::from(table.entries.iter().filter(|(_, e)| e.dim > 0).map(|(k, e)| json!([k.0, k.1, e.dim, e.fresh])).collect::<Vec<_>>()),
        );
        report.line(format!("rt (lower bound within ({d_max},{n_max})): {}", report.rt));
        report.line(format!("minimal generator bidegrees: {bideg:?}"));
        return Ok(report);
    }

    let mut report = Report::new(1, true);
    let pres = report.time("rees", || rees_ideal(base, f, config))?;
    let rt = report.time("relation_type", || relation_type(&pres, config))?;
    report.rt = rt.rt;
    report.exact = rt.exact;
    report.incomplete = !rt.exact;
    let status = if rt.exact { "exact" } else { "lower bound (computation capped)" };

    match kind {
        Kind::Rt | Kind::Rees => {
            report.generators = rt.generators.iter().map(GeneratorJson::from).collect();
            report.extra.insert("t_degrees".into(), json!(rt.t_degrees));
            if let Some(b) = &rt.bidegrees {
                report.extra.insert("bidegrees".into(), json!(b));
            }
            let fresh = rt.certificates.iter().filter(|c| !c.member).count();
            report.extra.insert("certificates".into(), json!({ "membership_tests": rt.certificates.len(), "fresh": fresh }));
            report.line(format!("rt: {} ({status})", rt.rt));
            report.line(format!("t-degrees: {:?}", rt.t_degrees));
            if let Some(b) = &rt.bidegrees {
                report.line(format!("bidegrees (x, T): {b:?}"));
            }
            if matches!(kind, Kind::Rees) {
                report.line(format!("{} generators:", rt.generators.len()));
                for g in &rt.generators {
                    report.line(format!("  {}", g.poly));
                }
            } else {
                report.line(format!(
                    "certificates: {} membership tests against lower degrees, {fresh} non-members",
                    rt.certificates.len()
                ));
            }
        }
        Kind::Sym => {
            let sym = sym_ideal(&pres)?;
            let linear = report.time("linear_type", || is_linear_type(&pres, config))?;
            report.generators = sym.iter().map(GeneratorJson::from).collect();
            report.extra.insert("linear_type".into(), json!(linear));
            report.line(format!("{} linear relations:", sym.len()));
            for p in &sym {
                report.line(format!("  {p}"));
            }
            report.line(format!("linear type: {linear}"));
        }
        Kind::Gr => {
            let gr = report.time("gr", || gr_presentation(&pres, config))?;
            report.generators = rt.generators.iter().map(GeneratorJson::from).collect();
            report.extra.insert("rt_gr".into(), json!(gr.rt_gr));
            report.extra.insert("base_ideal".into(), json!(gr.base_ideal.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
            report.line(format!("rt_gr: {}", gr.rt_gr));
            report.line(format!("rt (Rees): {}", rt.rt));
        }
        Kind::Jdual => {
            let s = pres.ring();
            let m = match &loaded.syzygies {
                Some(rows) => PolyMatrix::from_rows(s, rows.clone())?,
                None => linear_relation_matrix(&pres)?,
            };
            let b = jacobian_dual(&m, &s.x_vars(), &s.t_vars())?;
            report.generators = rt.generators.iter().map(GeneratorJson::from).collect();
            report.extra.insert("matrix".into(), matrix_json(&m));
            report.extra.insert("jacobian_dual".into(), matrix_json(&b));
            report.line(format!("M ({}x{}):\n{}", m.rows(), m.cols(), m.to_string().trim_end()));
            report.line(format!("B(M) ({}x{}):\n{}", b.rows(), b.cols(), b.to_string().trim_end()));
            if b.rows() == b.cols() {
                let det = b.determinant()?.normalized();
                let linear = sym_ideal(&pres)?;
                let mut q1_det: Vec<Poly<F>> = pres.base_ideal().iter().cloned().chain(linear).collect();
                q1_det.push(det.clone());
                let all: Vec<Poly<F>> = pres.base_ideal().iter().chain(pres.relations()).cloned().collect();
                let equal = report.time("ideal_equality", || ideal_equal(s, &all, &q1_det, &config.limits))?;
                report.extra.insert("determinant".into(), json!(det.to_string()));
                report.extra.insert("determinant_tdeg".into(), json!(det.t_degree()));
                report.extra.insert("q_equals_q1_det".into(), json!(equal));
                report.line(format!("det B(M): {det}"));
                report.line(format!("Q = (Q1, det B(M)): {equal}"));
            }
        }
        Kind::Cyclic | Kind::Oracle { .. } => unreachable!("handled above"),
    }
    Ok(report)
}

fn points<F: Field>(field: F, count: usize, max_points: usize, run: &RunArgs, config: &Config) -> Result<u8> {
    let ring = Ring::polynomial(field.clone(), &["x", "y", "z"])?;
    let seeds: Vec<u64> = (0..count as u64).map(|i| run.seed.wrapping_mul(1_000_003).wrapping_add(i)).collect();
    let inner = Config { exec: Exec::Sequential, ..*config };
    let rows = config.exec.map(&seeds, |&seed| -> Result<(u64, usize, usize, u32, bool)> {
        let pts = geometry::random_points(&field, max_points, seed)?;
        let ideal = geometry::points_ideal(&ring, &pts, &inner.limits)?;
        let rep = geometry::rt_affine_scheme(&ring, &ideal, &inner)?;
        Ok((seed, pts.len(), ideal.len(), rep.rt, rep.exact))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let violations = rows.iter().filter(|r| r.3 == 2).count();
    if run.json {
        let v: Vec<Value> =
            rows.iter().map(|r| json!({ "seed": r.0, "points": r.1, "generators": r.2, "rt": r.3, "exact": r.4 })).collect();
        emit!("{}", serde_json::to_string_pretty(&json!({ "sets": v, "rt_two": violations })).expect("serializable"));
    } else {
        emit!("{:>20} {:>6} {:>10} {:>4}", "seed", "points", "generators", "rt");
        for r in &rows {
            emit!("{:>20} {:>6} {:>10} {:>4}", r.0, r.1, r.2, r.3);
        }
        emit!("{} sets, {violations} with rt = 2", rows.len());
    }
    Ok(if violations > 0 {
        EXIT_MISMATCH
    } else if rows.iter().any(|r| !r.4) {
        EXIT_INCOMPLETE
    } else {
        0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_variables_in_order() {
        assert_eq!(infer_vars(&["x^2, x*y1, y1^2", "z"]), vec!["x", "y1", "z"]);
        assert!(infer_vars(&["1, 2"]).is_empty());
    }

    #[test]
    fn bounds_and_lists() {
        assert_eq!(parse_bounds("8,6").unwrap(), (8, 6));
        assert!(parse_bounds("8").is_err());
        assert_eq!(parse_ints("2, 3,5").unwrap(), vec![2, 3, 5]);
    }
}
