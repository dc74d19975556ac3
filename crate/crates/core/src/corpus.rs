//! Regression corpus: a TOML manifest of named ideals with expected relation
//! types, and a runner that checks each one along both the Rees and the
//! associated-graded path (and optionally against the oracle).
//!
//! ```toml
//! [[instance]]
//! name = "scroll"
//! ring = "QQ[x,y]"
//! ideal = "x^2, x*y, y^2"
//! base = ""            # optional base ideal, the ring is then k[x]/base
//! expected_rt = 2
//! source = "literature"
//! conjecture = false
//! ```

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::blowup::{gr_presentation, rees_ideal, relation_type, BaseRing};
use crate::error::{Error, Result};
use crate::exec::{Config, Exec};
use crate::field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
use crate::geometry::{self, ExampleInstance, Source};
use crate::oracle::minimal_generator_bidegrees;
use crate::poly::{Ring, RingSpec};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default, rename = "instance")]
    pub instances: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub ring: String,
    pub ideal: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_rt: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
    #[serde(default)]
    pub conjecture: bool,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Manifest(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Computed without an expectation to compare against.
    Computed,
    /// Conjectural expectation, reported only.
    ConjectureHolds,
    ConjectureFails,
    Mismatch,
    Incomplete,
    Error,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Mismatch | Verdict::Incomplete | Verdict::Error)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: String,
    pub field: String,
    pub expected_rt: Option<u32>,
    pub conjecture: bool,
    pub rt: Option<u32>,
    pub rt_gr: Option<u32>,
    pub exact: bool,
    pub t_degrees: Vec<u32>,
    pub bidegrees: Option<Vec<(u32, u32)>>,
    /// Whether the oracle's minimal-generator bidegrees agree, when checked.
    pub oracle_agrees: Option<bool>,
    pub verdict: Verdict,
    pub message: Option<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.verdict.is_failure())
    }

    pub fn is_success(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn has_incomplete(&self) -> bool {
        self.outcomes.iter().any(|o| o.verdict == Verdict::Incomplete)
    }

    /// One line per instance, then a totals line.
    pub fn table(&self) -> String {
        let mut out = format!("{:<28} {:<10} {:>8} {:>4} {:>6} {:>9}  {}\n", "instance", "field", "expected", "rt", "rt_gr", "ms", "verdict");
        for o in &self.outcomes {
            let show = |v: Option<u32>| v.map_or("-".to_string(), |x| x.to_string());
            let mut exp = show(o.expected_rt);
            if o.conjecture {
                exp.push('?');
            }
            let mut verdict = format!("{:?}", o.verdict);
            if let Some(m) = &o.message {
                verdict = format!("{verdict}: {m}");
            }
            out.push_str(&format!(
                "{:<28} {:<10} {:>8} {:>4} {:>6} {:>9}  {}\n",
                o.name,
                o.field,
                exp,
                show(o.rt),
                show(o.rt_gr),
                o.elapsed_ms,
                verdict
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} instances, {} failed\n", self.outcomes.len(), failed));
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replaces the field of every instance.
    pub field: Option<FieldSpec>,
    /// Cross-check equigenerated homogeneous instances against the oracle
    /// with these `(D, N)` bounds.
    pub oracle_bounds: Option<(u32, u32)>,
}

/// Runs every entry, dispatching instances across `config.exec`; each
/// instance runs sequentially inside.
pub fn run_manifest(manifest: &Manifest, options: &RunOptions, config: &Config) -> Summary {
    let inner = Config { exec: Exec::Sequential, ..*config };
    let outcomes = config.exec.map(&manifest.instances, |e| run_entry(e, options, &inner));
    Summary { outcomes }
}

pub fn run_entry(entry: &Entry, options: &RunOptions, config: &Config) -> Outcome {
    let start = Instant::now();
    let field = entry.ring.parse::<RingSpec>().map(|s| options.field.unwrap_or(s.field));
    let mut outcome = Outcome {
        name: entry.name.clone(),
        field: field.as_ref().map(|f| f.to_string()).unwrap_or_default(),
        expected_rt: entry.expected_rt,
        conjecture: entry.conjecture,
        rt: None,
        rt_gr: None,
        exact: false,
        t_degrees: Vec::new(),
        bidegrees: None,
        oracle_agrees: None,
        verdict: Verdict::Error,
        message: None,
        elapsed_ms: 0,
    };
    let result = field.and_then(|f| match f {
        FieldSpec::Rationals => compute(Rationals, entry, options, config, &mut outcome),
        FieldSpec::Prime(p) => compute(PrimeField::new(p)?, entry, options, config, &mut outcome),
    });
    outcome.elapsed_ms = start.elapsed().as_millis();
    if let Err(e) = result {
        outcome.verdict = if matches!(e, Error::Incomplete(_)) { Verdict::Incomplete } else { Verdict::Error };
        outcome.message = Some(e.to_string());
        return outcome;
    }
    outcome.verdict = judge(&outcome);
    outcome
}

fn judge(o: &Outcome) -> Verdict {
    if !o.exact {
        return Verdict::Incomplete;
    }
    if o.rt != o.rt_gr || o.oracle_agrees == Some(false) {
        return Verdict::Mismatch;
    }
    match (o.expected_rt, o.conjecture) {
        (None, _) => Verdict::Computed,
        (Some(e), true) if o.rt == Some(e) => Verdict::ConjectureHolds,
        (Some(_), true) => Verdict::ConjectureFails,
        (Some(e), false) if o.rt == Some(e) => Verdict::Pass,
        _ => Verdict::Mismatch,
    }
}

fn compute<F: Field>(field: F, entry: &Entry, options: &RunOptions, config: &Config, out: &mut Outcome) -> Result<()> {
    let spec: RingSpec = entry.ring.parse()?;
    let ring = Ring::polynomial(field, &spec.vars)?;
    let base = BaseRing::quotient(ring.clone(), ring.parse_list(&entry.base)?)?;
    let f = ring.parse_list(&entry.ideal)?;
    let pres = rees_ideal(&base, &f, config)?;
    let report = relation_type(&pres, config)?;
    out.rt = Some(report.rt);
    out.exact = report.exact;
    out.t_degrees = report.t_degrees.clone();
    out.bidegrees = report.bidegrees.clone();
    if !report.exact {
        return Ok(());
    }
    out.rt_gr = Some(gr_presentation(&pres, config)?.rt_gr);
    if let (Some((d, n)), Some(bideg)) = (options.oracle_bounds, &report.bidegrees) {
        let equigenerated = f.iter().all(|p| p.is_homogeneous() && !p.is_zero() && p.total_degree() == f[0].total_degree());
        if base.is_polynomial() && equigenerated {
            let table = minimal_generator_bidegrees(&f, d, n, config)?;
            let inside: Vec<(u32, u32)> = bideg.iter().copied().filter(|&(a, b)| a <= d && b <= n).collect();
            out.oracle_agrees = Some(table.generator_bidegrees() == inside);
        }
    }
    Ok(())
}

fn entry_of<F: Field>(inst: &ExampleInstance<F>) -> Entry {
    let ring = inst.ring();
    let gens: Vec<String> = inst.generators.iter().map(|g| g.to_string()).collect();
    let base: Vec<String> = inst.base.ideal().iter().map(|g| g.to_string()).collect();
    Entry {
        name: inst.name.clone(),
        ring: format!("{}[{}]", ring.field().name(), ring.var_names().join(",")),
        ideal: gens.join(", "),
        base: base.join(", "),
        expected_rt: inst.expected.map(|e| e.rt),
        source: inst.expected.map(|e| e.source),
        conjecture: inst.expected.is_some_and(|e| e.conjecture),
    }
}

fn plain(name: &str, ring: &str, ideal: &str, base: &str, rt: u32, source: Source) -> Entry {
    Entry {
        name: name.into(),
        ring: ring.into(),
        ideal: ideal.into(),
        base: base.into(),
        expected_rt: Some(rt),
        source: Some(source),
        conjecture: false,
    }
}

/// The built-in corpus of the standard examples. Performance runs use
/// `GF(32003)`; one instance per family is repeated over the rationals.
pub fn standard_corpus() -> Result<Manifest> {
    let gf = PrimeField::new(DEFAULT_PRIME)?;
    let qq = Rationals;
    let mut v: Vec<Entry> = Vec::new();

    let qq_entry = |e: Entry| Entry { name: format!("{}-qq", e.name), ..e };
    v.push(qq_entry(entry_of(&geometry::monomial_algebra_gens(qq.clone(), 2, 2)?)));
    for (n, d) in [(2, 2), (2, 3), (2, 4), (3, 2), (1, 3), (3, 1)] {
        v.push(entry_of(&geometry::monomial_algebra_gens(gf.clone(), n, d)?));
    }
    for d in 3..=6 {
        v.push(entry_of(&geometry::unbounded_family_gens(gf.clone(), d)?));
    }
    v.push(qq_entry(entry_of(&geometry::unbounded_family_gens(qq.clone(), 4)?)));

    v.push(entry_of(&geometry::six_points_instance(gf.clone(), [2, 3, 5])?));
    v.push(qq_entry(entry_of(&geometry::six_points_instance(qq.clone(), [2, 3, 5])?)));
    for g in 3..=5 {
        let (a, b) = geometry::nodal_default_parameters(g);
        v.push(entry_of(&geometry::nodal_curve_instance(gf.clone(), g, &a, &b)?));
    }
    let (a, b) = geometry::nodal_default_parameters(3);
    v.push(qq_entry(entry_of(&geometry::nodal_curve_instance(qq.clone(), 3, &a, &b)?)));

    let r2 = "GF(32003)[x,y]";
    for a in 1..=3 {
        for b in 1..=3 {
            v.push(plain(&format!("regular-x{a}-y{b}"), r2, &format!("x^{a}, y^{b}"), "", 1, Source::Literature));
        }
    }
    v.push(plain("regular-xyz", "GF(32003)[x,y,z]", "x, y, z", "", 1, Source::Literature));
    for (name, ideal) in [
        ("plane-line-and-point", "x*y, x^2 - x"),
        ("plane-three-points", "x^2 - x, y^2 - y, x*y"),
        ("plane-axes-and-point", "x*y*(x - 1), x*y*(y - 1)"),
        ("plane-two-points", "x + y - 1, x*y"),
        ("plane-cusp-and-point", "(y^2 - x^3)*(x - 2), (y^2 - x^3)*(y - 3)"),
    ] {
        v.push(plain(name, r2, ideal, "", 1, Source::Literature));
    }
    v.push(plain("two-points-p2", "GF(32003)[x,y,z]", "x, y*z", "", 1, Source::Computed));
    v.push(plain("koszul", "QQ[x,y]", "x, y", "", 1, Source::Computed));
    v.push(plain("principal", "QQ[x,y]", "x", "", 1, Source::Trivial));

    for k in 2..=4 {
        v.push(plain(&format!("truncated-x{k}"), "QQ[x]", "x", &format!("x^{k}"), k, Source::Computed));
    }
    Ok(Manifest { instances: v })
}
