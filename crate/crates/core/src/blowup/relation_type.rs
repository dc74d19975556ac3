use std::sync::Arc;

use super::rees::{require_exact, ReesPresentation};
use crate::error::{Error, Result};
use crate::exec::Config;
use crate::field::Field;
use crate::groebner::{minimal_generators, GroebnerBasis};
use crate::poly::{Poly, Ring};

/// Outcome of testing one relation against the relations of strictly lower
/// T-degree (plus the base ideal).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    /// Index into the relation list that was scanned.
    pub relation: usize,
    pub t_degree: u32,
    /// `true`: redundant, the normal form against the witness basis is zero.
    /// `false`: a fresh generator of this T-degree.
    pub member: bool,
    /// Size of the Gröbner basis of the lower-degree ideal used as witness.
    pub witness_size: usize,
}

#[derive(Clone, Debug)]
pub struct GeneratorInfo<F: Field> {
    pub poly: Poly<F>,
    pub t_degree: u32,
    /// Present when every term has the same x-degree.
    pub x_degree: Option<u32>,
}

impl<F: Field> GeneratorInfo<F> {
    fn new(poly: Poly<F>) -> Self {
        let t_degree = poly.t_degree().unwrap_or(0);
        let x_degree = poly.x_homogeneous_degree();
        GeneratorInfo { poly, t_degree, x_degree }
    }
}

#[derive(Clone, Debug)]
pub struct RelationTypeReport<F: Field> {
    /// The relation type. A lower bound when `exact` is false.
    pub rt: u32,
    pub exact: bool,
    /// Minimal generators of `Q` (a minimal homogeneous generating set when
    /// the presentation is graded, an irredundant T-graded one otherwise).
    pub generators: Vec<GeneratorInfo<F>>,
    /// Sorted T-degrees of `generators`.
    pub t_degrees: Vec<u32>,
    /// Sorted (x-degree, T-degree) pairs, for bigraded presentations.
    pub bidegrees: Option<Vec<(u32, u32)>>,
    pub certificates: Vec<Certificate>,
    /// Lower-degree Gröbner bases, keyed by the T-degree they were used for.
    pub witnesses: Vec<(u32, GroebnerBasis<F>)>,
}

struct Scan<F: Field> {
    rt: u32,
    certificates: Vec<Certificate>,
    witnesses: Vec<(u32, GroebnerBasis<F>)>,
}

/// Graded Nakayama scan over T-degree classes: the ideal generated by the
/// relations of T-degree at most `l` is `Q<l>`, so the relation type is the
/// largest `l` carrying a relation outside the ideal of the strictly lower
/// ones. Classes are independent and run through `config.exec`.
fn degree_class_scan<F: Field>(
    ring: &Arc<Ring<F>>,
    relations: &[Poly<F>],
    base_ideal: &[Poly<F>],
    config: &Config,
) -> Result<Scan<F>> {
    let degrees: Vec<u32> = relations.iter().map(|r| r.t_degree().unwrap_or(0)).collect();
    let mut classes: Vec<u32> = degrees.iter().copied().filter(|&d| d >= 2).collect();
    classes.sort_unstable();
    classes.dedup();

    let results = config.exec.map(&classes, |&l| -> Result<(u32, Vec<Certificate>, GroebnerBasis<F>)> {
        let lower: Vec<Poly<F>> = base_ideal
            .iter()
            .cloned()
            .chain(relations.iter().zip(&degrees).filter(|(_, &d)| d < l).map(|(r, _)| r.clone()))
            .collect();
        let gb = GroebnerBasis::compute(ring, &lower, &config.limits)?;
        let mut certs = Vec::new();
        for (i, r) in relations.iter().enumerate().filter(|(i, _)| degrees[*i] == l) {
            certs.push(Certificate { relation: i, t_degree: l, member: gb.contains(r)?, witness_size: gb.generators().len() });
        }
        Ok((l, certs, gb))
    });

    let mut scan = Scan { rt: 1, certificates: Vec::new(), witnesses: Vec::new() };
    for res in results {
        let (l, certs, gb) = res?;
        if certs.iter().any(|c| !c.member) {
            scan.rt = scan.rt.max(l);
        }
        scan.certificates.extend(certs);
        scan.witnesses.push((l, gb));
    }
    Ok(scan)
}

/// Irredundant T-graded generating subset modulo `base_ideal`, scanning by
/// ascending T-degree.
fn irredundant_relations<F: Field>(
    ring: &Arc<Ring<F>>,
    relations: &[Poly<F>],
    base_ideal: &[Poly<F>],
    config: &Config,
) -> Result<Vec<Poly<F>>> {
    let mut sorted: Vec<&Poly<F>> = relations.iter().collect();
    sorted.sort_by_key(|r| r.t_degree());
    let mut kept: Vec<Poly<F>> = Vec::new();
    for r in sorted {
        let current: Vec<Poly<F>> = base_ideal.iter().chain(&kept).cloned().collect();
        let gb = GroebnerBasis::compute(ring, &current, &config.limits)?;
        if !gb.contains(r)? {
            kept.push(r.clone());
        }
    }
    Ok(kept)
}

pub(crate) fn minimal_relations<F: Field>(pres: &ReesPresentation<F>, config: &Config) -> Result<Vec<Poly<F>>> {
    match pres.weights() {
        Some(w) => minimal_generators(pres.ring(), pres.relations(), pres.base_ideal(), w, &config.limits),
        None => irredundant_relations(pres.ring(), pres.relations(), pres.base_ideal(), config),
    }
}

/// The relation type of the ideal presented by `pres`, with minimal
/// generator degrees and membership certificates. A capped presentation
/// yields a lower bound flagged inexact.
pub fn relation_type<F: Field>(pres: &ReesPresentation<F>, config: &Config) -> Result<RelationTypeReport<F>> {
    let exact = pres.is_exact();
    let scan = degree_class_scan(pres.ring(), pres.relations(), pres.base_ideal(), config)?;
    let minimal = if exact { minimal_relations(pres, config)? } else { pres.relations().to_vec() };

    let generators: Vec<GeneratorInfo<F>> = minimal.into_iter().map(GeneratorInfo::new).collect();
    let mut t_degrees: Vec<u32> = generators.iter().map(|g| g.t_degree).collect();
    t_degrees.sort_unstable();
    let bidegrees = pres.is_bigraded().then(|| {
        let mut b: Vec<(u32, u32)> =
            generators.iter().map(|g| (g.x_degree.expect("bigraded relation"), g.t_degree)).collect();
        b.sort_unstable();
        b
    });
    if exact && t_degrees.last().copied().unwrap_or(1).max(1) != scan.rt {
        return Err(Error::InvalidInput(format!(
            "inconsistent relation type: scan gives {}, minimal generators reach T-degree {:?}",
            scan.rt,
            t_degrees.last()
        )));
    }
    Ok(RelationTypeReport {
        rt: scan.rt,
        exact,
        generators,
        t_degrees,
        bidegrees,
        certificates: scan.certificates,
        witnesses: scan.witnesses,
    })
}

/// Relations of T-degree one: the defining ideal of the symmetric algebra.
pub fn sym_ideal<F: Field>(pres: &ReesPresentation<F>) -> Result<Vec<Poly<F>>> {
    require_exact(pres)?;
    Ok(pres.relations().iter().filter(|r| r.t_degree() == Some(1)).cloned().collect())
}

/// Whether `Q` is generated by its linear part (modulo the base ideal).
pub fn is_linear_type<F: Field>(pres: &ReesPresentation<F>, config: &Config) -> Result<bool> {
    let sym: Vec<Poly<F>> = pres.base_ideal().iter().cloned().chain(sym_ideal(pres)?).collect();
    let gb = GroebnerBasis::compute(pres.ring(), &sym, &config.limits)?;
    for r in pres.relations() {
        if !gb.contains(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Presentation of the associated graded ring `gr_I(R) = R[It]/I R[It]` over
/// `R/I`: the base ideal becomes `I S + a S`, the relations are those of `Q`.
#[derive(Clone, Debug)]
pub struct GrPresentation<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub base_ideal: Vec<Poly<F>>,
    pub relations: Vec<Poly<F>>,
    pub rt_gr: u32,
    pub certificates: Vec<Certificate>,
}

pub fn gr_presentation<F: Field>(pres: &ReesPresentation<F>, config: &Config) -> Result<GrPresentation<F>> {
    require_exact(pres)?;
    let ring = pres.ring().clone();
    let mut base_ideal = pres.base_ideal().to_vec();
    for f in pres.generators() {
        if !f.is_zero() {
            base_ideal.push(f.transfer(&ring)?);
        }
    }
    let scan = degree_class_scan(&ring, pres.relations(), &base_ideal, config)?;
    Ok(GrPresentation {
        ring,
        base_ideal,
        relations: pres.relations().to_vec(),
        rt_gr: scan.rt,
        certificates: scan.certificates,
    })
}
