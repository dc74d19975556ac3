//! Constructors for the standard example families and scheme-level wrappers.
//!
//! Projective inputs are treated through their affine cones: the relation
//! type of a projective scheme is that of its homogeneous defining ideal.

use std::fmt;
use std::sync::Arc;

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blowup::{rees_ideal, relation_type, BaseRing, PolyMatrix, RelationTypeReport};
use crate::error::{Error, Result};
use crate::exec::{Config, Limits};
use crate::field::Field;
use crate::groebner::{eliminate, ideal_intersect, minimal_generators};
use crate::oracle::monomials_of_degree;
use crate::poly::{Monomial, Poly, Ring, TermOrder, VarKind};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// A published result.
    Literature,
    /// Computed independently (hand expansion or the linear-algebra oracle).
    Computed,
    /// Immediate from the definitions.
    Trivial,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Literature => "literature",
            Source::Computed => "computed",
            Source::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Expectation {
    pub rt: u32,
    pub source: Source,
    /// Reported, never enforced.
    pub conjecture: bool,
}

/// A named ideal with its expected relation type.
#[derive(Clone, Debug)]
pub struct ExampleInstance<F: Field> {
    pub name: String,
    pub base: BaseRing<F>,
    pub generators: Vec<Poly<F>>,
    pub expected: Option<Expectation>,
    /// Syzygy matrix of `generators` (rows indexed by generators), when known.
    pub syzygies: Option<Vec<Vec<Poly<F>>>>,
    pub notes: String,
}

impl<F: Field> ExampleInstance<F> {
    fn new(name: String, ring: Arc<Ring<F>>, generators: Vec<Poly<F>>, expected: Option<Expectation>) -> Self {
        ExampleInstance { name, base: BaseRing::polynomial(ring), generators, expected, syzygies: None, notes: String::new() }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.base.ring()
    }

    /// The syzygy matrix moved into `ring` (typically `k[x, T]`).
    pub fn syzygy_matrix(&self, ring: &Arc<Ring<F>>) -> Result<Option<PolyMatrix<F>>> {
        self.syzygies.as_ref().map(|rows| PolyMatrix::from_rows(ring, rows.clone())).transpose()
    }
}

fn expect(rt: u32, source: Source) -> Option<Expectation> {
    Some(Expectation { rt, source, conjecture: false })
}

fn indexed_ring<F: Field>(field: F, stem: &str, n: usize) -> Result<Arc<Ring<F>>> {
    let names: Vec<String> = (1..=n).map(|i| format!("{stem}{i}")).collect();
    Ring::polynomial(field, &names)
}

/// All monomials of degree `d` in `n` variables, descending lexicographic
/// order. Their relation type is 2 unless `n = 1` or `d = 1`.
pub fn monomial_algebra_gens<F: Field>(field: F, n: usize, d: u32) -> Result<ExampleInstance<F>> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("need n >= 1 and d >= 1".into()));
    }
    let ring = indexed_ring(field, "x", n)?;
    let one = ring.field().one();
    let gens = monomials_of_degree(n, d).iter().map(|e| ring.monomial(Monomial::from_exponents(e), one.clone())).collect();
    let rt = if n >= 2 && d >= 2 { 2 } else { 1 };
    let prov = if rt == 2 { Source::Literature } else { Source::Trivial };
    Ok(ExampleInstance::new(format!("veronese-n{n}-d{d}"), ring, gens, expect(rt, prov)))
}

/// The monomial family with relation type `d/2` (d even, `d` generators) or
/// `(d+1)/2` (d odd, `d+1` generators), in `k[x1..xd]`.
pub fn unbounded_family_gens<F: Field>(field: F, d: usize) -> Result<ExampleInstance<F>> {
    if d < 3 {
        return Err(Error::InvalidInput("the family starts at d = 3".into()));
    }
    let ring = indexed_ring(field, "x", d)?;
    let one = ring.field().one();
    let mono = |e: Vec<u16>| ring.monomial(Monomial::from_exponents(&e), one.clone());
    // 0-based exponent vectors; index i stands for x_{i+1}.
    let mut gens = Vec::new();
    let mut e = vec![0u16; d];
    e[0] = 2;
    (2..d).for_each(|i| e[i] = 1);
    gens.push(mono(e));
    let mut e = vec![0u16; d];
    e[0] = 2;
    (1..d - 1).for_each(|i| e[i] = 1);
    gens.push(mono(e));
    for j in 2..d {
        let mut e = vec![1u16; d];
        e[0] = 3;
        e[j - 1] = 0;
        e[j] = 0;
        gens.push(mono(e));
    }
    if d % 2 == 1 {
        gens.push(mono(vec![1u16; d]));
    }
    let rt = d.div_ceil(2) as u32;
    Ok(ExampleInstance::new(format!("unbounded-d{d}"), ring, gens, expect(rt, Source::Literature)))
}

/// A point of the projective plane, stored with its first nonzero
/// coordinate scaled to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointP2<E> {
    coords: [E; 3],
}

impl<E: Clone + PartialEq> PointP2<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, coords: [E; 3]) -> Result<Self> {
        let lead = coords.iter().find(|c| !field.is_zero(c)).cloned();
        let lead = lead.ok_or_else(|| Error::InvalidInput("[0:0:0] is not a point".into()))?;
        let inv = field.inv(&lead);
        Ok(PointP2 { coords: coords.map(|c| field.mul(&c, &inv)) })
    }

    pub fn from_ints<F: Field<Elem = E>>(field: &F, a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(field, [field.from_i64(a), field.from_i64(b), field.from_i64(c)])
    }

    pub fn coords(&self) -> &[E; 3] {
        &self.coords
    }
}

fn plane_ring<F: Field>(field: F) -> Result<Arc<Ring<F>>> {
    Ring::polynomial(field, &["x", "y", "z"])
}

/// Two independent linear forms of `k[x,y,z]` cutting out `p`.
pub fn point_ideal<F: Field>(ring: &Arc<Ring<F>>, p: &PointP2<F::Elem>) -> Result<Vec<Poly<F>>> {
    if ring.nvars() != 3 {
        return Err(Error::InvalidRing("points of P^2 need three variables".into()));
    }
    let [a, b, c] = p.coords().clone();
    let (x, y, z) = (ring.gen(0), ring.gen(1), ring.gen(2));
    let k = |e: &F::Elem| ring.constant(e.clone());
    let field = ring.field();
    let forms = if !field.is_zero(&c) {
        vec![&(&k(&c) * &x) - &(&k(&a) * &z), &(&k(&c) * &y) - &(&k(&b) * &z)]
    } else {
        vec![z, &(&k(&b) * &x) - &(&k(&a) * &y)]
    };
    Ok(forms.into_iter().map(|f| f.normalized()).collect())
}

/// Minimal homogeneous generators of the ideal of a finite set of distinct
/// points.
pub fn points_ideal<F: Field>(ring: &Arc<Ring<F>>, points: &[PointP2<F::Elem>], limits: &Limits) -> Result<Vec<Poly<F>>> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::InvalidInput("duplicate point".into()));
        }
    }
    let mut acc: Option<Vec<Poly<F>>> = None;
    for p in points {
        let ip = point_ideal(ring, p)?;
        acc = Some(match acc {
            None => ip,
            Some(prev) => ideal_intersect(ring, &prev, &ip, limits)?,
        });
    }
    let gens = acc.ok_or_else(|| Error::InvalidInput("no points".into()))?;
    let mut gens = minimal_generators(ring, &gens, &[], &vec![1; ring.nvars()], limits)?;
    gens.iter_mut().for_each(|g| *g = g.normalized());
    Ok(gens)
}

/// Three collinear points on `z = 0` with parameters `a_i`, plus `[1:0:1]`,
/// `[0:1:1]`, `[0:0:1]`. Generators are ordered and signed so that the
/// stored matrix is a syzygy matrix of them.
pub fn six_points_instance<F: Field>(field: F, a: [i64; 3]) -> Result<ExampleInstance<F>> {
    let fe: Vec<F::Elem> = a.iter().map(|&v| field.from_i64(v)).collect();
    let forbidden = [field.zero(), field.one(), field.from_i64(-1)];
    if fe.iter().any(|v| forbidden.contains(v)) || fe[0] == fe[1] || fe[0] == fe[2] || fe[1] == fe[2] {
        return Err(Error::InvalidInput(format!("parameters {a:?} must be distinct and avoid 0, 1, -1 in {}", field.name())));
    }
    let e1 = a[0] + a[1] + a[2];
    let e2 = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
    let e3 = a[0] * a[1] * a[2];
    let ring = plane_ring(field)?;
    let cubic = format!("x^3 - {e1}*x^2*y + {e2}*x*y^2 - {e3}*y^3 + {e3}*y*z^2 - x*z^2");
    let gens = ring.parse_list(&format!("y^2*z - y*z^2, x*y*z, x^2*z - x*z^2, -({cubic})"))?;
    let m = [
        ["x".to_string(), "0".into(), format!("-{e3}*(y + z)")],
        ["z - y".into(), "x - z".into(), format!("{e2}*y - {e1}*z")],
        ["0".into(), "-y".into(), format!("x - {e1}*y + z")],
        ["0".into(), "0".into(), "z".into()],
    ];
    let syz = m.iter().map(|row| row.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let mut inst = ExampleInstance::new(
        format!("six-points-{}-{}-{}", a[0], a[1], a[2]),
        ring,
        gens,
        expect(3, Source::Literature),
    );
    inst.syzygies = Some(syz);
    inst.notes = format!("e1 = {e1}, e2 = {e2}, e3 = {e3}");
    Ok(inst)
}

/// The points of `P^2` underlying [`six_points_instance`].
pub fn six_points<F: Field>(field: &F, a: [i64; 3]) -> Result<Vec<PointP2<F::Elem>>> {
    let mut pts: Vec<PointP2<F::Elem>> = a.iter().map(|&ai| PointP2::from_ints(field, ai, 1, 0)).collect::<Result<_>>()?;
    pts.push(PointP2::from_ints(field, 1, 0, 1)?);
    pts.push(PointP2::from_ints(field, 0, 1, 1)?);
    pts.push(PointP2::from_ints(field, 0, 0, 1)?);
    Ok(pts)
}

/// Default nodal-curve parameters: the first `2g` primes, split in halves.
pub fn nodal_default_parameters(g: usize) -> (Vec<i64>, Vec<i64>) {
    let primes: Vec<i64> = (2i64..).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).take(2 * g).collect();
    (primes[..g].to_vec(), primes[g..].to_vec())
}

/// `f_i = prod_{j != i} Q_j` with `Q_i = (a_i x - y)(b_i x - y)` in `k[x,y]`.
/// Expected relation type 4 for `g = 3`, 3 for `g = 4`, and conjecturally 2
/// beyond.
pub fn nodal_curve_instance<F: Field>(field: F, g: usize, a: &[i64], b: &[i64]) -> Result<ExampleInstance<F>> {
    if g < 3 || a.len() != g || b.len() != g {
        return Err(Error::InvalidInput("need g >= 3 and g parameters in each of a, b".into()));
    }
    let params: Vec<F::Elem> = a.iter().chain(b).map(|&v| field.from_i64(v)).collect();
    for (i, p) in params.iter().enumerate() {
        if params[..i].contains(p) {
            return Err(Error::InvalidInput(format!("nodal parameters collide in {}", field.name())));
        }
    }
    let ring = Ring::polynomial(field, &["x", "y"])?;
    let q: Vec<Poly<F>> =
        (0..g).map(|i| ring.parse(&format!("({}*x - y)*({}*x - y)", a[i], b[i]))).collect::<Result<_>>()?;
    let gens: Vec<Poly<F>> = (0..g)
        .map(|i| (0..g).filter(|&j| j != i).fold(ring.one(), |acc, j| &acc * &q[j]))
        .collect();
    let mut syz = vec![vec![ring.zero(); g - 1]; g];
    for c in 0..g - 1 {
        syz[c][c] = q[c].clone();
        syz[g - 1][c] = -&q[g - 1];
    }
    let expected = match g {
        3 => expect(4, Source::Literature),
        4 => expect(3, Source::Literature),
        _ => Some(Expectation { rt: 2, source: Source::Literature, conjecture: true }),
    };
    let mut inst = ExampleInstance::new(format!("nodal-g{g}"), ring, gens, expected);
    inst.syzygies = Some(syz);
    inst.notes = format!("a = {a:?}, b = {b:?}");
    Ok(inst)
}

/// Relation type of the affine scheme (or affine cone) defined by `ideal`.
pub fn rt_affine_scheme<F: Field>(ring: &Arc<Ring<F>>, ideal: &[Poly<F>], config: &Config) -> Result<RelationTypeReport<F>> {
    let base = BaseRing::polynomial(ring.clone());
    let pres = rees_ideal(&base, ideal, config)?;
    relation_type(&pres, config)
}

/// Up to `max_points` distinct random points of `P^2`, deterministic in
/// `seed`. Odd seeds draw coordinates from `{-1, 0, 1, 2}` to produce
/// collinearities and other special positions; even seeds draw from the
/// whole field (or a wide integer range over the rationals).
pub fn random_points<F: Field>(field: &F, max_points: usize, seed: u64) -> Result<Vec<PointP2<F::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_points.max(1));
    let special = seed % 2 == 1;
    let span = match field.characteristic() {
        0 => 1000,
        p => p.min(1 << 20) as i64,
    };
    let mut points: Vec<PointP2<F::Elem>> = Vec::new();
    let mut attempts = 0;
    while points.len() < count && attempts < 1000 {
        attempts += 1;
        let mut draw = || if special { rng.gen_range(-1..=2) } else { rng.gen_range(0..span) };
        let (a, b, c) = (draw(), draw(), draw());
        let Ok(p) = PointP2::from_ints(field, a, b, c) else { continue };
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Ok(points)
}

/// Ideal of the monomial curve `(t^a, t^b, t^c)` in `k[x,y,z]`, by
/// eliminating `t`.
pub fn monomial_curve_ideal<F: Field>(field: F, exps: [u32; 3], limits: &Limits) -> Result<(Arc<Ring<F>>, Vec<Poly<F>>)> {
    if exps.contains(&0) {
        return Err(Error::InvalidInput("curve exponents must be positive".into()));
    }
    let vars = [("t", VarKind::Aux), ("x", VarKind::X), ("y", VarKind::X), ("z", VarKind::X)];
    let big = Ring::new(field.clone(), vars.iter().map(|(n, k)| (n.to_string(), *k)).collect(), TermOrder::eliminate(&[0], 4))?;
    let t = big.gen(0);
    let gens: Vec<Poly<F>> = exps.iter().enumerate().map(|(i, &e)| &big.gen(i + 1) - &t.pow(e)).collect();
    let ring = plane_ring(field)?;
    let ideal = eliminate(&big, &gens, &[0], limits)?;
    let ideal = ideal.iter().map(|p| p.transfer(&ring)).collect::<Result<Vec<_>>>()?;
    Ok((ring, ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::groebner::ideal_equal;

    #[test]
    fn veronese_generators() {
        let inst = monomial_algebra_gens(Rationals, 2, 2).unwrap();
        let r = inst.ring();
        assert_eq!(inst.generators, r.parse_list("x1^2, x1*x2, x2^2").unwrap());
        assert_eq!(inst.expected.unwrap().rt, 2);
        assert_eq!(monomial_algebra_gens(Rationals, 1, 3).unwrap().expected.unwrap().rt, 1);
        assert_eq!(monomial_algebra_gens(Rationals, 3, 2).unwrap().generators.len(), 6);
    }

    #[test]
    fn unbounded_family_generators() {
        let inst = unbounded_family_gens(Rationals, 4).unwrap();
        let r = inst.ring();
        assert_eq!(inst.generators, r.parse_list("x1^2*x3*x4, x1^2*x2*x3, x1^3*x4, x1^3*x2").unwrap());
        assert_eq!(inst.expected.unwrap().rt, 2);
        let odd = unbounded_family_gens(Rationals, 3).unwrap();
        assert_eq!(odd.generators, odd.ring().parse_list("x1^2*x3, x1^2*x2, x1^3, x1*x2*x3").unwrap());
        assert_eq!(odd.expected.unwrap().rt, 2);
        assert_eq!(unbounded_family_gens(Rationals, 6).unwrap().expected.unwrap().rt, 3);
        assert!(unbounded_family_gens(Rationals, 2).is_err());
    }

    #[test]
    fn point_ideals() {
        let f = Rationals;
        let r = plane_ring(f.clone()).unwrap();
        let cases = [((0, 0, 1), "x, y"), ((1, 0, 1), "x - z, y"), ((1, 5, 0), "z, 5*x - y")];
        for ((a, b, c), expected) in cases {
            let p = PointP2::from_ints(&f, a, b, c).unwrap();
            let got = point_ideal(&r, &p).unwrap();
            assert!(ideal_equal(&r, &got, &r.parse_list(expected).unwrap(), &Limits::default()).unwrap());
        }
        assert!(PointP2::from_ints(&f, 0, 0, 0).is_err());
        assert_eq!(PointP2::from_ints(&f, 2, 4, 6).unwrap(), PointP2::from_ints(&f, 1, 2, 3).unwrap());
    }

    #[test]
    fn two_points() {
        let f = PrimeField::default();
        let r = plane_ring(f.clone()).unwrap();
        let pts = [PointP2::from_ints(&f, 0, 0, 1).unwrap(), PointP2::from_ints(&f, 0, 1, 0).unwrap()];
        let ideal = points_ideal(&r, &pts, &Limits::default()).unwrap();
        assert!(ideal_equal(&r, &ideal, &r.parse_list("x, y*z").unwrap(), &Limits::default()).unwrap());
        assert!(points_ideal(&r, &[pts[0].clone(), pts[0].clone()], &Limits::default()).is_err());
    }

    #[test]
    fn six_points_ideal_matches_display() {
        let f = Rationals;
        let inst = six_points_instance(f.clone(), [2, 3, 5]).unwrap();
        let r = inst.ring().clone();
        let from_points = points_ideal(&r, &six_points(&f, [2, 3, 5]).unwrap(), &Limits::default()).unwrap();
        assert!(ideal_equal(&r, &from_points, &inst.generators, &Limits::default()).unwrap());
        let m = inst.syzygies.as_ref().unwrap();
        for c in 0..3 {
            let col = (0..4).fold(r.zero(), |acc, i| &acc + &(&inst.generators[i] * &m[i][c]));
            assert!(col.is_zero());
        }
        assert!(six_points_instance(f.clone(), [1, 3, 5]).is_err());
        assert!(six_points_instance(f, [2, 2, 5]).is_err());
    }

    #[test]
    fn nodal_syzygies() {
        let (a, b) = nodal_default_parameters(3);
        assert_eq!((a.clone(), b.clone()), (vec![2, 3, 5], vec![7, 11, 13]));
        let inst = nodal_curve_instance(Rationals, 3, &a, &b).unwrap();
        assert!(inst.generators.iter().all(|f| f.total_degree() == Some(4)));
        let m = inst.syzygies.as_ref().unwrap();
        let r = inst.ring();
        for c in 0..2 {
            let col = (0..3).fold(r.zero(), |acc, i| &acc + &(&inst.generators[i] * &m[i][c]));
            assert!(col.is_zero());
        }
        assert!(nodal_curve_instance(Rationals, 3, &[2, 3, 5], &[7, 11, 2]).is_err());
        assert!(nodal_curve_instance(Rationals, 5, &nodal_default_parameters(5).0, &nodal_default_parameters(5).1)
            .unwrap()
            .expected
            .unwrap()
            .conjecture);
    }

    #[test]
    fn twisted_cubic_curve() {
        let (r, ideal) = monomial_curve_ideal(Rationals, [1, 2, 3], &Limits::default()).unwrap();
        let expected = r.parse_list("y - x^2, z - x^3").unwrap();
        assert!(ideal_equal(&r, &ideal, &expected, &Limits::default()).unwrap());
        assert_eq!(rt_affine_scheme(&r, &ideal, &Config::default()).unwrap().rt, 1);
    }

    #[test]
    fn random_points_are_deterministic() {
        let f = PrimeField::default();
        let a = random_points(&f, 6, 7).unwrap();
        assert_eq!(a, random_points(&f, 6, 7).unwrap());
        assert!(!a.is_empty() && a.len() <= 6);
    }
}
