//! Gröbner-free verification by linear algebra on bigraded pieces.
//!
//! For homogeneous `f_1, .., f_m` of one degree `δ`, the Rees ideal `Q` is
//! bigraded by (x-degree, T-degree) and `Q_(d,n)` is the kernel of the finite
//! linear map sending `x^a T^b` to `x^a f^b`, a form of degree `d + nδ`.
//! Minimal generators in bidegree `(d, n)` number
//! `dim Q_(d,n) - dim (x Q_(d-1,n) + T Q_(d,n-1))`; the subtracted span is
//! spanned by products of the minimal generators found in lower bidegrees.
//!
//! When every `f_i` is a monomial, `Q` is graded by x-exponent vectors and
//! each fine piece is a fiber of monomials with a common image: `Q` there is
//! spanned by differences, and the decomposable part by differences of
//! monomials sharing a variable, so the count reduces to connected
//! components.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::Config;
use crate::field::Field;
use crate::linalg::{kernel, Echelon, SparseRow};
use crate::poly::{Exponent, Monomial, Poly, Ring, TermOrder, VarKind};

/// Largest bigraded piece the oracle agrees to build.
pub const MAX_PIECE: usize = 4_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct BidegreeEntry {
    /// `dim Q_(d,n)`.
    pub dim: usize,
    /// Number of minimal generators of `Q` in this bidegree.
    pub fresh: usize,
}

/// Dimensions and minimal-generator counts of `Q_(d,n)` for
/// `0 <= d <= d_max`, `1 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BidegreeTable {
    pub d_max: u32,
    pub n_max: u32,
    pub entries: BTreeMap<(u32, u32), BidegreeEntry>,
}

impl BidegreeTable {
    pub fn get(&self, d: u32, n: u32) -> BidegreeEntry {
        self.entries.get(&(d, n)).copied().unwrap_or_default()
    }

    /// Sorted multiset of bidegrees `(d, n)` of minimal generators.
    pub fn generator_bidegrees(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (&k, e) in &self.entries {
            out.extend(std::iter::repeat(k).take(e.fresh));
        }
        out
    }

    /// Top T-degree of a minimal generator within bounds (1 if none): a
    /// lower bound for the relation type.
    pub fn rt_lower_bound(&self) -> u32 {
        self.entries.iter().filter(|(_, e)| e.fresh > 0).map(|(&(_, n), _)| n).max().unwrap_or(1).max(1)
    }

    /// Whether the bounds provably capture every minimal generator given a
    /// generating set with bidegrees `known`: all of them lie inside the
    /// bounds, and the last two T-strata carry no minimal generator.
    pub fn is_saturated(&self, known: &[(u32, u32)]) -> bool {
        let inside = known.iter().all(|&(d, n)| d <= self.d_max && n <= self.n_max);
        let quiet = |n: u32| (0..=self.d_max).all(|d| self.get(d, n).fresh == 0);
        inside && (self.n_max < 2 || (quiet(self.n_max) && quiet(self.n_max - 1)))
    }
}

/// A basis of one bigraded piece `Q_(d,n)` in `k[x, T]`.
#[derive(Clone, Debug)]
pub struct ReesPiece<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub basis: Vec<Poly<F>>,
    /// Number of monomials of bidegree `(d, n)`.
    pub source_dim: usize,
    /// Number of x-monomials of degree `d + n δ`.
    pub target_dim: usize,
}

/// Exponent vectors of all monomials of degree `deg` in `nvars` variables,
/// in descending lexicographic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<Exponent>> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<Exponent>, out: &mut Vec<Vec<Exponent>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg as Exponent);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e as Exponent);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    match nvars {
        0 if deg == 0 => out.push(Vec::new()),
        0 => {}
        _ => rec(nvars, deg, &mut Vec::new(), &mut out),
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

struct Setup<F: Field> {
    base: Arc<Ring<F>>,
    ring: Arc<Ring<F>>,
    f: Vec<Poly<F>>,
    nx: usize,
    delta: u32,
}

impl<F: Field> Setup<F> {
    fn new(f: &[Poly<F>]) -> Result<Self> {
        let base = f.first().ok_or_else(|| Error::InvalidInput("the oracle needs at least one generator".into()))?.ring().clone();
        if (0..base.nvars()).any(|i| base.kind(i) != VarKind::X) {
            return Err(Error::InvalidRing("the oracle works over a polynomial ring in x-variables".into()));
        }
        let mut delta = None;
        for p in f {
            if !p.same_ring(&f[0]) {
                return Err(Error::RingMismatch);
            }
            if p.is_zero() || !p.is_homogeneous() {
                return Err(Error::InvalidInput(format!("oracle input {p} is not a nonzero form")));
            }
            let d = p.total_degree().unwrap();
            if *delta.get_or_insert(d) != d {
                return Err(Error::InvalidInput("oracle input must be equigenerated".into()));
            }
        }
        let delta = delta.unwrap();
        if delta == 0 {
            return Err(Error::InvalidInput("oracle input must have positive degree".into()));
        }
        let nx = base.nvars();
        let mut vars: Vec<(String, VarKind)> = base.var_names().iter().map(|v| (v.clone(), VarKind::X)).collect();
        let mut stem = String::from("T");
        while (1..=f.len()).any(|i| base.var_index(&format!("{stem}{i}")).is_some()) {
            stem.push('T');
        }
        vars.extend((1..=f.len()).map(|i| (format!("{stem}{i}"), VarKind::T)));
        let ring = Ring::new(base.field().clone(), vars, TermOrder::DegRevLex)?;
        Ok(Setup { base, ring, f: f.to_vec(), nx, delta })
    }

    fn m(&self) -> usize {
        self.f.len()
    }

    fn is_monomial(&self) -> bool {
        self.f.iter().all(|p| p.len() == 1)
    }

    fn check_size(&self, d: u32, n: u32) -> Result<()> {
        let size = binomial(d as usize + self.nx - 1, self.nx - 1).saturating_mul(binomial(n as usize + self.m() - 1, self.m() - 1));
        if size > MAX_PIECE {
            return Err(Error::InvalidInput(format!("bidegree ({d},{n}) has {size} monomials, above the oracle bound")));
        }
        Ok(())
    }

    /// `x^a T^b` as a monomial of `k[x, T]`.
    fn join(&self, a: &[Exponent], b: &[Exponent]) -> Monomial {
        let exps: Vec<Exponent> = a.iter().chain(b).copied().collect();
        Monomial::from_exponents(&exps)
    }

    /// `f^b` for every T-monomial `b` of degree at most `n_max`.
    fn products(&self, n_max: u32) -> HashMap<Vec<Exponent>, Poly<F>> {
        let mut out: HashMap<Vec<Exponent>, Poly<F>> = HashMap::new();
        out.insert(vec![0; self.m()], self.base.one());
        for n in 1..=n_max {
            for b in monomials_of_degree(self.m(), n) {
                let i = b.iter().position(|&e| e > 0).unwrap();
                let mut prev = b.clone();
                prev[i] -= 1;
                let p = &out[&prev] * &self.f[i];
                out.insert(b, p);
            }
        }
        out
    }
}

/// The evaluation map on bidegree `(d, n)`: source monomials (descending),
/// their index, and the images as sparse rows over x-monomials of degree
/// `d + n δ`.
struct Piece<F: Field> {
    source: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    images: Vec<SparseRow<F::Elem>>,
    target_dim: usize,
}

fn build_piece<F: Field>(s: &Setup<F>, products: &HashMap<Vec<Exponent>, Poly<F>>, d: u32, n: u32) -> Piece<F> {
    let xs = monomials_of_degree(s.nx, d);
    let ts = monomials_of_degree(s.m(), n);
    let target: HashMap<Vec<Exponent>, usize> =
        monomials_of_degree(s.nx, d + n * s.delta).into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut source: Vec<(Monomial, SparseRow<F::Elem>)> = Vec::with_capacity(xs.len() * ts.len());
    for a in &xs {
        for b in &ts {
            let mut row: SparseRow<F::Elem> = products[b]
                .terms()
                .iter()
                .map(|(mono, c)| {
                    let e: Vec<Exponent> = mono.exponents().iter().zip(a).map(|(u, v)| u + v).collect();
                    (target[&e], c.clone())
                })
                .collect();
            row.sort_by_key(|e| e.0);
            source.push((s.join(a, b), row));
        }
    }
    let order = s.ring.order();
    source.sort_by(|p, q| order.cmp(&q.0, &p.0));
    let index = source.iter().enumerate().map(|(i, (m, _))| (m.clone(), i)).collect();
    let (source, images) = source.into_iter().unzip();
    Piece { source, index, images, target_dim: target.len() }
}

fn to_poly<F: Field>(ring: &Arc<Ring<F>>, source: &[Monomial], v: &[(usize, F::Elem)]) -> Poly<F> {
    ring.from_terms(v.iter().map(|(j, c)| (source[*j].clone(), c.clone())).collect()).normalized()
}

/// A basis of `Q_(d,n)` for homogeneous `f` of one common degree.
pub fn rees_piece<F: Field>(f: &[Poly<F>], d: u32, n: u32) -> Result<ReesPiece<F>> {
    let s = Setup::new(f)?;
    s.check_size(d, n)?;
    let products = s.products(n);
    let piece = build_piece(&s, &products, d, n);
    let field = s.base.field();
    let basis = kernel(field, &piece.images, piece.target_dim).iter().map(|v| to_poly(&s.ring, &piece.source, v)).collect();
    Ok(ReesPiece { ring: s.ring.clone(), basis, source_dim: piece.source.len(), target_dim: piece.target_dim })
}

struct Found<F: Field> {
    d: u32,
    n: u32,
    entry: BidegreeEntry,
    generators: Vec<Poly<F>>,
}

fn linear_algebra_piece<F: Field>(
    s: &Setup<F>,
    products: &HashMap<Vec<Exponent>, Poly<F>>,
    lower: &[(u32, u32, Poly<F>)],
    d: u32,
    n: u32,
) -> Found<F> {
    let field = s.base.field();
    let piece = build_piece(s, products, d, n);
    let mut image_rank = Echelon::new(field.clone(), piece.target_dim);
    for r in &piece.images {
        image_rank.insert(r);
        if image_rank.is_full() {
            break;
        }
    }
    let dim = piece.source.len() - image_rank.rank();
    let mut span = Echelon::new(field.clone(), piece.source.len());
    'outer: for (gd, gn, g) in lower.iter().filter(|(gd, gn, _)| *gd <= d && *gn <= n) {
        if span.rank() == dim {
            break;
        }
        let xs = monomials_of_degree(s.nx, d - gd);
        let ts = monomials_of_degree(s.m(), n - gn);
        for a in &xs {
            for b in &ts {
                let mu = s.join(a, b);
                let mut row: SparseRow<F::Elem> =
                    g.terms().iter().map(|(mono, c)| (piece.index[&mono.mul(&mu)], c.clone())).collect();
                row.sort_by_key(|e| e.0);
                span.insert(&row);
                if span.rank() == dim {
                    break 'outer;
                }
            }
        }
    }
    let mut generators = Vec::new();
    if span.rank() < dim {
        for v in kernel(field, &piece.images, piece.target_dim) {
            if span.insert(&v) {
                generators.push(to_poly(&s.ring, &piece.source, &v));
                if span.rank() == dim {
                    break;
                }
            }
        }
    }
    Found { d, n, entry: BidegreeEntry { dim, fresh: generators.len() }, generators }
}

fn fiber_piece<F: Field>(s: &Setup<F>, d: u32, n: u32) -> BidegreeEntry {
    let exps: Vec<&[Exponent]> = s.f.iter().map(|p| p.terms()[0].0.exponents()).collect();
    let xs = monomials_of_degree(s.nx, d);
    let ts = monomials_of_degree(s.m(), n);
    let mut fibers: HashMap<Vec<Exponent>, Vec<(u32, u32)>> = HashMap::new();
    for (ib, b) in ts.iter().enumerate() {
        let mut img = vec![0 as Exponent; s.nx];
        for (i, &bi) in b.iter().enumerate() {
            for (k, e) in exps[i].iter().enumerate() {
                img[k] += bi * e;
            }
        }
        for (ia, a) in xs.iter().enumerate() {
            let key: Vec<Exponent> = img.iter().zip(a).map(|(u, v)| u + v).collect();
            fibers.entry(key).or_default().push((ia as u32, ib as u32));
        }
    }
    let nv = s.nx + s.m();
    let mut entry = BidegreeEntry::default();
    let mut parent: Vec<usize> = vec![0; nv];
    for members in fibers.values().filter(|m| m.len() > 1) {
        parent.iter_mut().enumerate().for_each(|(i, p)| *p = i);
        let mut roots = Vec::with_capacity(members.len());
        for &(ia, ib) in members {
            let vars = xs[ia as usize]
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, _)| k)
                .chain(ts[ib as usize].iter().enumerate().filter(|(_, e)| **e > 0).map(|(k, _)| s.nx + k));
            let mut first = None;
            for v in vars {
                let r = find(&mut parent, v);
                match first {
                    None => first = Some(r),
                    Some(f0) => {
                        let f0 = find(&mut parent, f0);
                        parent[r] = f0;
                    }
                }
            }
            roots.push(first.expect("positive-degree monomial"));
        }
        let mut comps: Vec<usize> = roots.into_iter().map(|r| find(&mut parent, r)).collect();
        comps.sort_unstable();
        comps.dedup();
        entry.dim += members.len() - 1;
        entry.fresh += comps.len() - 1;
    }
    entry
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Minimal-generator counts of `Q` in every bidegree up to `(d_max, n_max)`.
/// Monomial inputs use the fiber count; others run Gaussian elimination
/// level by level in `d + n`, each level's bidegrees through `config.exec`.
pub fn minimal_generator_bidegrees<F: Field>(f: &[Poly<F>], d_max: u32, n_max: u32, config: &Config) -> Result<BidegreeTable> {
    if n_max == 0 {
        return Err(Error::InvalidInput("T-degree bound must be at least 1".into()));
    }
    let s = Setup::new(f)?;
    s.check_size(d_max, n_max)?;
    let mut table = BidegreeTable { d_max, n_max, entries: BTreeMap::new() };
    let grid: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (0..=d_max).map(move |d| (d, n))).collect();

    if s.is_monomial() {
        let entries = config.exec.map(&grid, |&(d, n)| fiber_piece(&s, d, n));
        table.entries.extend(grid.into_iter().zip(entries));
        return Ok(table);
    }

    let products = s.products(n_max);
    let mut lower: Vec<(u32, u32, Poly<F>)> = Vec::new();
    for level in 1..=d_max + n_max {
        let cells: Vec<(u32, u32)> = grid.iter().copied().filter(|&(d, n)| d + n == level).collect();
        let found = config.exec.map(&cells, |&(d, n)| linear_algebra_piece(&s, &products, &lower, d, n));
        for r in found {
            table.entries.insert((r.d, r.n), r.entry);
            lower.extend(r.generators.into_iter().map(|g| (r.d, r.n, g)));
        }
    }
    Ok(table)
}

/// Membership of a form `p` in the ideal generated by forms `gens`, decided
/// by whether `p` lies in the span of the products `x^a g` of its degree.
pub fn homogeneous_member<F: Field>(p: &Poly<F>, gens: &[Poly<F>]) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if !p.is_homogeneous() || gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::InvalidInput("homogeneous membership needs forms".into()));
    }
    let ring = p.ring();
    let e = p.total_degree().unwrap();
    let n = ring.nvars();
    let cols: HashMap<Monomial, usize> = monomials_of_degree(n, e)
        .into_iter()
        .enumerate()
        .map(|(i, x)| (Monomial::from_exponents(&x), i))
        .collect();
    let row_of = |q: &Poly<F>| -> SparseRow<F::Elem> {
        let mut r: SparseRow<F::Elem> = q.terms().iter().map(|(m, c)| (cols[m], c.clone())).collect();
        r.sort_by_key(|x| x.0);
        r
    };
    let mut span = Echelon::new(ring.field().clone(), cols.len());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = g.transfer(ring)?;
        let dg = g.total_degree().unwrap();
        if dg > e {
            continue;
        }
        for a in monomials_of_degree(n, e - dg) {
            span.insert(&row_of(&g.mul_term(&Monomial::from_exponents(&a), &ring.field().one())));
        }
    }
    Ok(span.reduce(&row_of(p)).is_empty())
}
