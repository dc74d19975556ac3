//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of Buchberger's criteria.

mod ideal;

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Instant;

pub use ideal::{
    contains_ideal, eliminate, ideal_equal, ideal_intersect, ideal_member, ideal_quotient, minimal_generators,
    Membership,
};

use crate::error::{Error, Interruption, Result};
use crate::exec::Limits;
use crate::field::Field;
use crate::poly::{Monomial, Poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    Complete,
    Incomplete(Interruption),
}

/// A reduced Gröbner basis with respect to the order of `ring`, sorted
/// ascending by leading monomial and normalized (monic over `GF(p)`,
/// primitive over `QQ`). When `status` is incomplete the generators still lie
/// in the ideal but need not form a basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Poly<F>>,
    source: Vec<Poly<F>>,
    status: Status,
}

impl<F: Field> GroebnerBasis<F> {
    /// Runs Buchberger's algorithm in `ring`, whose term order is used. The
    /// input polynomials may live in any ring with the same variable names.
    pub fn compute(ring: &Arc<Ring<F>>, gens: &[Poly<F>], limits: &Limits) -> Result<Self> {
        let source = gens.iter().map(|g| g.transfer(ring)).collect::<Result<Vec<_>>>()?;
        let (generators, status) = Engine::new(ring.clone(), limits).run(&source);
        Ok(GroebnerBasis { ring: ring.clone(), generators, source, status })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Poly<F>> {
        self.generators
    }

    pub fn source(&self) -> &[Poly<F>] {
        &self.source
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Errors out unless the computation finished.
    pub fn complete(self) -> Result<Self> {
        match self.status {
            Status::Complete => Ok(self),
            Status::Incomplete(why) => Err(Error::Incomplete(why)),
        }
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn reduce(&self, p: &Poly<F>) -> Result<Poly<F>> {
        Ok(normal_form(&p.transfer(&self.ring)?, &self.generators))
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        let r = self.reduce(p)?;
        match (r.is_zero(), self.status) {
            (true, _) => Ok(true),
            (false, Status::Complete) => Ok(false),
            (false, Status::Incomplete(why)) => Err(Error::Incomplete(why)),
        }
    }

    /// Post-hoc Buchberger certificate: every S-polynomial of a basis pair
    /// and every source generator reduces to zero, and the basis is reduced.
    pub fn certify(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !normal_form(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                    return false;
                }
            }
        }
        let lms: Vec<&Monomial> = g.iter().filter_map(|p| p.leading_monomial()).collect();
        let reduced = g.iter().enumerate().all(|(i, p)| {
            p.terms().iter().all(|(m, _)| lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m)))
        });
        reduced && self.source.iter().all(|s| normal_form(s, g).is_zero())
    }
}

/// Convenience wrapper: reduced Gröbner basis of `gens` in the order of `ring`.
pub fn buchberger<F: Field>(ring: &Arc<Ring<F>>, gens: &[Poly<F>], limits: &Limits) -> Result<GroebnerBasis<F>> {
    GroebnerBasis::compute(ring, gens, limits)
}

pub fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let (mf, cf) = &f.terms()[0];
    let (mg, cg) = &g.terms()[0];
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &field.inv(cf));
    let b = g.mul_term(&mg.quotient_of(&l), &field.inv(cg));
    &a - &b
}

/// Remainder of multivariate division of `p` by `basis` in the order of
/// `p`'s ring: no term of the result is divisible by a leading monomial of
/// the basis.
pub fn normal_form<F: Field>(p: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let reducers: Vec<Reducer<'_, F>> = basis.iter().filter(|g| !g.is_zero()).map(Reducer::new).collect();
    reduce_full(p.clone(), &reducers)
}

struct Reducer<'a, F: Field> {
    poly: &'a Poly<F>,
    lm: &'a Monomial,
    mask: u64,
    inv_lc: F::Elem,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(poly: &'a Poly<F>) -> Self {
        let (lm, lc) = &poly.terms()[0];
        Reducer { poly, lm, mask: lm.divmask(), inv_lc: poly.field().inv(lc) }
    }
}

fn find_reducer<'r, 'a, F: Field>(m: &Monomial, reducers: &'r [Reducer<'a, F>]) -> Option<&'r Reducer<'a, F>> {
    let mask = m.divmask();
    reducers.iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

fn reduce_full<F: Field>(mut p: Poly<F>, reducers: &[Reducer<'_, F>]) -> Poly<F> {
    let field = p.field().clone();
    // terms before `pos` are irreducible and untouched by later steps
    let mut pos = 0;
    while pos < p.len() {
        let (m, c) = &p.terms()[pos];
        match find_reducer(m, reducers) {
            Some(r) => {
                let q = r.lm.quotient_of(m);
                let coef = field.mul(c, &r.inv_lc);
                p = p.sub_mul_term(&coef, &q, r.poly);
            }
            None => pos += 1,
        }
    }
    p
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<F: Field> {
    ring: Arc<Ring<F>>,
    limits: Limits,
    polys: Vec<Poly<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Engine<F> {
    fn new(ring: Arc<Ring<F>>, limits: &Limits) -> Self {
        Engine { ring, limits: *limits, polys: vec![], sugar: vec![], active: vec![], pairs: vec![] }
    }

    fn run(mut self, gens: &[Poly<F>]) -> (Vec<Poly<F>>, Status) {
        let start = Instant::now();
        let mut status = Status::Complete;

        let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic()).collect();
        let order = self.ring.order().clone();
        input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        for g in input {
            let sugar = g.total_degree().unwrap();
            let h = {
                let reducers = self.reducers();
                reduce_full(g, &reducers)
            };
            if !h.is_zero() {
                self.install(h.make_monic(), sugar);
            }
        }

        while let Some(k) = self.select() {
            if start.elapsed() > self.limits.timeout {
                status = Status::Incomplete(Interruption::Timeout);
                break;
            }
            let pair = self.pairs.swap_remove(k);
            if pair.sugar > self.limits.max_degree {
                status = Status::Incomplete(Interruption::DegreeCap(self.limits.max_degree));
                continue;
            }
            let s = s_polynomial(&self.polys[pair.i], &self.polys[pair.j]);
            let h = {
                let reducers = self.reducers();
                reduce_full(s, &reducers)
            };
            if !h.is_zero() {
                self.install(h.make_monic(), pair.sugar);
            }
        }

        (self.interreduce(), status)
    }

    fn reducers(&self) -> Vec<Reducer<'_, F>> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| Reducer::new(p)).collect()
    }

    /// Lowest sugar first, then smallest lcm, then oldest.
    fn select(&self) -> Option<usize> {
        let order = self.ring.order();
        (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then_with(|| order.cmp(&p.lcm, &q.lcm)).then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
        })
    }

    fn install(&mut self, h: Poly<F>, sugar: u32) {
        let new = self.polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        let deg_h = lh.degree();

        let mut candidates: Vec<Pair> = (0..new)
            .filter(|&i| self.active[i])
            .map(|i| {
                let li = self.polys[i].leading_monomial().unwrap();
                let lcm = li.lcm(&lh);
                let d = lcm.degree();
                let s = (self.sugar[i] + d - li.degree()).max(sugar + d - deg_h);
                Pair { i, j: new, lcm, sugar: s }
            })
            .collect();

        // chain criterion among the new pairs; coprime pairs survive this step
        // so that they can shadow others, then get dropped
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.polys[p.i].leading_monomial().unwrap().is_coprime(&lh);
            let shadowed = candidates.iter().chain(kept.iter().map(|(q, _)| q)).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !shadowed {
                kept.push((p, coprime));
            }
        }

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && polys[p.i].leading_monomial().unwrap().lcm(&lh) != p.lcm
                && polys[p.j].leading_monomial().unwrap().lcm(&lh) != p.lcm)
        });
        self.pairs.extend(kept.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));

        for i in 0..new {
            if self.active[i] && lh.divides(self.polys[i].leading_monomial().unwrap()) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn interreduce(self) -> Vec<Poly<F>> {
        let order = self.ring.order().clone();
        let mut basis: Vec<Poly<F>> =
            self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        // drop elements whose leading monomial is divisible by another's
        let lms: Vec<Monomial> = basis.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        let keep: Vec<bool> = (0..basis.len())
            .map(|i| !(0..basis.len()).any(|j| j != i && lms[j].divides(&lms[i]) && (lms[j] != lms[i] || j < i)))
            .collect();
        let basis: Vec<Poly<F>> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        let mut out = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let (head, tail) = basis[i].terms().split_first().unwrap();
            let tail = Poly::from_terms(self.ring.clone(), tail.to_vec());
            let others: Vec<Reducer<'_, F>> =
                basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| Reducer::new(p)).collect();
            let rt = reduce_full(tail, &others);
            let lead = self.ring.monomial(head.0.clone(), head.1.clone());
            out.push((&lead + &rt).normalized());
        }
        out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        out
    }
}

/// Ascending order on polynomials by leading monomial (zero first).
pub fn cmp_by_leading<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => a.ring().order().cmp(x, y),
    }
}
