use std::sync::Arc;

use super::{normal_form, GroebnerBasis};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::Field;
use crate::poly::{Poly, Ring, TermOrder, VarKind};

/// Outcome of a membership test. The witness is the Gröbner basis the
/// normal form was taken against.
#[derive(Clone, Debug)]
pub struct Membership<F: Field> {
    pub member: bool,
    pub witness: GroebnerBasis<F>,
}

pub fn ideal_member<F: Field>(
    ring: &Arc<Ring<F>>,
    p: &Poly<F>,
    gens: &[Poly<F>],
    limits: &Limits,
) -> Result<Membership<F>> {
    let gb = GroebnerBasis::compute(ring, gens, limits)?;
    let member = gb.contains(p)?;
    Ok(Membership { member, witness: gb })
}

/// Is every element of `small` in the ideal generated by `big`?
pub fn contains_ideal<F: Field>(
    ring: &Arc<Ring<F>>,
    big: &[Poly<F>],
    small: &[Poly<F>],
    limits: &Limits,
) -> Result<bool> {
    let gb = GroebnerBasis::compute(ring, big, limits)?;
    for p in small {
        if !gb.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ideal_equal<F: Field>(ring: &Arc<Ring<F>>, a: &[Poly<F>], b: &[Poly<F>], limits: &Limits) -> Result<bool> {
    let ga = GroebnerBasis::compute(ring, a, limits)?.complete()?;
    let gb = GroebnerBasis::compute(ring, b, limits)?.complete()?;
    Ok(ga.generators() == gb.generators())
}

/// Ring with `extra` auxiliary variables prepended, ordered to eliminate them.
fn extended_ring<F: Field>(ring: &Arc<Ring<F>>, stems: &[&str]) -> Result<(Arc<Ring<F>>, Vec<usize>)> {
    let mut vars = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for stem in stems {
        let mut n = ring.fresh_name(stem);
        while names.contains(&n) {
            n.push('_');
        }
        names.push(n.clone());
        vars.push((n, VarKind::Aux));
    }
    let k = stems.len();
    for i in 0..ring.nvars() {
        vars.push((ring.var_name(i).to_string(), ring.kind(i)));
    }
    let order = TermOrder::eliminate(&(0..k).collect::<Vec<_>>(), k + ring.nvars());
    let big = Ring::new(ring.field().clone(), vars, order)?;
    Ok((big, (k..k + ring.nvars()).collect()))
}

/// Generators of the contraction of `(gens)` to the subring without the
/// `drop` variables, returned in `ring` (reduced Gröbner basis of the
/// contraction w.r.t. the induced order).
pub fn eliminate<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Poly<F>],
    drop: &[usize],
    limits: &Limits,
) -> Result<Vec<Poly<F>>> {
    let order = TermOrder::eliminate(drop, ring.nvars());
    let er = ring.with_order(order)?;
    let gb = GroebnerBasis::compute(&er, gens, limits)?.complete()?;
    gb.generators()
        .iter()
        .filter(|g| drop.iter().all(|&v| !g.involves(v)))
        .map(|g| g.transfer(ring))
        .collect()
}

/// `I ∩ J` as the `u`-free part of `u*I + (1 - u)*J`.
pub fn ideal_intersect<F: Field>(
    ring: &Arc<Ring<F>>,
    i: &[Poly<F>],
    j: &[Poly<F>],
    limits: &Limits,
) -> Result<Vec<Poly<F>>> {
    let (big, map) = extended_ring(ring, &["u"])?;
    let u = big.gen(0);
    let one_minus_u = &big.one() - &u;
    let mut gens = Vec::with_capacity(i.len() + j.len());
    for p in i {
        gens.push(&u * &p.map_vars(&big, &map));
    }
    for p in j {
        gens.push(&one_minus_u * &p.map_vars(&big, &map));
    }
    let gb = GroebnerBasis::compute(&big, &gens, limits)?.complete()?;
    gb.generators().iter().filter(|g| !g.involves(0)).map(|g| g.transfer(ring)).collect()
}

/// Colon ideal `(I : g) = (I ∩ (g)) / g`.
pub fn ideal_quotient<F: Field>(
    ring: &Arc<Ring<F>>,
    i: &[Poly<F>],
    g: &Poly<F>,
    limits: &Limits,
) -> Result<Vec<Poly<F>>> {
    if g.is_zero() {
        return Ok(vec![ring.one()]);
    }
    let meet = ideal_intersect(ring, i, std::slice::from_ref(g), limits)?;
    meet.iter()
        .map(|h| {
            divide_exact(h, g)
                .ok_or_else(|| Error::InvalidInput("intersection element not divisible by the divisor".into()))
        })
        .collect()
}

/// `p / g` when `g` divides `p` exactly.
pub(crate) fn divide_exact<F: Field>(p: &Poly<F>, g: &Poly<F>) -> Option<Poly<F>> {
    let field = p.field().clone();
    let (lg, cg) = g.terms().first()?;
    let inv = field.inv(cg);
    let mut rem = p.clone();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.terms().first() {
        if !lg.divides(m) {
            return None;
        }
        let q = lg.quotient_of(m);
        let coef = field.mul(c, &inv);
        rem = rem.sub_mul_term(&coef, &q, g);
        quot.push((q, coef));
    }
    Some(Poly::from_terms(p.ring().clone(), quot))
}

/// A minimal generating subset of a homogeneous ideal, by graded Nakayama:
/// generators are processed by ascending `weights`-degree and kept when
/// their normal form modulo the lower-degree kept ones is linearly
/// independent of the other kept ones in the same degree. Every weight must
/// be positive and every generator homogeneous for `weights`. Generators are
/// taken minimally modulo the homogeneous ideal `modulo`, which is always
/// part of the lower ideal.
pub fn minimal_generators<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Poly<F>],
    modulo: &[Poly<F>],
    weights: &[u32],
    limits: &Limits,
) -> Result<Vec<Poly<F>>> {
    if weights.len() != ring.nvars() || weights.contains(&0) {
        return Err(Error::InvalidInput("minimal generators need positive weights".into()));
    }
    let mut graded: Vec<(u32, Poly<F>)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut degs = g.terms().iter().map(|(m, _)| m.weighted_degree(weights));
        let d = degs.next().unwrap();
        if degs.any(|e| e != d) {
            return Err(Error::InvalidInput(format!("{g} is not homogeneous")));
        }
        graded.push((d, g.transfer(ring)?));
    }
    graded.sort_by_key(|(d, _)| *d);

    let mut kept: Vec<Poly<F>> = Vec::new();
    let mut idx = 0;
    while idx < graded.len() {
        let d = graded[idx].0;
        let end = idx + graded[idx..].iter().take_while(|(e, _)| *e == d).count();
        let lower: Vec<Poly<F>> = modulo.iter().chain(&kept).cloned().collect();
        let lower = GroebnerBasis::compute(ring, &lower, limits)?.complete()?;
        let mut echelon: Vec<Poly<F>> = Vec::new();
        for (_, g) in &graded[idx..end] {
            let v = linear_reduce(normal_form(g, lower.generators()), &echelon);
            if !v.is_zero() {
                kept.push(g.clone());
                echelon.push(v.make_monic());
            }
        }
        idx = end;
    }
    Ok(kept)
}

/// Reduces `v` against monic rows with pairwise distinct leading monomials,
/// using only leading-monomial matches (plain Gaussian elimination).
fn linear_reduce<F: Field>(mut v: Poly<F>, rows: &[Poly<F>]) -> Poly<F> {
    'outer: while let Some((m, c)) = v.terms().first().cloned() {
        for r in rows {
            if r.leading_monomial() == Some(&m) {
                v = v.sub_mul_term(&c, &crate::poly::Monomial::one(m.nvars()), r);
                continue 'outer;
            }
        }
        break;
    }
    v
}
