use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Exponent, Monomial};
use super::ring::{Ring, VarKind};
use crate::error::{Error, Result};
use crate::field::Field;

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// Sparse polynomial in canonical form: nonzero terms sorted descending by
/// the ring's term order.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> Poly<F> {
    pub(crate) fn from_sorted_terms(ring: Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field().is_zero(c)));
        Poly { ring, terms }
    }

    /// Builds a polynomial from terms in any order, combining duplicates.
    pub fn from_terms(ring: Arc<Ring<F>>, mut terms: Vec<Term<F>>) -> Self {
        let order = ring.order().clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let field = ring.field();
        let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Poly { ring, terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn degree_in(&self, kind: VarKind) -> Option<u32> {
        let vars = self.ring.vars_of_kind(kind);
        self.terms.iter().map(|(m, _)| m.partial_degree(&vars)).max()
    }

    /// Largest total degree in the T-block over all terms.
    pub fn t_degree(&self) -> Option<u32> {
        self.degree_in(VarKind::T)
    }

    /// Largest total degree in the x-block over all terms.
    pub fn x_degree(&self) -> Option<u32> {
        self.degree_in(VarKind::X)
    }

    /// Common degree in the given variables if every term agrees.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut it = self.terms.iter().map(|(m, _)| m.partial_degree(vars));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Standard-graded homogeneity (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree_in(&(0..self.ring.nvars()).collect::<Vec<_>>()).is_some()
    }

    pub fn is_t_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree_in(&self.ring.t_vars()).is_some()
    }

    /// Degree in x when every term has the same x-degree.
    pub fn x_homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree_in(&self.ring.x_vars())
    }

    /// Splits by total T-degree, ascending. The pieces sum to `self`.
    pub fn t_homogeneous_components(&self) -> Vec<Poly<F>> {
        let tv = self.ring.t_vars();
        self.split_by(|m| m.partial_degree(&tv))
    }

    /// Groups terms by `key`, ascending in the key, preserving term order.
    pub fn split_by<K: Ord>(&self, key: impl Fn(&Monomial) -> K) -> Vec<Poly<F>> {
        let mut groups: BTreeMap<K, Vec<Term<F>>> = BTreeMap::new();
        for t in &self.terms {
            groups.entry(key(&t.0)).or_default().push(t.clone());
        }
        groups.into_values().map(|ts| Poly::from_sorted_terms(self.ring.clone(), ts)).collect()
    }

    /// Whether the variable occurs.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn involves_only(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i)))
    }

    pub fn neg(&self) -> Poly<F> {
        let f = self.field();
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect() }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Poly<F> {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Poly<F>> {
        self.check_ring(other)?;
        Ok(Poly { ring: self.ring.clone(), terms: merge_add(&self.ring, &self.terms, &other.terms, None) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Poly<F>> {
        self.check_ring(other)?;
        let minus_one = self.field().neg(&self.field().one());
        Ok(Poly {
            ring: self.ring.clone(),
            terms: merge_add(&self.ring, &self.terms, &other.terms, Some((&Monomial::one(self.ring.nvars()), &minus_one))),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Poly<F>> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let f = self.field();
        let mut products = Vec::with_capacity(small.len() * big.len());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                products.push((m.mul(n), f.mul(c, d)));
            }
        }
        Ok(Poly::from_terms(self.ring.clone(), products))
    }

    pub fn pow(&self, e: u32) -> Poly<F> {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self - c * m * other`, the elementary reduction step.
    pub(crate) fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Poly<F> {
        let negc = self.field().neg(c);
        Poly { ring: self.ring.clone(), terms: merge_add(&self.ring, &self.terms, &other.terms, Some((m, &negc))) }
    }

    /// Canonical associate: monic over `GF(p)`, primitive with positive
    /// leading coefficient over `QQ`.
    pub fn normalized(&self) -> Poly<F> {
        if self.is_zero() {
            return self.clone();
        }
        let u = self.field().normalizer(self.terms.iter().map(|(_, c)| c));
        if self.field().is_one(&u) {
            self.clone()
        } else {
            self.scale(&u)
        }
    }

    pub fn make_monic(&self) -> Poly<F> {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.field().inv(c)),
        }
    }

    /// Coefficient of the monomial `m`.
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        let order = self.ring.order();
        match self.terms.binary_search_by(|(n, _)| order.cmp(m, n)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field().zero(),
        }
    }

    /// Ring homomorphism into `target` sending variable `i` to `images[i]`.
    pub fn substitute(&self, target: &Arc<Ring<F>>, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("substitution needs one image per variable".into()));
        }
        if images.iter().any(|p| !Arc::ptr_eq(p.ring(), target) && **p.ring() != **target) {
            return Err(Error::RingMismatch);
        }
        // powers are cached per variable
        let mut powers: Vec<Vec<Poly<F>>> = vec![vec![target.one()]; images.len()];
        let mut acc: Vec<Term<F>> = Vec::new();
        for (m, c) in &self.terms {
            let mut prod = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
            }
            acc.extend(prod.terms);
        }
        Ok(Poly::from_terms(target.clone(), acc))
    }

    /// Moves the polynomial into `target` by sending variable `i` to variable
    /// `var_map[i]` of `target`.
    pub fn map_vars(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Poly<F> {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0 as Exponent; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[var_map[i]] += x;
                    }
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Poly::from_terms(target.clone(), terms)
    }

    /// Moves the polynomial into `target` matching variables by name.
    pub fn transfer(&self, target: &Arc<Ring<F>>) -> Result<Poly<F>> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            match target.var_index(self.ring.var_name(i)) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "variable {} not present in {}",
                        self.ring.var_name(i),
                        target
                    )))
                }
            }
        }
        // unused variables map nowhere; their exponents are always zero
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0 as Exponent; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[map[i]] += x;
                    }
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Ok(Poly::from_terms(target.clone(), terms))
    }
}

/// Merges `a + c*m*b` (or `a + b` when `scale` is `None`) for descending term
/// lists.
fn merge_add<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F>],
    b: &[Term<F>],
    scale: Option<(&Monomial, &F::Elem)>,
) -> Vec<Term<F>> {
    let field = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scaled = |t: &Term<F>| -> Term<F> {
        match scale {
            None => t.clone(),
            Some((m, c)) => (t.0.mul(m), field.mul(&t.1, c)),
        }
    };
    let (mut i, mut j) = (0, 0);
    let mut pending_b = b.first().map(scaled);
    loop {
        let Some(tb) = pending_b.take() else {
            out.extend_from_slice(&a[i..]);
            break;
        };
        let Some(ta) = a.get(i) else {
            out.push(tb);
            out.extend(b[j + 1..].iter().map(scaled));
            break;
        };
        match order.cmp(&ta.0, &tb.0) {
            Ordering::Greater => {
                out.push(ta.clone());
                i += 1;
                pending_b = Some(tb);
            }
            Ordering::Less => {
                out.push(tb);
                j += 1;
                pending_b = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let s = field.add(&ta.1, &tb.1);
                if !field.is_zero(&s) {
                    out.push((tb.0, s));
                }
                i += 1;
                j += 1;
                pending_b = b.get(j).map(scaled);
            }
        }
    }
    out
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl<F: Field> std::ops::$trait<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            /// Panics when the operands live in different rings; use the
            /// `try_` variant to get an error instead.
            fn $method(self, rhs: &Poly<F>) -> Poly<F> {
                self.$impl(rhs).expect("ring mismatch")
            }
        }
        impl<F: Field> std::ops::$trait<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$impl(&rhs).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = self.field().signed_repr(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::TermOrder;

    fn qq(vars: &[&str]) -> Arc<Ring<Rationals>> {
        Ring::polynomial(Rationals, vars).unwrap()
    }

    #[test]
    fn add_cancels_and_identity() {
        let r = qq(&["x", "y"]);
        let p = r.parse("x + y").unwrap() + r.parse("x - y").unwrap();
        assert_eq!(p, r.parse("2*x").unwrap());
        let q = r.parse("x^2*y - 3").unwrap();
        assert_eq!(&q + &r.zero(), q);
    }

    #[test]
    fn characteristic_cancellation() {
        let r = Ring::polynomial(PrimeField::new(5).unwrap(), &["x"]).unwrap();
        let s = r.parse("3*x").unwrap() + r.parse("2*x").unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = qq(&["x", "y"]);
        let p = r.parse("x - y").unwrap() * r.parse("x + y").unwrap();
        assert_eq!(p, r.parse("x^2 - y^2").unwrap());
        assert_eq!(&p * &r.one(), p);
    }

    fn rees_ring() -> Arc<Ring<Rationals>> {
        let vars = [("x", VarKind::X), ("y", VarKind::X), ("T1", VarKind::T), ("T2", VarKind::T), ("T3", VarKind::T)];
        Ring::new(Rationals, vars.iter().map(|(n, k)| (n.to_string(), *k)).collect(), TermOrder::DegRevLex).unwrap()
    }

    #[test]
    fn t_degree_is_additive() {
        let r = rees_ring();
        let p = r.parse("y*T1 - x*T2").unwrap() * r.parse("T3").unwrap();
        assert_eq!(p.t_degree(), Some(2));
    }

    #[test]
    fn t_components() {
        let r = rees_ring();
        let p = r.parse("T1*T3 - T2^2").unwrap();
        assert_eq!(p.t_homogeneous_components(), vec![p.clone()]);
        let q = r.parse("x*T1 + T2*T3").unwrap();
        assert_eq!(q.t_homogeneous_components(), vec![r.parse("x*T1").unwrap(), r.parse("T2*T3").unwrap()]);
        let s = r.parse("x^2 + x*T1").unwrap();
        assert_eq!(s.t_homogeneous_components(), vec![r.parse("x^2").unwrap(), r.parse("x*T1").unwrap()]);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = qq(&["x"]);
        let b = qq(&["y"]);
        assert!(matches!(a.gen(0).try_add(&b.gen(0)), Err(Error::RingMismatch)));
        assert!(matches!(a.gen(0).try_mul(&b.gen(0)), Err(Error::RingMismatch)));
    }

    #[test]
    fn printer_format() {
        let r = qq(&["x", "z"]);
        assert_eq!(r.parse("x^2*z - x*z^2").unwrap().to_string(), "x^2*z - x*z^2");
        assert_eq!(r.parse("-1 + 3*x").unwrap().to_string(), "3*x - 1");
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let r = qq(&["x", "y"]);
        let p = r.parse("x^2 - y").unwrap();
        let imgs = vec![r.parse("x + y").unwrap(), r.parse("2*y").unwrap()];
        let q = p.substitute(&r, &imgs).unwrap();
        assert_eq!(q, r.parse("x^2 + 2*x*y + y^2 - 2*y").unwrap());
    }
}
