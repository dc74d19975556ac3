use std::fmt;
use std::sync::Arc;

use super::monomial::{Exponent, Monomial, TermOrder};
use super::polynomial::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Role of a variable in a presentation ring `k[t, x, T]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Base-ring variable.
    X,
    /// Presentation variable, one per ideal generator. The T-degree of a
    /// monomial is its degree in these.
    T,
    /// Auxiliary variable that gets eliminated (`t`, `u`, ...).
    Aux,
}

/// A polynomial ring over an exact field with named variables, each tagged
/// with a [`VarKind`], and a term order.
#[derive(Clone, PartialEq, Eq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    kinds: Vec<VarKind>,
    order: TermOrder,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<(String, VarKind)>, order: TermOrder) -> Result<Arc<Self>> {
        let (names, kinds): (Vec<_>, Vec<_>) = vars.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable {n}")));
            }
        }
        if names.len() > Exponent::MAX as usize {
            return Err(Error::InvalidRing("too many variables".into()));
        }
        if !order.validate(names.len()) {
            return Err(Error::InvalidRing(format!("order {order:?} does not partition the variables")));
        }
        Ok(Arc::new(Ring { field, vars: names, kinds, order }))
    }

    /// `k[x_1..x_n]` with all variables of kind `X` and degrevlex order.
    pub fn polynomial<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Arc<Self>> {
        Self::new(
            field,
            vars.iter().map(|v| (v.as_ref().to_string(), VarKind::X)).collect(),
            TermOrder::DegRevLex,
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn vars_of_kind(&self, kind: VarKind) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.kinds[i] == kind).collect()
    }

    pub fn x_vars(&self) -> Vec<usize> {
        self.vars_of_kind(VarKind::X)
    }

    pub fn t_vars(&self) -> Vec<usize> {
        self.vars_of_kind(VarKind::T)
    }

    /// Same variables, different term order.
    pub fn with_order(&self, order: TermOrder) -> Result<Arc<Self>> {
        Self::new(
            self.field.clone(),
            self.vars.iter().cloned().zip(self.kinds.iter().copied()).collect(),
            order,
        )
    }

    /// A variable name not yet used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.var_index(stem).is_none() {
            return stem.to_string();
        }
        (0..).map(|i| format!("{stem}{i}")).find(|n| self.var_index(n).is_none()).unwrap()
    }

    pub fn zero(self: &Arc<Self>) -> Poly<F> {
        Poly::from_sorted_terms(self.clone(), Vec::new())
    }

    pub fn one(self: &Arc<Self>) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Poly<F> {
        let terms = if self.field.is_zero(&c) { vec![] } else { vec![(Monomial::one(self.nvars()), c)] };
        Poly::from_sorted_terms(self.clone(), terms)
    }

    pub fn int(self: &Arc<Self>, c: i64) -> Poly<F> {
        self.constant(self.field.from_i64(c))
    }

    /// The `i`-th variable as a polynomial.
    pub fn gen(self: &Arc<Self>, i: usize) -> Poly<F> {
        Poly::from_sorted_terms(self.clone(), vec![(Monomial::var(self.nvars(), i, 1), self.field.one())])
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Poly<F>> {
        self.var_index(name)
            .map(|i| self.gen(i))
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name}")))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: F::Elem) -> Poly<F> {
        assert_eq!(m.nvars(), self.nvars());
        let terms = if self.field.is_zero(&c) { vec![] } else { vec![(m, c)] };
        Poly::from_sorted_terms(self.clone(), terms)
    }

    pub fn from_terms(self: &Arc<Self>, terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        Poly::from_terms(self.clone(), terms)
    }

    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Poly<F>> {
        super::parse::parse_poly(self, s)
    }

    /// Comma-separated list of polynomials; empty input gives an empty list.
    pub fn parse_list(self: &Arc<Self>, s: &str) -> Result<Vec<Poly<F>>> {
        super::parse::parse_poly_list(self, s)
    }
}

impl<F: Field> fmt::Debug for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.name(), self.vars.join(","))
    }
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
