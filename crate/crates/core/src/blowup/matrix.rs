use std::fmt;
use std::sync::Arc;

use super::rees::ReesPresentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Poly, Ring};

/// A rectangular matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<Ring<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(ring: &Arc<Ring<F>>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn from_rows(ring: &Arc<Ring<F>>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("matrix rows must be nonempty and of equal length".into()));
        }
        let entries = rows.into_iter().flatten().map(|p| p.transfer(ring)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    /// Parses rows such as `[["x", "y"], ["-y", "0"]]`.
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring<F>>, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.parse(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly<F>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Determinant by cofactor expansion along the first row; the matrices
    /// here are at most a handful of rows.
    pub fn determinant(&self) -> Result<Poly<F>> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor_det(0, &idx))
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Poly<F> {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let term = entry * &self.minor_det(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The Jacobian dual `B(M)` of a matrix `M` whose entries are linear forms in
/// `xvars`: the unique matrix of linear forms in `tvars` with
/// `T * M = x * B(M)`, where `T` and `x` are row vectors.
pub fn jacobian_dual<F: Field>(m: &PolyMatrix<F>, xvars: &[usize], tvars: &[usize]) -> Result<PolyMatrix<F>> {
    let ring = m.ring();
    if m.rows() != tvars.len() {
        return Err(Error::InvalidInput(format!("M has {} rows but there are {} T-variables", m.rows(), tvars.len())));
    }
    for p in &m.entries {
        if p.terms().iter().any(|(mono, _)| mono.partial_degree(xvars) != 1 || mono.degree() != 1) {
            return Err(Error::InvalidInput(format!("entry {p} is not a linear form in the x-variables")));
        }
    }
    let n = ring.nvars();
    let mut b = PolyMatrix::zeros(ring, xvars.len(), m.cols());
    for (j, &xj) in xvars.iter().enumerate() {
        let xmono = Monomial::var(n, xj, 1);
        for c in 0..m.cols() {
            let terms: Vec<(Monomial, F::Elem)> = tvars
                .iter()
                .enumerate()
                .map(|(i, &ti)| (Monomial::var(n, ti, 1), m.get(i, c).coeff(&xmono)))
                .filter(|(_, e)| !ring.field().is_zero(e))
                .collect();
            b.set(j, c, ring.from_terms(terms));
        }
    }

    let row = |vars: &[usize]| PolyMatrix::from_rows(ring, vec![vars.iter().map(|&v| ring.gen(v)).collect()]);
    if row(tvars)?.mul(m)? != row(xvars)?.mul(&b)? {
        return Err(Error::InvalidInput("T*M = x*B(M) fails".into()));
    }
    Ok(b)
}

/// The matrix of T-coefficients of the T-degree-one relations: column `c`
/// holds the coefficients of `T_1..T_m` in the `c`-th linear relation, so
/// `T * M` lists those relations.
pub fn linear_relation_matrix<F: Field>(pres: &ReesPresentation<F>) -> Result<PolyMatrix<F>> {
    let ring = pres.ring();
    let tvars = ring.t_vars();
    let linear: Vec<&Poly<F>> = pres.relations().iter().filter(|r| r.t_degree() == Some(1)).collect();
    if linear.is_empty() {
        return Err(Error::InvalidInput("no T-degree-one relations".into()));
    }
    let mut m = PolyMatrix::zeros(ring, tvars.len(), linear.len());
    for (c, rel) in linear.iter().enumerate() {
        let mut cols: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); tvars.len()];
        for (mono, coef) in rel.terms() {
            let i = tvars.iter().position(|&t| mono.exponent(t) == 1).expect("T-degree one term");
            let mut x = mono.clone();
            x.set_exponent(tvars[i], 0);
            cols[i].push((x, coef.clone()));
        }
        for (i, terms) in cols.into_iter().enumerate() {
            m.set(i, c, ring.from_terms(terms));
        }
    }
    Ok(m)
}
