//! Exact Gaussian elimination over a [`Field`] on sparse rows.
//!
//! Pivoting is deterministic: a row's pivot is its first nonzero column and
//! rows are consumed in the order given.

use crate::field::Field;

/// Sparse vector as `(column, value)` pairs, strictly increasing columns, no
/// stored zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Incremental row echelon form. Every stored row is monic at its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseRow<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, pivot_of: vec![None; ncols], rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    /// Pivot columns, in insertion order of the rows.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Remainder of `row` after eliminating every pivot column it touches.
    pub fn reduce(&self, row: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
        let Some(start) = row.first().map(|e| e.0) else {
            return Vec::new();
        };
        let f = &self.field;
        let mut dense: Vec<F::Elem> = vec![f.zero(); self.ncols];
        for (c, v) in row {
            dense[*c] = v.clone();
        }
        let mut out = Vec::new();
        for c in start..self.ncols {
            if f.is_zero(&dense[c]) {
                continue;
            }
            match self.pivot_of[c] {
                Some(r) => {
                    let coef = dense[c].clone();
                    for (k, v) in &self.rows[r] {
                        dense[*k] = f.sub(&dense[*k], &f.mul(&coef, v));
                    }
                }
                None => out.push((c, dense[c].clone())),
            }
        }
        out
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, F::Elem)]) -> bool {
        let rem = self.reduce(row);
        self.push_reduced(rem)
    }

    fn push_reduced(&mut self, mut rem: SparseRow<F::Elem>) -> bool {
        let Some((lead, lc)) = rem.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lc);
        for (_, v) in rem.iter_mut() {
            *v = self.field.mul(v, &inv);
        }
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push(rem);
        true
    }

    /// Reduced row echelon form: rows sorted by pivot, pivot columns cleared
    /// in every other row.
    pub fn into_rref(self) -> Vec<SparseRow<F::Elem>> {
        let f = self.field.clone();
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if let Ok(pos) = row.binary_search_by_key(&pivots[i], |e| e.0) {
                    let coef = row[pos].1.clone();
                    *row = axpy(&f, row, &f.neg(&coef), pivot_row);
                }
            }
        }
        rows
    }
}

/// `a + s * b` for sparse rows.
fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], s: &F::Elem, b: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(s, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank<F: Field>(field: &F, rows: &[SparseRow<F::Elem>], ncols: usize) -> usize {
    let mut ech = Echelon::new(field.clone(), ncols);
    for r in rows {
        ech.insert(r);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// Basis of `{c : sum_j c_j images[j] = 0}`, one vector per non-pivot column
/// of the reduced matrix whose columns are `images`. Vectors are indexed by
/// position in `images`, with a 1 at their own free column.
pub fn kernel<F: Field>(field: &F, images: &[SparseRow<F::Elem>], target_dim: usize) -> Vec<SparseRow<F::Elem>> {
    let n = images.len();
    let mut by_target: Vec<SparseRow<F::Elem>> = vec![Vec::new(); target_dim];
    for (j, img) in images.iter().enumerate() {
        for (t, v) in img {
            by_target[*t].push((j, v.clone()));
        }
    }
    let mut ech = Echelon::new(field.clone(), n);
    for r in &by_target {
        ech.insert(r);
    }
    let rref = ech.into_rref();
    let mut is_pivot = vec![false; n];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    let mut basis: Vec<SparseRow<F::Elem>> = (0..n).filter(|&j| !is_pivot[j]).map(|j| vec![(j, field.one())]).collect();
    let slot: Vec<Option<usize>> = {
        let mut s = vec![None; n];
        for (k, j) in (0..n).filter(|&j| !is_pivot[j]).enumerate() {
            s[j] = Some(k);
        }
        s
    };
    for r in &rref {
        let p = r[0].0;
        for (j, v) in &r[1..] {
            if let Some(k) = slot[*j] {
                basis[k].push((p, field.neg(v)));
            }
        }
    }
    for v in basis.iter_mut() {
        v.sort_by_key(|e| e.0);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn dense_to_rows(field: &PrimeField, m: &[Vec<i64>]) -> Vec<SparseRow<u64>> {
        m.iter()
            .map(|r| {
                r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, field.from_i64(*v))).collect()
            })
            .collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = PrimeField::default();
        let m = dense_to_rows(&f, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&f, &m, 3), 2);
        assert_eq!(rank(&f, &[], 3), 0);
    }

    #[test]
    fn kernel_of_scroll_piece() {
        // T1 T3 - T2^2: images of T1^2, T1T2, T1T3, T2^2, T2T3, T3^2 in degree 4.
        let f = Rationals;
        let one = f.one();
        let images: Vec<SparseRow<_>> =
            [0usize, 1, 2, 2, 3, 4].iter().map(|&t| vec![(t, one.clone())]).collect();
        let ker = kernel(&f, &images, 5);
        assert_eq!(ker, vec![vec![(2, f.neg(&one)), (3, one.clone())]]);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let f = PrimeField::default();
        let mut ech = Echelon::new(f.clone(), 3);
        for r in dense_to_rows(&f, &[vec![0, 1, 1], vec![1, 1, 0]]) {
            ech.insert(&r);
        }
        let rref = ech.into_rref();
        assert_eq!(rref, vec![vec![(0, 1), (2, f.from_i64(-1))], vec![(1, 1), (2, 1)]]);
    }

    proptest! {
        #[test]
        fn kernel_vectors_vanish(m in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..7)) {
            let f = PrimeField::new(101).unwrap();
            let images = dense_to_rows(&f, &m);
            let ker = kernel(&f, &images, 4);
            prop_assert_eq!(ker.len() + rank(&f, &images, 4), images.len());
            for v in &ker {
                let mut acc = vec![0u64; 4];
                for (j, c) in v {
                    for (t, x) in &images[*j] {
                        acc[*t] = f.add(&acc[*t], &f.mul(c, x));
                    }
                }
                prop_assert!(acc.iter().all(|x| *x == 0));
            }
        }
    }
}
