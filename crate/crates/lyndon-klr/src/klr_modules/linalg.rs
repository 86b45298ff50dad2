//! Exact subspaces of a module given by homogeneous vectors, kept in reduced
//! row echelon form.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};

use crate::klr_core::relations::{vec_add_scaled, SparseVec};

/// A subspace in reduced row echelon form, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(&p, r)| (p, r))
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    /// `v` minus its projection along the pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (k, c) in v {
            if let Some(row) = self.rows.get(k) {
                vec_add_scaled(&mut out, row, &-c.clone());
            }
        }
        out
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&p, c)) = r.iter().next() else { return false };
        let inv = BigRational::one() / c;
        let mut row = SparseVec::new();
        vec_add_scaled(&mut row, &r, &inv);
        for other in self.rows.values_mut() {
            if let Some(x) = other.get(&p).cloned() {
                vec_add_scaled(other, &row, &-x);
            }
        }
        self.rows.insert(p, row);
        true
    }

    /// Coordinates of a vector of the subspace in the row basis.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v {
            if self.rows.contains_key(k) && !c.is_zero() {
                out.insert(*k, c.clone());
            }
        }
        out
    }

    /// The row with pivot `p`.
    pub fn row(&self, p: usize) -> Option<&SparseVec> {
        self.rows.get(&p)
    }
}

/// Basis of the joint kernel of the functionals in `funcs` (each a row
/// vector over `0..n`).
pub fn annihilator(funcs: &Echelon, n: usize) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for j in 0..n {
        if funcs.is_pivot(j) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(j, BigRational::one());
        for (p, row) in funcs.rows() {
            if let Some(x) = row.get(&j) {
                v.insert(p, -x.clone());
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, BigRational::from_integer(x.into()))).collect()
    }

    #[test]
    fn echelon_basics() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 2), (1, 2)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.dim(), 2);
        assert!(e.reduce(&v(&[(0, 3), (1, 3)])).is_empty());
        let kernel = annihilator(&e, 3);
        assert_eq!(kernel.len(), 1);
        // The kernel of both functionals is spanned by (1, -1, 1).
        assert_eq!(kernel[0], v(&[(0, 1), (1, -1), (2, 1)]));
    }
}
