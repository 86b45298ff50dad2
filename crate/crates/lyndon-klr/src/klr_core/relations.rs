//! Module actions given by matrices, and the check of every defining
//! relation of `H(Gamma; nu)` against them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::rational::BigRational;
use num::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::poly::{braid_defect, q_ij, YPoly};
use crate::cartan::{CartanDatum, Letter, RootVector};
use crate::error::AlgebraError;

/// A sparse vector indexed by basis position.
pub type SparseVec = BTreeMap<usize, BigRational>;

pub fn vec_add_scaled(v: &mut SparseVec, w: &SparseVec, c: &BigRational) {
    for (&k, x) in w {
        let slot = v.entry(k).or_insert_with(BigRational::zero);
        *slot += x * c;
        if slot.is_zero() {
            v.remove(&k);
        }
    }
}

pub fn unit(k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, BigRational::one());
    v
}

/// A square matrix stored by columns: column `k` is the image of basis
/// vector `k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(n: usize) -> Self {
        SparseMatrix { cols: vec![SparseVec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { cols: (0..n).map(unit).collect() }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        SparseMatrix { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, k: usize) -> &SparseVec {
        &self.cols[k]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.cols[col].get(&row).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, x: BigRational) {
        if x.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, x);
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, c) in v {
            vec_add_scaled(&mut out, &self.cols[k], c);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim());
        for (k, col) in self.cols.iter().enumerate() {
            vec_add_scaled(&mut out.cols[k], col, c);
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Conjugates by a basis permutation: basis vector `k` becomes `p[k]`.
    pub fn permute(&self, p: &[usize]) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim());
        for (k, col) in self.cols.iter().enumerate() {
            for (&r, x) in col {
                out.cols[p[k]].insert(p[r], x.clone());
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let n = self.dim();
        (0..n).map(|r| (0..n).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn from_dense(rows: &[Vec<BigRational>]) -> Result<SparseMatrix, AlgebraError> {
        let n = rows.len();
        let mut m = SparseMatrix::zero(n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Dimension(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A finite-dimensional graded `H(Gamma; nu)`-module given by a weight basis
/// and the matrices of `y_r` and `phi_r`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleAction {
    pub datum: Arc<CartanDatum>,
    pub nu: RootVector,
    pub weights: Vec<Vec<Letter>>,
    pub degrees: Vec<i64>,
    pub y: Vec<SparseMatrix>,
    pub phi: Vec<SparseMatrix>,
}

/// An operator applied to a module vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Y(usize),
    Phi(usize),
}

impl ModuleAction {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn height(&self) -> usize {
        self.nu.height()
    }

    /// Basis positions grouped by weight word.
    pub fn weight_spaces(&self) -> BTreeMap<&[Letter], Vec<usize>> {
        let mut out: BTreeMap<&[Letter], Vec<usize>> = BTreeMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            out.entry(w.as_slice()).or_default().push(k);
        }
        out
    }

    fn ops(&self, ops: &[Op], v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        for op in ops.iter().rev() {
            cur = match op {
                Op::Y(r) => self.y[*r].apply(&cur),
                Op::Phi(r) => self.phi[*r].apply(&cur),
            };
        }
        cur
    }

    /// Applies a polynomial in the `y` variables.
    pub fn poly(&self, p: &YPoly, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (e, c) in p.terms() {
            let mut cur = v.clone();
            for (r, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    cur = self.y[r].apply(&cur);
                }
            }
            vec_add_scaled(&mut out, &cur, c);
        }
        out
    }

    fn check_shape(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let d = self.height();
        if self.degrees.len() != n {
            return Err(AlgebraError::Dimension(format!("{} degrees for dimension {n}", self.degrees.len())));
        }
        if self.y.len() != d || self.phi.len() != d.saturating_sub(1) {
            return Err(AlgebraError::Dimension(format!(
                "{} y and {} phi matrices for height {d}",
                self.y.len(),
                self.phi.len()
            )));
        }
        for m in self.y.iter().chain(&self.phi) {
            if m.dim() != n {
                return Err(AlgebraError::Dimension(format!("matrix of size {} for dimension {n}", m.dim())));
            }
        }
        Ok(())
    }
}

/// The outcome of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub relation: &'static str,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub idem: String,
    pub pass: bool,
    /// The basis vector on which the two sides differ, and the difference.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub basis: usize,
    pub defect: Vec<(usize, String)>,
}

impl RelationRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// All relation instances checked on one module.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub records: Vec<RelationRecord>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn first_failure(&self) -> Option<&RelationRecord> {
        self.failures().next()
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.records.iter().map(RelationRecord::to_json).collect()
    }

    /// Converts a failing report into an error naming the first failure.
    pub fn into_result(self) -> Result<RelationReport, AlgebraError> {
        match self.first_failure() {
            None => Ok(self),
            Some(f) => Err(AlgebraError::RelationFailure(f.to_json())),
        }
    }
}

fn word_string(w: &[Letter]) -> String {
    w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

fn compare(lhs: SparseVec, rhs: SparseVec, basis: usize) -> Option<Witness> {
    let mut diff = lhs;
    vec_add_scaled(&mut diff, &rhs, &-BigRational::one());
    (!diff.is_empty()).then(|| Witness { basis, defect: diff.into_iter().map(|(k, x)| (k, x.to_string())).collect() })
}

/// One relation instance: a name, indices, and a check on one basis vector.
struct Instance {
    relation: &'static str,
    r: Option<usize>,
    s: Option<usize>,
}

/// Checks every defining relation and the grading on every weight space.
pub fn relation_suite(m: &ModuleAction) -> Result<RelationReport, AlgebraError> {
    m.check_shape()?;
    let datum = &m.datum;
    let d = m.height();
    let spaces = m.weight_spaces();
    let mut report = RelationReport::default();

    for (w, _) in &spaces {
        let ok = datum.content(w).map(|c| c == m.nu).unwrap_or(false);
        report.records.push(RelationRecord {
            relation: "weight-content",
            r: None,
            s: None,
            idem: word_string(w),
            pass: ok,
            witness: None,
        });
    }

    let mut instances = Vec::new();
    for r in 0..d {
        instances.push(Instance { relation: "y-weight", r: Some(r), s: None });
        for s in r + 1..d {
            instances.push(Instance { relation: "y-commute", r: Some(r), s: Some(s) });
        }
        if r + 1 < d {
            instances.push(Instance { relation: "phi-weight", r: Some(r), s: None });
            instances.push(Instance { relation: "y-phi-left", r: Some(r), s: None });
            instances.push(Instance { relation: "y-phi-right", r: Some(r), s: None });
            instances.push(Instance { relation: "quadratic", r: Some(r), s: None });
            for s in 0..d {
                if s != r && s != r + 1 {
                    instances.push(Instance { relation: "y-phi-commute", r: Some(s), s: Some(r) });
                }
            }
            for s in r + 2..d.saturating_sub(1) {
                instances.push(Instance { relation: "phi-commute", r: Some(r), s: Some(s) });
            }
        }
        if r + 2 < d {
            instances.push(Instance { relation: "braid", r: Some(r), s: None });
        }
        instances.push(Instance { relation: "grading-y", r: Some(r), s: None });
        if r + 1 < d {
            instances.push(Instance { relation: "grading-phi", r: Some(r), s: None });
        }
    }

    let jobs: Vec<(&Instance, &[Letter], &Vec<usize>)> =
        instances.iter().flat_map(|inst| spaces.iter().map(move |(w, b)| (inst, *w, b))).collect();
    let records: Vec<RelationRecord> = jobs
        .par_iter()
        .map(|(inst, w, basis)| {
            let witness = basis.iter().find_map(|&k| check_one(m, inst, w, k));
            RelationRecord {
                relation: inst.relation,
                r: inst.r,
                s: inst.s,
                idem: word_string(w),
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    report.records.extend(records);
    Ok(report)
}

fn in_weight(m: &ModuleAction, v: &SparseVec, w: &[Letter]) -> bool {
    v.keys().all(|&k| m.weights[k] == w)
}

fn weight_witness(m: &ModuleAction, v: SparseVec, w: &[Letter], k: usize) -> Option<Witness> {
    if in_weight(m, &v, w) {
        None
    } else {
        let bad = v.into_iter().filter(|(j, _)| m.weights[*j] != w).map(|(j, x)| (j, x.to_string())).collect();
        Some(Witness { basis: k, defect: bad })
    }
}

fn grading_witness(m: &ModuleAction, v: SparseVec, deg: i64, k: usize) -> Option<Witness> {
    let target = m.degrees[k] + deg;
    let bad: Vec<(usize, String)> =
        v.into_iter().filter(|(j, _)| m.degrees[*j] != target).map(|(j, x)| (j, x.to_string())).collect();
    (!bad.is_empty()).then_some(Witness { basis: k, defect: bad })
}

fn check_one(m: &ModuleAction, inst: &Instance, i: &[Letter], k: usize) -> Option<Witness> {
    let datum = &m.datum;
    let d = m.height();
    let v = unit(k);
    let delta = |a: usize, b: usize| i[a] == i[b];
    match inst.relation {
        "y-weight" => weight_witness(m, m.y[inst.r.unwrap()].apply(&v), i, k),
        "phi-weight" => {
            let r = inst.r.unwrap();
            let mut j = i.to_vec();
            j.swap(r, r + 1);
            weight_witness(m, m.phi[r].apply(&v), &j, k)
        }
        "y-commute" => {
            let (r, s) = (inst.r.unwrap(), inst.s.unwrap());
            compare(m.ops(&[Op::Y(r), Op::Y(s)], &v), m.ops(&[Op::Y(s), Op::Y(r)], &v), k)
        }
        "y-phi-commute" => {
            let (r, s) = (inst.r.unwrap(), inst.s.unwrap());
            compare(m.ops(&[Op::Y(r), Op::Phi(s)], &v), m.ops(&[Op::Phi(s), Op::Y(r)], &v), k)
        }
        "phi-commute" => {
            let (r, s) = (inst.r.unwrap(), inst.s.unwrap());
            compare(m.ops(&[Op::Phi(r), Op::Phi(s)], &v), m.ops(&[Op::Phi(s), Op::Phi(r)], &v), k)
        }
        "y-phi-left" => {
            // phi_r y_{r+1} e(i) = (y_r phi_r + delta) e(i)
            let r = inst.r.unwrap();
            let mut rhs = m.ops(&[Op::Y(r), Op::Phi(r)], &v);
            if delta(r, r + 1) {
                vec_add_scaled(&mut rhs, &v, &BigRational::one());
            }
            compare(m.ops(&[Op::Phi(r), Op::Y(r + 1)], &v), rhs, k)
        }
        "y-phi-right" => {
            // y_{r+1} phi_r e(i) = (phi_r y_r + delta) e(i)
            let r = inst.r.unwrap();
            let mut rhs = m.ops(&[Op::Phi(r), Op::Y(r)], &v);
            if delta(r, r + 1) {
                vec_add_scaled(&mut rhs, &v, &BigRational::one());
            }
            compare(m.ops(&[Op::Y(r + 1), Op::Phi(r)], &v), rhs, k)
        }
        "quadratic" => {
            let r = inst.r.unwrap();
            let q = q_ij(datum, i[r], i[r + 1]).eval(d, r, r + 1);
            compare(m.ops(&[Op::Phi(r), Op::Phi(r)], &v), m.poly(&q, &v), k)
        }
        "braid" => {
            let r = inst.r.unwrap();
            let lhs = m.ops(&[Op::Phi(r), Op::Phi(r + 1), Op::Phi(r)], &v);
            let mut rhs = m.ops(&[Op::Phi(r + 1), Op::Phi(r), Op::Phi(r + 1)], &v);
            if delta(r, r + 2) {
                let p = braid_defect(datum, i[r], i[r + 1], d, r, r + 1, r + 2);
                vec_add_scaled(&mut rhs, &m.poly(&p, &v), &BigRational::one());
            }
            compare(lhs, rhs, k)
        }
        "grading-y" => {
            let r = inst.r.unwrap();
            grading_witness(m, m.y[r].apply(&v), datum.pairing(i[r], i[r]), k)
        }
        "grading-phi" => {
            let r = inst.r.unwrap();
            grading_witness(m, m.phi[r].apply(&v), -datum.pairing(i[r], i[r + 1]), k)
        }
        _ => unreachable!("unknown relation"),
    }
}
