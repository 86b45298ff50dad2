//! Explicit finite-dimensional graded modules over `H(Gamma; nu)`: the
//! cuspidal constructions, parabolic induction, standard modules, twisting
//! by `tau`, and formal characters.

pub mod build;
pub mod cuspidal;
pub mod io;
pub mod linalg;

use std::collections::BTreeMap;
use std::sync::Arc;

use num::rational::BigRational;
use num::{One, Zero};

use crate::cartan::{CartanDatum, Letter, RootVector};
use crate::error::AlgebraError;
use crate::klr_core::perm::{minimal_coset_reps, Perm};
use crate::klr_core::relations::{relation_suite, unit, vec_add_scaled, ModuleAction, RelationReport, SparseMatrix, SparseVec};
use crate::klr_core::{Gen, KlrAlgebra, KlrElement, Mono};
use crate::qlaurent::LaurentPoly;
use crate::shuffle::{ShuffleElement, Word};
use linalg::{annihilator, Echelon};

pub use build::ModuleBuilder;
pub use cuspidal::{CuspidalReport, Check};

/// A graded module with its provenance.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub action: ModuleAction,
    pub label: String,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule({}, dim {})", self.label, self.dim())
    }
}

impl GradedModule {
    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.action.datum
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn height(&self) -> usize {
        self.action.height()
    }

    pub fn nu(&self) -> &RootVector {
        &self.action.nu
    }

    pub fn weights(&self) -> &[Vec<Letter>] {
        &self.action.weights
    }

    pub fn degrees(&self) -> &[i64] {
        &self.action.degrees
    }

    pub fn relations(&self) -> Result<RelationReport, AlgebraError> {
        relation_suite(&self.action)
    }

    /// Fails with the first violated relation.
    pub fn gate(self) -> Result<GradedModule, AlgebraError> {
        self.relations()?.into_result()?;
        Ok(self)
    }

    /// The lowest weight under `cmp`.
    pub fn lowest_weight(&self, order: crate::shuffle::Order) -> Option<&[Letter]> {
        self.action.weights.iter().map(|w| w.as_slice()).min_by(|a, b| order.cmp(a, b))
    }

    /// `dim_q` of one weight space.
    pub fn weight_dim(&self, w: &[Letter]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, x) in self.action.weights.iter().enumerate() {
            if x.as_slice() == w {
                out = &out + &LaurentPoly::q_pow(self.action.degrees[k]);
            }
        }
        out
    }
}

/// `sum_i dim_q M_i [i]`.
pub fn character(m: &GradedModule) -> ShuffleElement {
    let mut x = ShuffleElement::zero(m.datum());
    for (w, deg) in m.action.weights.iter().zip(&m.action.degrees) {
        x.add_term(Word::new(w.clone()), LaurentPoly::q_pow(*deg));
    }
    x
}

/// Raises every degree by `s`.
pub fn shift(m: &GradedModule, s: i64) -> GradedModule {
    let mut out = m.clone();
    for d in out.action.degrees.iter_mut() {
        *d += s;
    }
    if s != 0 {
        out.label = format!("{}{{{s}}}", m.label);
    }
    out
}

/// The one-dimensional module on the word `l` with every `y` and `phi`
/// acting as zero.
pub fn trivial_module(datum: &Arc<CartanDatum>, l: &[Letter]) -> Result<GradedModule, AlgebraError> {
    let raw = trivial_unchecked(datum, l)?;
    raw.gate()
}

fn trivial_unchecked(datum: &Arc<CartanDatum>, l: &[Letter]) -> Result<GradedModule, AlgebraError> {
    if l.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let nu = datum.content(l)?;
    let d = l.len();
    Ok(GradedModule {
        action: ModuleAction {
            datum: datum.clone(),
            nu,
            weights: vec![l.to_vec()],
            degrees: vec![0],
            y: vec![SparseMatrix::zero(1); d],
            phi: vec![SparseMatrix::zero(1); d - 1],
        },
        label: format!("trivial[{}]", Word::new(l.to_vec()).compact()),
    })
}

/// The two-dimensional module on a word with equal letters at positions
/// `p` and `p + 1`: `phi_p v_+ = v_-`, `y_p v_- = -v_+`, `y_{p+1} v_- = v_+`,
/// with `v_+` in degree `d_i` and `v_-` in degree `-d_i`.
pub fn doubled_letter_module(datum: &Arc<CartanDatum>, l: &[Letter], p: usize) -> Result<GradedModule, AlgebraError> {
    if p + 1 >= l.len() || l[p] != l[p + 1] {
        return Err(AlgebraError::NoConstruction(format!("no doubled letter at {p} in {}", Word::new(l.to_vec()))));
    }
    let d = l.len();
    let di = datum.d(l[p]);
    let mut y = vec![SparseMatrix::zero(2); d];
    let mut phi = vec![SparseMatrix::zero(2); d - 1];
    let one = BigRational::one();
    phi[p].set(1, 0, one.clone());
    y[p].set(0, 1, -one.clone());
    y[p + 1].set(0, 1, one);
    GradedModule {
        action: ModuleAction {
            datum: datum.clone(),
            nu: datum.content(l)?,
            weights: vec![l.to_vec(), l.to_vec()],
            degrees: vec![di, -di],
            y,
            phi,
        },
        label: format!("doubled[{}]@{p}", Word::new(l.to_vec()).compact()),
    }
    .gate()
}

/// The cuspidal module for `[j..0,0..k]` in type B.
pub fn type_b_module(datum: &Arc<CartanDatum>, j: usize, k: usize) -> Result<GradedModule, AlgebraError> {
    if !(j < k && k < datum.rank()) {
        return Err(AlgebraError::NoConstruction(format!("need j < k < rank, got {j}, {k}")));
    }
    let mut l: Vec<Letter> = (0..=j as Letter).rev().collect();
    l.extend(0..=k as Letter);
    doubled_letter_module(datum, &l, j)
}

/// The two-dimensional module on `[j..1,0,2..k]` in type D: `phi` at the
/// position of the letters 1 and 0 exchanges the two basis vectors.
pub fn type_d_module(datum: &Arc<CartanDatum>, j: usize, k: usize) -> Result<GradedModule, AlgebraError> {
    if !(1 <= j && j < k && k < datum.rank()) {
        return Err(AlgebraError::NoConstruction(format!("need 1 <= j < k < rank, got {j}, {k}")));
    }
    let mut l: Vec<Letter> = (1..=j as Letter).rev().collect();
    l.push(0);
    l.extend(2..=k as Letter);
    let r = j - 1;
    let mut w = l.clone();
    w.swap(r, r + 1);
    let d = l.len();
    let mut phi = vec![SparseMatrix::zero(2); d - 1];
    phi[r].set(1, 0, BigRational::one());
    // The quadratic relation with Q = 1 forces phi back to v_0.
    phi[r].set(0, 1, BigRational::one());
    GradedModule {
        action: ModuleAction {
            datum: datum.clone(),
            nu: datum.content(&l)?,
            weights: vec![l.clone(), w],
            degrees: vec![0, 0],
            y: vec![SparseMatrix::zero(2); d],
            phi,
        },
        label: format!("typeD[{}]", Word::new(l).compact()),
    }
    .gate()
}

/// All words reachable from `l` by exchanging adjacent letters whose simple
/// roots are orthogonal, in discovery order.
pub fn admissible_orbit(datum: &CartanDatum, l: &[Letter]) -> Vec<Vec<Letter>> {
    let mut seen = BTreeMap::new();
    let mut order = vec![l.to_vec()];
    seen.insert(l.to_vec(), 0usize);
    let mut at = 0;
    while at < order.len() {
        let w = order[at].clone();
        for r in 0..w.len().saturating_sub(1) {
            if datum.pairing(w[r], w[r + 1]) == 0 {
                let mut v = w.clone();
                v.swap(r, r + 1);
                if !seen.contains_key(&v) {
                    seen.insert(v.clone(), order.len());
                    order.push(v);
                }
            }
        }
        at += 1;
    }
    order
}

/// The homogeneous module on the admissible-swap orbit of `l`: all degrees
/// zero, `y` acting as zero, and `phi_r` moving along admissible swaps.
pub fn homogeneous_module(datum: &Arc<CartanDatum>, l: &[Letter]) -> Result<GradedModule, AlgebraError> {
    if l.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let orbit = admissible_orbit(datum, l);
    let index: BTreeMap<&[Letter], usize> = orbit.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let n = orbit.len();
    let d = l.len();
    let mut phi = vec![SparseMatrix::zero(n); d - 1];
    for (k, w) in orbit.iter().enumerate() {
        for (r, m) in phi.iter_mut().enumerate() {
            if datum.pairing(w[r], w[r + 1]) == 0 {
                let mut v = w.clone();
                v.swap(r, r + 1);
                m.set(index[v.as_slice()], k, BigRational::one());
            }
        }
    }
    GradedModule {
        action: ModuleAction {
            datum: datum.clone(),
            nu: datum.content(l)?,
            weights: orbit,
            degrees: vec![0; n],
            y: vec![SparseMatrix::zero(n); d],
            phi,
        },
        label: format!("homogeneous[{}]", Word::new(l.to_vec()).compact()),
    }
    .gate()
}

/// `1_{alpha_i} (x) M` extended by letting `phi_0` act as zero.
pub fn extend_by_prefix(m: &GradedModule, i: Letter) -> Result<GradedModule, AlgebraError> {
    extend(m, i, true).gate()
}

/// `M (x) 1_{alpha_i}` extended by letting the last `phi` act as zero.
pub fn extend_by_suffix(m: &GradedModule, i: Letter) -> Result<GradedModule, AlgebraError> {
    extend(m, i, false).gate()
}

fn extend(m: &GradedModule, i: Letter, prefix: bool) -> GradedModule {
    let a = &m.action;
    let n = a.dim();
    let mut weights = a.weights.clone();
    for w in weights.iter_mut() {
        if prefix {
            w.insert(0, i);
        } else {
            w.push(i);
        }
    }
    let mut y = a.y.clone();
    let mut phi = a.phi.clone();
    if prefix {
        y.insert(0, SparseMatrix::zero(n));
        phi.insert(0, SparseMatrix::zero(n));
    } else {
        y.push(SparseMatrix::zero(n));
        phi.push(SparseMatrix::zero(n));
    }
    let mut nu = a.nu.clone();
    nu.0[i as usize] += 1;
    let label = if prefix { format!("{i}.({})", m.label) } else { format!("({}).{i}", m.label) };
    GradedModule {
        action: ModuleAction { datum: a.datum.clone(), nu, weights, degrees: a.degrees.clone(), y, phi },
        label,
    }
}

/// The twist of `M` by `tau`: `x . m = tau(x) m`.
pub fn tau_twist(m: &GradedModule) -> GradedModule {
    let a = &m.action;
    let d = a.height();
    let weights = a.weights.iter().map(|w| w.iter().rev().copied().collect()).collect();
    let y = (0..d).map(|r| a.y[d - 1 - r].clone()).collect();
    let minus = -BigRational::one();
    let phi = (0..d.saturating_sub(1)).map(|r| a.phi[d - 2 - r].scale(&minus)).collect();
    GradedModule {
        action: ModuleAction { datum: a.datum.clone(), nu: a.nu.clone(), weights, degrees: a.degrees.clone(), y, phi },
        label: format!("tau({})", m.label),
    }
}

/// `Ind (M (x) N)`: the module `H(nu + nu') (x)_{H(nu) (x) H(nu')} (M (x) N)`
/// with basis `phi_x (x) m (x) n` over minimal coset representatives `x`.
pub fn induce(alg: &KlrAlgebra, m: &GradedModule, n: &GradedModule) -> Result<GradedModule, AlgebraError> {
    if m.datum() != alg.datum() || m.datum() != n.datum() {
        return Err(AlgebraError::DatumMismatch);
    }
    let datum = alg.datum().clone();
    let (d1, d2) = (m.height(), n.height());
    let d = d1 + d2;
    let reps = minimal_coset_reps(d1, d2);
    let rep_index: BTreeMap<&Perm, usize> = reps.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let (n1, n2) = (m.dim(), n.dim());
    let index = |x: usize, a: usize, b: usize| (x * n1 + a) * n2 + b;
    let total = reps.len() * n1 * n2;

    let mut weights = Vec::with_capacity(total);
    let mut degrees = Vec::with_capacity(total);
    for x in &reps {
        for a in 0..n1 {
            for b in 0..n2 {
                let idem: Vec<Letter> = [m.weights()[a].clone(), n.weights()[b].clone()].concat();
                let mono = Mono { perm: x.clone(), y: vec![0; d], idem: idem.clone() };
                weights.push(x.act(&idem));
                degrees.push(m.degrees()[a] + n.degrees()[b] + mono.degree(&datum));
            }
        }
    }

    // Each generator applied to phi_x e(i), straightened into sum phi_x' h'.
    let mut cache: BTreeMap<(usize, bool, usize, Vec<Letter>), Vec<(usize, Mono, BigRational)>> = BTreeMap::new();
    let mut straighten = |is_phi: bool, r: usize, x: usize, idem: &[Letter]| -> Vec<(usize, Mono, BigRational)> {
        let key = (r, is_phi, x, idem.to_vec());
        cache
            .entry(key)
            .or_insert_with(|| {
                let g = if is_phi { Gen::Phi(r) } else { Gen::Y(r) };
                // phi_x e(i) is already a normal-form monomial.
                let with_x = KlrElement::mono(Mono { perm: reps[x].clone(), y: vec![0; d], idem: idem.to_vec() });
                let z = alg.mul_gen(&g, &with_x).expect("in range");
                let mut out = Vec::new();
                for (xp, h) in alg.factor_parabolic(&z, d1) {
                    for (mono, c) in h.terms() {
                        out.push((rep_index[&xp], mono.clone(), c.clone()));
                    }
                }
                out
            })
            .clone()
    };

    let act_m = |mono: &Mono, a: usize| -> SparseVec {
        let mut v = unit(a);
        for (r, &k) in mono.y[..d1].iter().enumerate() {
            for _ in 0..k {
                v = m.action.y[r].apply(&v);
            }
        }
        let (u1, _) = split_parabolic(&mono.perm, d1);
        for &r in u1.iter().rev() {
            v = m.action.phi[r].apply(&v);
        }
        v
    };
    let act_n = |mono: &Mono, b: usize| -> SparseVec {
        let mut v = unit(b);
        for (r, &k) in mono.y[d1..].iter().enumerate() {
            for _ in 0..k {
                v = n.action.y[r].apply(&v);
            }
        }
        let (_, u2) = split_parabolic(&mono.perm, d1);
        for &r in u2.iter().rev() {
            v = n.action.phi[r].apply(&v);
        }
        v
    };

    let mut y = vec![SparseMatrix::zero(total); d];
    let mut phi = vec![SparseMatrix::zero(total); d.saturating_sub(1)];
    for (xi, _) in reps.iter().enumerate() {
        for a in 0..n1 {
            for b in 0..n2 {
                let col = index(xi, a, b);
                let idem: Vec<Letter> = [m.weights()[a].clone(), n.weights()[b].clone()].concat();
                for is_phi in [false, true] {
                    let count = if is_phi { d.saturating_sub(1) } else { d };
                    for r in 0..count {
                        let mut image = SparseVec::new();
                        for (xp, mono, c) in straighten(is_phi, r, xi, &idem) {
                            let va = act_m(&mono, a);
                            if va.is_empty() {
                                continue;
                            }
                            let vb = act_n(&mono, b);
                            for (ka, ca) in &va {
                                for (kb, cb) in &vb {
                                    let mut t = SparseVec::new();
                                    t.insert(index(xp, *ka, *kb), ca * cb * &c);
                                    vec_add_scaled(&mut image, &t, &BigRational::one());
                                }
                            }
                        }
                        let target = if is_phi { &mut phi[r] } else { &mut y[r] };
                        for (row, val) in image {
                            target.set(row, col, val);
                        }
                    }
                }
            }
        }
    }
    Ok(GradedModule {
        action: ModuleAction { datum, nu: m.nu().add(n.nu()), weights, degrees, y, phi },
        label: format!("Ind({} , {})", m.label, n.label),
    })
}

/// Canonical reduced words of the two blocks of a parabolic permutation,
/// the second shifted down to start at zero.
fn split_parabolic(u: &Perm, split: usize) -> (Vec<usize>, Vec<usize>) {
    let word = u.lexmin_word();
    let first = word.iter().copied().filter(|&r| r < split).collect();
    let second = word.iter().copied().filter(|&r| r >= split).map(|r| r - split).collect();
    (first, second)
}

/// The submodule generated by `gens`.
pub fn submodule(m: &GradedModule, gens: &[SparseVec]) -> Echelon {
    let mut span = Echelon::new();
    let mut todo: Vec<SparseVec> = gens.to_vec();
    while let Some(v) = todo.pop() {
        if span.insert(&v) {
            for g in m.action.y.iter().chain(&m.action.phi) {
                let w = g.apply(&v);
                if !w.is_empty() {
                    todo.push(w);
                }
            }
        }
    }
    span
}

/// The span of functionals generated by `funcs` under the transposed action.
pub fn cosubmodule(m: &GradedModule, funcs: &[SparseVec]) -> Echelon {
    let transposes: Vec<SparseMatrix> = m.action.y.iter().chain(&m.action.phi).map(|g| transpose(g)).collect();
    let mut span = Echelon::new();
    let mut todo: Vec<SparseVec> = funcs.to_vec();
    while let Some(f) = todo.pop() {
        if span.insert(&f) {
            for t in &transposes {
                let w = t.apply(&f);
                if !w.is_empty() {
                    todo.push(w);
                }
            }
        }
    }
    span
}

fn transpose(g: &SparseMatrix) -> SparseMatrix {
    let n = g.dim();
    let mut out = SparseMatrix::zero(n);
    for (c, col) in g.columns().iter().enumerate() {
        for (&r, x) in col {
            out.set(c, r, x.clone());
        }
    }
    out
}

/// The module `M / N` on the non-pivot basis vectors of `N`.
pub fn quotient(m: &GradedModule, sub: &Echelon) -> GradedModule {
    let keep: Vec<usize> = (0..m.dim()).filter(|&k| !sub.is_pivot(k)).collect();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(j, &k)| (k, j)).collect();
    let map = |g: &SparseMatrix| {
        let cols = keep
            .iter()
            .map(|&k| {
                let v = sub.reduce(g.column(k));
                v.into_iter().map(|(r, x)| (pos[&r], x)).collect()
            })
            .collect();
        SparseMatrix::from_columns(cols)
    };
    let a = &m.action;
    GradedModule {
        action: ModuleAction {
            datum: a.datum.clone(),
            nu: a.nu.clone(),
            weights: keep.iter().map(|&k| a.weights[k].clone()).collect(),
            degrees: keep.iter().map(|&k| a.degrees[k]).collect(),
            y: a.y.iter().map(map).collect(),
            phi: a.phi.iter().map(map).collect(),
        },
        label: format!("quotient({})", m.label),
    }
}

/// The submodule spanned by `sub`, in the basis of its echelon rows.
pub fn restrict(m: &GradedModule, sub: &Echelon) -> GradedModule {
    let pivots: Vec<usize> = sub.pivots().collect();
    let pos: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(j, &k)| (k, j)).collect();
    let map = |g: &SparseMatrix| {
        let cols = pivots
            .iter()
            .map(|&p| {
                let v = g.apply(sub.row(p).expect("pivot row"));
                sub.coords(&v).into_iter().map(|(r, x)| (pos[&r], x)).collect()
            })
            .collect();
        SparseMatrix::from_columns(cols)
    };
    let a = &m.action;
    GradedModule {
        action: ModuleAction {
            datum: a.datum.clone(),
            nu: a.nu.clone(),
            weights: pivots.iter().map(|&k| a.weights[k].clone()).collect(),
            degrees: pivots.iter().map(|&k| a.degrees[k]).collect(),
            y: a.y.iter().map(map).collect(),
            phi: a.phi.iter().map(map).collect(),
        },
        label: format!("sub({})", m.label),
    }
}

/// The quotient of `M` by the largest submodule on which every functional
/// generated by `funcs` vanishes.
pub fn cocyclic_quotient(m: &GradedModule, funcs: &[SparseVec]) -> GradedModule {
    let dual = cosubmodule(m, funcs);
    let kernel = annihilator(&dual, m.dim());
    let mut sub = Echelon::new();
    for v in &kernel {
        sub.insert(v);
    }
    quotient(m, &sub)
}

/// Extracts the composition factor with lowest weight `l` from a module
/// whose composition factors all have lowest weight at most `l`: kill the
/// weights below `l`, take the submodule generated by a top-degree vector of
/// weight `l`, then the quotient cogenerated by its coordinate functional.
pub fn lowest_weight_factor(
    m: &GradedModule,
    l: &[Letter],
    order: crate::shuffle::Order,
) -> Result<GradedModule, AlgebraError> {
    let below: Vec<SparseVec> = (0..m.dim())
        .filter(|&k| order.lt(&m.weights()[k], l))
        .map(unit)
        .collect();
    let top = quotient(m, &submodule(m, &below));
    let Some(v) = (0..top.dim()).filter(|&k| top.weights()[k] == l).max_by_key(|&k| (top.degrees()[k], std::cmp::Reverse(k))) else {
        return Err(AlgebraError::NoConstruction(format!(
            "weight {} does not survive in {}",
            Word::new(l.to_vec()),
            m.label
        )));
    };
    let cyc = submodule(&top, &[unit(v)]);
    let c = restrict(&top, &cyc);
    // The generator is the echelon row with pivot v.
    let pos = cyc.pivots().position(|p| p == v).expect("generator is a pivot");
    let out = cocyclic_quotient(&c, &[unit(pos)]);
    // Simple modules are fixed up to a shift; take the one whose lowest
    // weight space has degrees symmetric about zero.
    let degs: Vec<i64> = (0..out.dim()).filter(|&k| out.weights()[k] == l).map(|k| out.degrees()[k]).collect();
    let (lo, hi) = (degs.iter().min().copied().unwrap_or(0), degs.iter().max().copied().unwrap_or(0));
    if (lo + hi) % 2 != 0 {
        return Err(AlgebraError::NoConstruction(format!("no symmetric shift for {}", Word::new(l.to_vec()))));
    }
    let mut out = shift(&out, -(lo + hi) / 2);
    out.label = format!("factor[{}]({})", Word::new(l.to_vec()).compact(), m.label);
    out.gate()
}

/// Whether every `y` acts nilpotently, checked through `y^dim = 0`.
pub fn y_nilpotent(m: &GradedModule) -> bool {
    let n = m.dim();
    m.action.y.iter().all(|g| {
        (0..n).all(|k| {
            let mut v = unit(k);
            for _ in 0..=n {
                if v.is_empty() {
                    return true;
                }
                v = g.apply(&v);
            }
            v.is_empty()
        })
    })
}

/// Flips one matrix entry (zero becomes one, anything else changes sign).
pub fn perturb(m: &GradedModule, phi: bool, r: usize, row: usize, col: usize) -> GradedModule {
    let mut out = m.clone();
    let g = if phi { &mut out.action.phi[r] } else { &mut out.action.y[r] };
    let x = g.get(row, col);
    let new = if x.is_zero() { BigRational::one() } else { -x };
    g.set(row, col, new);
    out.label = format!("mutated({})", m.label);
    out
}
