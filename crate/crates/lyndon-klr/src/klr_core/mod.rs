//! The KLR algebra `H(Gamma; nu)`: elements in the normal form
//! `phi_w y^m e(i)`, left multiplication by generators, products, the
//! automorphism `tau`, the anti-automorphism `psi`, and the relation checks
//! used to validate explicit modules.
//!
//! Generators are indexed from zero: `y_0 .. y_{d-1}` and
//! `phi_0 .. phi_{d-2}`, where `phi_r` exchanges positions `r` and `r + 1`.

pub mod perm;
pub mod poly;
pub mod polyrep;
pub mod relations;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::rational::BigRational;
use num::{One, Zero};

use crate::cartan::{CartanDatum, Letter, RootVector};
use crate::error::AlgebraError;
use perm::{apply_move, bring_to_front, to_lexmin, Move, Perm};
use poly::{braid_defect, q_ij, YPoly};

pub use perm::minimal_coset_reps;
pub use relations::{relation_suite, RelationRecord, RelationReport};

/// A generator of `H(Gamma; nu)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E(Vec<Letter>),
    Y(usize),
    Phi(usize),
}

/// `phi_w y^m e(i)` with `phi_w` taken along the canonical reduced word of
/// `w`. `idem` is the idempotent on the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub perm: Perm,
    pub y: Vec<u32>,
    pub idem: Vec<Letter>,
}

impl Mono {
    pub fn idempotent(idem: Vec<Letter>) -> Self {
        let d = idem.len();
        Mono { perm: Perm::identity(d), y: vec![0; d], idem }
    }

    /// The idempotent on the left: `phi_w e(i) = e(w.i) phi_w`.
    pub fn left_idem(&self) -> Vec<Letter> {
        self.perm.act(&self.idem)
    }

    /// Degree from the grading on generators.
    pub fn degree(&self, datum: &CartanDatum) -> i64 {
        let mut deg = 0;
        for (r, &m) in self.y.iter().enumerate() {
            deg += m as i64 * datum.pairing(self.idem[r], self.idem[r]);
        }
        let mut idem = self.idem.clone();
        for &r in self.perm.lexmin_word().iter().rev() {
            deg -= datum.pairing(idem[r], idem[r + 1]);
            idem.swap(r, r + 1);
        }
        deg
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.perm.lexmin_word();
        if !word.is_empty() {
            write!(f, "phi{:?} ", word)?;
        }
        if self.y.iter().any(|&m| m > 0) {
            write!(f, "y{:?} ", self.y)?;
        }
        write!(f, "e{:?}", self.idem)
    }
}

/// A finite linear combination of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct KlrElement {
    terms: BTreeMap<Mono, BigRational>,
}

impl KlrElement {
    pub fn zero() -> Self {
        KlrElement::default()
    }

    pub fn mono(m: Mono) -> Self {
        KlrElement::term(m, BigRational::one())
    }

    pub fn term(m: Mono, c: BigRational) -> Self {
        let mut x = KlrElement::zero();
        x.add_term(m, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &KlrElement, c: &BigRational) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> KlrElement {
        let mut out = KlrElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Right multiplication by `y^m`, which is free in normal form.
    fn times_y(&self, m: &[u32]) -> KlrElement {
        let mut out = KlrElement::zero();
        for (t, c) in &self.terms {
            let mut t = t.clone();
            for (a, b) in t.y.iter_mut().zip(m) {
                *a += b;
            }
            out.add_term(t, c.clone());
        }
        out
    }

    /// The degrees of the terms, if they all agree.
    pub fn homogeneous_degree(&self, datum: &CartanDatum) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| m.degree(datum));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Debug for KlrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type MemoKey = (Gen, Perm, Vec<Letter>);

/// The algebra `H(Gamma) = sum_nu H(Gamma; nu)` for one Cartan datum, with
/// memoized products of generators and basis monomials.
pub struct KlrAlgebra {
    datum: Arc<CartanDatum>,
    memo: Mutex<HashMap<MemoKey, KlrElement>>,
    parabolic: Mutex<HashMap<(usize, Perm, Vec<Letter>), ParabolicSplit>>,
}

type ParabolicSplit = BTreeMap<Perm, KlrElement>;

impl KlrAlgebra {
    pub fn new(datum: Arc<CartanDatum>) -> Self {
        KlrAlgebra { datum, memo: Mutex::new(HashMap::new()), parabolic: Mutex::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    fn check_idem(&self, i: &[Letter]) -> Result<(), AlgebraError> {
        for &a in i {
            self.datum.check_letter(a)?;
        }
        Ok(())
    }

    pub fn e(&self, i: &[Letter]) -> Result<KlrElement, AlgebraError> {
        self.check_idem(i)?;
        Ok(KlrElement::mono(Mono::idempotent(i.to_vec())))
    }

    /// `1_nu = sum of e(i)` over all words of content `nu`.
    pub fn one(&self, nu: &RootVector) -> KlrElement {
        let mut out = KlrElement::zero();
        for w in words_of_content(nu) {
            out.add_term(Mono::idempotent(w), BigRational::one());
        }
        out
    }

    /// Degree of a generator at the idempotent `i` on its right.
    pub fn gen_degree(&self, g: &Gen, i: &[Letter]) -> Result<i64, AlgebraError> {
        let d = i.len();
        Ok(match g {
            Gen::E(_) => 0,
            Gen::Y(r) if *r < d => self.datum.pairing(i[*r], i[*r]),
            Gen::Phi(r) if r + 1 < d => -self.datum.pairing(i[*r], i[r + 1]),
            _ => return Err(AlgebraError::Dimension(format!("{g:?} out of range for height {d}"))),
        })
    }

    /// `g x` in normal form.
    pub fn mul_gen(&self, g: &Gen, x: &KlrElement) -> Result<KlrElement, AlgebraError> {
        let mut out = KlrElement::zero();
        for (m, c) in x.terms() {
            let d = m.idem.len();
            match g {
                Gen::E(j) => {
                    if j.len() != d {
                        return Err(AlgebraError::Dimension(format!("idempotent {j:?} on height {d}")));
                    }
                    if m.left_idem() == *j {
                        out.add_term(m.clone(), c.clone());
                    }
                }
                Gen::Y(r) if *r >= d => {
                    return Err(AlgebraError::Dimension(format!("y_{r} on height {d}")));
                }
                Gen::Phi(r) if r + 1 >= d => {
                    return Err(AlgebraError::Dimension(format!("phi_{r} on height {d}")));
                }
                _ => {
                    let base = self.gen_times_basis(g, &m.perm, &m.idem);
                    out.add_scaled(&base.times_y(&m.y), c);
                }
            }
        }
        Ok(out)
    }

    /// `x y` in normal form.
    pub fn mul(&self, x: &KlrElement, y: &KlrElement) -> Result<KlrElement, AlgebraError> {
        let mut out = KlrElement::zero();
        for (m, c) in x.terms() {
            let mut z = self.mul_gen(&Gen::E(m.idem.clone()), y)?;
            for (r, &k) in m.y.iter().enumerate() {
                for _ in 0..k {
                    z = self.mul_gen(&Gen::Y(r), &z)?;
                }
            }
            for &r in m.perm.lexmin_word().iter().rev() {
                z = self.mul_gen(&Gen::Phi(r), &z)?;
            }
            out.add_scaled(&z, c);
        }
        Ok(out)
    }

    /// Applies a product of generators, rightmost first.
    pub fn apply_word(&self, gens: &[Gen], x: &KlrElement) -> Result<KlrElement, AlgebraError> {
        let mut z = x.clone();
        for g in gens.iter().rev() {
            z = self.mul_gen(g, &z)?;
        }
        Ok(z)
    }

    /// Multiplies by a polynomial in the `y` variables on the left.
    pub fn mul_poly(&self, p: &YPoly, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero();
        for (e, c) in p.terms() {
            let mut z = x.clone();
            for (r, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    z = self.mul_gen(&Gen::Y(r), &z).expect("index in range");
                }
            }
            out.add_scaled(&z, c);
        }
        out
    }

    fn phi_word(&self, word: &[usize], x: KlrElement) -> KlrElement {
        let mut z = x;
        for &r in word.iter().rev() {
            z = self.mul_gen(&Gen::Phi(r), &z).expect("index in range");
        }
        z
    }

    /// `g phi_w e(i)` for `g` a `y` or `phi` generator.
    fn gen_times_basis(&self, g: &Gen, w: &Perm, i: &[Letter]) -> KlrElement {
        let key = (g.clone(), w.clone(), i.to_vec());
        if let Some(x) = self.memo.lock().unwrap().get(&key) {
            return x.clone();
        }
        let value = match g {
            Gen::Y(s) => self.y_times_basis(*s, w, i),
            Gen::Phi(r) => self.phi_times_basis(*r, w, i),
            Gen::E(_) => unreachable!("idempotents are handled directly"),
        };
        self.memo.lock().unwrap().insert(key, value.clone());
        value
    }

    fn basis(&self, w: Perm, i: &[Letter]) -> KlrElement {
        KlrElement::mono(Mono { perm: w, y: vec![0; i.len()], idem: i.to_vec() })
    }

    fn y_times_basis(&self, s: usize, w: &Perm, i: &[Letter]) -> KlrElement {
        let d = i.len();
        if w.is_identity() {
            let mut y = vec![0; d];
            y[s] = 1;
            return KlrElement::mono(Mono { perm: w.clone(), y, idem: i.to_vec() });
        }
        let k = w.lexmin_word()[0];
        let tail = w.left_mul(k);
        let rest = self.basis(tail.clone(), i);
        let j = tail.act(i);
        let same = j[k] == j[k + 1];
        let (s2, sign) = if s == k {
            (k + 1, -1)
        } else if s == k + 1 {
            (k, 1)
        } else {
            (s, 0)
        };
        let inner = self.mul_gen(&Gen::Y(s2), &rest).expect("index in range");
        let mut out = self.mul_gen(&Gen::Phi(k), &inner).expect("index in range");
        if same && sign != 0 {
            out.add_scaled(&rest, &BigRational::from_integer(sign.into()));
        }
        out
    }

    fn phi_times_basis(&self, r: usize, w: &Perm, i: &[Letter]) -> KlrElement {
        let d = i.len();
        let lex = w.lexmin_word();
        if w.has_left_descent(r) {
            // phi_w = phi_r phi_{u'} + C, so phi_r phi_w = Q phi_{u'} + phi_r C.
            let moves = bring_to_front(d, &lex, r);
            let (word, corr) = self.rewrite(&lex, &moves, i);
            debug_assert_eq!(word[0], r);
            let z = self.phi_word(&word[1..], self.basis(Perm::identity(d), i));
            let mut out = KlrElement::zero();
            for (m, c) in z.terms() {
                let j = m.left_idem();
                let q = q_ij(&self.datum, j[r], j[r + 1]).eval(d, r, r + 1);
                out.add_scaled(&self.mul_poly(&q, &KlrElement::mono(m.clone())), c);
            }
            let pc = self.mul_gen(&Gen::Phi(r), &corr).expect("index in range");
            out.add(&pc)
        } else {
            let mut word = vec![r];
            word.extend_from_slice(&lex);
            let moves = to_lexmin(d, &word);
            let (_, corr) = self.rewrite(&word, &moves, i);
            self.basis(w.left_mul(r), i).add(&corr)
        }
    }

    /// Applies moves to a reduced word acting on `e(i)`. Returns the final
    /// word and the correction `C` with `phi_start e(i) = phi_final e(i) + C`.
    fn rewrite(&self, start: &[usize], moves: &[Move], i: &[Letter]) -> (Vec<usize>, KlrElement) {
        let d = i.len();
        let mut word = start.to_vec();
        let mut corr = KlrElement::zero();
        for &m in moves {
            if let Move::Braid(p) = m {
                let (a, b) = (word[p], word[p + 1]);
                let low = a.min(b);
                let suffix = &word[p + 3..];
                let j = Perm::from_word(d, suffix).act(i);
                if j[low] == j[low + 2] {
                    let defect = braid_defect(&self.datum, j[low], j[low + 1], d, low, low + 1, low + 2);
                    let inner = self.phi_word(suffix, self.basis(Perm::identity(d), i));
                    let mid = self.mul_poly(&defect, &inner);
                    let term = self.phi_word(&word[..p], mid);
                    // (phi_a phi_{a+1} phi_a - phi_{a+1} phi_a phi_{a+1}) e(j) = defect e(j).
                    let sign = if a == low { 1 } else { -1 };
                    corr.add_scaled(&term, &BigRational::from_integer(sign.into()));
                }
            }
            apply_move(&mut word, m);
        }
        (word, corr)
    }

    /// The anti-automorphism fixing every generator.
    pub fn psi(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero();
        for (m, c) in x.terms() {
            let mut z = self.basis(Perm::identity(m.idem.len()), &m.left_idem());
            for &r in &m.perm.lexmin_word() {
                z = self.mul_gen(&Gen::Phi(r), &z).expect("index in range");
            }
            for (r, &k) in m.y.iter().enumerate() {
                for _ in 0..k {
                    z = self.mul_gen(&Gen::Y(r), &z).expect("index in range");
                }
            }
            out.add_scaled(&z, c);
        }
        out
    }

    /// The automorphism `e(i) -> e(rev i)`, `y_r -> y_{d-1-r}`,
    /// `phi_r -> -phi_{d-2-r}`.
    pub fn tau(&self, x: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero();
        for (m, c) in x.terms() {
            let d = m.idem.len();
            let idem: Vec<Letter> = m.idem.iter().rev().copied().collect();
            let y: Vec<u32> = m.y.iter().rev().copied().collect();
            let base = KlrElement::mono(Mono { perm: Perm::identity(d), y, idem });
            let word: Vec<usize> = m.perm.lexmin_word().iter().map(|&r| d - 2 - r).collect();
            let z = self.phi_word(&word, base);
            let sign = if word.len() % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_scaled(&z, &sign);
        }
        out
    }

    /// Writes each term `phi_w y^m e(i)` as `phi_x (phi_u y^m e(i))` with `x`
    /// a minimal coset representative for `S_split x S_{d-split}` and the
    /// bracket in the parabolic subalgebra. Returns `(x, parabolic element)`
    /// pairs.
    pub fn factor_parabolic(&self, z: &KlrElement, split: usize) -> BTreeMap<Perm, KlrElement> {
        let mut out: BTreeMap<Perm, KlrElement> = BTreeMap::new();
        for (m, c) in z.terms() {
            // y's sit on the right, so they pass straight into the inner factor.
            for (x, h) in self.split_basis(&m.perm, &m.idem, split) {
                out.entry(x).or_default().add_scaled(&h.times_y(&m.y), c);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `phi_w e(i)` as `sum phi_x h_x`, memoized.
    fn split_basis(&self, w: &Perm, i: &[Letter], split: usize) -> ParabolicSplit {
        let key = (split, w.clone(), i.to_vec());
        if let Some(x) = self.parabolic.lock().unwrap().get(&key) {
            return x.clone();
        }
        let d = i.len();
        let (x, u) = w.parabolic_split(split);
        let mut word = x.lexmin_word();
        word.extend(u.lexmin_word());
        let moves = to_lexmin(d, &word);
        let (_, corr) = self.rewrite(&word, &moves, i);
        // phi_x phi_u e(i) = phi_w e(i) + C, so phi_w = phi_x phi_u - C, and
        // every term of C is strictly shorter.
        let mut out = ParabolicSplit::new();
        out.entry(x).or_default().add_term(Mono { perm: u, y: vec![0; d], idem: i.to_vec() }, BigRational::one());
        for (xp, h) in self.factor_parabolic(&corr, split) {
            out.entry(xp).or_default().add_scaled(&h, &-BigRational::one());
        }
        out.retain(|_, v| !v.is_zero());
        self.parabolic.lock().unwrap().insert(key, out.clone());
        out
    }
}

/// All words with the given content, in lexicographic order.
pub fn words_of_content(nu: &RootVector) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut counts = nu.0.clone();
    let d = nu.height();
    fn rec(counts: &mut Vec<u32>, d: usize, acc: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if acc.len() == d {
            out.push(acc.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                acc.push(i as Letter);
                rec(counts, d, acc, out);
                acc.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&mut counts, d, &mut Vec::new(), &mut out);
    out
}
