//! The faithful polynomial representation of `H(Gamma; nu)` on
//! `sum_i F[y_0 .. y_{d-1}] e(i)`. It is an independent oracle for the
//! normal-form engine: two elements are equal iff they act equally.

use std::collections::BTreeMap;

use num::rational::BigRational;

use super::poly::{q_ij, YPoly};
use super::{Gen, KlrElement};
use crate::cartan::{CartanDatum, Letter};

/// A vector of the polynomial representation: one polynomial per word.
pub type PolyVector = BTreeMap<Vec<Letter>, YPoly>;

fn add_into(v: &mut PolyVector, word: Vec<Letter>, f: YPoly) {
    let slot = v.entry(word.clone()).or_default();
    *slot = slot.add(&f);
    if slot.is_zero() {
        v.remove(&word);
    }
}

/// Applies one generator to `f e(word)`.
pub fn act_gen(datum: &CartanDatum, g: &Gen, word: &[Letter], f: &YPoly) -> PolyVector {
    let d = word.len();
    let mut out = PolyVector::new();
    match g {
        Gen::E(j) => {
            if j.as_slice() == word {
                add_into(&mut out, word.to_vec(), f.clone());
            }
        }
        Gen::Y(r) => add_into(&mut out, word.to_vec(), YPoly::var(d, *r).mul(f)),
        Gen::Phi(r) => {
            let (a, b) = (word[*r], word[r + 1]);
            let sf = f.swap_vars(*r, r + 1);
            if a == b {
                let g = f.sub(&sf).div_difference(r + 1, *r).expect("divided difference is exact");
                add_into(&mut out, word.to_vec(), g);
            } else {
                let p = if datum.arrow(a, b) { YPoly::one(d) } else { q_ij(datum, b, a).eval(d, *r, r + 1) };
                let mut w = word.to_vec();
                w.swap(*r, r + 1);
                add_into(&mut out, w, p.mul(&sf));
            }
        }
    }
    out
}

/// Applies a product of generators, rightmost first.
pub fn act_word(datum: &CartanDatum, gens: &[Gen], v: &PolyVector) -> PolyVector {
    let mut cur = v.clone();
    for g in gens.iter().rev() {
        let mut next = PolyVector::new();
        for (word, f) in &cur {
            for (w, h) in act_gen(datum, g, word, f) {
                add_into(&mut next, w, h);
            }
        }
        cur = next;
    }
    cur
}

/// Applies a normal-form element.
pub fn act(datum: &CartanDatum, x: &KlrElement, v: &PolyVector) -> PolyVector {
    let mut out = PolyVector::new();
    for (m, c) in x.terms() {
        let mut gens: Vec<Gen> = m.perm.lexmin_word().into_iter().map(Gen::Phi).collect();
        for (r, &k) in m.y.iter().enumerate() {
            gens.extend(std::iter::repeat_n(Gen::Y(r), k as usize));
        }
        gens.push(Gen::E(m.idem.clone()));
        for (w, h) in act_word(datum, &gens, v) {
            add_into(&mut out, w, h.scale(c));
        }
    }
    out
}

/// `1 e(word)` as a vector.
pub fn unit_vector(word: &[Letter]) -> PolyVector {
    let mut v = PolyVector::new();
    v.insert(word.to_vec(), YPoly::one(word.len()));
    v
}

/// A probe vector with a distinct generic polynomial on each word.
pub fn probe_vector(words: &[Vec<Letter>]) -> PolyVector {
    let mut v = PolyVector::new();
    for (n, word) in words.iter().enumerate() {
        let d = word.len();
        let mut f = YPoly::one(d);
        for r in 0..d {
            let c = BigRational::from_integer(((n + 2 * r + 1) as i64).into());
            f = f.add(&YPoly::var(d, r).scale(&c).mul(&YPoly::var(d, r).add(&YPoly::var(d, (r + 1) % d))));
        }
        v.insert(word.clone(), f);
    }
    v
}
