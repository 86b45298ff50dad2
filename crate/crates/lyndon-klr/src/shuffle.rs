//! Words, the quantum shuffle product and the involutions `tau`, `bar` and
//! `sigma` on the free algebra over the letters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::rational::BigRational;
use num::One;
use rayon::prelude::*;

use crate::cartan::{CartanDatum, Letter, RootVector};
use crate::error::AlgebraError;
use crate::qlaurent::LaurentPoly;

/// Default cap on the height of a shuffle product.
pub const DEFAULT_MAX_HEIGHT: usize = 14;

/// A word in the alphabet. Ordered right to left: the last letters are
/// compared first, and a proper right factor is larger than the word it
/// ends.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: Letter) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Compact rendering: digits when every letter is below 10, otherwise
    /// comma separated.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&i| i < 10) {
            self.0.iter().map(|i| char::from(b'0' + i)).collect()
        } else {
            self.0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromStr for Word {
    type Err = AlgebraError;

    /// Accepts `"2010123"`, `"2,0,10"`, `"10,"`, `"[2,0,1]"` and `"[]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(t).trim();
        if t.is_empty() {
            return Ok(Word::empty());
        }
        let bad = || AlgebraError::Parse(format!("bad word literal {s:?}"));
        if t.contains(',') {
            // A trailing comma lets a single letter above 9 be written "10,".
            t.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse::<Letter>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as Letter).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        }
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.compact())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        Order::Right.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The two word orders in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    /// Read right to left; smaller letters are smaller and a proper right
    /// factor beats the longer word.
    Right,
    /// Read left to right with the letter order reversed; a proper left
    /// factor is smaller than the longer word.
    Opposite,
}

impl Order {
    pub fn cmp(self, a: &[Letter], b: &[Letter]) -> Ordering {
        match self {
            Order::Right => {
                for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                b.len().cmp(&a.len())
            }
            Order::Opposite => {
                for (x, y) in a.iter().zip(b.iter()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }

    pub fn lt(self, a: &[Letter], b: &[Letter]) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn flip(self) -> Order {
        match self {
            Order::Right => Order::Opposite,
            Order::Opposite => Order::Right,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Order::Right => "right",
            Order::Opposite => "opposite",
        }
    }
}

/// Finite sum of words with Laurent polynomial coefficients.
#[derive(Clone)]
pub struct ShuffleElement {
    datum: Arc<CartanDatum>,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl PartialEq for ShuffleElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.datum == *other.datum
    }
}

impl Eq for ShuffleElement {}

impl ShuffleElement {
    pub fn zero(datum: &Arc<CartanDatum>) -> Self {
        ShuffleElement {
            datum: datum.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn word(datum: &Arc<CartanDatum>, w: Word) -> Self {
        Self::term(datum, w, LaurentPoly::one())
    }

    pub fn term(datum: &Arc<CartanDatum>, w: Word, c: LaurentPoly) -> Self {
        let mut x = Self::zero(datum);
        x.add_term(w, c);
        x
    }

    pub fn letter(datum: &Arc<CartanDatum>, i: Letter) -> Self {
        Self::word(datum, Word::letter(i))
    }

    pub fn from_terms(
        datum: &Arc<CartanDatum>,
        terms: impl IntoIterator<Item = (Word, LaurentPoly)>,
    ) -> Self {
        let mut x = Self::zero(datum);
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
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

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn coefficient_of(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Smallest word under the right-to-left order, with its coefficient.
    pub fn min_word(&self) -> Result<(Word, LaurentPoly), AlgebraError> {
        self.extreme_word(Order::Right)
    }

    /// Smallest word for `Order::Right`, largest for `Order::Opposite`:
    /// the word playing the role of the minimal monomial in each setting.
    pub fn extreme_word(&self, order: Order) -> Result<(Word, LaurentPoly), AlgebraError> {
        let pick = |a: &&Word, b: &&Word| order.cmp(&a.0, &b.0);
        let w = match order {
            Order::Right => self.terms.keys().min_by(pick),
            Order::Opposite => self.terms.keys().max_by(pick),
        }
        .ok_or(AlgebraError::ZeroElement)?;
        Ok((w.clone(), self.terms[w].clone()))
    }

    /// The common content of all terms.
    pub fn weight(&self) -> Result<RootVector, AlgebraError> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(w) => self.datum.content(&w.0)?,
            None => return Err(AlgebraError::ZeroElement),
        };
        for w in it {
            if self.datum.content(&w.0)? != first {
                return Err(AlgebraError::Inhomogeneous);
            }
        }
        Ok(first)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(&self.datum, self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&LaurentPoly::constant(c.clone()))
    }

    /// Multiplies every coefficient by `q^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self::from_terms(&self.datum, self.terms.iter().map(|(w, x)| (w.clone(), x.shift(n))))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// Divides every coefficient exactly by `c`.
    pub fn div_exact(&self, c: &LaurentPoly) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(&self.datum);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.div_exact(c)?);
        }
        Ok(out)
    }

    fn check_datum(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.datum, &other.datum) || *self.datum == *other.datum {
            Ok(())
        } else {
            Err(AlgebraError::DatumMismatch)
        }
    }

    /// Concatenation product of the free algebra.
    pub fn concat(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_datum(other)?;
        let mut out = Self::zero(&self.datum);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    /// `[x, y]_q = xy - q^{(|x|,|y|)} yx` under concatenation.
    pub fn qbracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        let e = self.datum.inner(&self.weight()?, &other.weight()?);
        Ok(self.concat(other)?.sub(&other.concat(self)?.shift(e)))
    }

    /// Quantum shuffle product with the default height cap.
    pub fn shuffle(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.shuffle_capped(other, DEFAULT_MAX_HEIGHT)
    }

    /// Quantum shuffle product, refusing results taller than `cap`.
    pub fn shuffle_capped(&self, other: &Self, cap: usize) -> Result<Self, AlgebraError> {
        self.check_datum(other)?;
        let height = self.max_len() + other.max_len();
        if height > cap {
            return Err(AlgebraError::ResourceCap { height, cap });
        }
        let pairs: Vec<(&Word, &LaurentPoly, &Word, &LaurentPoly)> = self
            .terms
            .iter()
            .flat_map(|(u, a)| other.terms.iter().map(move |(v, b)| (u, a, v, b)))
            .collect();
        let datum = &self.datum;
        let accumulate = |mut acc: HashMap<Word, LaurentPoly>, (u, a, v, b): (&Word, &LaurentPoly, &Word, &LaurentPoly)| {
            let ab = a * b;
            for (w, poly) in shuffle_words(datum, &u.0, &v.0) {
                let c = &poly * &ab;
                match acc.get_mut(&w) {
                    Some(slot) => *slot += &c,
                    None => {
                        acc.insert(w, c);
                    }
                }
            }
            acc
        };
        let merged: HashMap<Word, LaurentPoly> = if pairs.len() > 16 {
            pairs
                .into_par_iter()
                .fold(HashMap::new, accumulate)
                .reduce(HashMap::new, |mut a, b| {
                    for (w, c) in b {
                        match a.get_mut(&w) {
                            Some(slot) => *slot += &c,
                            None => {
                                a.insert(w, c);
                            }
                        }
                    }
                    a
                })
        } else {
            pairs.into_iter().fold(HashMap::new(), accumulate)
        };
        Ok(Self::from_terms(&self.datum, merged))
    }

    /// `tau`: reverses every word.
    pub fn tau(&self) -> Self {
        Self::from_terms(&self.datum, self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())))
    }

    /// The bar involution of the shuffle algebra: conjugate coefficients,
    /// reverse words and multiply by `q^{-N(nu)}`.
    pub fn bar(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let n = n_of(&self.datum, &self.weight()?);
        Ok(Self::from_terms(
            &self.datum,
            self.terms.iter().map(|(w, c)| (w.reversed(), c.bar().shift(-n))),
        ))
    }

    /// `sigma = bar . tau`: conjugate coefficients and multiply by
    /// `q^{-N(nu)}`, keeping the words.
    pub fn sigma(&self) -> Result<Self, AlgebraError> {
        self.tau().bar()
    }

    /// Every coefficient is fixed by `q -> q^{-1}`.
    pub fn is_coefficientwise_bar_invariant(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_bar_invariant)
    }

    /// First quantum Serre pattern on which the element pairs nontrivially,
    /// or `None` when it lies in the subalgebra generated by the letters.
    ///
    /// For `i != j` and `n = 1 - a_ij` the pattern is a context `(u, v)`;
    /// the test is `sum_k (-1)^k [n choose k]_i coeff(u i^{n-k} j i^k v) = 0`.
    pub fn serre_defect(&self) -> Option<(Word, Letter, Letter, Word, LaurentPoly)> {
        let datum = &self.datum;
        let mut sums: BTreeMap<(Word, Letter, Letter, Word), LaurentPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            let x = &w.0;
            for i in datum.letters() {
                for j in datum.letters() {
                    if i == j {
                        continue;
                    }
                    let n = (1 - datum.cartan(i, j)) as usize;
                    if x.len() < n + 1 {
                        continue;
                    }
                    for s in 0..=x.len() - n - 1 {
                        let win = &x[s..s + n + 1];
                        let Some(pos) = win.iter().position(|&a| a == j) else { continue };
                        if win.iter().enumerate().any(|(p, &a)| p != pos && a != i) {
                            continue;
                        }
                        let k = n - pos;
                        let mut coef = crate::qlaurent::q_binom(n as i64, k as i64, datum.d(i));
                        if k % 2 == 1 {
                            coef = -coef;
                        }
                        let key = (Word(x[..s].to_vec()), i, j, Word(x[s + n + 1..].to_vec()));
                        *sums.entry(key).or_insert_with(LaurentPoly::zero) += &(&coef * c);
                    }
                }
            }
        }
        sums.into_iter()
            .find(|(_, v)| !v.is_zero())
            .map(|((u, i, j, v), c)| (u, i, j, v, c))
    }

    /// Substitutes `q = 1` in every coefficient.
    pub fn eval_at_one(&self) -> BTreeMap<Word, BigRational> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, c)| *c != BigRational::from_integer(0.into()))
            .collect()
    }

    /// Line-delimited JSON records `{"word": ..., "coeff": [[e, n, d], ...]}`.
    pub fn to_records(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(w, c)| {
                serde_json::json!({"word": w.compact(), "coeff": c.to_json()}).to_string()
            })
            .collect()
    }
}

/// `N(nu) = ((nu, nu) - sum c_i (alpha_i, alpha_i)) / 2`.
pub fn n_of(datum: &CartanDatum, nu: &RootVector) -> i64 {
    let diag: i64 = nu
        .0
        .iter()
        .enumerate()
        .map(|(i, &c)| c as i64 * datum.pairing(i as Letter, i as Letter))
        .sum();
    (datum.inner(nu, nu) - diag) / 2
}

/// Shuffle of two words by the recursion on last letters, in increasing
/// word order. Entry `(p, r)` of the table holds `u[..p] * v[..r]` as word
/// to exponent counts.
pub fn shuffle_words(datum: &CartanDatum, u: &[Letter], v: &[Letter]) -> Vec<(Word, LaurentPoly)> {
    type Cell = HashMap<Vec<Letter>, BTreeMap<i64, i64>>;
    let (a, b) = (u.len(), v.len());
    // pref[p][j] = (|u[..p]|, alpha_j)
    let mut pref = vec![vec![0i64; datum.rank()]; a + 1];
    for p in 1..=a {
        for j in 0..datum.rank() {
            pref[p][j] = pref[p - 1][j] + datum.pairing(u[p - 1], j as Letter);
        }
    }
    let mut prev_row: Vec<Cell> = Vec::with_capacity(b + 1);
    for r in 0..=b {
        let mut c = Cell::new();
        c.insert(v[..r].to_vec(), BTreeMap::from([(0, 1)]));
        prev_row.push(c);
    }
    for p in 1..=a {
        let mut row: Vec<Cell> = Vec::with_capacity(b + 1);
        let mut c0 = Cell::new();
        c0.insert(u[..p].to_vec(), BTreeMap::from([(0, 1)]));
        row.push(c0);
        for r in 1..=b {
            let mut cell = Cell::new();
            for (w, exps) in &prev_row[r] {
                let mut nw = w.clone();
                nw.push(u[p - 1]);
                let slot = cell.entry(nw).or_default();
                for (e, n) in exps {
                    *slot.entry(*e).or_default() += n;
                }
            }
            let shift = -pref[p][v[r - 1] as usize];
            for (w, exps) in &row[r - 1] {
                let mut nw = w.clone();
                nw.push(v[r - 1]);
                let slot = cell.entry(nw).or_default();
                for (e, n) in exps {
                    *slot.entry(e + shift).or_default() += n;
                }
            }
            row.push(cell);
        }
        prev_row = row;
    }
    prev_row
        .pop()
        .unwrap()
        .into_iter()
        .map(|(w, exps)| {
            let mut poly = LaurentPoly::zero();
            for (e, n) in exps {
                poly.add_term(e, BigRational::from_integer(n.into()));
            }
            (Word(w), poly)
        })
        .filter(|(_, p)| !p.is_zero())
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .collect()
}

/// The same product from the closed formula over minimal coset
/// representatives: choose which output slots hold the letters of `u`, and
/// pay `(alpha_{u_s}, alpha_{v_t})` whenever `u_s` lands before `v_t`.
pub fn shuffle_words_closed_form(
    datum: &CartanDatum,
    u: &[Letter],
    v: &[Letter],
) -> Vec<(Word, LaurentPoly)> {
    let n = u.len() + v.len();
    let mut acc: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let mut w = Vec::with_capacity(n);
        let (mut s, mut t) = (0, 0);
        let mut e = 0i64;
        for pos in 0..n {
            if mask >> pos & 1 == 1 {
                w.push(u[s]);
                s += 1;
            } else {
                for &x in &u[..s] {
                    e += datum.pairing(x, v[t]);
                }
                w.push(v[t]);
                t += 1;
            }
        }
        let slot = acc.entry(Word(w)).or_default();
        slot.add_term(-e, BigRational::one());
    }
    acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

impl fmt::Display for ShuffleElement {
    /// `coeff*[word] + ...` in increasing word order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else if c.len() == 1 {
                write!(f, "{c}*{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    fn datum(s: Series, r: usize) -> Arc<CartanDatum> {
        Arc::new(CartanDatum::new(s, r).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn word_order() {
        assert!(w("102") < w("012"));
        assert!(w("01") < w("1"));
        assert!(w("10") < w("1"));
        assert_eq!(w("0123").cmp(&w("0123")), Ordering::Equal);
        let mut v = vec![w("210"), w("012"), w("120"), w("021")];
        v.sort();
        assert_eq!(v, vec![w("210"), w("120"), w("021"), w("012")]);
    }

    #[test]
    fn opposite_order_mirrors_right_order() {
        let words = ["", "0", "1", "01", "10", "001", "0101", "21", "120"];
        for a in words {
            for b in words {
                let (a, b) = (w(a), w(b));
                assert_eq!(
                    Order::Opposite.cmp(&a.0, &b.0),
                    Order::Right.cmp(&a.reversed().0, &b.reversed().0).reverse()
                );
            }
        }
    }

    #[test]
    fn word_literals() {
        assert_eq!(w("2010123").0, vec![2, 0, 1, 0, 1, 2, 3]);
        assert_eq!(w("2,10,3").0, vec![2, 10, 3]);
        assert_eq!(w("10,").0, vec![10]);
        assert_eq!(w("[01]").0, vec![0, 1]);
        assert!(w("[]").is_empty());
        assert!("0a".parse::<Word>().is_err());
        assert_eq!(Word(vec![1, 12]).compact(), "1,12");
    }

    #[test]
    fn a2_letter_shuffle() {
        let d = datum(Series::A, 2);
        let x = ShuffleElement::letter(&d, 0).shuffle(&ShuffleElement::letter(&d, 1)).unwrap();
        let want = ShuffleElement::from_terms(&d, [(w("10"), lp("1")), (w("01"), lp("q"))]);
        assert_eq!(x, want);
        let e = ShuffleElement::word(&d, Word::empty());
        assert_eq!(ShuffleElement::letter(&d, 1).shuffle(&e).unwrap(), ShuffleElement::letter(&d, 1));
    }

    #[test]
    fn b2_commutator() {
        let d = datum(Series::B, 2);
        let a = ShuffleElement::letter(&d, 0);
        let b = ShuffleElement::word(&d, w("01"));
        let x = a.shuffle(&b).unwrap().sub(&b.shuffle(&a).unwrap());
        assert_eq!(x, ShuffleElement::term(&d, w("001"), lp("q^2 - q^-2")));
    }

    #[test]
    fn recursion_matches_closed_form() {
        let d = datum(Series::C, 3);
        for (u, v) in [("01", "12"), ("0", "0"), ("121", "20"), ("", "01")] {
            let (u, v) = (w(u), w(v));
            assert_eq!(shuffle_words(&d, &u.0, &v.0), shuffle_words_closed_form(&d, &u.0, &v.0));
        }
    }

    #[test]
    fn qbracket_examples() {
        let d = datum(Series::B, 3);
        let x = ShuffleElement::letter(&d, 1).qbracket(&ShuffleElement::letter(&d, 2)).unwrap();
        assert_eq!(x, ShuffleElement::from_terms(&d, [(w("12"), lp("1")), (w("21"), lp("-q^-2"))]));
        let y = ShuffleElement::word(&d, w("12"));
        let yy = y.qbracket(&y).unwrap();
        let e = d.inner(&d.content(&[1, 2]).unwrap(), &d.content(&[1, 2]).unwrap());
        assert_eq!(yy, ShuffleElement::term(&d, w("1212"), &LaurentPoly::one() - &LaurentPoly::q_pow(e)));
    }

    #[test]
    fn involutions_on_letters() {
        let d = datum(Series::G, 2);
        let x = ShuffleElement::letter(&d, 1);
        assert_eq!(x.sigma().unwrap(), x);
        assert_eq!(ShuffleElement::word(&d, w("001")).tau(), ShuffleElement::word(&d, w("100")));
    }

    #[test]
    fn bar_is_multiplicative_on_letters() {
        let d = datum(Series::A, 2);
        let a = ShuffleElement::letter(&d, 0);
        let b = ShuffleElement::letter(&d, 1);
        let ab = a.shuffle(&b).unwrap();
        assert_eq!(ab.bar().unwrap(), ab);
    }

    #[test]
    fn cap_is_enforced() {
        let d = datum(Series::A, 2);
        let x = ShuffleElement::word(&d, w("0101010"));
        assert!(matches!(x.shuffle_capped(&x, 10), Err(AlgebraError::ResourceCap { .. })));
    }

    #[test]
    fn min_word_and_display() {
        let d = datum(Series::A, 3);
        let x = ShuffleElement::from_terms(&d, [(w("012"), lp("1")), (w("210"), lp("q + q^-1"))]);
        assert_eq!(x.min_word().unwrap().0, w("210"));
        assert_eq!(x.to_string(), "(q + q^-1)*[210] + [012]");
        assert!(ShuffleElement::zero(&d).min_word().is_err());
    }
}
