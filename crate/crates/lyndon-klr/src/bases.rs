//! The Lyndon basis `r_g`, dual PBW elements `E_g*`, and the scalars
//! `kappa` and `c_g` that tie them together.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{CartanDatum, RootVector};
use crate::error::AlgebraError;
use crate::lyndon::{is_lyndon, std_factorization, LyndonTable};
use crate::qlaurent::{q_factorial, LaurentPoly, RatFunc};
use crate::shuffle::{n_of, Order, ShuffleElement, Word, DEFAULT_MAX_HEIGHT};

/// `(E(beta), E(beta))_K = prod (1 - q^{(a_i,a_i)})^{c_i} / (1 - q^{(beta,beta)})`.
pub fn form_norm(datum: &CartanDatum, beta: &RootVector) -> Result<RatFunc, AlgebraError> {
    if !datum.is_positive_root(beta) {
        return Err(AlgebraError::NotARoot(beta.to_string()));
    }
    let one_minus = |e: i64| LaurentPoly::from_int_terms(&[(0, 1), (e, -1)]);
    let mut num = LaurentPoly::one();
    for i in datum.letters() {
        let c = beta.0[i as usize];
        num = &num * &one_minus(datum.pairing(i, i)).pow(c);
    }
    Ok(RatFunc::new(num, one_minus(datum.inner(beta, beta))))
}

/// Iterated q-bracket of a Lyndon word along its standard factorization,
/// as an element of the concatenation algebra.
pub fn bracket(datum: &Arc<CartanDatum>, order: Order, l: &Word) -> Result<ShuffleElement, AlgebraError> {
    if !is_lyndon(order, &l.0)? {
        return Err(AlgebraError::NotLyndon(l.to_string()));
    }
    if l.len() == 1 {
        return Ok(ShuffleElement::word(datum, l.clone()));
    }
    let (l1, l2) = std_factorization(order, &l.0)?;
    bracket(datum, order, &l1)?.qbracket(&bracket(datum, order, &l2)?)
}

/// Lyndon basis, dual PBW elements and their normalizations for one table.
///
/// Results for Lyndon words are memoized; the type is shareable across
/// threads.
pub struct Bases {
    table: Arc<LyndonTable>,
    cap: usize,
    r_cache: Mutex<HashMap<Word, ShuffleElement>>,
    e_cache: Mutex<HashMap<Word, (ShuffleElement, LaurentPoly)>>,
}

impl Bases {
    pub fn new(table: Arc<LyndonTable>) -> Self {
        Self::with_cap(table, DEFAULT_MAX_HEIGHT)
    }

    /// Shuffle products taller than `cap` fail with a resource error.
    pub fn with_cap(table: Arc<LyndonTable>, cap: usize) -> Self {
        Bases {
            table,
            cap,
            r_cache: Mutex::new(HashMap::new()),
            e_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &Arc<LyndonTable> {
        &self.table
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        self.table.datum()
    }

    pub fn order(&self) -> Order {
        self.table.order()
    }

    fn check_good_lyndon(&self, l: &Word) -> Result<RootVector, AlgebraError> {
        self.table
            .root_of(l)
            .cloned()
            .ok_or_else(|| AlgebraError::NotGood(format!("{l} is not a good Lyndon word")))
    }

    fn shuffle(&self, x: &ShuffleElement, y: &ShuffleElement) -> Result<ShuffleElement, AlgebraError> {
        x.shuffle_capped(y, self.cap)
    }

    /// `r_l`: the bracket with concatenation replaced by shuffle. Defined
    /// for every Lyndon word, good or not.
    pub fn r_lyndon(&self, l: &Word) -> Result<ShuffleElement, AlgebraError> {
        if let Some(x) = self.r_cache.lock().unwrap().get(l) {
            return Ok(x.clone());
        }
        let order = self.order();
        if !is_lyndon(order, &l.0)? {
            return Err(AlgebraError::NotLyndon(l.to_string()));
        }
        if l.len() > self.cap {
            return Err(AlgebraError::ResourceCap { height: l.len(), cap: self.cap });
        }
        let datum = self.datum();
        let value = if l.len() == 1 {
            ShuffleElement::word(datum, l.clone())
        } else {
            let (l1, l2) = std_factorization(order, &l.0)?;
            let r1 = self.r_lyndon(&l1)?;
            let r2 = self.r_lyndon(&l2)?;
            let e = datum.inner(&datum.content(&l1.0)?, &datum.content(&l2.0)?);
            self.shuffle(&r1, &r2)?.sub(&self.shuffle(&r2, &r1)?.shift(e))
        };
        self.r_cache.lock().unwrap().insert(l.clone(), value.clone());
        Ok(value)
    }

    /// `r_g = r_{l_1} * ... * r_{l_k}` over the canonical factors of a good
    /// word.
    pub fn r_basis(&self, g: &Word) -> Result<ShuffleElement, AlgebraError> {
        let factors = self.table.good_factors(g)?;
        let mut acc = ShuffleElement::word(self.datum(), Word::empty());
        for f in &factors {
            acc = self.shuffle(&acc, &self.r_lyndon(f)?)?;
        }
        Ok(acc)
    }

    /// `kappa_l` together with `E_l*`, from the coefficient `rho` of `l` in
    /// `r_l`: `kappa^2 = (-1)^{h-1} rho / (q^{N(beta)} (E_l, E_l)_K)` and
    /// `E_l* = (kappa / rho) r_l`.
    fn lyndon_pair(&self, l: &Word) -> Result<(ShuffleElement, LaurentPoly), AlgebraError> {
        if let Some(x) = self.e_cache.lock().unwrap().get(l) {
            return Ok(x.clone());
        }
        let beta = self.check_good_lyndon(l)?;
        let datum = self.datum();
        let r = self.r_lyndon(l)?;
        let rho = r.coefficient_of(l);
        let sign = if (l.len() - 1) % 2 == 0 { 1 } else { -1 };
        let denom = form_norm(datum, &beta)?.mul(&RatFunc::from_laurent(LaurentPoly::q_pow(n_of(datum, &beta))));
        let radicand = RatFunc::from_laurent(rho.scale(&num::BigRational::from_integer(sign.into())))
            .div(&denom)
            .to_laurent()
            .ok_or_else(|| AlgebraError::InexactDivision {
                dividend: rho.to_string(),
                divisor: denom.to_string(),
                remainder: "nonzero".into(),
            })?;
        let kappa = radicand.sqrt()?;
        let e = r.scale(&kappa).div_exact(&rho)?;
        self.e_cache.lock().unwrap().insert(l.clone(), (e.clone(), kappa.clone()));
        Ok((e, kappa))
    }

    pub fn kappa_lyndon(&self, l: &Word) -> Result<LaurentPoly, AlgebraError> {
        Ok(self.lyndon_pair(l)?.1)
    }

    /// `E_l* = b_l*` for a good Lyndon word.
    pub fn dual_pbw_lyndon(&self, l: &Word) -> Result<ShuffleElement, AlgebraError> {
        Ok(self.lyndon_pair(l)?.0)
    }

    /// Groups the canonical factors of `g` into `(l_i, a_i)` runs.
    pub fn factor_runs(&self, g: &Word) -> Result<Vec<(Word, u32)>, AlgebraError> {
        let mut runs: Vec<(Word, u32)> = Vec::new();
        for f in self.table.good_factors(g)? {
            match runs.last_mut() {
                Some((w, a)) if *w == f => *a += 1,
                _ => runs.push((f, 1)),
            }
        }
        Ok(runs)
    }

    fn d_of(&self, l: &Word) -> Result<i64, AlgebraError> {
        let beta = self.check_good_lyndon(l)?;
        Ok(self.datum().inner(&beta, &beta) / 2)
    }

    /// `c_g = sum binom(a_i, 2) d_{l_i}`.
    pub fn c_shift(&self, g: &Word) -> Result<i64, AlgebraError> {
        let mut c = 0;
        for (l, a) in self.factor_runs(g)? {
            let a = a as i64;
            c += a * (a - 1) / 2 * self.d_of(&l)?;
        }
        Ok(c)
    }

    /// `kappa_g = prod kappa_{l_i}^{a_i} [a_i]_{l_i}!`.
    pub fn kappa_g(&self, g: &Word) -> Result<LaurentPoly, AlgebraError> {
        let mut k = LaurentPoly::one();
        for (l, a) in self.factor_runs(g)? {
            k = &k * &self.kappa_lyndon(&l)?.pow(a);
            k = &k * &q_factorial(a as i64, self.d_of(&l)?);
        }
        Ok(k)
    }

    /// `E_g* = q^{c_g} (E_{l_m}*)^{a_m} * ... * (E_{l_1}*)^{a_1}`: canonical
    /// factors shuffled from the last one back to the first.
    pub fn dual_pbw(&self, g: &Word) -> Result<ShuffleElement, AlgebraError> {
        if g.len() > self.cap {
            return Err(AlgebraError::ResourceCap { height: g.len(), cap: self.cap });
        }
        let factors = self.table.good_factors(g)?;
        let mut acc = ShuffleElement::word(self.datum(), Word::empty());
        for f in factors.iter().rev() {
            acc = self.shuffle(&acc, &self.dual_pbw_lyndon(f)?)?;
        }
        Ok(acc.shift(self.c_shift(g)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;
    use crate::qlaurent::q_int;

    fn bases(s: Series, r: usize) -> Bases {
        let d = Arc::new(CartanDatum::new(s, r).unwrap());
        Bases::new(Arc::new(LyndonTable::build(&d, Order::Right)))
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn form_norm_examples() {
        let a2 = CartanDatum::new(Series::A, 2).unwrap();
        assert!(form_norm(&a2, &RootVector(vec![1, 0])).unwrap().to_laurent().unwrap().is_one());
        assert_eq!(form_norm(&a2, &RootVector(vec![1, 1])).unwrap().to_laurent().unwrap(), lp("1 - q^2"));
        let b2 = CartanDatum::new(Series::B, 2).unwrap();
        assert_eq!(
            form_norm(&b2, &RootVector(vec![2, 1])).unwrap().to_laurent().unwrap(),
            lp("1 - 2*q^2 + q^4")
        );
        assert!(form_norm(&b2, &RootVector(vec![1, 2])).is_err());
    }

    #[test]
    fn brackets_of_example() {
        let b = bases(Series::B, 3);
        let d = b.datum();
        assert_eq!(bracket(d, Order::Right, &w("0")).unwrap(), ShuffleElement::letter(d, 0));
        let x = bracket(d, Order::Right, &w("12")).unwrap();
        assert_eq!(x, ShuffleElement::from_terms(d, [(w("12"), lp("1")), (w("21"), lp("-q^-2"))]));
        let y = bracket(d, Order::Right, &w("012")).unwrap();
        let want = ShuffleElement::from_terms(
            d,
            [(w("012"), lp("1")), (w("021"), lp("-q^-2")), (w("120"), lp("-q^-2")), (w("210"), lp("q^-4"))],
        );
        assert_eq!(y, want);
        assert_eq!(y.terms().map(|(k, _)| k).max().unwrap(), &w("012"));
    }

    #[test]
    fn type_a_lyndon_basis() {
        let b = bases(Series::A, 4);
        let r = b.r_lyndon(&w("123")).unwrap();
        let want = ShuffleElement::term(b.datum(), w("123"), lp("q - q^-1").pow(2));
        assert_eq!(r, want);
        assert!(b.kappa_lyndon(&w("123")).unwrap().is_one());
        assert_eq!(b.dual_pbw_lyndon(&w("123")).unwrap(), ShuffleElement::word(b.datum(), w("123")));
    }

    #[test]
    fn type_b_kappa() {
        let b = bases(Series::B, 2);
        let r = b.r_lyndon(&w("001")).unwrap();
        assert_eq!(r, ShuffleElement::term(b.datum(), w("001"), lp("q^2 - q^-2").pow(2)));
        assert_eq!(b.kappa_lyndon(&w("001")).unwrap(), q_int(2, 1));
    }

    #[test]
    fn g2_kappa() {
        let b = bases(Series::G, 2);
        assert_eq!(b.kappa_lyndon(&w("0001")).unwrap(), &q_int(2, 1) * &q_int(3, 1));
    }

    #[test]
    fn shifts_and_kappa_g() {
        let b = bases(Series::A, 2);
        assert_eq!(b.c_shift(&w("01")).unwrap(), 0);
        assert_eq!(b.c_shift(&w("00")).unwrap(), 1);
        assert_eq!(b.kappa_g(&w("00")).unwrap(), q_int(2, 1));
        let e = b.dual_pbw(&w("00")).unwrap();
        assert_eq!(e, ShuffleElement::term(b.datum(), w("00"), q_int(2, 1)));
        assert!(b.c_shift(&w("10")).is_ok());
        assert!(b.c_shift(&w("100")).is_err() || b.table().is_good(&w("100")));
    }

    #[test]
    fn min_word_is_label() {
        for (s, r) in [(Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::G, 2)] {
            let b = bases(s, r);
            for (_, l) in b.table().entries() {
                let (m, c) = b.dual_pbw(l).unwrap().min_word().unwrap();
                assert_eq!(m, *l);
                assert_eq!(c, b.kappa_lyndon(l).unwrap());
            }
        }
    }

    #[test]
    fn not_good_is_rejected() {
        let b = bases(Series::B, 2);
        assert!(b.dual_pbw_lyndon(&w("011")).is_err());
        assert!(b.r_lyndon(&w("10")).is_err());
    }
}
