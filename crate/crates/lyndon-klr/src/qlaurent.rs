//! Exact arithmetic in `q`: Laurent polynomials over the rationals and
//! quotients of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::AlgebraError;

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Stored sparsely as exponent to coefficient with no zero entries, so two
/// values are equal exactly when their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, rat(1))
    }

    /// The variable `q`.
    pub fn q() -> Self {
        LaurentPoly::q_pow(1)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        LaurentPoly::monomial(n, rat(1))
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        LaurentPoly::constant(rat(n))
    }

    /// Builds a polynomial from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in pairs {
            p.add_term(e, rat(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `q^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The substitution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True when the polynomial is fixed by `bar`.
    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// The substitution `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division. Fails when `divisor` does not divide `self` in the
    /// ring of Laurent polynomials.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (quot, rem) = self.div_rem(divisor);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(AlgebraError::InexactDivision {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
                remainder: rem.to_string(),
            })
        }
    }

    /// Long division from the top degree. The quotient never goes below the
    /// point where the remainder has fewer terms than the divisor's span.
    fn div_rem(&self, divisor: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dmax = divisor.max_exp().unwrap();
        let dmin = divisor.min_exp().unwrap();
        let lead = divisor.terms[&dmax].clone();
        while let Some(rmax) = rem.max_exp() {
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                break;
            }
            let c = &rem.terms[&rmax] / &lead;
            let shift = rmax - dmax;
            for (e, x) in divisor.terms() {
                rem.add_term(e + shift, -(x * &c));
            }
            quot.add_term(shift, c);
        }
        (quot, rem)
    }

    /// The square root whose value at `q = 1` is positive, or whose lowest
    /// coefficient is positive when that value vanishes.
    pub fn sqrt(&self) -> Result<LaurentPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let not_square = |remainder: &LaurentPoly| AlgebraError::NotASquare {
            value: self.to_string(),
            remainder: remainder.to_string(),
        };
        if lo % 2 != 0 || hi % 2 != 0 {
            return Err(not_square(self));
        }
        let c0 = rational_sqrt(&self.terms[&lo]).ok_or_else(|| not_square(self))?;
        let base = lo / 2;
        let span = (hi - lo) / 2;
        let mut coeffs: Vec<BigRational> = vec![c0.clone()];
        let two_c0 = &c0 * rat(2);
        for k in 1..=span {
            let mut acc = self.coeff(lo + k);
            for i in 1..k {
                acc -= &coeffs[i as usize] * &coeffs[(k - i) as usize];
            }
            coeffs.push(acc / &two_c0);
        }
        let mut root = LaurentPoly::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            root.add_term(base + k as i64, c);
        }
        let remainder = self - &(&root * &root);
        if !remainder.is_zero() {
            return Err(not_square(&remainder));
        }
        let at_one = root.eval_at_one();
        let flip = if at_one.is_zero() {
            root.terms.values().next().unwrap().is_negative()
        } else {
            at_one.is_negative()
        };
        Ok(if flip { -root } else { root })
    }

    /// Structured form: `[exponent, numerator, denominator]` triples in
    /// increasing exponent order.
    pub fn to_triples(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn from_triples(triples: &[(i64, BigInt, BigInt)]) -> Result<Self, AlgebraError> {
        let mut p = LaurentPoly::zero();
        for (e, n, d) in triples {
            if d.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            p.add_term(*e, BigRational::new(n.clone(), d.clone()));
        }
        Ok(p)
    }

    /// JSON value holding the structured form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.to_triples()
                .into_iter()
                .map(|(e, n, d)| serde_json::json!([e, n.to_string(), d.to_string()]))
                .collect(),
        )
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// `[k]_d = (q^{dk} - q^{-dk}) / (q^d - q^{-d})`.
pub fn q_int(k: i64, d: i64) -> LaurentPoly {
    assert!(k >= 0, "q-integer of negative argument");
    let mut p = LaurentPoly::zero();
    for j in 0..k {
        p.add_term(d * (k - 1 - 2 * j), rat(1));
    }
    p
}

/// `[k]_d!`.
pub fn q_factorial(k: i64, d: i64) -> LaurentPoly {
    (1..=k).fold(LaurentPoly::one(), |acc, j| &acc * &q_int(j, d))
}

/// The balanced q-binomial coefficient with `q_i = q^d`.
pub fn q_binom(m: i64, k: i64, d: i64) -> LaurentPoly {
    assert!(0 <= k && k <= m, "q-binomial out of range");
    let num = q_factorial(m, d);
    let den = &q_factorial(k, d) * &q_factorial(m - k, d);
    num.div_exact(&den)
        .expect("q-binomial coefficients are Laurent polynomials")
}

/// `{a}_b! = prod_{j=1}^{a} (1 - q^{jb}) / (1 - q^b)`.
pub fn brace_factorial(a: i64, b: i64) -> RatFunc {
    let one_minus = |e: i64| LaurentPoly::from_int_terms(&[(0, 1), (e, -1)]);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for j in 1..=a {
        num = &num * &one_minus(j * b);
        den = &den * &one_minus(b);
    }
    RatFunc::new(num, den)
}

impl fmt::Display for LaurentPoly {
    /// Renders terms by decreasing exponent as `a*q^n + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Parses the text form, e.g. `q^2 - 3/2*q + 1 + q^-1` or `2*q^(-3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("bad Laurent polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            let sign_here = (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('('));
            if sign_here {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(bad());
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad());
        }
        pieces.push((neg, cur));

        let mut p = LaurentPoly::zero();
        for (neg, term) in pieces {
            let (coeff_part, var_part) = match term.find('q') {
                Some(i) => (&term[..i], Some(&term[i + 1..])),
                None => (term.as_str(), None),
            };
            let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
            let coeff = if coeff_part.is_empty() {
                rat(1)
            } else {
                parse_rational(coeff_part).ok_or_else(bad)?
            };
            let exp = match var_part {
                None => 0,
                Some("") => 1,
                Some(rest) => {
                    let rest = rest.strip_prefix('^').ok_or_else(bad)?;
                    let rest = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .unwrap_or(rest);
                    rest.parse::<i64>().map_err(|_| bad())?
                }
            };
            p.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(p)
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// A quotient of Laurent polynomials, kept reduced.
///
/// Normal form: numerator and denominator are coprime, and the denominator
/// has lowest exponent 0 and leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc::new(p, LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        self.num = self.num.div_exact(&g).expect("gcd divides numerator");
        self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        let shift = self.den.min_exp().unwrap();
        let lead = self.den.terms[&self.den.max_exp().unwrap()].clone();
        let inv = BigRational::one() / lead;
        self.num = self.num.shift(-shift).scale(&inv);
        self.den = self.den.shift(-shift).scale(&inv);
    }

    /// The Laurent polynomial equal to this quotient, if there is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den).ok()
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Monic gcd of the polynomial parts (units `c*q^n` are ignored).
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let norm = |p: &LaurentPoly| p.shift(-p.min_exp().unwrap_or(0));
    let mut x = norm(a);
    let mut y = norm(b);
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = if r.is_zero() { r } else { norm(&r) };
    }
    let lead = x.terms[&x.max_exp().unwrap()].clone();
    x.scale(&(BigRational::one() / lead))
}
