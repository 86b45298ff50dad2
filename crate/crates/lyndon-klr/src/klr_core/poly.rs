//! Polynomials in the variables `y_0 .. y_{d-1}` and the polynomials
//! `Q_ij(u, v)` of a Cartan datum.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{One, Zero};

use crate::cartan::{CartanDatum, Letter};

/// A polynomial with rational coefficients; keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct YPoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl YPoly {
    pub fn zero() -> Self {
        YPoly::default()
    }

    pub fn constant(d: usize, c: BigRational) -> Self {
        let mut p = YPoly::zero();
        p.add_term(vec![0; d], c);
        p
    }

    pub fn one(d: usize) -> Self {
        YPoly::constant(d, BigRational::one())
    }

    /// `y_r`.
    pub fn var(d: usize, r: usize) -> Self {
        let mut e = vec![0; d];
        e[r] = 1;
        let mut p = YPoly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &YPoly) -> YPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> YPoly {
        let mut out = YPoly::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &YPoly) -> YPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &YPoly) -> YPoly {
        let mut out = YPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Exchanges `y_r` and `y_s`.
    pub fn swap_vars(&self, r: usize, s: usize) -> YPoly {
        let mut out = YPoly::zero();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(r, s);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact quotient by `y_b - y_a`, or `None` if it does not divide.
    pub fn div_difference(&self, b: usize, a: usize) -> Option<YPoly> {
        // Divide by y_b - y_a treating y_b as the main variable.
        let mut rem = self.clone();
        let mut quot = YPoly::zero();
        while let Some((e, c)) = rem
            .terms
            .iter()
            .filter(|(e, _)| e[b] > 0)
            .max_by_key(|(e, _)| (e[b], (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            let mut m = e.clone();
            m[b] -= 1;
            let mut t = YPoly::zero();
            t.add_term(m.clone(), c.clone());
            quot = quot.add(&t);
            let d = e.len();
            rem = rem.sub(&t.mul(&YPoly::var(d, b).sub(&YPoly::var(d, a))));
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (r, &p) in e.iter().enumerate() {
                if p == 1 {
                    write!(f, "*y{r}")?;
                } else if p > 1 {
                    write!(f, "*y{r}^{p}")?;
                }
            }
        }
        Ok(())
    }
}

/// `Q_ij(u, v)` as a list of `(u exponent, v exponent, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<(u32, u32, i64)>);

impl QPoly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Substitutes `u = y_a`, `v = y_b` in `d` variables.
    pub fn eval(&self, d: usize, a: usize, b: usize) -> YPoly {
        let mut out = YPoly::zero();
        for &(p, s, c) in &self.0 {
            let mut e = vec![0; d];
            e[a] += p;
            e[b] += s;
            out.add_term(e, BigRational::from_integer(c.into()));
        }
        out
    }
}

/// Finite-type `Q_ij`: zero on the diagonal, one for orthogonal letters,
/// and `+-(u^{-a_ij} - v^{-a_ji})` along an edge, positive when the edge
/// is oriented `i -> j`.
pub fn q_ij(datum: &CartanDatum, i: Letter, j: Letter) -> QPoly {
    if i == j {
        return QPoly(vec![]);
    }
    let aij = datum.cartan(i, j);
    if aij == 0 {
        return QPoly(vec![(0, 0, 1)]);
    }
    let aji = datum.cartan(j, i);
    let sign = if datum.arrow(i, j) { 1 } else { -1 };
    QPoly(vec![((-aij) as u32, 0, sign), (0, (-aji) as u32, -sign)])
}

/// `(Q(y_a, y_b) - Q(y_c, y_b)) / (y_c - y_a)` for `Q = Q_ij`.
pub fn braid_defect(datum: &CartanDatum, i: Letter, j: Letter, d: usize, a: usize, b: usize, c: usize) -> YPoly {
    let q = q_ij(datum, i, j);
    let num = q.eval(d, a, b).sub(&q.eval(d, c, b));
    num.div_difference(c, a).expect("divided difference is exact")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    #[test]
    fn q_cases() {
        let f4 = CartanDatum::new(Series::F, 4).unwrap();
        assert!(q_ij(&f4, 1, 1).is_zero());
        assert_eq!(q_ij(&f4, 0, 2), QPoly(vec![(0, 0, 1)]));
        // 1 -> 2 with a_12 = -2 and a_21 = -1.
        assert_eq!(q_ij(&f4, 1, 2), QPoly(vec![(2, 0, 1), (0, 1, -1)]));
        assert_eq!(q_ij(&f4, 2, 1), QPoly(vec![(1, 0, -1), (0, 2, 1)]));
    }

    #[test]
    fn divided_difference() {
        let a2 = CartanDatum::new(Series::A, 2).unwrap();
        // Q_01(u, v) = u - v gives (y0 - y1 - y2 + y1) / (y2 - y0) = -1.
        let p = braid_defect(&a2, 0, 1, 3, 0, 1, 2);
        assert_eq!(p, YPoly::constant(3, -BigRational::one()));
        let x = YPoly::var(2, 0).mul(&YPoly::var(2, 0)).sub(&YPoly::var(2, 1).mul(&YPoly::var(2, 1)));
        assert_eq!(x.div_difference(1, 0).unwrap(), YPoly::var(2, 0).add(&YPoly::var(2, 1)).scale(&-BigRational::one()));
        assert!(YPoly::var(2, 0).div_difference(1, 0).is_none());
    }
}
