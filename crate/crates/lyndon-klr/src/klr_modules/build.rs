//! Cuspidal modules for every supported type, and standard modules built
//! from them by induction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::rational::BigRational;
use num::One;

use super::{
    doubled_letter_module, extend, extend_by_prefix, extend_by_suffix, homogeneous_module, induce,
    lowest_weight_factor, shift, trivial_module, trivial_unchecked, GradedModule,
};
use crate::bases::Bases;
use crate::cartan::{CartanDatum, Letter, Series};
use crate::error::AlgebraError;
use crate::klr_core::relations::{ModuleAction, SparseMatrix};
use crate::klr_core::KlrAlgebra;
use crate::lyndon::std_factorization;
use crate::shuffle::Word;

/// How a cuspidal module was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The explicit construction for this word.
    Explicit,
    /// The explicit construction fails its relation check; the module is the
    /// lowest-weight factor of an induced module instead.
    Fallback { explicit_failure: String },
}

/// Builds and caches modules over one Cartan datum.
pub struct ModuleBuilder {
    bases: Arc<Bases>,
    alg: KlrAlgebra,
    cuspidal: Mutex<HashMap<Word, (GradedModule, Provenance)>>,
}

fn w(s: &str) -> Vec<Letter> {
    s.bytes().map(|b| b - b'0').collect()
}

impl ModuleBuilder {
    pub fn new(bases: Arc<Bases>) -> Self {
        let alg = KlrAlgebra::new(bases.datum().clone());
        ModuleBuilder { bases, alg, cuspidal: Mutex::new(HashMap::new()) }
    }

    pub fn bases(&self) -> &Arc<Bases> {
        &self.bases
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        self.bases.datum()
    }

    pub fn algebra(&self) -> &KlrAlgebra {
        &self.alg
    }

    pub fn induce(&self, m: &GradedModule, n: &GradedModule) -> Result<GradedModule, AlgebraError> {
        induce(&self.alg, m, n)
    }

    /// The cuspidal module `1_l`, from its explicit construction when that
    /// passes the relation check.
    pub fn cuspidal(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        Ok(self.cuspidal_with_provenance(l)?.0)
    }

    pub fn cuspidal_with_provenance(&self, l: &Word) -> Result<(GradedModule, Provenance), AlgebraError> {
        if let Some(x) = self.cuspidal.lock().unwrap().get(l) {
            return Ok(x.clone());
        }
        if !self.bases.table().contains(l) {
            return Err(AlgebraError::NotGood(l.to_string()));
        }
        let out = match self.explicit(l) {
            Ok(m) => (m, Provenance::Explicit),
            Err(AlgebraError::RelationFailure(why)) => {
                (self.by_induction(l)?, Provenance::Fallback { explicit_failure: why })
            }
            Err(e) => return Err(e),
        };
        self.cuspidal.lock().unwrap().insert(l.clone(), out.clone());
        Ok(out)
    }

    /// The explicit construction for `l`, gated by the relation check.
    pub fn explicit(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        let datum = self.datum();
        let letters = l.letters();
        match datum.series() {
            Series::A => trivial_module(datum, letters),
            Series::B => match letters.windows(2).position(|p| p[0] == p[1]) {
                Some(p) => doubled_letter_module(datum, letters, p),
                None => trivial_module(datum, letters),
            },
            Series::C => {
                let j = letters.iter().copied().max().unwrap_or(0) as usize;
                let long: Vec<Letter> = (0..=j as Letter).chain(1..=j as Letter).collect();
                if j >= 1 && letters == long.as_slice() {
                    self.type_c_long(j)
                } else {
                    trivial_module(datum, letters)
                }
            }
            Series::D => match letters.windows(2).position(|p| p == [1, 0]) {
                Some(p) => super::type_d_module(datum, p + 1, *letters.last().unwrap() as usize),
                None => trivial_module(datum, letters),
            },
            Series::E => homogeneous_module(datum, letters),
            Series::F => self.f4_module(l),
            Series::G => Err(AlgebraError::NoConstruction(format!("cuspidal modules for {}", datum.name()))),
        }
    }

    /// `1_{alpha_0} (x) Ind(1_beta (x) 1_beta){1}` extended by zero, for
    /// `[0..j,1..j]` in type C.
    fn type_c_long(&self, j: usize) -> Result<GradedModule, AlgebraError> {
        let beta: Vec<Letter> = (1..=j as Letter).collect();
        let one = trivial_module(self.datum(), &beta)?;
        let ind = shift(&self.induce(&one, &one)?, 1);
        extend_by_prefix(&ind, 0)
    }

    /// The module of the matching case of the explicit `F_4` list.
    pub fn f4_module(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        let datum = self.datum();
        let s = l.compact();
        let cusp = |x: &str| self.cuspidal(&Word::new(w(x)));
        let letters = l.letters();
        match s.as_str() {
            "112" | "1123" => doubled_letter_module(datum, letters, 0),
            "21123" => doubled_letter_module(datum, letters, 1),
            "1012" => {
                let ind = self.induce(&cusp("1")?, &cusp("01")?)?;
                extend_by_suffix(&ind, 2)
            }
            "01012" => {
                let b = cusp("01")?;
                extend_by_suffix(&shift(&self.induce(&b, &b)?, 1), 2)
            }
            "10123" => extend_by_suffix(&cusp("1012")?, 3),
            "010123" => extend_by_suffix(&cusp("01012")?, 3),
            "210123" | "2010123" | "12010123" => self.head_of_prefix_induction(l),
            "1210123" => extend_by_prefix(&cusp("210123")?, 1),
            "112010123" => self.f4_doubled_prefix(&cusp("12010123")?),
            "2112010123" => extend_by_prefix(&cusp("112010123")?, 2),
            "21012310123" => {
                let b = cusp("10123")?;
                extend_by_prefix(&shift(&self.induce(&b, &b)?, 1), 2)
            }
            _ => trivial_module(datum, letters),
        }
    }

    /// `1_{alpha_a} (x) 1_beta` for `l = a.rest`, completed by the generated
    /// and cogenerated part of weight `l` inside the induced module.
    fn head_of_prefix_induction(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        let first = self.cuspidal(&Word::new(vec![l.letters()[0]]))?;
        let rest = self.cuspidal(&l.slice(1, l.len()))?;
        let ind = self.induce(&first, &rest)?;
        let mut m = lowest_weight_factor(&ind, l.letters(), self.bases.order())?;
        m.label = format!("completed[{}]", l.compact());
        Ok(m)
    }

    /// `W{1} + W{-1}` with `W = 1_{alpha_1} (x) 1_beta`, `phi_0` carrying
    /// `W{1}` to `W{-1}` on weights starting `1,1` and every other new
    /// generator acting as zero.
    fn f4_doubled_prefix(&self, inner: &GradedModule) -> Result<GradedModule, AlgebraError> {
        let wmod = extend(inner, 1, true);
        let a = &wmod.action;
        let n = a.dim();
        let dup = |g: &SparseMatrix| {
            let mut out = SparseMatrix::zero(2 * n);
            for (c, col) in g.columns().iter().enumerate() {
                for (&r, x) in col {
                    out.set(r, c, x.clone());
                    out.set(r + n, c + n, x.clone());
                }
            }
            out
        };
        let mut phi: Vec<SparseMatrix> = a.phi.iter().map(dup).collect();
        for k in 0..n {
            if a.weights[k][1] == 1 {
                phi[0].set(k + n, k, BigRational::one());
            }
        }
        let degrees = a.degrees.iter().map(|d| d + 1).chain(a.degrees.iter().map(|d| d - 1)).collect();
        GradedModule {
            action: ModuleAction {
                datum: a.datum.clone(),
                nu: a.nu.clone(),
                weights: a.weights.iter().chain(&a.weights).cloned().collect(),
                degrees,
                y: a.y.iter().map(dup).collect(),
                phi,
            },
            label: "1.(1_beta){1} + 1.(1_beta){-1}".to_string(),
        }
        .gate()
    }

    /// The lowest-weight factor of `1_{l1} o 1_{l2}` or `1_{l2} o 1_{l1}`
    /// for the standard factorization `l = l1 l2`.
    pub fn by_induction(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        if l.len() == 1 {
            return trivial_module(self.datum(), l.letters());
        }
        let (l1, l2) = std_factorization(self.bases.order(), l.letters())?;
        let m1 = self.cuspidal(&l1)?;
        let m2 = self.cuspidal(&l2)?;
        let mut last = None;
        for (a, b) in [(&m1, &m2), (&m2, &m1)] {
            let ind = self.induce(a, b)?;
            match lowest_weight_factor(&ind, l.letters(), self.bases.order()) {
                Ok(mut m) => {
                    m.label = format!("factor[{}]", l.compact());
                    return Ok(m);
                }
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("two attempts"))
    }

    /// `M(g) = Ind(1_{l_1} (x) ... (x) 1_{l_k}){c_g}` over the canonical
    /// factors `l_1 >= ... >= l_k`.
    pub fn standard_module(&self, g: &Word) -> Result<GradedModule, AlgebraError> {
        let factors = self.bases.table().good_factors(g)?;
        let mut m = self.cuspidal(&factors[0])?;
        for f in &factors[1..] {
            m = self.induce(&m, &self.cuspidal(f)?)?;
        }
        let mut m = shift(&m, self.bases.c_shift(g)?);
        m.label = format!("M[{}]", factors.iter().map(|f| f.compact()).collect::<Vec<_>>().join("."));
        Ok(m)
    }

    /// The module of the explicit construction without the relation gate,
    /// for inspecting failures.
    pub fn trivial_ungated(&self, l: &Word) -> Result<GradedModule, AlgebraError> {
        trivial_unchecked(self.datum(), l.letters())
    }
}
