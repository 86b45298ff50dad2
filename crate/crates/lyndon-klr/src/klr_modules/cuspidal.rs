//! Character-level verification of cuspidal modules.

use serde::Serialize;

use super::build::{ModuleBuilder, Provenance};
use super::{character, tau_twist, y_nilpotent};
use crate::cartan::Series;
use crate::error::AlgebraError;
use crate::shuffle::Word;

/// One named check with a short explanation on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name, pass, detail: if pass { String::new() } else { detail.into() } }
    }
}

/// Everything checked about `1_l` for one good Lyndon word.
#[derive(Clone, Debug, Serialize)]
pub struct CuspidalReport {
    pub word: String,
    pub dim: Option<usize>,
    pub label: Option<String>,
    pub checks: Vec<Check>,
}

impl CuspidalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Builds `1_l` and checks the relations, the lowest weight, the character
/// against `b_l*` (for heights up to `char_cap`), and the bar symmetry of
/// the character. Words taller than `char_cap` get a lowest-weight and
/// degree check instead of the full character comparison.
pub fn verify_cuspidal(builder: &ModuleBuilder, l: &Word, char_cap: usize) -> Result<CuspidalReport, AlgebraError> {
    let bases = builder.bases();
    let table = bases.table();
    let order = bases.order();
    let mut checks = Vec::new();
    if !table.contains(l) {
        return Err(AlgebraError::NotGood(l.to_string()));
    }
    let mut report = CuspidalReport { word: l.compact(), dim: None, label: None, checks: Vec::new() };

    if builder.datum().series() == Series::G {
        let b = bases.dual_pbw_lyndon(l)?;
        let (min, kappa) = b.min_word()?;
        checks.push(Check::new("min-word", min == *l && kappa == bases.kappa_lyndon(l)?, format!("min word {min}")));
        checks.push(Check::new("bar-symmetric", b.is_coefficientwise_bar_invariant(), "coefficients not bar invariant"));
        checks.push(Check::new("serre", b.serre_defect().is_none(), "outside the quantum image"));
        report.checks = checks;
        return Ok(report);
    }

    let (m, provenance) = builder.cuspidal_with_provenance(l)?;
    report.dim = Some(m.dim());
    report.label = Some(m.label.clone());
    let explicit = match &provenance {
        Provenance::Explicit => Check::new("explicit-construction", true, ""),
        Provenance::Fallback { explicit_failure } => {
            Check::new("explicit-construction", false, format!("relation failure {explicit_failure}"))
        }
    };
    checks.push(explicit);

    let rel = m.relations()?;
    checks.push(Check::new(
        "relations",
        rel.passed(),
        rel.first_failure().map(|f| f.to_json()).unwrap_or_default(),
    ));
    checks.push(Check::new("y-nilpotent", y_nilpotent(&m), "some y is not nilpotent"));
    let low = m.lowest_weight(order).map(|w| Word::new(w.to_vec()));
    checks.push(Check::new(
        "lowest-weight",
        low.as_ref() == Some(l),
        format!("lowest weight {}", low.map(|w| w.to_string()).unwrap_or_default()),
    ));
    let ch = character(&m);
    let kappa = bases.kappa_lyndon(l)?;
    checks.push(Check::new(
        "lowest-weight-dim",
        m.weight_dim(l.letters()) == kappa,
        format!("dim_q at l is {}, kappa is {kappa}", m.weight_dim(l.letters())),
    ));
    if l.len() <= char_cap {
        let b = bases.dual_pbw_lyndon(l)?;
        checks.push(Check::new("character", ch == b, format!("character differs from b*: {}", ch.sub(&b))));
    } else {
        let flat = m.degrees().iter().all(|&d| d == 0);
        let mult_free = {
            let mut ws: Vec<&Vec<u8>> = m.weights().iter().collect();
            ws.sort();
            ws.windows(2).all(|p| p[0] != p[1])
        };
        checks.push(Check::new("degree-zero-multiplicity-free", flat && mult_free, "module is not flat"));
    }
    checks.push(Check::new("bar-symmetric", ch.is_coefficientwise_bar_invariant(), "character is not bar symmetric"));
    let twisted = tau_twist(&m);
    let tau_ok = character(&twisted) == ch.tau() && twisted.relations()?.passed();
    checks.push(Check::new("tau-twist", tau_ok, "twisted module fails"));
    report.checks = checks;
    Ok(report)
}
