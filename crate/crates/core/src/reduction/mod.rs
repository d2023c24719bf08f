//! Searching characteristic matrices for tail-biting-equivalent encoders with
//! fewer states, directly or through the dual code.

mod dual;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use dual::{
    dual_procedure, dual_reduce, dual_selection_check, dual_shift, simultaneous_reduce, DualOutcome, DualSelection,
    DualSelectionCheck, SimultaneousReduction, Step, StepKind,
};
pub use search::{
    reduce_candidate, search_reduction, select_candidate, verify_reduction, Candidate, CandidateRecord, Outcome,
    Rejection, SearchOptions, SearchOutcome,
};

use crate::poly::PolyMatrix;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DivisionMode {
    /// Try every power up to each column's monomial factor and keep the best.
    #[default]
    PerPower,
    /// Divide each column by its whole monomial factor.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMode {
    Direct,
    Indirect,
    DualAssisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationMethod {
    /// Both codes enumerated word by word.
    Enumeration,
    /// Row spaces of the shifted and reduced generator matrices compared.
    RowSpace,
}

/// Where the reduced encoder came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Index of the characteristic-matrix variant.
    pub variant: u64,
    /// Positions of the chosen basic spans within T0.
    pub basic: Vec<usize>,
    pub basic_spans: Vec<Span>,
    pub g_prime: PolyMatrix,
    pub nu_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub original: PolyMatrix,
    pub original_octal: String,
    pub sections: usize,
    pub nu: usize,
    pub reduced: PolyMatrix,
    pub reduced_octal: String,
    pub nu_reduced: usize,
    pub shift_vector: Vec<i64>,
    pub mode: ReductionMode,
    pub provenance: Provenance,
    pub verification: Verdict,
    pub verified_by: VerificationMethod,
}

impl ReductionReport {
    pub fn shifted_columns(&self) -> usize {
        self.shift_vector.iter().filter(|&&s| s != 0).count()
    }
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "original   {}  {}  nu = {}",
            self.original, self.original_octal, self.nu
        )?;
        writeln!(f, "sections   N = {}", self.sections)?;
        writeln!(
            f,
            "candidate  variant {} basic spans {}  G'(D) = {}  nu' = {}",
            self.provenance.variant,
            crate::span::render_spans(&self.provenance.basic_spans),
            self.provenance.g_prime,
            self.provenance.nu_prime
        )?;
        writeln!(
            f,
            "reduced    {}  {}  nu = {}",
            self.reduced, self.reduced_octal, self.nu_reduced
        )?;
        writeln!(f, "mode       {:?}", self.mode)?;
        writeln!(f, "shifts     {:?}", self.shift_vector)?;
        write!(f, "verified   {:?} by {:?}", self.verification, self.verified_by)
    }
}

/// The section-length bound k0((n0 − k0)N + 1) ≤ n0(ν + k0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub holds: bool,
    pub lhs: usize,
    pub rhs: usize,
    /// Largest N satisfying the bound.
    pub max_sections: Option<usize>,
}

pub fn section_bound(n0: usize, k0: usize, nu: usize, sections: usize) -> BoundCheck {
    let lhs = k0 * ((n0 - k0) * sections + 1);
    let rhs = n0 * (nu + k0);
    let max_sections = (n0 > k0 && rhs >= k0).then(|| (rhs - k0) / (k0 * (n0 - k0)));
    BoundCheck {
        holds: lhs <= rhs,
        lhs,
        rhs,
        max_sections,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_specialisations() {
        for nu in 1..8 {
            assert_eq!(section_bound(2, 1, nu, 5).max_sections, Some(2 * nu + 1));
            assert_eq!(section_bound(3, 1, nu, 5).max_sections, Some(3 * nu / 2 + 1));
            assert_eq!(section_bound(3, 2, nu, 5).max_sections, Some(3 * nu / 2 + 2));
        }
        assert!(section_bound(2, 1, 2, 5).holds);
        assert!(!section_bound(2, 1, 2, 6).holds);
    }
}
