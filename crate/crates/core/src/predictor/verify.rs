use serde::{Deserialize, Serialize};

use crate::complex::{independence_complex_capped, FVector, DEFAULT_MAX_FACES};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{
    compare_profiles, default_budget, is_collapsible, profile_of_type, reduced_homology,
    Coefficients, CollapseVerdict, HomologyProfile,
};

use super::HomotopyType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub coefficients: Coefficients,
    pub max_faces: usize,
    /// Run the collapse search when the prediction is contractible.
    /// `None` skips it; `Some(0)` uses the default budget.
    pub collapse_budget: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            coefficients: Coefficients::default(),
            max_faces: DEFAULT_MAX_FACES,
            collapse_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub predicted: HomotopyType,
    pub f_vector: FVector,
    pub observed: HomologyProfile,
    pub expected: HomologyProfile,
    pub matches: bool,
    pub mismatched_dimensions: Vec<i32>,
    pub torsion_checked: bool,
    pub collapse: Option<CollapseVerdict>,
}

/// Compares `I(g)` against `t` with default options.
pub fn verify(g: &Graph, t: &HomotopyType) -> Result<VerificationReport> {
    verify_with(g, t, &VerifyOptions::default())
}

pub fn verify_with(g: &Graph, t: &HomotopyType, opts: &VerifyOptions) -> Result<VerificationReport> {
    if t.is_unknown() {
        return Err(Error::UnknownType);
    }
    let expected = profile_of_type(t)?;
    let k = independence_complex_capped(g, opts.max_faces)?;
    let observed = reduced_homology(&k, opts.coefficients)?;
    let collapse = match opts.collapse_budget {
        Some(b) if t.is_contractible() => {
            let budget = if b == 0 { default_budget(&k) } else { b };
            Some(is_collapsible(&k, budget)?.verdict)
        }
        _ => None,
    };
    let torsion_checked = observed.torsion_checked;
    let cmp = compare_profiles(observed, expected);
    Ok(VerificationReport {
        predicted: t.clone(),
        f_vector: k.f_vector(),
        matches: cmp.consistent,
        mismatched_dimensions: cmp.mismatched_dimensions,
        observed: cmp.observed,
        expected: cmp.expected,
        torsion_checked,
        collapse,
    })
}
