//! Per-instance reports and their text rendering.

use std::fmt;

use serde::{Deserialize, Serialize};
use wedgehom::homology::{CollapseVerdict, HomologyProfile};
use wedgehom::predictor::{HomotopyType, TerminalCase};
use wedgehom::reduction::{DecompositionVerdict, ReductionEvent, ReductionTrace};

use crate::family::Family;

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Homology,
    Reduce,
    Predict,
    Verify,
}

/// The closed form stated for a terminal case disagrees with the fold
/// reduction; `fold_derived` is the value that was verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub case: TerminalCase,
    pub case_formula: HomotopyType,
    pub fold_derived: HomotopyType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub folds: usize,
    pub join_factors: Vec<HomotopyType>,
    pub residual_vertices: Vec<usize>,
    pub contractible: bool,
    pub homotopy_type: HomotopyType,
    pub steps: Vec<ReductionEvent>,
}

impl From<&ReductionTrace> for ReductionSummary {
    fn from(t: &ReductionTrace) -> Self {
        Self {
            folds: t.fold_count(),
            join_factors: t.join_factors.clone(),
            residual_vertices: t.residual_vertices.clone(),
            contractible: t.contractible,
            homotopy_type: t.homotopy_type(),
            steps: t.steps.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub vertex: usize,
    pub deletion: HomologyProfile,
    pub link: HomologyProfile,
    pub verdict: DecompositionVerdict,
}

/// One instance. Every key is always present; absent data is `null`.
///
/// `match` is non-null exactly when `predicted` is a known type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: CommandKind,
    pub spec: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub f_vector: Option<Vec<u64>>,
    pub homology: Option<HomologyProfile>,
    pub family: Option<Family>,
    pub predicted: Option<HomotopyType>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub mismatched_dimensions: Vec<i32>,
    pub discrepancy: Option<Discrepancy>,
    pub reduction: Option<ReductionSummary>,
    pub collapse: Option<CollapseVerdict>,
    pub decomposition: Option<DecompositionSummary>,
    /// Why the instance was not computed.
    pub skipped: Option<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: CommandKind, spec: String, vertex_count: usize) -> Self {
        Self {
            version: REPORT_VERSION.to_string(),
            command,
            spec,
            vertex_count,
            edge_count: 0,
            f_vector: None,
            homology: None,
            family: None,
            predicted: None,
            matches: None,
            mismatched_dimensions: Vec::new(),
            discrepancy: None,
            reduction: None,
            collapse: None,
            decomposition: None,
            skipped: None,
            timing_ms: 0.0,
        }
    }

    /// Short status word used in tables.
    pub fn status(&self) -> String {
        if let Some(reason) = &self.skipped {
            return format!("skipped ({reason})");
        }
        match self.matches {
            Some(true) => "ok".into(),
            Some(false) => format!("MISMATCH in dims {:?}", self.mismatched_dimensions),
            None if self.predicted.is_some() => "unknown".into(),
            None => "-".into(),
        }
    }

    pub fn table_row(&self) -> String {
        let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let mut row = format!(
            "{:<40} {:>3}  {:<18} {:<24} {}",
            self.spec,
            self.vertex_count,
            show(self.predicted.as_ref().map(ToString::to_string)),
            show(self.homology.as_ref().map(ToString::to_string)),
            self.status()
        );
        if let Some(d) = &self.discrepancy {
            row.push_str(&format!("  [discrepancy: case formula {}]", d.case_formula));
        }
        row
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spec          {}", self.spec)?;
        writeln!(f, "vertices      {} ({} edges)", self.vertex_count, self.edge_count)?;
        if let Some(reason) = &self.skipped {
            return writeln!(f, "skipped       {reason}");
        }
        if let Some(fv) = &self.f_vector {
            let fv: Vec<String> = fv.iter().map(u64::to_string).collect();
            writeln!(f, "f-vector      ({})", fv.join(", "))?;
        }
        if let Some(h) = &self.homology {
            writeln!(f, "homology      {h}  over {}", h.ring)?;
        }
        if let Some(fam) = &self.family {
            writeln!(f, "family        {}", serde_json::to_string(fam).map_err(|_| fmt::Error)?)?;
        }
        if let Some(p) = &self.predicted {
            writeln!(f, "predicted     {p}")?;
        }
        if let Some(d) = &self.discrepancy {
            writeln!(
                f,
                "discrepancy   case formula gives {}, fold reduction gives {}",
                d.case_formula, d.fold_derived
            )?;
        }
        if self.predicted.is_some() {
            writeln!(f, "status        {}", self.status())?;
        }
        if let Some(r) = &self.reduction {
            writeln!(
                f,
                "reduction     {} folds, residual {:?}, type {}",
                r.folds, r.residual_vertices, r.homotopy_type
            )?;
        }
        if let Some(c) = &self.collapse {
            writeln!(f, "collapse      {}", serde_json::to_string(c).map_err(|_| fmt::Error)?)?;
        }
        if let Some(d) = &self.decomposition {
            writeln!(f, "decomposition at vertex {}: {}", d.vertex, d.verdict.name())?;
            writeln!(f, "  deletion    {}", d.deletion)?;
            writeln!(f, "  link        {}", d.link)?;
            if let DecompositionVerdict::Lemma31Certified { witness } = &d.verdict {
                writeln!(f, "  sigma       {:?}", witness.sigma)?;
            }
        }
        writeln!(f, "time          {:.1} ms", self.timing_ms)
    }
}
