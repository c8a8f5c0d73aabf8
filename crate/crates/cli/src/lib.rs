//! Command implementations behind the `wedgehom` binary.

pub mod family;
pub mod report;
pub mod spec;
pub mod sweep;

use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;
use wedgehom::complex::{independence_complex_capped, SimplicialComplex, DEFAULT_MAX_FACES};
use wedgehom::graph::{self, Graph, WedgeSpec};
use wedgehom::homology::{
    compare_profiles, default_budget, is_collapsible, profile_of_type, reduced_homology,
    Coefficients, DEFAULT_INTEGER_FACE_LIMIT,
};
use wedgehom::reduction::{
    cycle_wedge_sigma_hint, del_link_decompose_with, reduce_fully, DecomposeOptions,
};

use crate::family::{recognize, Family};
use crate::report::{CommandKind, DecompositionSummary, Discrepancy, ReductionSummary, Report};
use crate::spec::{GraphSpec, SpecError};

pub const DEFAULT_MAX_VERTICES: usize = 26;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] wedgehom::Error),
    #[error("{count} vertices exceeds --max-vertices {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("invalid --field value {0:?}: expected auto, integers or a prime")]
    Field(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Size-cap violations, which sweeps record and skip.
    pub fn is_cap_violation(&self) -> bool {
        matches!(
            self,
            CliError::TooManyVertices { .. }
                | CliError::Core(wedgehom::Error::TooManyFaces { .. })
                | CliError::Core(wedgehom::Error::TooManyVertices { .. })
        )
    }
}

/// Coefficient choice as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldArg(pub Coefficients);

impl FromStr for FieldArg {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(FieldArg(Coefficients::Auto {
                integer_face_limit: DEFAULT_INTEGER_FACE_LIMIT,
            })),
            "integers" | "z" => Ok(FieldArg(Coefficients::Integers)),
            other => match other.parse::<u64>() {
                Ok(p) if is_prime(p) => Ok(FieldArg(Coefficients::PrimeField(p))),
                _ => Err(CliError::Field(s.to_string())),
            },
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub max_vertices: usize,
    pub max_faces: usize,
    pub coefficients: Coefficients,
    /// `None` uses ten steps per face.
    pub collapse_budget: Option<usize>,
    /// Attach a deletion/link splitting at the wedge point to verify reports.
    pub decompose: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_faces: DEFAULT_MAX_FACES,
            coefficients: Coefficients::default(),
            collapse_budget: None,
            decompose: false,
        }
    }
}

struct Built {
    spec: GraphSpec,
    graph: Graph,
    report: Report,
    start: Instant,
}

fn build(spec: &GraphSpec, command: CommandKind, cfg: &Config) -> Result<Built, CliError> {
    let start = Instant::now();
    let count = spec.vertex_count();
    if count > cfg.max_vertices {
        return Err(CliError::TooManyVertices {
            count,
            limit: cfg.max_vertices,
        });
    }
    let graph = spec.build()?;
    let mut report = Report::new(command, spec.to_string(), graph.vertex_count());
    report.edge_count = graph.edge_count();
    Ok(Built {
        spec: spec.clone(),
        graph,
        report,
        start,
    })
}

impl Built {
    fn complex(&self, cfg: &Config) -> Result<SimplicialComplex, CliError> {
        Ok(independence_complex_capped(&self.graph, cfg.max_faces)?)
    }

    fn finish(mut self) -> Report {
        self.report.timing_ms = self.start.elapsed().as_secs_f64() * 1e3;
        self.report
    }

    /// Oracle homology plus, when a family matches, the prediction and the
    /// comparison.
    fn predict_and_compare(&mut self, k: &SimplicialComplex, cfg: &Config) -> Result<(), CliError> {
        let observed = reduced_homology(k, cfg.coefficients)?;
        self.report.f_vector = Some(k.f_vector().counts);
        match recognize(&self.spec) {
            Some(r) => {
                let cmp = compare_profiles(observed, profile_of_type(&r.predicted)?);
                self.report.matches = Some(cmp.consistent);
                self.report.mismatched_dimensions = cmp.mismatched_dimensions;
                self.report.homology = Some(cmp.observed);
                self.report.discrepancy = r.terminal.filter(|t| t.discrepancy).map(|t| Discrepancy {
                    case: t.case,
                    case_formula: t.case_formula,
                    fold_derived: t.fold_derived,
                });
                self.report.family = Some(r.family);
                self.report.predicted = Some(r.predicted);
            }
            None => {
                self.report.homology = Some(observed);
                self.report.predicted = Some(wedgehom::HomotopyType::Unknown);
            }
        }
        Ok(())
    }
}

/// Oracle homology of `I(G)`.
pub fn cmd_homology(spec: &GraphSpec, cfg: &Config) -> Result<Report, CliError> {
    let mut b = build(spec, CommandKind::Homology, cfg)?;
    let k = b.complex(cfg)?;
    b.report.f_vector = Some(k.f_vector().counts);
    b.report.homology = Some(reduced_homology(&k, cfg.coefficients)?);
    Ok(b.finish())
}

/// Fold reduction trace; the complex itself is never built.
pub fn cmd_reduce(spec: &GraphSpec, cfg: &Config) -> Result<Report, CliError> {
    let mut b = build(spec, CommandKind::Reduce, cfg)?;
    b.report.reduction = Some(ReductionSummary::from(&reduce_fully(&b.graph)));
    Ok(b.finish())
}

/// Family prediction, with the oracle profile alongside.
pub fn cmd_predict(spec: &GraphSpec, cfg: &Config) -> Result<Report, CliError> {
    let mut b = build(spec, CommandKind::Predict, cfg)?;
    let k = b.complex(cfg)?;
    b.predict_and_compare(&k, cfg)?;
    Ok(b.finish())
}

/// Prediction against the oracle, with fold, collapse and optional
/// splitting evidence.
pub fn cmd_verify(spec: &GraphSpec, cfg: &Config) -> Result<Report, CliError> {
    let mut b = build(spec, CommandKind::Verify, cfg)?;
    let k = b.complex(cfg)?;
    b.predict_and_compare(&k, cfg)?;
    b.report.reduction = Some(ReductionSummary::from(&reduce_fully(&b.graph)));
    if b.report.predicted.as_ref().is_some_and(|t| t.is_contractible()) {
        let budget = cfg.collapse_budget.unwrap_or_else(|| default_budget(&k));
        b.report.collapse = Some(is_collapsible(&k, budget)?.verdict);
    }
    if cfg.decompose && wedge_of_cycles(&b.report.family) {
        b.report.decomposition = Some(decompose_at_wedge_point(&b.spec, &b.graph, cfg)?);
    }
    Ok(b.finish())
}

fn wedge_of_cycles(f: &Option<Family>) -> bool {
    matches!(f, Some(Family::CycleWedges { .. } | Family::CycleWedgePath { .. }))
}

fn decompose_at_wedge_point(spec: &GraphSpec, g: &Graph, cfg: &Config) -> Result<DecompositionSummary, CliError> {
    let mut opts = DecomposeOptions {
        sigma_hints: Vec::new(),
        budget: cfg.collapse_budget,
    };
    // the hint assumes every cycle is glued at its first vertex
    if let GraphSpec::Wedge(parts) = spec {
        let sizes: Option<Vec<usize>> = parts
            .iter()
            .map(|(p, i)| match (p, i) {
                (GraphSpec::Cycle(n), 1) => Some(*n),
                _ => None,
            })
            .collect();
        if let Some(sizes) = sizes {
            let cycles = sizes
                .iter()
                .map(|&n| Ok((graph::cycle(n)?, 0)))
                .collect::<Result<Vec<_>, wedgehom::Error>>()?;
            let layout = graph::wedge_with_map(&WedgeSpec::new(cycles)?)?;
            opts.sigma_hints.push(cycle_wedge_sigma_hint(&layout, &sizes));
        }
    }
    let d = del_link_decompose_with(g, 0, &opts)?;
    Ok(DecompositionSummary {
        vertex: 0,
        deletion: reduced_homology(&d.deletion, cfg.coefficients)?,
        link: reduced_homology(&d.link, cfg.coefficients)?,
        verdict: d.verdict,
    })
}

/// Outcome of the seeded fold-invariance check.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FoldCheck {
    pub seed: u64,
    pub graphs: usize,
    pub folded: usize,
    /// Graphs (as edge lists) whose homology changed under a fold.
    pub failures: Vec<(usize, Vec<(usize, usize)>)>,
}

/// Random graphs on `1..=max_vertices` vertices; each one with a fold is
/// checked for equal homology before and after.
pub fn check_folds(count: usize, max_vertices: usize, seed: u64, cfg: &Config) -> Result<FoldCheck, CliError> {
    use rand::{Rng, SeedableRng};
    use wedgehom::reduction::{apply_fold, find_fold};

    if max_vertices == 0 {
        return Err(CliError::Usage("graph size must be positive".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = FoldCheck {
        seed,
        graphs: count,
        folded: 0,
        failures: Vec::new(),
    };
    for _ in 0..count {
        let n = rng.gen_range(1..=max_vertices);
        let p = rng.gen_range(0.1..0.7);
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v)?;
                }
            }
        }
        let Some((v, w)) = find_fold(&g) else { continue };
        out.folded += 1;
        let before = reduced_homology(&independence_complex_capped(&g, cfg.max_faces)?, cfg.coefficients)?;
        let folded = apply_fold(&g, v, w)?;
        let after = reduced_homology(&independence_complex_capped(&folded, cfg.max_faces)?, cfg.coefficients)?;
        if before != after {
            out.failures.push((n, g.edges()));
        }
    }
    Ok(out)
}

/// Exit status of a verify report: 0 match, 2 mismatch, 3 unknown.
pub fn verify_exit_code(r: &Report) -> u8 {
    match r.matches {
        Some(true) => 0,
        Some(false) => 2,
        None => 3,
    }
}
