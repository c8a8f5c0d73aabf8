//! Syntactic recognition of the closed-form families.
//!
//! Recognition runs on the canonical form of a specification: nested wedges
//! glued at their own wedge point are flattened and cycle base points are
//! moved to vertex 1. Anything else is reported as unknown.

use serde::{Deserialize, Serialize};
use wedgehom::predictor::{
    predict_cycle, predict_cycle_wedge_path, predict_cycle_wedges, predict_path,
    predict_path_wedge_path, predict_terminal_path_wedge, CycleWedgePathParams, HomotopyType,
    TerminalPrediction,
};

use crate::spec::GraphSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Family {
    Path { m: usize },
    Cycle { n: usize },
    CycleWedges { sizes: Vec<usize> },
    /// `C_n` at its first vertex, `P_m` at vertex `k`.
    CycleWedgePath { n: usize, m: usize, k: usize },
    /// `P_m` at its last vertex, `P_n` at vertex `l`.
    PathWedgePath { m: usize, n: usize, l: usize },
    /// Paths sharing an endpoint.
    TerminalPaths { arms: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub family: Family,
    pub predicted: HomotopyType,
    /// Present for terminal path wedges.
    pub terminal: Option<TerminalPrediction>,
}

/// Flattens wedges nested at their wedge point and sends cycle bases to 1.
pub fn canonicalize(spec: &GraphSpec) -> GraphSpec {
    match spec {
        GraphSpec::Wedge(parts) => {
            let mut out = Vec::with_capacity(parts.len());
            for (p, i) in parts {
                match (canonicalize(p), *i) {
                    (GraphSpec::Wedge(inner), 1) => out.extend(inner),
                    (c @ GraphSpec::Cycle(_), _) => out.push((c, 1)),
                    (c, i) => out.push((c, i)),
                }
            }
            GraphSpec::Wedge(out)
        }
        other => other.clone(),
    }
}

fn as_u32(x: usize) -> Option<u32> {
    u32::try_from(x).ok()
}

/// Matches `spec` against the known families and evaluates the predictor.
pub fn recognize(spec: &GraphSpec) -> Option<Recognition> {
    let family = classify(&canonicalize(spec))?;
    let plain = |predicted| Some(Recognition {
        family: family.clone(),
        predicted,
        terminal: None,
    });
    match &family {
        Family::Path { m } => plain(predict_path(as_u32(*m)?)),
        Family::Cycle { n } => plain(predict_cycle(as_u32(*n)?).ok()?),
        Family::CycleWedges { sizes } => {
            let sizes = sizes.iter().map(|&s| as_u32(s)).collect::<Option<Vec<_>>>()?;
            plain(predict_cycle_wedges(&sizes).ok()?)
        }
        Family::CycleWedgePath { n, m, k } => {
            let p = CycleWedgePathParams::new(as_u32(*n)?, as_u32(*m)?, as_u32(*k)?).ok()?;
            plain(predict_cycle_wedge_path(&p).ok()?)
        }
        Family::PathWedgePath { m, n, l } => {
            plain(predict_path_wedge_path(as_u32(*m)?, as_u32(*n)?, as_u32(*l)?).ok()?)
        }
        Family::TerminalPaths { arms } => {
            let arms = arms.iter().map(|&a| as_u32(a)).collect::<Option<Vec<_>>>()?;
            let t = predict_terminal_path_wedge(&arms).ok()?;
            Some(Recognition {
                family: family.clone(),
                predicted: t.prediction().clone(),
                terminal: Some(t),
            })
        }
    }
}

fn classify(spec: &GraphSpec) -> Option<Family> {
    let parts = match spec {
        GraphSpec::Path(m) => return Some(Family::Path { m: *m }),
        GraphSpec::Cycle(n) => return Some(Family::Cycle { n: *n }),
        GraphSpec::Wedge(parts) => parts,
    };
    let cycles: Vec<usize> = parts
        .iter()
        .filter_map(|(p, _)| match p {
            GraphSpec::Cycle(n) => Some(*n),
            _ => None,
        })
        .collect();
    let paths: Vec<(usize, usize)> = parts
        .iter()
        .filter_map(|(p, i)| match p {
            GraphSpec::Path(m) => Some((*m, *i)),
            _ => None,
        })
        .collect();
    if cycles.len() + paths.len() != parts.len() {
        return None;
    }
    let terminal = |&(m, i): &(usize, usize)| i == 1 || i == m;
    match (cycles.as_slice(), paths.as_slice()) {
        (_, []) => Some(Family::CycleWedges { sizes: cycles }),
        (&[n], &[(m, k)]) => Some(Family::CycleWedgePath { n, m, k }),
        ([], ps) if ps.iter().all(terminal) => Some(Family::TerminalPaths {
            arms: ps.iter().map(|&(m, _)| m).collect(),
        }),
        ([], &[a, b]) if terminal(&a) => Some(Family::PathWedgePath { m: a.0, n: b.0, l: b.1 }),
        ([], &[a, b]) if terminal(&b) => Some(Family::PathWedgePath { m: b.0, n: a.0, l: a.1 }),
        _ => None,
    }
}
