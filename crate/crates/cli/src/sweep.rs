//! Parameter sweeps over the closed-form families.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wedgehom::homology::HomologyProfile;

use crate::report::Report;
use crate::spec::GraphSpec;
use crate::{cmd_verify, CliError, Config};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Paths,
    Cycles,
    PathWedgePath,
    CycleWedgeCycle,
    KCycles,
    CycleWedgePath,
    TerminalPaths,
}

impl SweepFamily {
    pub const ALL: [SweepFamily; 7] = [
        SweepFamily::Paths,
        SweepFamily::Cycles,
        SweepFamily::PathWedgePath,
        SweepFamily::CycleWedgeCycle,
        SweepFamily::KCycles,
        SweepFamily::CycleWedgePath,
        SweepFamily::TerminalPaths,
    ];

    fn default_range(self) -> (usize, usize) {
        match self {
            SweepFamily::Paths => (0, 18),
            SweepFamily::Cycles => (3, 18),
            SweepFamily::PathWedgePath => (1, 10),
            SweepFamily::CycleWedgeCycle => (3, 12),
            SweepFamily::KCycles => (3, 8),
            SweepFamily::CycleWedgePath => (3, 8),
            SweepFamily::TerminalPaths => (1, 8),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    /// Size range for the family's parameters; family defaults when `None`.
    pub min: Option<usize>,
    pub max: Option<usize>,
    /// Number of cycles for `k-cycles`.
    pub cycles: usize,
    /// Quotients `a, b, c` for the residue grid of `cycle-wedge-path`.
    pub abc: Vec<usize>,
    /// `cycle-wedge-path` over `n, m` in range and `1 <= k <= ceil(m/2)`
    /// instead of the residue grid.
    pub ranged: bool,
    /// Arm lengths for `terminal-paths`; the size range when empty.
    pub arms: Vec<usize>,
    pub min_arms: usize,
    pub max_arms: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            min: None,
            max: None,
            cycles: 3,
            abc: vec![1, 2],
            ranged: false,
            arms: vec![4, 5, 7, 8],
            min_arms: 2,
            max_arms: 3,
        }
    }
}

/// Position of a `C_n ∨ P_m` instance in the residue grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridKey {
    pub n_mod: usize,
    pub tail_mod: usize,
    pub k_mod: usize,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: GraphSpec,
    /// Grid cell and `α = ⌊n/3⌋ + ⌊k/3⌋ + ⌊(m-k)/3⌋`, for grid sweeps.
    pub grid: Option<(GridKey, usize)>,
}

impl Instance {
    fn plain(spec: GraphSpec) -> Self {
        Self { spec, grid: None }
    }
}

fn wedge(parts: Vec<(GraphSpec, usize)>) -> GraphSpec {
    GraphSpec::Wedge(parts)
}

/// Nondecreasing sequences of length `len` drawn from `values` (sorted).
fn multisets(values: &[usize], len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        for mut rest in multisets(&values[i..], len - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Instances of a family in grid order.
pub fn instances(family: SweepFamily, p: &SweepParams) -> Result<Vec<Instance>, CliError> {
    let (dlo, dhi) = family.default_range();
    let (lo, hi) = (p.min.unwrap_or(dlo), p.max.unwrap_or(dhi));
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {lo}..={hi}")));
    }
    let range = lo..=hi;
    let at_least = |floor: usize, what: &str| {
        if lo < floor {
            Err(CliError::Usage(format!("{what} needs sizes of at least {floor}")))
        } else {
            Ok(())
        }
    };
    Ok(match family {
        SweepFamily::Paths => range.map(|m| Instance::plain(GraphSpec::Path(m))).collect(),
        SweepFamily::Cycles => {
            at_least(3, "cycles")?;
            range.map(|n| Instance::plain(GraphSpec::Cycle(n))).collect()
        }
        SweepFamily::PathWedgePath => {
            at_least(1, "path-wedge-path")?;
            let mut out = Vec::new();
            for m in range.clone() {
                for n in range.clone() {
                    for l in 1..=n {
                        out.push(Instance::plain(wedge(vec![
                            (GraphSpec::Path(m), m),
                            (GraphSpec::Path(n), l),
                        ])));
                    }
                }
            }
            out
        }
        SweepFamily::CycleWedgeCycle => {
            at_least(3, "cycle-wedge-cycle")?;
            let mut out = Vec::new();
            for m in range.clone() {
                for n in range.clone() {
                    out.push(Instance::plain(wedge(vec![
                        (GraphSpec::Cycle(m), 1),
                        (GraphSpec::Cycle(n), 1),
                    ])));
                }
            }
            out
        }
        SweepFamily::KCycles => {
            at_least(3, "k-cycles")?;
            if p.cycles < 2 {
                return Err(CliError::Usage("k-cycles needs --cycles >= 2".into()));
            }
            let sizes: Vec<usize> = range.collect();
            multisets(&sizes, p.cycles)
                .into_iter()
                .map(|ms| Instance::plain(wedge(ms.into_iter().map(|m| (GraphSpec::Cycle(m), 1)).collect())))
                .collect()
        }
        SweepFamily::CycleWedgePath if p.ranged => {
            at_least(3, "cycle-wedge-path")?;
            let mut out = Vec::new();
            for n in range.clone() {
                for m in 1..=hi {
                    for k in 1..=m.div_ceil(2) {
                        out.push(Instance::plain(cycle_path(n, m, k)));
                    }
                }
            }
            out
        }
        SweepFamily::CycleWedgePath => {
            let mut out = Vec::new();
            for key in grid_keys() {
                for &a in &p.abc {
                    for &b in &p.abc {
                        for &c in &p.abc {
                            let n = 3 * a + key.n_mod;
                            let k = 3 * b + key.k_mod;
                            let m = k + 3 * c + key.tail_mod;
                            if n < 3 || k == 0 {
                                continue;
                            }
                            out.push(Instance {
                                spec: cycle_path(n, m, k),
                                grid: Some((key, a + b + c)),
                            });
                        }
                    }
                }
            }
            out
        }
        SweepFamily::TerminalPaths => {
            let mut values = if p.arms.is_empty() {
                range.collect()
            } else {
                p.arms.clone()
            };
            if values.contains(&0) {
                return Err(CliError::Usage("arms need at least one vertex".into()));
            }
            values.sort_unstable();
            values.dedup();
            (p.min_arms.max(2)..=p.max_arms)
                .flat_map(|len| multisets(&values, len))
                .map(|arms| Instance::plain(wedge(arms.into_iter().map(|m| (GraphSpec::Path(m), 1)).collect())))
                .collect()
        }
    })
}

fn cycle_path(n: usize, m: usize, k: usize) -> GraphSpec {
    wedge(vec![(GraphSpec::Cycle(n), 1), (GraphSpec::Path(m), k)])
}

/// Grid rows by `(n mod 3, (m-k) mod 3)`, columns by `k mod 3`.
fn grid_keys() -> impl Iterator<Item = GridKey> {
    (0..3).flat_map(|n_mod| {
        (0..3).flat_map(move |tail_mod| (0..3).map(move |k_mod| GridKey { n_mod, tail_mod, k_mod }))
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub unknown: usize,
    pub skipped: usize,
    pub discrepancies: usize,
}

pub struct SweepResult {
    pub instances: Vec<Instance>,
    pub reports: Vec<Report>,
    pub summary: SweepSummary,
}

impl SweepResult {
    pub fn exit_code(&self) -> u8 {
        if self.summary.mismatched > 0 {
            2
        } else {
            0
        }
    }
}

/// Verifies every instance on a pool of `jobs` threads (0 = one per core).
/// Reports come back in instance order.
pub fn run_sweep(instances: Vec<Instance>, cfg: &Config, jobs: usize) -> Result<SweepResult, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let reports = pool.install(|| {
        instances
            .par_iter()
            .map(|inst| match cmd_verify(&inst.spec, cfg) {
                Ok(r) => Ok(r),
                Err(e) if e.is_cap_violation() => {
                    let mut r = Report::new(
                        crate::report::CommandKind::Verify,
                        inst.spec.to_string(),
                        inst.spec.vertex_count(),
                    );
                    r.skipped = Some(e.to_string());
                    Ok(r)
                }
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let mut summary = SweepSummary {
        instances: reports.len(),
        ..SweepSummary::default()
    };
    for r in &reports {
        if r.skipped.is_some() {
            summary.skipped += 1;
        } else {
            match r.matches {
                Some(true) => summary.matched += 1,
                Some(false) => summary.mismatched += 1,
                None => summary.unknown += 1,
            }
        }
        summary.discrepancies += usize::from(r.discrepancy.is_some());
    }
    Ok(SweepResult {
        instances,
        reports,
        summary,
    })
}

/// `profile` written relative to `α`, e.g. `S^α v S^(α+1)`.
pub fn relative_profile(profile: &HomologyProfile, alpha: usize) -> String {
    if profile.reduced_betti.is_empty() && profile.torsion.is_empty() {
        return "pt".into();
    }
    let mut terms = Vec::new();
    for (&d, &b) in &profile.reduced_betti {
        let offset = i64::from(d) - alpha as i64;
        let term = match offset {
            0 => "S^α".to_string(),
            o if o > 0 => format!("S^(α+{o})"),
            o => format!("S^(α{o})"),
        };
        terms.extend(std::iter::repeat_n(term, b as usize));
    }
    if !profile.torsion.is_empty() {
        terms.push("torsion".into());
    }
    terms.join(" v ")
}

/// The 9×3 residue grid of oracle answers, α-relative. A cell lists every
/// distinct answer seen and marks predictor mismatches with `!`.
pub fn residue_grid(result: &SweepResult) -> Option<String> {
    let mut cells: BTreeMap<GridKey, Vec<String>> = BTreeMap::new();
    for (inst, r) in result.instances.iter().zip(&result.reports) {
        let Some((key, alpha)) = inst.grid else { continue };
        let Some(h) = &r.homology else { continue };
        let mut entry = relative_profile(h, alpha);
        if r.matches == Some(false) {
            entry.push('!');
        }
        let cell = cells.entry(key).or_default();
        if !cell.contains(&entry) {
            cell.push(entry);
        }
    }
    if cells.is_empty() {
        return None;
    }
    let width = 26;
    let mut out = String::new();
    let _ = write!(out, "{:<18}", "");
    for k_mod in 0..3 {
        let _ = write!(out, "{:<width$}", format!("k=3b+{k_mod}"));
    }
    out.push('\n');
    for n_mod in 0..3 {
        for tail_mod in 0..3 {
            let _ = write!(out, "{:<18}", format!("n=3a+{n_mod} m-k=3c+{tail_mod}"));
            for k_mod in 0..3 {
                let key = GridKey { n_mod, tail_mod, k_mod };
                let text = cells.get(&key).map_or("-".to_string(), |c| c.join(" | "));
                let _ = write!(out, " {:<width$}", text);
            }
            out.push('\n');
        }
    }
    Some(out)
}

/// Human-readable table, grid (when applicable) and summary.
pub fn render_text(result: &SweepResult) -> String {
    let mut out = format!(
        "{:<40} {:>3}  {:<18} {:<24} {}\n",
        "spec", "|V|", "predicted", "oracle", "status"
    );
    for r in &result.reports {
        out.push_str(&r.table_row());
        out.push('\n');
    }
    if let Some(grid) = residue_grid(result) {
        out.push_str("\nresidue grid (oracle, α = a+b+c; ! marks a predictor mismatch)\n");
        out.push_str(&grid);
    }
    let s = &result.summary;
    let _ = writeln!(
        out,
        "\n{} instances: {} matched, {} mismatched, {} unknown, {} skipped, {} discrepancy flags",
        s.instances, s.matched, s.mismatched, s.unknown, s.skipped, s.discrepancies
    );
    out
}
