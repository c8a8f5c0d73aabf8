//! Closed-form homotopy types of independence complexes for paths, cycles
//! and their wedges, with symbolic join/suspension/wedge arithmetic.

mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use verify::{verify, verify_with, VerificationReport, VerifyOptions};

/// Homotopy type of a wedge of spheres, up to the information the predictor
/// tracks.
///
/// `WedgeOfSpheres` dimensions are kept sorted and are never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum HomotopyType {
    Contractible,
    /// `S^{-1} = {∅}`, the unit for joins.
    JoinIdentity,
    WedgeOfSpheres(Vec<u32>),
    Unknown,
}

impl HomotopyType {
    pub fn sphere(d: u32) -> Self {
        HomotopyType::WedgeOfSpheres(vec![d])
    }

    /// Wedge of spheres of the given dimensions; an empty list is contractible.
    pub fn wedge(dims: impl IntoIterator<Item = u32>) -> Self {
        let mut dims: Vec<u32> = dims.into_iter().collect();
        if dims.is_empty() {
            return HomotopyType::Contractible;
        }
        dims.sort_unstable();
        HomotopyType::WedgeOfSpheres(dims)
    }

    /// Sphere of dimension `d ≥ -1`.
    pub fn sphere_or_unit(d: i64) -> Self {
        if d < 0 {
            HomotopyType::JoinIdentity
        } else {
            HomotopyType::sphere(d as u32)
        }
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, HomotopyType::Contractible)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, HomotopyType::Unknown)
    }

    /// Point or a single sphere.
    pub fn is_point_or_sphere(&self) -> bool {
        match self {
            HomotopyType::Contractible => true,
            HomotopyType::WedgeOfSpheres(d) => d.len() == 1,
            _ => false,
        }
    }

    pub fn sphere_dimensions(&self) -> &[u32] {
        match self {
            HomotopyType::WedgeOfSpheres(d) => d,
            _ => &[],
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Contractible => write!(f, "pt"),
            HomotopyType::JoinIdentity => write!(f, "S^-1"),
            HomotopyType::Unknown => write!(f, "unknown"),
            HomotopyType::WedgeOfSpheres(dims) => {
                let parts: Vec<String> = dims.iter().map(|d| format!("S^{d}")).collect();
                write!(f, "{}", parts.join(" v "))
            }
        }
    }
}

impl FromStr for HomotopyType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("not a homotopy type: {s:?}"));
        match s.trim() {
            "pt" => return Ok(HomotopyType::Contractible),
            "S^-1" => return Ok(HomotopyType::JoinIdentity),
            "unknown" => return Ok(HomotopyType::Unknown),
            _ => {}
        }
        let dims = s
            .split(" v ")
            .map(|part| {
                part.trim()
                    .strip_prefix("S^")
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(HomotopyType::wedge(dims))
    }
}

impl From<HomotopyType> for String {
    fn from(t: HomotopyType) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for HomotopyType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Join. `Unknown` propagates, `Contractible` absorbs, `JoinIdentity` is the unit.
pub fn ht_join(t1: &HomotopyType, t2: &HomotopyType) -> HomotopyType {
    use HomotopyType::*;
    match (t1, t2) {
        (Unknown, _) | (_, Unknown) => Unknown,
        (Contractible, _) | (_, Contractible) => Contractible,
        (JoinIdentity, t) | (t, JoinIdentity) => t.clone(),
        (WedgeOfSpheres(a), WedgeOfSpheres(b)) => {
            HomotopyType::wedge(a.iter().flat_map(|x| b.iter().map(move |y| x + y + 1)))
        }
    }
}

/// Join of any number of types; the empty join is `JoinIdentity`.
pub fn ht_join_all<'a>(types: impl IntoIterator<Item = &'a HomotopyType>) -> HomotopyType {
    types
        .into_iter()
        .fold(HomotopyType::JoinIdentity, |acc, t| ht_join(&acc, t))
}

/// Suspension, i.e. join with `S^0`.
pub fn ht_suspend(t: &HomotopyType) -> HomotopyType {
    ht_join(t, &HomotopyType::sphere(0))
}

/// Wedge sum. `Contractible` is the unit; `JoinIdentity` has no wedge.
pub fn ht_wedge(t1: &HomotopyType, t2: &HomotopyType) -> Result<HomotopyType> {
    use HomotopyType::*;
    match (t1, t2) {
        (JoinIdentity, _) | (_, JoinIdentity) => Err(Error::WedgeWithJoinIdentity),
        (Unknown, _) | (_, Unknown) => Ok(Unknown),
        (Contractible, t) | (t, Contractible) => Ok(t.clone()),
        (WedgeOfSpheres(a), WedgeOfSpheres(b)) => {
            Ok(HomotopyType::wedge(a.iter().chain(b).copied()))
        }
    }
}

/// `I(P_m)`: `S^{k-1}` for `m = 3k`, a point for `3k+1`, `S^k` for `3k+2`.
pub fn predict_path(m: u32) -> HomotopyType {
    let k = m / 3;
    match m % 3 {
        0 => HomotopyType::sphere_or_unit(k as i64 - 1),
        1 => HomotopyType::Contractible,
        _ => HomotopyType::sphere(k),
    }
}

/// `I` of a path segment with `len` vertices, where `len = -1` denotes an
/// empty segment produced by removing a neighbour that does not exist.
pub fn predict_segment(len: i64) -> Result<HomotopyType> {
    match len {
        -1 => Ok(HomotopyType::JoinIdentity),
        l if l >= 0 => Ok(predict_path(l as u32)),
        l => Err(Error::InvalidParameter(format!("segment length {l} below -1"))),
    }
}

/// `I(C_n)`: `S^{k-1} v S^{k-1}` for `n = 3k`, `S^{k-1}` for `3k+1`, `S^k` for `3k+2`.
pub fn predict_cycle(n: u32) -> Result<HomotopyType> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let k = n / 3;
    Ok(match n % 3 {
        0 => HomotopyType::wedge([k - 1, k - 1]),
        1 => HomotopyType::sphere(k - 1),
        _ => HomotopyType::sphere(k),
    })
}

/// `P_m` wedged at its terminal vertex `a_m` with vertex `b_l` of `P_n`.
pub fn predict_path_wedge_path(m: u32, n: u32, l: u32) -> Result<HomotopyType> {
    if m == 0 || n == 0 || l == 0 || l > n {
        return Err(Error::InvalidParameter(format!(
            "path wedge needs m, n >= 1 and 1 <= l <= n, got m={m}, n={n}, l={l}"
        )));
    }
    if l == 1 || l == n {
        return Ok(predict_path(m + n - 1));
    }
    let s0 = HomotopyType::sphere(0);
    Ok(match m {
        1 => predict_path(n),
        2 => ht_join(&predict_path(l - 2), &predict_path(n - l + 2)),
        3 => ht_join_all([&s0, &predict_path(l - 1), &predict_path(n - l)]),
        _ => ht_join(&s0, &predict_path_wedge_path(m - 3, n, l)?),
    })
}

/// Deletion and link types of the wedge point in `I(C_{m_1} v ... v C_{m_t})`.
///
/// Removing the wedge point leaves the paths `P_{m_i - 1}`; removing its
/// closed neighbourhood leaves `P_{m_i - 3}`.
pub fn cycle_wedge_parts(ms: &[u32]) -> Result<(HomotopyType, HomotopyType)> {
    if ms.is_empty() {
        return Err(Error::InvalidParameter("cycle wedge needs at least one cycle".into()));
    }
    if let Some(&m) = ms.iter().find(|&&m| m < 3) {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {m}")));
    }
    let del: Vec<HomotopyType> = ms.iter().map(|&m| predict_path(m - 1)).collect();
    let lk: Vec<HomotopyType> = ms.iter().map(|&m| predict_path(m - 3)).collect();
    Ok((ht_join_all(&del), ht_join_all(&lk)))
}

/// `I` of cycles wedged at one common vertex: `del v Σ lk` of the wedge point.
pub fn predict_cycle_wedges(ms: &[u32]) -> Result<HomotopyType> {
    let (del, lk) = cycle_wedge_parts(ms)?;
    ht_wedge(&del, &ht_suspend(&lk))
}

/// Residue families used to organise the two-cycle case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoCycleCase {
    /// One of `m, n` divisible by 3.
    MultipleOfThree,
    /// `m ≡ n ≡ 1`.
    BothOne,
    /// `m ≡ 2`, `n ≡ 1`.
    TwoOne,
    /// `m ≡ 1`, `n ≡ 2`.
    OneTwo,
    /// `m ≡ n ≡ 2`.
    BothTwo,
}

impl TwoCycleCase {
    pub const ALL: [TwoCycleCase; 5] = [
        TwoCycleCase::MultipleOfThree,
        TwoCycleCase::BothOne,
        TwoCycleCase::TwoOne,
        TwoCycleCase::OneTwo,
        TwoCycleCase::BothTwo,
    ];

    pub fn classify(m: u32, n: u32) -> Self {
        match (m % 3, n % 3) {
            (0, _) | (_, 0) => TwoCycleCase::MultipleOfThree,
            (1, 1) => TwoCycleCase::BothOne,
            (2, 1) => TwoCycleCase::TwoOne,
            (1, 2) => TwoCycleCase::OneTwo,
            _ => TwoCycleCase::BothTwo,
        }
    }
}

/// `C_n` wedged at its vertex `a_1` with vertex `b_k` of `P_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWedgePathParams {
    pub n: u32,
    pub m: u32,
    pub k: u32,
}

/// `x = 3q + r` split into quotient and residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    pub quotient: u32,
    pub rem: u32,
}

impl Residue {
    pub fn of(x: u32) -> Self {
        Self {
            quotient: x / 3,
            rem: x % 3,
        }
    }
}

impl CycleWedgePathParams {
    pub fn new(n: u32, m: u32, k: u32) -> Result<Self> {
        if n < 3 || k == 0 || k > m {
            return Err(Error::InvalidParameter(format!(
                "cycle-path wedge needs n >= 3 and 1 <= k <= m, got n={n}, m={m}, k={k}"
            )));
        }
        Ok(Self { n, m, k })
    }

    /// Builds the instance `n = 3a + rn`, `k = 3b + rk`, `m - k = 3c + rc`.
    pub fn from_residues(a: u32, rn: u32, b: u32, rk: u32, c: u32, rc: u32) -> Result<Self> {
        let n = 3 * a + rn;
        let k = 3 * b + rk;
        Self::new(n, k + 3 * c + rc, k)
    }

    /// Residues of `n`, `k` and `m - k`.
    pub fn residues(&self) -> (Residue, Residue, Residue) {
        (Residue::of(self.n), Residue::of(self.k), Residue::of(self.m - self.k))
    }

    /// `α = a + b + c`.
    pub fn alpha(&self) -> u32 {
        let (a, b, c) = self.residues();
        a.quotient + b.quotient + c.quotient
    }

    pub fn vertex_count(&self) -> u32 {
        self.n + self.m - 1
    }
}

/// Deletion and link types of the wedge point in `I(C_n v P_m)`.
pub fn cycle_wedge_path_parts(p: &CycleWedgePathParams) -> Result<(HomotopyType, HomotopyType)> {
    let p = CycleWedgePathParams::new(p.n, p.m, p.k)?;
    let (n, m, k) = (p.n as i64, p.m as i64, p.k as i64);
    let del = ht_join_all(&[
        predict_segment(n - 1)?,
        predict_segment(k - 1)?,
        predict_segment(m - k)?,
    ]);
    let lk = ht_join_all(&[
        predict_segment(n - 3)?,
        predict_segment(k - 2)?,
        predict_segment(m - k - 1)?,
    ]);
    Ok((del, lk))
}

pub fn predict_cycle_wedge_path(p: &CycleWedgePathParams) -> Result<HomotopyType> {
    let (del, lk) = cycle_wedge_path_parts(p)?;
    ht_wedge(&del, &ht_suspend(&lk))
}

/// Which case of the terminal path wedge analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalCase {
    /// Some arm has length divisible by 3.
    MultipleOfThree,
    /// Every arm has length `≡ 1`.
    AllOne,
    /// Every arm has length `≡ 2`.
    AllTwo,
    /// Arms of length `≡ 1` and `≡ 2` both occur, none `≡ 0`.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalPrediction {
    pub case: TerminalCase,
    /// The closed form stated for the case.
    pub case_formula: HomotopyType,
    /// The type obtained by carrying out the fold reduction.
    pub fold_derived: HomotopyType,
    pub discrepancy: bool,
}

impl TerminalPrediction {
    /// The answer used for verification.
    pub fn prediction(&self) -> &HomotopyType {
        &self.fold_derived
    }
}

/// Paths `P_{m_i}` glued at a common endpoint.
pub fn predict_terminal_path_wedge(ms: &[u32]) -> Result<TerminalPrediction> {
    if ms.len() < 2 {
        return Err(Error::InvalidParameter("terminal wedge needs at least two arms".into()));
    }
    if ms.contains(&0) {
        return Err(Error::InvalidParameter("path arms need at least one vertex".into()));
    }
    let l_sum: u32 = ms.iter().map(|m| m / 3).sum();
    let case = if ms.iter().any(|m| m % 3 == 0) {
        TerminalCase::MultipleOfThree
    } else if ms.iter().all(|m| m % 3 == 1) {
        TerminalCase::AllOne
    } else if ms.iter().all(|m| m % 3 == 2) {
        TerminalCase::AllTwo
    } else {
        TerminalCase::Mixed
    };
    let (case_formula, fold_derived) = match case {
        TerminalCase::MultipleOfThree => {
            // strip the first such arm down to P_3 and fold the wedge point away
            let i = ms.iter().position(|m| m % 3 == 0).expect("case requires one");
            let mut factors = vec![HomotopyType::sphere(0); (ms[i] / 3) as usize];
            factors.extend(
                ms.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &m)| predict_path(m - 1)),
            );
            let t = ht_join_all(&factors);
            (t.clone(), t)
        }
        TerminalCase::AllOne => (HomotopyType::Contractible, HomotopyType::Contractible),
        TerminalCase::AllTwo => (HomotopyType::sphere(l_sum), HomotopyType::sphere(l_sum)),
        // the remaining pendants and the wedge point form a star, I(star) ≃ S^0
        TerminalCase::Mixed => (
            HomotopyType::sphere_or_unit(l_sum as i64 - 1),
            HomotopyType::sphere(l_sum),
        ),
    };
    Ok(TerminalPrediction {
        case,
        discrepancy: case_formula != fold_derived,
        case_formula,
        fold_derived,
    })
}
