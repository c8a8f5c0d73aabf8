//! Reduced simplicial homology by brute force.
//!
//! Boundary matrices always include the augmentation `∂_0 : C_0 → C_{-1}`, so
//! every Betti number reported here is reduced; `b̃_{-1} = 1` exactly for the
//! complex `{∅}`.

mod collapse;
mod elimination;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, DEFAULT_MAX_FACES};
use crate::error::{Error, Result};
use crate::graph::{bit, bits};
use crate::predictor::HomotopyType;

pub use collapse::{default_budget, is_collapsible, CollapseOutcome, CollapseVerdict};
pub use snf::smith_normal_form;

/// Characteristic of the large prime used when integer elimination is skipped.
pub const FALLBACK_PRIME: u64 = 32003;

/// Largest number of faces in one dimension handled over the integers by
/// [`Coefficients::Auto`].
pub const DEFAULT_INTEGER_FACE_LIMIT: usize = 3000;

/// A boundary map stored column-wise: one sparse column per face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                out[i as usize][j] = x;
            }
        }
        out
    }

    /// `self ∘ inner` is the zero map.
    pub fn composes_to_zero(&self, inner: &BoundaryMatrix) -> bool {
        inner.columns.iter().all(|col| {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for &(mid, x) in col {
                for &(i, y) in &self.columns[mid as usize] {
                    *acc.entry(i).or_default() += x * y;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Ordered face bases and boundary maps of the augmented chain complex.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    /// `bases[d + 1]` lists the `d`-faces in increasing bitmask order.
    pub bases: Vec<Vec<u64>>,
    /// `boundaries[d]` is `∂_d` from `d`-faces to `(d-1)`-faces.
    pub boundaries: Vec<BoundaryMatrix>,
}

impl ChainComplexData {
    pub fn top_dimension(&self) -> i32 {
        self.bases.len() as i32 - 2
    }

    pub fn basis(&self, d: i32) -> &[u64] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.bases.get(i))
            .map_or(&[], |b| b.as_slice())
    }

    pub fn boundary(&self, d: i32) -> Option<&BoundaryMatrix> {
        usize::try_from(d).ok().and_then(|i| self.boundaries.get(i))
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0` in every dimension.
    pub fn is_chain_complex(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].composes_to_zero(&w[1]))
    }
}

/// Builds the augmented boundary matrices with the alternating-sign convention
/// (vertices in increasing index order).
pub fn boundary_matrices(k: &SimplicialComplex) -> Result<ChainComplexData> {
    if k.face_count() > DEFAULT_MAX_FACES {
        return Err(Error::TooManyFaces {
            limit: DEFAULT_MAX_FACES,
        });
    }
    let top = k.dimension();
    let bases: Vec<Vec<u64>> = (-1..=top).map(|d| k.faces_of_dim(d).to_vec()).collect();
    let boundaries = (0..=top)
        .map(|d| {
            let lower = &bases[d as usize];
            let columns = bases[d as usize + 1]
                .iter()
                .map(|&face| {
                    let mut col: Vec<(u32, i64)> = bits(face)
                        .enumerate()
                        .map(|(i, v)| {
                            let facet = face & !bit(v);
                            let row = lower.binary_search(&facet).expect("complex is closed");
                            (row as u32, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable_by_key(|e| e.0);
                    col
                })
                .collect();
            BoundaryMatrix {
                rows: lower.len(),
                columns,
            }
        })
        .collect();
    Ok(ChainComplexData { bases, boundaries })
}

/// Coefficient ring selector for [`reduced_homology`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    /// Exact integer elimination with torsion.
    Integers,
    /// Ranks over `GF(p)`, `p` prime; torsion is not examined.
    PrimeField(u64),
    /// Integers while every dimension has at most `integer_face_limit` faces,
    /// otherwise [`FALLBACK_PRIME`].
    Auto { integer_face_limit: usize },
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::Auto {
            integer_face_limit: DEFAULT_INTEGER_FACE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Reduced Betti numbers and torsion of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// Nonzero reduced Betti numbers by dimension.
    pub reduced_betti: BTreeMap<i32, u64>,
    /// Nonempty torsion coefficient lists by dimension.
    #[serde(with = "decimal_torsion")]
    pub torsion: BTreeMap<i32, Vec<BigUint>>,
    pub ring: CoefficientRing,
    /// False when the field fallback was used and torsion was not examined.
    pub torsion_checked: bool,
}

impl HomologyProfile {
    /// Profile of a torsion-free space with the given Betti numbers.
    pub fn free(reduced_betti: impl IntoIterator<Item = (i32, u64)>) -> Self {
        Self {
            reduced_betti: reduced_betti.into_iter().filter(|&(_, b)| b > 0).collect(),
            torsion: BTreeMap::new(),
            ring: CoefficientRing::Integers,
            torsion_checked: true,
        }
    }

    pub fn zero() -> Self {
        Self::free([])
    }

    pub fn betti(&self, d: i32) -> u64 {
        self.reduced_betti.get(&d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.reduced_betti.is_empty() && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    /// `Σ (-1)^d b̃_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_betti
            .iter()
            .map(|(&d, &b)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Same Betti numbers and torsion, ignoring how they were computed.
    pub fn same_homology(&self, other: &Self) -> bool {
        self.reduced_betti == other.reduced_betti && self.torsion == other.torsion
    }

    /// Dimensions where Betti numbers or torsion differ.
    pub fn mismatched_dimensions(&self, other: &Self) -> Vec<i32> {
        let mut dims: Vec<i32> = self
            .reduced_betti
            .keys()
            .chain(other.reduced_betti.keys())
            .chain(self.torsion.keys())
            .chain(other.torsion.keys())
            .copied()
            .filter(|d| {
                self.betti(*d) != other.betti(*d) || self.torsion.get(d) != other.torsion.get(d)
            })
            .collect();
        dims.sort_unstable();
        dims.dedup();
        dims
    }

    /// Betti vector `(b̃_0, b̃_1, ..., b̃_top)` for display.
    pub fn betti_vector(&self) -> Vec<u64> {
        let top = self.reduced_betti.keys().next_back().copied().unwrap_or(0).max(0);
        (0..=top).map(|d| self.betti(d)).collect()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reduced_betti.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .reduced_betti
                .iter()
                .map(|(d, b)| format!("b{d}={b}"))
                .collect();
            write!(f, "{}", parts.join(" "))?;
        }
        for (d, t) in &self.torsion {
            let t: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            write!(f, " torsion{d}=[{}]", t.join(","))?;
        }
        if !self.torsion_checked {
            write!(f, " (torsion unchecked)")?;
        }
        Ok(())
    }
}

/// Reduced homology of `k`.
pub fn reduced_homology(k: &SimplicialComplex, coeffs: Coefficients) -> Result<HomologyProfile> {
    let chain = boundary_matrices(k)?;
    Ok(homology_of_chain(&chain, coeffs))
}

pub fn homology_of_chain(chain: &ChainComplexData, coeffs: Coefficients) -> HomologyProfile {
    let ring = match coeffs {
        Coefficients::Integers => CoefficientRing::Integers,
        Coefficients::PrimeField(p) => CoefficientRing::PrimeField(p),
        Coefficients::Auto { integer_face_limit } => {
            if chain.bases.iter().all(|b| b.len() <= integer_face_limit) {
                CoefficientRing::Integers
            } else {
                CoefficientRing::PrimeField(FALLBACK_PRIME)
            }
        }
    };
    let top = chain.top_dimension();
    // ranks[d] = rank of ∂_d, d in 0..=top; torsion of ∂_{d+1} lands in H_d
    let mut ranks = Vec::with_capacity(chain.boundaries.len());
    let mut torsion = BTreeMap::new();
    for (d, m) in chain.boundaries.iter().enumerate() {
        match ring {
            CoefficientRing::Integers => {
                let e = elimination::integer_elimination(&m.columns, m.rows);
                ranks.push(e.rank);
                if !e.torsion.is_empty() {
                    let t: Vec<BigUint> = e
                        .torsion
                        .into_iter()
                        .map(|x: BigInt| x.magnitude().clone())
                        .collect();
                    torsion.insert(d as i32 - 1, t);
                }
            }
            CoefficientRing::PrimeField(p) => {
                ranks.push(elimination::field_rank(p, &m.columns, m.rows));
            }
        }
    }
    let rank = |d: i32| -> usize {
        usize::try_from(d)
            .ok()
            .and_then(|i| ranks.get(i).copied())
            .unwrap_or(0)
    };
    let reduced_betti = (-1..=top)
        .map(|d| {
            let cycles = chain.basis(d).len() - rank(d);
            (d, (cycles - rank(d + 1)) as u64)
        })
        .filter(|&(_, b)| b > 0)
        .collect();
    HomologyProfile {
        reduced_betti,
        torsion,
        ring,
        torsion_checked: ring == CoefficientRing::Integers,
    }
}

/// Reduced Betti numbers over `GF(p)`.
pub fn field_betti(k: &SimplicialComplex, p: u64) -> Result<BTreeMap<i32, u64>> {
    Ok(reduced_homology(k, Coefficients::PrimeField(p))?.reduced_betti)
}

/// Checks that torsion-free integer homology agrees with `GF(2)` and
/// `GF(32003)` Betti numbers (universal coefficients). Returns `true` when the
/// integer profile has torsion, since the check does not apply.
pub fn fields_agree_with_integers(k: &SimplicialComplex, integral: &HomologyProfile) -> Result<bool> {
    if integral.ring != CoefficientRing::Integers || integral.has_torsion() {
        return Ok(true);
    }
    for p in [2, FALLBACK_PRIME] {
        if field_betti(k, p)? != integral.reduced_betti {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Homology a space of the given homotopy type must have.
pub fn profile_of_type(t: &HomotopyType) -> Result<HomologyProfile> {
    match t {
        HomotopyType::Contractible => Ok(HomologyProfile::zero()),
        HomotopyType::JoinIdentity => Ok(HomologyProfile::free([(-1, 1)])),
        HomotopyType::WedgeOfSpheres(dims) => {
            let mut betti: BTreeMap<i32, u64> = BTreeMap::new();
            for &d in dims {
                *betti.entry(d as i32).or_default() += 1;
            }
            Ok(HomologyProfile::free(betti))
        }
        HomotopyType::Unknown => Err(Error::UnknownType),
    }
}

/// Torsion coefficients as decimal strings, so readers need no bignum support.
mod decimal_torsion {
    use std::collections::BTreeMap;

    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &BTreeMap<i32, Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
        t.iter()
            .map(|(&d, cs)| (d, cs.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i32, Vec<BigUint>>, D::Error> {
        BTreeMap::<i32, Vec<String>>::deserialize(d)?
            .into_iter()
            .map(|(dim, cs)| {
                let parsed = cs
                    .iter()
                    .map(|c| c.parse::<BigUint>().map_err(D::Error::custom))
                    .collect::<Result<_, _>>()?;
                Ok((dim, parsed))
            })
            .collect()
    }
}

/// Outcome of comparing a complex against a claimed homotopy type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub mismatched_dimensions: Vec<i32>,
    pub observed: HomologyProfile,
    pub expected: HomologyProfile,
}

/// Integer homology of `k` equals the homology of `t`, torsion included.
pub fn is_homology_consistent(k: &SimplicialComplex, t: &HomotopyType) -> Result<ConsistencyReport> {
    is_homology_consistent_with(k, t, Coefficients::Integers)
}

pub fn is_homology_consistent_with(
    k: &SimplicialComplex,
    t: &HomotopyType,
    coeffs: Coefficients,
) -> Result<ConsistencyReport> {
    let expected = profile_of_type(t)?;
    let observed = reduced_homology(k, coeffs)?;
    Ok(compare_profiles(observed, expected))
}

pub fn compare_profiles(observed: HomologyProfile, expected: HomologyProfile) -> ConsistencyReport {
    let mismatched_dimensions = observed.mismatched_dimensions(&expected);
    ConsistencyReport {
        consistent: mismatched_dimensions.is_empty(),
        mismatched_dimensions,
        observed,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::graph::{cycle, path};

    fn homology(k: &SimplicialComplex) -> HomologyProfile {
        reduced_homology(k, Coefficients::Integers).unwrap()
    }

    #[test]
    fn two_point_augmentation() {
        let chain = boundary_matrices(&SimplicialComplex::points(2).unwrap()).unwrap();
        assert_eq!(chain.boundary(0).unwrap().to_dense(), vec![vec![1, 1]]);
    }

    #[test]
    fn edge_boundary_signs() {
        let chain = boundary_matrices(&SimplicialComplex::simplex(2).unwrap()).unwrap();
        assert_eq!(chain.basis(0), &[0b01, 0b10]);
        assert_eq!(chain.boundary(1).unwrap().to_dense(), vec![vec![-1], vec![1]]);
        assert!(chain.is_chain_complex());
    }

    #[test]
    fn boundary_squares_to_zero_on_families() {
        for m in 0..12 {
            let k = independence_complex(&path(m).unwrap()).unwrap();
            assert!(boundary_matrices(&k).unwrap().is_chain_complex());
        }
        let k = SimplicialComplex::simplex(6).unwrap();
        assert!(boundary_matrices(&k).unwrap().is_chain_complex());
    }

    #[test]
    fn path_and_cycle_examples() {
        let p3 = homology(&independence_complex(&path(3).unwrap()).unwrap());
        assert_eq!(p3, HomologyProfile::free([(0, 1)]));
        let c6 = homology(&independence_complex(&cycle(6).unwrap()).unwrap());
        assert_eq!(c6, HomologyProfile::free([(1, 2)]));
        let p4 = homology(&independence_complex(&path(4).unwrap()).unwrap());
        assert!(p4.is_zero());
    }

    #[test]
    fn join_unit_has_minus_one_class() {
        let h = homology(&SimplicialComplex::empty_face_only(3));
        assert_eq!(h, HomologyProfile::free([(-1, 1)]));
        assert_eq!(h.euler_characteristic(), -1);
    }

    #[test]
    fn cone_is_acyclic() {
        let k = independence_complex(&cycle(7).unwrap()).unwrap();
        assert!(homology(&k.cone().unwrap()).is_zero());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex triangulation of RP^2
        let tris: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ];
        let k = SimplicialComplex::from_maximal_faces(
            6,
            tris.iter().map(|t| t.iter().fold(0u64, |a, &v| a | bit(v))),
        )
        .unwrap();
        let h = homology(&k);
        assert!(h.reduced_betti.is_empty());
        assert_eq!(h.torsion.get(&1), Some(&vec![BigUint::from(2u32)]));
        assert_eq!(field_betti(&k, 2).unwrap(), BTreeMap::from([(1, 1), (2, 1)]));
        assert!(field_betti(&k, FALLBACK_PRIME).unwrap().is_empty());
        // torsion present: the field comparison does not apply
        assert!(fields_agree_with_integers(&k, &h).unwrap());
    }

    #[test]
    fn auto_falls_back_to_field() {
        let k = independence_complex(&path(11).unwrap()).unwrap();
        let h = reduced_homology(&k, Coefficients::Auto { integer_face_limit: 5 }).unwrap();
        assert_eq!(h.ring, CoefficientRing::PrimeField(FALLBACK_PRIME));
        assert!(!h.torsion_checked);
        assert_eq!(h.reduced_betti, BTreeMap::from([(3, 1)]));
        let h = reduced_homology(&k, Coefficients::default()).unwrap();
        assert_eq!(h.ring, CoefficientRing::Integers);
    }

    #[test]
    fn profile_of_type_examples() {
        let two_points = HomotopyType::wedge([0, 0]);
        assert_eq!(profile_of_type(&two_points).unwrap().betti(0), 2);
        let p = profile_of_type(&HomotopyType::wedge([1, 2])).unwrap();
        assert_eq!((p.betti(1), p.betti(2)), (1, 1));
        assert!(profile_of_type(&HomotopyType::Contractible).unwrap().is_zero());
        assert!(matches!(profile_of_type(&HomotopyType::Unknown), Err(Error::UnknownType)));
    }

    #[test]
    fn consistency_examples() {
        let c4 = independence_complex(&cycle(4).unwrap()).unwrap();
        assert!(is_homology_consistent(&c4, &HomotopyType::sphere(0)).unwrap().consistent);
        let p4 = independence_complex(&path(4).unwrap()).unwrap();
        assert!(is_homology_consistent(&p4, &HomotopyType::Contractible).unwrap().consistent);
        let p5 = independence_complex(&path(5).unwrap()).unwrap();
        let r = is_homology_consistent(&p5, &HomotopyType::Contractible).unwrap();
        assert!(!r.consistent);
        assert_eq!(r.mismatched_dimensions, vec![1]);
    }
}
