//! Abstract simplicial complexes stored as explicit face lists.
//!
//! Faces are `u64` vertex bitmasks. The empty face is always present, so the
//! smallest representable complex is `{∅}` (the join unit, playing the role
//! of `S^-1`). Ambient vertices need not be 0-faces: link and deletion keep the
//! ambient vertex count and simply lose faces.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, full_mask, Graph, MAX_VERTICES};

/// Default cap on the number of stored faces.
pub const DEFAULT_MAX_FACES: usize = 1 << 20;

#[inline]
pub(crate) fn face_dim(face: u64) -> i32 {
    face.count_ones() as i32 - 1
}

#[inline]
fn face_key(face: u64) -> (u32, u64) {
    (face.count_ones(), face)
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Sorted by (dimension, mask).
    faces: Vec<u64>,
    members: HashSet<u64>,
    maximal: Vec<u64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

/// Number of faces per dimension; entry 0 counts the empty face (dimension -1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    /// Faces of dimension `d` (`d >= -1`).
    pub fn get(&self, d: i32) -> u64 {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.counts.get(i).copied())
            .unwrap_or(0)
    }

    /// Reduced Euler characteristic `Σ_{d>=-1} (-1)^d f_d`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }
}

impl SimplicialComplex {
    /// Builds from a face list already known to be downward closed and to
    /// contain `∅`.
    fn from_closed(vertex_count: usize, mut faces: Vec<u64>) -> Self {
        faces.sort_unstable_by_key(|&f| face_key(f));
        faces.dedup();
        let members: HashSet<u64> = faces.iter().copied().collect();
        debug_assert!(members.contains(&0));
        let maximal = faces
            .iter()
            .copied()
            .filter(|&f| {
                bits(full_mask(vertex_count) & !f).all(|v| !members.contains(&(f | bit(v))))
            })
            .collect();
        Self {
            vertex_count,
            faces,
            members,
            maximal,
        }
    }

    /// Validating constructor: every subset of every face must be listed.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut list: Vec<u64> = faces.into_iter().collect();
        list.push(0);
        let set: HashSet<u64> = list.iter().copied().collect();
        for &f in &set {
            if f & !full_mask(vertex_count) != 0 {
                return Err(Error::NotDownwardClosed(format!(
                    "face {f:#b} uses vertices outside 0..{vertex_count}"
                )));
            }
            if let Some(v) = bits(f).find(|&v| !set.contains(&(f & !bit(v)))) {
                return Err(Error::NotDownwardClosed(format!(
                    "face {f:#b} is listed but its facet without vertex {v} is not"
                )));
            }
        }
        Ok(Self::from_closed(vertex_count, set.into_iter().collect()))
    }

    /// Downward closure of the given faces.
    pub fn from_maximal_faces(
        vertex_count: usize,
        generators: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        Self::from_maximal_faces_capped(vertex_count, generators, DEFAULT_MAX_FACES)
    }

    pub fn from_maximal_faces_capped(
        vertex_count: usize,
        generators: impl IntoIterator<Item = u64>,
        max_faces: usize,
    ) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut set: HashSet<u64> = HashSet::new();
        set.insert(0);
        for g in generators {
            if g & !full_mask(vertex_count) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "generator {g:#b} uses vertices outside 0..{vertex_count}"
                )));
            }
            // enumerate submasks of g
            let mut s = g;
            loop {
                set.insert(s);
                if set.len() > max_faces {
                    return Err(Error::TooManyFaces { limit: max_faces });
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & g;
            }
        }
        Ok(Self::from_closed(vertex_count, set.into_iter().collect()))
    }

    /// `{∅}` on `vertex_count` ambient vertices.
    pub fn empty_face_only(vertex_count: usize) -> Self {
        Self::from_closed(vertex_count, vec![0])
    }

    /// Full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_maximal_faces(n, [full_mask(n)])
    }

    /// `n` isolated points (`n = 2` is `S^0`).
    pub fn points(n: usize) -> Result<Self> {
        Self::from_maximal_faces(n, (0..n).map(bit))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// All faces, sorted by dimension then bitmask; `∅` first.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces of dimension `d` (a contiguous, mask-sorted slice).
    pub fn faces_of_dim(&self, d: i32) -> &[u64] {
        let size = (d + 1) as u32;
        let lo = self.faces.partition_point(|&f| f.count_ones() < size);
        let hi = self.faces.partition_point(|&f| f.count_ones() <= size);
        &self.faces[lo..hi]
    }

    pub fn maximal_faces(&self) -> &[u64] {
        &self.maximal
    }

    pub fn contains(&self, face: u64) -> bool {
        self.members.contains(&face)
    }

    pub fn is_maximal(&self, face: u64) -> bool {
        self.contains(face)
            && bits(full_mask(self.vertex_count) & !face).all(|v| !self.contains(face | bit(v)))
    }

    /// Dimension of the complex (`-1` for `{∅}`).
    pub fn dimension(&self) -> i32 {
        self.faces.last().map_or(-1, |&f| face_dim(f))
    }

    /// Vertices that are 0-faces.
    pub fn support(&self) -> u64 {
        self.faces_of_dim(0).iter().fold(0, |acc, &f| acc | f)
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; (self.dimension() + 2) as usize];
        for &f in &self.faces {
            counts[f.count_ones() as usize] += 1;
        }
        FVector { counts }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().reduced_euler_characteristic()
    }

    /// Exhaustive check that every facet of every face is present.
    pub fn is_downward_closed(&self) -> bool {
        self.contains(0)
            && self
                .faces
                .iter()
                .all(|&f| bits(f).all(|v| self.contains(f & !bit(v))))
    }

    /// `lk(v, K) = { σ : v ∉ σ, σ ∪ {v} ∈ K }`.
    pub fn link(&self, v: usize) -> Result<Self> {
        if v >= self.vertex_count || !self.contains(bit(v)) {
            return Err(Error::NotAFace { vertex: v });
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&f| f & bit(v) == 0 && self.contains(f | bit(v)))
            .collect();
        Ok(Self::from_closed(self.vertex_count, faces))
    }

    /// `del(v, K) = { σ ∈ K : v ∉ σ }`.
    pub fn deletion(&self, v: usize) -> Self {
        if v >= self.vertex_count || !self.contains(bit(v)) {
            return self.clone();
        }
        let faces = self.faces.iter().copied().filter(|&f| f & bit(v) == 0).collect();
        Self::from_closed(self.vertex_count, faces)
    }

    /// Removes one maximal face; the result is still a complex.
    pub fn without_maximal_face(&self, sigma: u64) -> Result<Self> {
        if !self.is_maximal(sigma) || sigma == 0 {
            return Err(Error::InvalidParameter(format!(
                "{sigma:#b} is not a non-empty maximal face"
            )));
        }
        let faces = self.faces.iter().copied().filter(|&f| f != sigma).collect();
        Ok(Self::from_closed(self.vertex_count, faces))
    }

    /// Join on the disjoint union of vertex sets; `other`'s vertices are shifted
    /// by `self.vertex_count()`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.join_capped(other, DEFAULT_MAX_FACES)
    }

    pub fn join_capped(&self, other: &Self, max_faces: usize) -> Result<Self> {
        let n = self.vertex_count + other.vertex_count;
        check_vertex_count(n)?;
        if self.faces.len().saturating_mul(other.faces.len()) > max_faces {
            return Err(Error::TooManyFaces { limit: max_faces });
        }
        let shift = self.vertex_count;
        let mut faces = Vec::with_capacity(self.faces.len() * other.faces.len());
        for &a in &self.faces {
            for &b in &other.faces {
                faces.push(a | (b << shift));
            }
        }
        Ok(Self::from_closed(n, faces))
    }

    /// Join with two disjoint points.
    pub fn suspension(&self) -> Result<Self> {
        self.join(&Self::points(2)?)
    }

    /// Join with one point.
    pub fn cone(&self) -> Result<Self> {
        self.join(&Self::points(1)?)
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            count: n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// The complex of independent vertex sets of `g`.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex> {
    independence_complex_capped(g, DEFAULT_MAX_FACES)
}

pub fn independence_complex_capped(g: &Graph, max_faces: usize) -> Result<SimplicialComplex> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut faces = vec![0u64];
    // each stack entry: (face, candidates that may still be added, all above the face's max vertex)
    let mut stack = vec![(0u64, full_mask(n))];
    while let Some((face, cand)) = stack.pop() {
        for v in bits(cand) {
            let next = face | bit(v);
            faces.push(next);
            if faces.len() > max_faces {
                return Err(Error::TooManyFaces { limit: max_faces });
            }
            let rest = cand & !full_mask(v + 1) & !adj[v];
            if rest != 0 {
                stack.push((next, rest));
            }
        }
    }
    Ok(SimplicialComplex::from_closed(n, faces))
}
