//! Finite simple graphs on at most 64 vertices.
//!
//! Vertices are dense indices `0..n`; adjacency is one `u64` bitmask per
//! vertex so neighbourhood tests and independent-set checks are single word
//! operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of vertices of a [`Graph`].
pub const MAX_VERTICES: usize = 64;

/// Default vertex bound for exhaustive chromatic-number search.
pub const DEFAULT_CHROMATIC_BOUND: usize = 12;

/// Largest graph accepted by [`Graph::is_isomorphic`].
pub const ISOMORPHISM_BOUND: usize = 10;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterates over the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Bitmask of a vertex list.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

/// Serialized form: vertex count, sorted edge list and optional labels.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertex_count: g.vertex_count(),
            edges: g.edges(),
            labels: g.labels,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let g = Graph::from_edges(r.vertex_count, &r.edges)?;
        match r.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(Self {
            adj: vec![0; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>, labels: Option<Vec<String>>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Self { adj, labels }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, &a) in self.adj.iter().enumerate() {
            for v in bits(a >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Bitmask of all vertices.
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.vertex_count())
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbor_mask(&self, v: usize) -> Result<u64> {
        self.check_vertex(v)?;
        Ok(self.adj[v])
    }

    /// Neighbourhood of `v` as a sorted vertex list.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        Ok(bits(self.neighbor_mask(v)?).collect())
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// True iff no edge lies inside `mask`.
    pub fn is_independent(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    /// Subgraph induced on `mask`, renumbered in increasing index order.
    /// Labels are carried over (unlabelled graphs get their old indices as labels).
    pub fn induced_subgraph(&self, mask: u64) -> Self {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |acc, u| acc | bit(pos[u])))
            .collect();
        let labels = keep.iter().map(|&v| self.label(v)).collect();
        Self::from_adjacency(adj, Some(labels))
    }

    /// `G` with vertex `w` (and its edges) removed.
    pub fn remove_vertex(&self, w: usize) -> Result<Self> {
        self.check_vertex(w)?;
        Ok(self.induced_subgraph(self.vertex_mask() & !bit(w)))
    }

    /// Connected components of the subgraph induced on `alive`, as masks
    /// ordered by smallest vertex.
    pub fn components_within(&self, alive: u64) -> Vec<u64> {
        let mut rest = alive & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= alive & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Smallest `k` admitting a proper `k`-colouring, by exhaustive search.
    pub fn chromatic_number(&self) -> Result<usize> {
        self.chromatic_number_bounded(DEFAULT_CHROMATIC_BOUND)
    }

    pub fn chromatic_number_bounded(&self, bound: usize) -> Result<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "chromatic number of the empty graph".into(),
            ));
        }
        if n > bound {
            return Err(Error::RefusedSize { count: n, bound });
        }
        let mut colors = vec![usize::MAX; n];
        for k in 1..n {
            if color_from(self, 0, k, &mut colors) {
                return Ok(k);
            }
        }
        Ok(n)
    }

    /// Brute-force isomorphism test (graphs of at most [`ISOMORPHISM_BOUND`] vertices).
    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        let n = self.vertex_count();
        if n > ISOMORPHISM_BOUND || other.vertex_count() > ISOMORPHISM_BOUND {
            return Err(Error::RefusedSize {
                count: n.max(other.vertex_count()),
                bound: ISOMORPHISM_BOUND,
            });
        }
        if n != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let mut ds: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut dt: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        ds.sort_unstable();
        dt.sort_unstable();
        if ds != dt {
            return Ok(false);
        }
        let mut image = vec![usize::MAX; n];
        Ok(extend_isomorphism(self, other, 0, 0, &mut image))
    }
}

fn color_from(g: &Graph, v: usize, k: usize, colors: &mut [usize]) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    // colours above the largest used so far are interchangeable
    let used = colors[..v].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(used + 1) {
        if bits(g.adj[v] & full_mask(v)).all(|u| colors[u] != c) {
            colors[v] = c;
            if color_from(g, v + 1, k, colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

fn extend_isomorphism(a: &Graph, b: &Graph, v: usize, used: u64, image: &mut [usize]) -> bool {
    if v == a.vertex_count() {
        return true;
    }
    for w in bits(b.vertex_mask() & !used) {
        if a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(image[u], w));
        if consistent {
            image[v] = w;
            if extend_isomorphism(a, b, v + 1, used | bit(w), image) {
                return true;
            }
        }
    }
    false
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

/// Path on `m` vertices `0 - 1 - ... - (m-1)`.
pub fn path(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(m)?;
    for i in 1..m {
        g.add_edge(i - 1, i)?;
    }
    Ok(g)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Star `K_{1,leaves}` with the centre at index 0.
pub fn star(leaves: usize) -> Result<Graph> {
    let mut g = Graph::empty(leaves + 1)?;
    for v in 1..=leaves {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

/// Disjoint union; `g2`'s vertices are shifted by `|V(g1)|`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n1 = g1.vertex_count();
    check_vertex_count(n1 + g2.vertex_count())?;
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|&a| a << n1));
    let labels = match (&g1.labels, &g2.labels) {
        (None, None) => None,
        _ => Some(
            (0..n1)
                .map(|v| g1.label(v))
                .chain((0..g2.vertex_count()).map(|v| g2.label(v)))
                .collect(),
        ),
    };
    Ok(Graph::from_adjacency(adj, labels))
}

/// Graphs glued at one base vertex each.
#[derive(Debug, Clone)]
pub struct WedgeSpec {
    parts: Vec<(Graph, usize)>,
}

impl WedgeSpec {
    pub fn new(parts: Vec<(Graph, usize)>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidParameter(
                "a wedge needs at least two parts".into(),
            ));
        }
        for (g, base) in &parts {
            g.check_vertex(*base)?;
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[(Graph, usize)] {
        &self.parts
    }
}

/// Result of [`wedge_with_map`]: the glued graph plus, for each part, where
/// each of its vertices landed.
#[derive(Debug, Clone)]
pub struct WedgeLayout {
    pub graph: Graph,
    pub vertex_maps: Vec<Vec<usize>>,
}

/// Identifies all base vertices into one wedge point.
///
/// The wedge point gets index 0 and label `a`; the remaining vertices follow
/// in part order, then original index order, labelled `a_j^i` for vertex `j`
/// (1-based) of part `i` (1-based).
pub fn wedge(spec: &WedgeSpec) -> Result<Graph> {
    Ok(wedge_with_map(spec)?.graph)
}

pub fn wedge_with_map(spec: &WedgeSpec) -> Result<WedgeLayout> {
    let total: usize = spec.parts.iter().map(|(g, _)| g.vertex_count()).sum();
    let n = total + 1 - spec.parts.len();
    check_vertex_count(n)?;

    let mut labels = vec!["a".to_string()];
    let mut maps = Vec::with_capacity(spec.parts.len());
    for (i, (g, base)) in spec.parts.iter().enumerate() {
        let mut map = vec![0usize; g.vertex_count()];
        for (v, slot) in map.iter_mut().enumerate() {
            if v != *base {
                *slot = labels.len();
                let inner = match &g.labels {
                    Some(l) => l[v].clone(),
                    None => format!("a_{}", v + 1),
                };
                labels.push(format!("{inner}^{}", i + 1));
            }
        }
        maps.push(map);
    }

    let mut out = Graph::empty(n)?;
    for ((g, _), map) in spec.parts.iter().zip(&maps) {
        for (u, v) in g.edges() {
            out.add_edge(map[u], map[v])?;
        }
    }
    Ok(WedgeLayout {
        graph: out.with_labels(labels)?,
        vertex_maps: maps,
    })
}

/// Convenience for a two-part wedge.
pub fn wedge2(g1: &Graph, base1: usize, g2: &Graph, base2: usize) -> Result<Graph> {
    wedge(&WedgeSpec::new(vec![(g1.clone(), base1), (g2.clone(), base2)])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_examples() {
        let p3 = path(3).unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let p1 = path(1).unwrap();
        assert_eq!((p1.vertex_count(), p1.edge_count()), (1, 0));
        let p0 = path(0).unwrap();
        assert_eq!((p0.vertex_count(), p0.edge_count()), (0, 0));
    }

    #[test]
    fn cycle_examples() {
        let c3 = cycle(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        let c4 = cycle(4).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert_eq!(c4.chromatic_number().unwrap(), 2);
        assert!(matches!(cycle(2), Err(Error::InvalidParameter(_))));
        assert!(cycle(1).is_err());
    }

    #[test]
    fn vertex_cap() {
        assert!(Graph::empty(64).is_ok());
        assert!(matches!(
            Graph::empty(65),
            Err(Error::TooManyVertices { count: 65, .. })
        ));
        assert!(path(65).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(path(3).unwrap().neighborhood(1).unwrap(), vec![0, 2]);
        assert_eq!(cycle(4).unwrap().neighborhood(0).unwrap(), vec![1, 3]);
        assert!(path(1).unwrap().neighborhood(0).unwrap().is_empty());
        assert!(path(2).unwrap().neighborhood(2).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        let g = disjoint_union(&path(2).unwrap(), &path(2).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        let c = cycle(3).unwrap();
        let e = disjoint_union(&Graph::empty(0).unwrap(), &c).unwrap();
        assert!(e.is_isomorphic(&c).unwrap());
        let g = disjoint_union(&path(1).unwrap(), &c).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
    }

    #[test]
    fn terminal_path_wedge_is_a_path() {
        let g = wedge2(&path(3).unwrap(), 2, &path(4).unwrap(), 0).unwrap();
        assert!(g.is_isomorphic(&path(6).unwrap()).unwrap());
    }

    #[test]
    fn cycle_wedge_counts() {
        let g = wedge2(&cycle(4).unwrap(), 0, &cycle(4).unwrap(), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 8));
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.label(0), "a");
        assert_eq!(g.label(1), "a_2^1");
        assert_eq!(g.label(4), "a_2^2");
    }

    #[test]
    fn cycle_path_wedge_layout() {
        // C_5 at a_1 with P_4 at b_2: wedge point has two cycle and two path neighbours
        let spec = WedgeSpec::new(vec![(cycle(5).unwrap(), 0), (path(4).unwrap(), 1)]).unwrap();
        let layout = wedge_with_map(&spec).unwrap();
        let g = &layout.graph;
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.degree(0), 4);
        assert_eq!(layout.vertex_maps[1], vec![5, 0, 6, 7]);
        assert!(g.has_edge(0, 5) && g.has_edge(0, 6) && g.has_edge(6, 7));
    }

    #[test]
    fn wedge_rejects_bad_spec() {
        let p = path(3).unwrap();
        assert!(WedgeSpec::new(vec![(p.clone(), 0)]).is_err());
        assert!(matches!(
            WedgeSpec::new(vec![(p.clone(), 0), (p, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(cycle(3).unwrap().chromatic_number().unwrap(), 3);
        assert_eq!(path(4).unwrap().chromatic_number().unwrap(), 2);
        assert_eq!(cycle(5).unwrap().chromatic_number().unwrap(), 3);
        let g = wedge2(&cycle(3).unwrap(), 0, &cycle(5).unwrap(), 0).unwrap();
        assert_eq!(g.chromatic_number().unwrap(), 3);
        assert!(Graph::empty(0).unwrap().chromatic_number().is_err());
        assert!(matches!(
            path(13).unwrap().chromatic_number(),
            Err(Error::RefusedSize { .. })
        ));
        assert_eq!(complete(6).unwrap().chromatic_number().unwrap(), 6);
    }

    #[test]
    fn isomorphism() {
        let c = cycle(6).unwrap();
        let d = disjoint_union(&cycle(3).unwrap(), &cycle(3).unwrap()).unwrap();
        assert!(!c.is_isomorphic(&d).unwrap());
        let relabelled = Graph::from_edges(6, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)]).unwrap();
        assert!(c.is_isomorphic(&relabelled).unwrap());
        assert!(path(11).unwrap().is_isomorphic(&path(11).unwrap()).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = disjoint_union(&path(3).unwrap(), &cycle(3).unwrap()).unwrap();
        assert_eq!(g.components(), vec![0b000111, 0b111000]);
        let h = g.induced_subgraph(0b111000);
        assert!(h.is_isomorphic(&cycle(3).unwrap()).unwrap());
        assert_eq!(h.label(0), "3");
        let r = path(4).unwrap().remove_vertex(2).unwrap();
        assert_eq!(r.edges(), vec![(0, 1)]);
        assert_eq!(r.label(2), "3");
    }
}
