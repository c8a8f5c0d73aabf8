//! Fold-lemma rewriting, component splitting and link/deletion
//! decompositions with collapse certificates.
//!
//! A fold deletes `w` when `N(v) ⊆ N(w)`; `I(G \ w) ↪ I(G)` is then a
//! homotopy equivalence. Traces refer to vertices by their index in the input
//! graph throughout.

use serde::{Deserialize, Serialize};

use crate::complex::{independence_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, WedgeLayout};
use crate::homology::{default_budget, is_collapsible, CollapseVerdict};
use crate::predictor::{ht_join, ht_join_all, predict_cycle, HomotopyType};

/// Largest number of σ candidates tried in the maximal-simplex route.
pub const MAX_SIGMA_CANDIDATES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldStep {
    pub kept: usize,
    pub removed: usize,
    /// `N(kept)` just before the step.
    pub kept_neighborhood: Vec<usize>,
    /// `N(removed)` just before the step.
    pub removed_neighborhood: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum ReductionEvent {
    Fold(FoldStep),
    /// A fold-free component split off as a join factor.
    Split { component: Vec<usize>, factor: HomotopyType },
    /// An isolated vertex: the whole complex is a cone over it.
    Cone { apex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input_vertex_count: usize,
    pub steps: Vec<ReductionEvent>,
    pub join_factors: Vec<HomotopyType>,
    /// Surviving input vertices, increasing.
    pub residual_vertices: Vec<usize>,
    /// Subgraph induced on `residual_vertices`, renumbered.
    pub residual: Graph,
    /// Set once a cone apex was found.
    pub contractible: bool,
}

impl ReductionTrace {
    pub fn fold_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|e| matches!(e, ReductionEvent::Fold(_)))
            .count()
    }

    /// Homotopy type read off the trace: join factors joined with the
    /// residual, whose components must be cycles to be recognised.
    pub fn homotopy_type(&self) -> HomotopyType {
        if self.contractible {
            return HomotopyType::Contractible;
        }
        let residual = self
            .residual
            .components()
            .into_iter()
            .map(|c| recognise_component(&self.residual, c))
            .fold(HomotopyType::JoinIdentity, |acc, t| ht_join(&acc, &t));
        ht_join(&ht_join_all(&self.join_factors), &residual)
    }

    /// Re-applies the recorded steps to `input`, checking every witness, and
    /// confirms the recorded residual comes out.
    pub fn replay(&self, input: &Graph) -> bool {
        if input.vertex_count() != self.input_vertex_count {
            return false;
        }
        let mut alive = input.vertex_mask();
        for step in &self.steps {
            match step {
                ReductionEvent::Fold(f) => {
                    if alive & bit(f.kept) == 0 || alive & bit(f.removed) == 0 {
                        return false;
                    }
                    let nv = input.adjacency()[f.kept] & alive;
                    let nw = input.adjacency()[f.removed] & alive;
                    if f.kept == f.removed
                        || nv & !nw != 0
                        || bits(nv).collect::<Vec<_>>() != f.kept_neighborhood
                        || bits(nw).collect::<Vec<_>>() != f.removed_neighborhood
                    {
                        return false;
                    }
                    alive &= !bit(f.removed);
                }
                ReductionEvent::Split { component, .. } => {
                    let mask = component.iter().fold(0u64, |m, &v| m | bit(v));
                    if !input.components_within(alive).contains(&mask) {
                        return false;
                    }
                    alive &= !mask;
                }
                ReductionEvent::Cone { apex } => {
                    if alive & bit(*apex) == 0 || input.adjacency()[*apex] & alive != 0 {
                        return false;
                    }
                }
            }
        }
        bits(alive).collect::<Vec<_>>() == self.residual_vertices
            && input.induced_subgraph(alive).edges() == self.residual.edges()
    }
}

fn recognise_component(g: &Graph, comp: u64) -> HomotopyType {
    let n = comp.count_ones() as usize;
    let is_cycle = n >= 3 && bits(comp).all(|v| (g.adjacency()[v] & comp).count_ones() == 2);
    if is_cycle {
        predict_cycle(n as u32).unwrap_or(HomotopyType::Unknown)
    } else if n == 2 {
        HomotopyType::sphere(0)
    } else {
        HomotopyType::Unknown
    }
}

fn find_fold_within(g: &Graph, alive: u64) -> Option<(usize, usize)> {
    let adj = g.adjacency();
    bits(alive).find_map(|v| {
        let nv = adj[v] & alive;
        if nv == 0 {
            return None;
        }
        bits(alive & !bit(v))
            .find(|&w| nv & !(adj[w] & alive) == 0)
            .map(|w| (v, w))
    })
}

/// Lexicographically smallest `(v, w)`, `v ≠ w`, with `∅ ≠ N(v) ⊆ N(w)`.
pub fn find_fold(g: &Graph) -> Option<(usize, usize)> {
    find_fold_within(g, g.vertex_mask())
}

/// Deletes `w`, given `N(v) ⊆ N(w)`. Vertices above `w` shift down by one.
pub fn apply_fold(g: &Graph, v: usize, w: usize) -> Result<Graph> {
    let nv = g.neighbor_mask(v)?;
    let nw = g.neighbor_mask(w)?;
    if v == w || nv & !nw != 0 {
        return Err(Error::FoldPrecondition { kept: v, removed: w });
    }
    g.remove_vertex(w)
}

/// Folds and splits until nothing applies, or until an isolated vertex shows
/// the complex is a cone.
pub fn reduce_fully(g: &Graph) -> ReductionTrace {
    let adj = g.adjacency();
    let mut alive = g.vertex_mask();
    let mut steps = Vec::new();
    let mut join_factors = Vec::new();
    let mut contractible = false;

    loop {
        for comp in g.components_within(alive) {
            if comp.count_ones() == 2 {
                steps.push(ReductionEvent::Split {
                    component: bits(comp).collect(),
                    factor: HomotopyType::sphere(0),
                });
                join_factors.push(HomotopyType::sphere(0));
                alive &= !comp;
            }
        }
        if let Some(apex) = bits(alive).find(|&v| adj[v] & alive == 0) {
            steps.push(ReductionEvent::Cone { apex });
            contractible = true;
            break;
        }
        let Some((v, w)) = find_fold_within(g, alive) else {
            break;
        };
        steps.push(ReductionEvent::Fold(FoldStep {
            kept: v,
            removed: w,
            kept_neighborhood: bits(adj[v] & alive).collect(),
            removed_neighborhood: bits(adj[w] & alive).collect(),
        }));
        alive &= !bit(w);
    }

    ReductionTrace {
        input_vertex_count: g.vertex_count(),
        steps,
        join_factors,
        residual_vertices: bits(alive).collect(),
        residual: g.induced_subgraph(alive),
        contractible,
    }
}

/// A maximal face of the deletion that is not in the link, with the collapse
/// outcome for the deletion minus that face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalSimplexWitness {
    pub sigma: Vec<usize>,
    /// The vertex whose deletion complex contains `sigma`.
    pub deleted_vertex: usize,
    pub evidence: CollapseVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum DecompositionVerdict {
    LinkContractibleCertified,
    Lemma31Certified { witness: MaximalSimplexWitness },
    /// No certificate found; the splitting is only checked on homology.
    HomologyOnly,
}

impl DecompositionVerdict {
    pub fn is_certified(&self) -> bool {
        !matches!(self, DecompositionVerdict::HomologyOnly)
    }

    pub fn name(&self) -> &'static str {
        match self {
            DecompositionVerdict::LinkContractibleCertified => "link_contractible_certified",
            DecompositionVerdict::Lemma31Certified { .. } => "lemma31_certified",
            DecompositionVerdict::HomologyOnly => "homology_only",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DelLinkDecomposition {
    pub deletion: SimplicialComplex,
    pub link: SimplicialComplex,
    pub verdict: DecompositionVerdict,
}

#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    /// σ candidates tried before the enumerated maximal faces.
    pub sigma_hints: Vec<u64>,
    /// Collapse budget; `None` means ten steps per face.
    pub budget: Option<usize>,
}

pub fn del_link_decompose(g: &Graph, v: usize) -> Result<DelLinkDecomposition> {
    del_link_decompose_with(g, v, &DecomposeOptions::default())
}

/// Deletion and link of `v` in `I(g)`, plus evidence that the link is
/// contractible inside the deletion.
pub fn del_link_decompose_with(
    g: &Graph,
    v: usize,
    opts: &DecomposeOptions,
) -> Result<DelLinkDecomposition> {
    g.neighbor_mask(v)?;
    let k = independence_complex(g)?;
    let deletion = k.deletion(v);
    let link = k.link(v)?;
    let budget = |c: &SimplicialComplex| opts.budget.unwrap_or_else(|| default_budget(c));

    let verdict = if !link.faces_of_dim(0).is_empty()
        && is_collapsible(&link, budget(&link))?.certified()
    {
        DecompositionVerdict::LinkContractibleCertified
    } else {
        let mut tried = Vec::new();
        let candidates = opts
            .sigma_hints
            .iter()
            .copied()
            .chain(deletion.maximal_faces().iter().copied())
            .filter(|&s| deletion.is_maximal(s) && !link.contains(s));
        let mut found = None;
        for sigma in candidates {
            if tried.len() == MAX_SIGMA_CANDIDATES {
                break;
            }
            if tried.contains(&sigma) {
                continue;
            }
            tried.push(sigma);
            let rest = deletion.without_maximal_face(sigma)?;
            if is_collapsible(&rest, budget(&rest))?.certified() {
                found = Some(sigma);
                break;
            }
        }
        match found {
            Some(sigma) => DecompositionVerdict::Lemma31Certified {
                witness: MaximalSimplexWitness {
                    sigma: bits(sigma).collect(),
                    deleted_vertex: v,
                    evidence: CollapseVerdict::CollapsibleCertified,
                },
            },
            None => DecompositionVerdict::HomologyOnly,
        }
    };
    Ok(DelLinkDecomposition {
        deletion,
        link,
        verdict,
    })
}

/// The alternating face `{a_1} ∪ {a_3, a_6, ...}` on every cycle arm of a
/// wedge of cycles, where `a_j` is the vertex `j` steps from the wedge point.
pub fn cycle_wedge_sigma_hint(layout: &WedgeLayout, cycle_sizes: &[usize]) -> u64 {
    layout
        .vertex_maps
        .iter()
        .zip(cycle_sizes)
        .map(|(map, &m)| {
            std::iter::once(1)
                .chain((3..m).step_by(3))
                .filter(|&j| j < m)
                .fold(0u64, |acc, j| acc | bit(map[j]))
        })
        .fold(0, |a, b| a | b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, star, wedge2, wedge_with_map, WedgeSpec};

    #[test]
    fn find_fold_examples() {
        assert_eq!(find_fold(&path(5).unwrap()), Some((0, 2)));
        assert_eq!(find_fold(&cycle(5).unwrap()), None);
        assert_eq!(find_fold(&star(3).unwrap()), Some((1, 2)));
        assert_eq!(find_fold(&Graph::empty(3).unwrap()), None);
    }

    #[test]
    fn apply_fold_examples() {
        let g = apply_fold(&path(4).unwrap(), 0, 2).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.vertex_count(), 3);
        let g = apply_fold(&path(5).unwrap(), 0, 2).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        assert!(matches!(
            apply_fold(&path(5).unwrap(), 0, 3),
            Err(Error::FoldPrecondition { kept: 0, removed: 3 })
        ));
        assert!(apply_fold(&path(5).unwrap(), 1, 1).is_err());
    }

    #[test]
    fn reduce_path_seven() {
        let g = path(7).unwrap();
        let t = reduce_fully(&g);
        assert_eq!(t.fold_count(), 2);
        assert!(t.contractible);
        assert_eq!(t.residual_vertices, vec![6]);
        assert_eq!(t.homotopy_type(), HomotopyType::Contractible);
        assert!(t.replay(&g));
    }

    #[test]
    fn reduce_terminal_wedge() {
        let g = wedge2(&path(4).unwrap(), 0, &path(4).unwrap(), 0).unwrap();
        let t = reduce_fully(&g);
        assert_eq!(t.homotopy_type(), HomotopyType::Contractible);
        assert!(t.replay(&g));
    }

    #[test]
    fn reduce_fold_free_cycle() {
        let g = cycle(5).unwrap();
        let t = reduce_fully(&g);
        assert!(t.steps.is_empty());
        assert_eq!(t.residual.edges(), g.edges());
        assert_eq!(t.residual.label(4), "4");
        assert_eq!(t.homotopy_type(), HomotopyType::sphere(1));
    }

    #[test]
    fn reduce_path_five_to_two_edges() {
        let g = path(5).unwrap();
        let t = reduce_fully(&g);
        assert_eq!(t.join_factors, vec![HomotopyType::sphere(0); 2]);
        assert_eq!(t.homotopy_type(), HomotopyType::sphere(1));
        assert!(t.residual_vertices.is_empty());
        assert!(t.replay(&g));
    }

    #[test]
    fn replay_rejects_tampering() {
        let g = path(5).unwrap();
        let mut t = reduce_fully(&g);
        if let Some(ReductionEvent::Fold(f)) = t.steps.first_mut() {
            f.removed = 3;
        }
        assert!(!t.replay(&g));
    }

    #[test]
    fn decompose_four_cycles() {
        let g = wedge2(&cycle(4).unwrap(), 0, &cycle(4).unwrap(), 0).unwrap();
        let d = del_link_decompose(&g, 0).unwrap();
        // link: the two antipodal vertices, non-adjacent, so an edge
        assert_eq!(d.link.maximal_faces().len(), 1);
        assert_eq!(d.link.dimension(), 1);
        assert_eq!(d.verdict, DecompositionVerdict::LinkContractibleCertified);
        for &f in d.link.faces() {
            assert!(d.deletion.contains(f));
        }
    }

    #[test]
    fn decompose_triangles_by_sigma() {
        let spec = WedgeSpec::new(vec![(cycle(3).unwrap(), 0), (cycle(3).unwrap(), 0)]).unwrap();
        let layout = wedge_with_map(&spec).unwrap();
        let hint = cycle_wedge_sigma_hint(&layout, &[3, 3]);
        let opts = DecomposeOptions {
            sigma_hints: vec![hint],
            budget: None,
        };
        let d = del_link_decompose_with(&layout.graph, 0, &opts).unwrap();
        assert_eq!(d.link, SimplicialComplex::empty_face_only(5));
        let DecompositionVerdict::Lemma31Certified { witness } = &d.verdict else {
            panic!("expected a maximal-simplex certificate, got {:?}", d.verdict);
        };
        let sigma = witness.sigma.iter().fold(0u64, |m, &v| m | bit(v));
        assert!(d.deletion.is_maximal(sigma));
        assert!(!d.link.contains(sigma));
    }

    #[test]
    fn sigma_hint_alternates() {
        let spec = WedgeSpec::new(vec![(cycle(4).unwrap(), 0), (cycle(7).unwrap(), 0)]).unwrap();
        let layout = wedge_with_map(&spec).unwrap();
        let hint = cycle_wedge_sigma_hint(&layout, &[4, 7]);
        let m = &layout.vertex_maps;
        let expect = [m[0][1], m[0][3], m[1][1], m[1][3], m[1][6]]
            .iter()
            .fold(0u64, |a, &v| a | bit(v));
        assert_eq!(hint, expect);
        assert!(layout.graph.is_independent(hint));
    }
}
