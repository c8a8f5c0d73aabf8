//! Reference computations that share no code with the library: subset
//! enumeration for independence complexes and dense rational elimination for
//! Betti numbers.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wedgehom::graph::{self, Graph};

/// All independent sets of `g`, by checking every subset.
pub fn brute_independent_sets(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    assert!(n <= 20, "subset enumeration is for small graphs");
    let edges = g.edges();
    (0u64..1 << n)
        .filter(|&s| edges.iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .collect()
}

/// Rank over `Q` by fraction-exact Gaussian elimination.
pub fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for j in c..cols {
                    let d = &f * &a[rank][j];
                    a[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced rational Betti numbers (nonzero only) of the complex with the
/// given face list, built from scratch.
pub fn rational_betti(faces: &[u64]) -> BTreeMap<i32, u64> {
    let mut by_dim: BTreeMap<i32, Vec<u64>> = BTreeMap::new();
    for &f in faces {
        by_dim.entry(f.count_ones() as i32 - 1).or_default().push(f);
    }
    for v in by_dim.values_mut() {
        v.sort_unstable();
    }
    let top = by_dim.keys().next_back().copied().unwrap_or(-1);
    let basis = |d: i32| by_dim.get(&d).cloned().unwrap_or_default();
    // rank of ∂_d : C_d → C_{d-1}
    let rank = |d: i32| -> usize {
        if d < 0 {
            return 0;
        }
        let upper = basis(d);
        let lower = basis(d - 1);
        if upper.is_empty() || lower.is_empty() {
            return 0;
        }
        let mut m = vec![vec![0i64; upper.len()]; lower.len()];
        for (j, &f) in upper.iter().enumerate() {
            let verts: Vec<usize> = (0..64).filter(|&v| f >> v & 1 == 1).collect();
            for (i, &v) in verts.iter().enumerate() {
                let row = lower.binary_search(&(f & !(1 << v))).unwrap();
                m[row][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        rational_rank(&m)
    };
    let mut out = BTreeMap::new();
    for d in -1..=top {
        let b = basis(d).len() - rank(d) - rank(d + 1);
        if b > 0 {
            out.insert(d, b as u64);
        }
    }
    out
}

/// Reduced Betti numbers of `K ⋆ L` over a field from those of `K` and `L`.
pub fn join_convolution(k: &BTreeMap<i32, u64>, l: &BTreeMap<i32, u64>) -> BTreeMap<i32, u64> {
    let mut out = BTreeMap::new();
    for (&i, &a) in k {
        for (&j, &b) in l {
            *out.entry(i + j + 1).or_insert(0) += a * b;
        }
    }
    out
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Colourability by trying every assignment of `k` colours.
pub fn brute_colourable(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut colour = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| colour[u] != colour[v]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colour[i] += 1;
            if colour[i] < k {
                break;
            }
            colour[i] = 0;
            i += 1;
        }
    }
}

/// `C_m` and `C_n` glued at one vertex each.
pub fn two_cycles(m: usize, n: usize) -> Graph {
    graph::wedge2(&graph::cycle(m).unwrap(), 0, &graph::cycle(n).unwrap(), 0).unwrap()
}

/// Cycles glued at a single common vertex.
pub fn cycle_bouquet(ms: &[usize]) -> Graph {
    let parts = ms.iter().map(|&m| (graph::cycle(m).unwrap(), 0)).collect();
    graph::wedge(&graph::WedgeSpec::new(parts).unwrap()).unwrap()
}

/// Paths glued at a common endpoint.
pub fn terminal_paths(ms: &[usize]) -> Graph {
    let parts = ms.iter().map(|&m| (graph::path(m).unwrap(), 0)).collect();
    graph::wedge(&graph::WedgeSpec::new(parts).unwrap()).unwrap()
}

/// `P_m` at its last vertex glued to vertex `l` (1-based) of `P_n`.
pub fn path_wedge_path(m: usize, n: usize, l: usize) -> Graph {
    graph::wedge2(&graph::path(m).unwrap(), m - 1, &graph::path(n).unwrap(), l - 1).unwrap()
}

/// `C_n` at `a_1` glued to vertex `b_k` (1-based) of `P_m`.
pub fn cycle_wedge_path(n: usize, m: usize, k: usize) -> Graph {
    graph::wedge2(&graph::cycle(n).unwrap(), 0, &graph::path(m).unwrap(), k - 1).unwrap()
}
