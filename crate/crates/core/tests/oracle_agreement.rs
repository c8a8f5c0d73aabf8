mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use common::*;
use wedgehom::complex::independence_complex;
use wedgehom::graph::{cycle, path};
use wedgehom::homology::{reduced_homology, smith_normal_form, Coefficients, FALLBACK_PRIME};

fn library_betti(g: &wedgehom::Graph) -> BTreeMap<i32, u64> {
    let k = independence_complex(g).unwrap();
    reduced_homology(&k, Coefficients::Integers).unwrap().reduced_betti
}

#[test]
fn faces_match_subset_enumeration() {
    let mut rng = seeded(11);
    for _ in 0..150 {
        let n = rng.gen_range(0..=12);
        let p = rng.gen_range(0.0..0.7);
        let g = random_graph(&mut rng, n, p);
        let k = independence_complex(&g).unwrap();
        let mut expect = brute_independent_sets(&g);
        expect.sort_by_key(|&f| (f.count_ones(), f));
        assert_eq!(k.faces(), expect.as_slice(), "{g:?}");
    }
}

#[test]
fn betti_numbers_match_rational_elimination_on_random_graphs() {
    let mut rng = seeded(12);
    for _ in 0..120 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, p);
        let oracle = rational_betti(&brute_independent_sets(&g));
        assert_eq!(library_betti(&g), oracle, "{g:?}");
    }
}

#[test]
fn betti_numbers_match_rational_elimination_on_families() {
    for m in 0..=12 {
        let g = path(m).unwrap();
        assert_eq!(library_betti(&g), rational_betti(&brute_independent_sets(&g)), "P_{m}");
    }
    for n in 3..=12 {
        let g = cycle(n).unwrap();
        assert_eq!(library_betti(&g), rational_betti(&brute_independent_sets(&g)), "C_{n}");
    }
    for (m, n) in [(3, 3), (4, 4), (3, 5), (4, 7), (5, 6)] {
        let g = two_cycles(m, n);
        assert_eq!(library_betti(&g), rational_betti(&brute_independent_sets(&g)), "C_{m} v C_{n}");
    }
}

#[test]
fn field_ranks_agree_with_integers_when_torsion_free() {
    let mut rng = seeded(13);
    for _ in 0..80 {
        let n = rng.gen_range(1..=11);
        let p = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, p);
        let k = independence_complex(&g).unwrap();
        let z = reduced_homology(&k, Coefficients::Integers).unwrap();
        for p in [2, 3, FALLBACK_PRIME] {
            let f = reduced_homology(&k, Coefficients::PrimeField(p)).unwrap();
            if !z.has_torsion() {
                assert_eq!(f.reduced_betti, z.reduced_betti, "p={p} {g:?}");
            }
        }
    }
}

fn det_abs(m: &[Vec<i64>]) -> BigInt {
    // Bareiss fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    (a[n - 1][n - 1].clone() * BigInt::from(sign)).abs()
}

#[test]
fn smith_form_matches_rational_rank_and_determinant() {
    let mut rng = seeded(14);
    for _ in 0..300 {
        let m: Vec<Vec<i64>> = (0..6)
            .map(|_| (0..6).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = smith_normal_form(&big);
        let nonzero: Vec<&BigInt> = d.iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), rational_rank(&m), "{m:?}");
        for w in nonzero.windows(2) {
            assert!((w[1] % w[0]).is_zero(), "divisibility {d:?}");
        }
        let product: BigInt = d.iter().product();
        assert_eq!(product, det_abs(&m), "{m:?}");
    }
}
