//! Dense Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors `d_1 | d_2 | ... | d_r` of `matrix`, followed by zeros up
/// to `min(rows, cols)` entries.
///
/// Elimination always pivots on the smallest nonzero absolute value of the
/// current row/column, so entries shrink towards the gcd.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut diagonal = Vec::with_capacity(rows.min(cols));

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // a remainder is now smaller than the pivot: move it into place
            let (pi, pj) = smallest_nonzero_cross(&a, t, rows, cols);
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diagonal.push(a[t][t].abs());
    }

    normalize_diagonal(&mut diagonal);
    diagonal.resize(rows.min(cols), BigInt::zero());
    diagonal
}

fn smallest_nonzero(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from the diagonal on).
fn smallest_nonzero_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let col = smallest_nonzero(a, t..rows, t..t + 1);
    let row = smallest_nonzero(a, t..t + 1, t..cols);
    match (col, row) {
        (Some(c), Some(r)) => {
            if a[c.0][c.1].abs() <= a[r.0][r.1].abs() {
                c
            } else {
                r
            }
        }
        (Some(c), None) => c,
        (None, Some(r)) => r,
        (None, None) => unreachable!("the pivot itself is nonzero"),
    }
}

/// Turns a diagonal into a divisibility chain with the same invariant factors.
fn normalize_diagonal(d: &mut Vec<BigInt>) {
    d.retain(|x| !x.is_zero());
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}
