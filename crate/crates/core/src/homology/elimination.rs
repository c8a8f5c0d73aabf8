//! Sparse Gaussian elimination with Markowitz-style pivot choice.
//!
//! The matrix is handed over as a list of sparse vectors (boundary columns);
//! rank and invariant factors do not care which side is rows. Over the
//! integers only unit pivots are eliminated sparsely; whatever is left when no
//! unit remains goes to the dense Smith normal form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::snf;

/// Arithmetic needed by the eliminator.
pub(crate) trait PivotRing {
    type Elem: Clone;

    fn lift(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` may be used as a sparse pivot.
    fn is_pivot(&self, a: &Self::Elem) -> bool;
    /// Exact `a / pivot`, `pivot` being a pivot element.
    fn quotient(&self, a: &Self::Elem, pivot: &Self::Elem) -> Self::Elem;
    /// `a - f * b`, or `None` on overflow.
    fn sub_mul(&self, a: &Self::Elem, f: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;
}

/// Integers in `i64` with overflow detection.
pub(crate) struct CheckedIntegers;

impl PivotRing for CheckedIntegers {
    type Elem = i64;

    fn lift(&self, v: i64) -> i64 {
        v
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn is_pivot(&self, a: &i64) -> bool {
        *a == 1 || *a == -1
    }
    fn quotient(&self, a: &i64, pivot: &i64) -> i64 {
        a * pivot
    }
    fn sub_mul(&self, a: &i64, f: &i64, b: &i64) -> Option<i64> {
        f.checked_mul(*b).and_then(|p| a.checked_sub(p))
    }
    fn to_bigint(&self, a: &i64) -> BigInt {
        BigInt::from(*a)
    }
}

/// Arbitrary-precision integers; used when the `i64` pass overflows.
pub(crate) struct BigIntegers;

impl PivotRing for BigIntegers {
    type Elem = BigInt;

    fn lift(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_pivot(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn quotient(&self, a: &BigInt, pivot: &BigInt) -> BigInt {
        a * pivot
    }
    fn sub_mul(&self, a: &BigInt, f: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a - f * b)
    }
    fn to_bigint(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

/// The prime field `GF(p)`.
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn inverse(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl PivotRing for PrimeField {
    type Elem = u64;

    fn lift(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_pivot(&self, a: &u64) -> bool {
        *a != 0
    }
    fn quotient(&self, a: &u64, pivot: &u64) -> u64 {
        a * self.inverse(*pivot) % self.p
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> Option<u64> {
        Some((a + self.p - f * b % self.p) % self.p)
    }
    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
}

#[derive(Debug)]
pub(crate) struct Overflow;

/// Outcome of eliminating one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Elimination {
    pub rank: usize,
    /// Invariant factors greater than one (integers only).
    pub torsion: Vec<BigInt>,
}

type SparseVec<E> = Vec<(u32, E)>;

/// Eliminates `vectors` (each sorted by index, entries nonzero).
pub(crate) fn eliminate<R: PivotRing>(
    ring: &R,
    vectors: &[Vec<(u32, i64)>],
    width: usize,
) -> Result<Elimination, Overflow> {
    let mut rows: Vec<SparseVec<R::Elem>> = vectors
        .iter()
        .map(|v| v.iter().map(|&(c, x)| (c, ring.lift(x))).filter(|(_, x)| !ring.is_zero(x)).collect())
        .collect();
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); width];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            cols[c as usize].push(r as u32);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| Reverse((row.len(), r as u32)))
        .collect();
    let mut rank = 0usize;

    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !alive[r] || rows[r].len() != len {
            continue;
        }
        if len == 0 {
            alive[r] = false;
            continue;
        }
        // cheapest pivot in this row: fewest other rows touching its column
        let Some(&(pc, ref pv)) = rows[r]
            .iter()
            .filter(|(_, x)| ring.is_pivot(x))
            .min_by_key(|(c, _)| cols[*c as usize].len())
        else {
            // no usable pivot yet; the row is re-queued if it changes
            continue;
        };
        let pv = pv.clone();
        alive[r] = false;
        rank += 1;

        let pivot_row = std::mem::take(&mut rows[r]);
        let mut touching = std::mem::take(&mut cols[pc as usize]);
        touching.sort_unstable();
        touching.dedup();
        for &t in &touching {
            let t = t as usize;
            if !alive[t] {
                continue;
            }
            let Ok(pos) = rows[t].binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let f = ring.quotient(&rows[t][pos].1, &pv);
            let (merged, fresh) = merge_sub(ring, &rows[t], &f, &pivot_row, pc)?;
            for c in fresh {
                cols[c as usize].push(t as u32);
            }
            rows[t] = merged;
            heap.push(Reverse((rows[t].len(), t as u32)));
        }
    }

    // residual: rows still alive with entries (only possible without unit pivots)
    let residual: Vec<&SparseVec<R::Elem>> = rows
        .iter()
        .zip(&alive)
        .filter(|(row, &a)| a && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    let mut torsion = Vec::new();
    if !residual.is_empty() {
        let mut used: Vec<u32> = residual.iter().flat_map(|row| row.iter().map(|&(c, _)| c)).collect();
        used.sort_unstable();
        used.dedup();
        let dense: Vec<Vec<BigInt>> = residual
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); used.len()];
                for (c, x) in row.iter() {
                    let j = used.binary_search(c).expect("column collected above");
                    out[j] = ring.to_bigint(x);
                }
                out
            })
            .collect();
        for d in snf::smith_normal_form(&dense) {
            if d.is_zero() {
                continue;
            }
            rank += 1;
            if !d.is_one() {
                torsion.push(d);
            }
        }
    }
    torsion.sort();
    Ok(Elimination { rank, torsion })
}

/// `a - f * b` over sorted sparse vectors, dropping column `skip` (which
/// cancels by construction). Also returns columns newly present in the result.
fn merge_sub<R: PivotRing>(
    ring: &R,
    a: &SparseVec<R::Elem>,
    f: &R::Elem,
    b: &SparseVec<R::Elem>,
    skip: u32,
) -> Result<(SparseVec<R::Elem>, Vec<u32>), Overflow> {
    let zero = ring.lift(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut fresh = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            if cb != skip {
                let v = ring.sub_mul(&zero, f, &b[j].1).ok_or(Overflow)?;
                if !ring.is_zero(&v) {
                    out.push((cb, v));
                    fresh.push(cb);
                }
            }
            j += 1;
        } else {
            if ca != skip {
                let v = ring.sub_mul(&a[i].1, f, &b[j].1).ok_or(Overflow)?;
                if !ring.is_zero(&v) {
                    out.push((ca, v));
                }
            }
            i += 1;
            j += 1;
        }
    }
    Ok((out, fresh))
}

/// Rank and torsion over the integers, retrying with big integers on overflow.
pub(crate) fn integer_elimination(vectors: &[Vec<(u32, i64)>], width: usize) -> Elimination {
    match eliminate(&CheckedIntegers, vectors, width) {
        Ok(e) => e,
        Err(Overflow) => eliminate(&BigIntegers, vectors, width).expect("big integers never overflow"),
    }
}

pub(crate) fn field_rank(p: u64, vectors: &[Vec<(u32, i64)>], width: usize) -> usize {
    eliminate(&PrimeField { p }, vectors, width)
        .expect("field arithmetic never overflows")
        .rank
}
