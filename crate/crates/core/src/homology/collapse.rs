//! Greedy elementary collapses.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{face_dim, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{bit, bits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseVerdict {
    CollapsibleCertified,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseOutcome {
    pub verdict: CollapseVerdict,
    /// Elementary collapses performed.
    pub steps: usize,
}

impl CollapseOutcome {
    pub fn certified(&self) -> bool {
        self.verdict == CollapseVerdict::CollapsibleCertified
    }
}

/// Repeatedly removes the smallest free face (by dimension, then bitmask)
/// together with its unique coface. Certified iff a single vertex remains
/// within `budget` steps.
pub fn is_collapsible(k: &SimplicialComplex, budget: usize) -> Result<CollapseOutcome> {
    if budget == 0 {
        return Err(Error::InvalidParameter("collapse budget must be positive".into()));
    }
    let faces = k.faces();
    let index: HashMap<u64, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut alive = vec![true; faces.len()];
    // cofaces[i]: alive faces containing faces[i] with one more vertex
    let mut cofaces = vec![0u32; faces.len()];
    for &f in faces {
        for v in bits(f) {
            cofaces[index[&(f & !bit(v))]] += 1;
        }
    }
    let key = |i: usize| (face_dim(faces[i]), faces[i]);
    let mut free: BTreeSet<(i32, u64)> = (0..faces.len())
        .filter(|&i| faces[i] != 0 && cofaces[i] == 1)
        .map(key)
        .collect();
    let mut remaining = faces.iter().filter(|&&f| f != 0).count();
    let mut steps = 0;

    while remaining > 1 {
        let Some((_, tau)) = free.pop_first() else {
            break;
        };
        let t = index[&tau];
        if !alive[t] || cofaces[t] != 1 {
            continue;
        }
        if steps == budget {
            break;
        }
        let sigma = (0..k.vertex_count())
            .map(|v| tau | bit(v))
            .filter(|&s| s != tau)
            .find(|s| index.get(s).is_some_and(|&i| alive[i]))
            .expect("a free face has a coface");
        for removed in [sigma, tau] {
            alive[index[&removed]] = false;
            remaining -= 1;
            for v in bits(removed) {
                let facet = removed & !bit(v);
                let i = index[&facet];
                cofaces[i] -= 1;
                if alive[i] && facet != 0 && cofaces[i] == 1 {
                    free.insert(key(i));
                }
            }
        }
        steps += 1;
    }

    let verdict = if remaining == 1 {
        CollapseVerdict::CollapsibleCertified
    } else {
        CollapseVerdict::Unknown
    };
    Ok(CollapseOutcome { verdict, steps })
}

/// Default budget: ten elementary steps per face.
pub fn default_budget(k: &SimplicialComplex) -> usize {
    (10 * k.face_count()).max(1)
}
