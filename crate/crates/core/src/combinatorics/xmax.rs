//! The maximal members `X_v^max` of the k-dimensional Ellentuck space: the
//! unique `≺`-largest member whose first element is `v`. Built from the
//! auxiliary functions `f_j(0) = v_j`, `f_j(m) = max(v) + m`.

use super::approx::{Approximation, FinSet, TreePrefixWitness};
use super::enumerate::seqs;
use super::order::{Seq, Vertex};
use crate::error::{Error, Result};

/// Value of the maximal tree `X̂_v` at a node `t` of `ω^{≤k}`.
pub fn xmax_tree_value(v: &Vertex, t: &Seq) -> Result<Seq> {
    let k = v.dim();
    if t.len() > k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: t.len(),
        });
    }
    let top = v.last();
    let entries: Vec<u32> = t
        .entries()
        .iter()
        .enumerate()
        .map(|(j, &m)| if m == 0 { v.entries()[j] } else { top + m })
        .collect();
    Seq::new(entries)
}

/// Membership in `X_v^max`: `w` belongs iff its first entry exceeds `max(v)`,
/// or `w` agrees with `v` on a prefix of length `i ≥ 1` and, when `i < k`,
/// the next entry of `w` exceeds `max(v)`.
pub fn xmax_contains(v: &Vertex, w: &Vertex) -> Result<bool> {
    let k = v.dim();
    w.check_dim(k)?;
    let lcp = v
        .entries()
        .iter()
        .zip(w.entries())
        .take_while(|(a, b)| a == b)
        .count();
    let top = v.last();
    Ok(lcp == k || w.first() > top || (lcp >= 1 && w.entries()[lcp] > top))
}

/// The certified initial segment `{w ∈ X_v^max : w ≼ cutoff}`.
/// Its witness is the restriction of `X̂_v` to the matching initial segment
/// of `(ω^{≤k}, ≺)`, so the result always lies in `AR^k`.
pub fn xmax_segment(v: &Vertex, cutoff: &Vertex) -> Result<Approximation> {
    let k = v.dim();
    cutoff.check_dim(k)?;
    if cutoff < v {
        return Err(Error::CutoffBeforeAnchor);
    }
    let mut assignments: Vec<(Seq, Seq)> = Vec::new();
    let mut pending: Vec<(Seq, Seq)> = Vec::new();
    let mut members: Vec<Vertex> = Vec::new();
    for t in seqs(k) {
        let image = xmax_tree_value(v, &t)?;
        if t.len() == k {
            let w = Vertex::from_seq(image.clone()).unwrap();
            if &w <= cutoff {
                assignments.append(&mut pending);
                assignments.push((t, image));
                members.push(w);
            } else {
                break;
            }
        } else {
            pending.push((t, image));
        }
    }
    Ok(Approximation::from_parts(
        FinSet::from_vertices(members)?,
        TreePrefixWitness::new(assignments),
    ))
}
