//! Structure-preserving maps between spaces of different dimension and the
//! trace/diagonal subspace generators.
//!
//! `Φ` prepends a zero entry, `Ψ` duplicates the last entry; both preserve
//! `≺` and initial segments, so they relabel basis vectors. Norms of images
//! are always recomputed by the engine rather than assumed transported.

use crate::combinatorics::{vertices, FinSet, Seq, Vertex};
use crate::error::{Error, Result};
use crate::norm::Vector;

/// `Φ(v) = (0)⌢v`.
pub fn phi_vertex(v: &Vertex) -> Vertex {
    let mut e = Vec::with_capacity(v.dim() + 1);
    e.push(0);
    e.extend_from_slice(v.entries());
    Vertex::new(e).unwrap()
}

/// Coefficient-preserving relabeling of a vector along `Φ`.
pub fn phi_vector(x: &Vector) -> Vector {
    let mut out = Vector::zero(x.k() + 1).unwrap();
    for (v, q) in x.iter() {
        out.set(phi_vertex(v), q.clone()).unwrap();
    }
    out
}

/// `Ψ(v) = (v_1,…,v_k,v_k)`.
pub fn psi_vertex(v: &Vertex) -> Vertex {
    let mut e = v.entries().to_vec();
    e.push(v.last());
    Vertex::new(e).unwrap()
}

/// Coefficient-preserving relabeling of a vector along `Ψ`.
pub fn psi_vector(x: &Vector) -> Vector {
    let mut out = Vector::zero(x.k() + 1).unwrap();
    for (v, q) in x.iter() {
        out.set(psi_vertex(v), q.clone()).unwrap();
    }
    out
}

fn check_stem(stem: &Seq, k: usize) -> Result<()> {
    if stem.len() >= k {
        return Err(Error::BadStem);
    }
    Ok(())
}

/// The first `count` members of the trace `τ^k[s] = {v ∈ ω^k : s ⊑ v}`
/// in `≺` order.
pub fn trace_basis(stem: &Seq, k: usize, count: usize) -> Result<Vec<Vertex>> {
    check_stem(stem, k)?;
    Ok(vertices(k)
        .filter(|v| stem.is_prefix_of(v.as_seq()))
        .take(count)
        .collect())
}

/// The diagonal sequence above a stem: `v_i = s⌢(c+i−1, …, c+i−1)` where `c`
/// is the last entry of the stem (0 for the empty stem). Consecutive members
/// satisfy `v_{i+1} ∈ X_{v_i}^max`, so `(e_{v_i})` meets the block-subspace
/// hypotheses.
pub fn diagonal_basis(stem: &Seq, k: usize, count: usize) -> Result<Vec<Vertex>> {
    check_stem(stem, k)?;
    let c = stem.last().unwrap_or(0);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut e = stem.entries().to_vec();
        while e.len() < k {
            e.push(c + i as u32);
        }
        out.push(Vertex::new(e).unwrap());
    }
    Ok(out)
}

/// The `j`-th summand stem of the canonical decomposition
/// `τ^k[s] = ⋃_i τ^k[s⌢(c+i−1)]`, `j ≥ 1`.
fn summand_stem(stem: &Seq, j: usize) -> Seq {
    let c = stem.last().unwrap_or(0);
    stem.child(c + (j - 1) as u32).unwrap()
}

fn check_in_trace(x: &Vector, stem: &Seq, k: usize) -> Result<()> {
    if x.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: x.k(),
        });
    }
    for (v, _) in x.iter() {
        if !stem.is_prefix_of(v.as_seq()) {
            return Err(Error::OutsideTrace);
        }
    }
    Ok(())
}

/// Restriction of `x ∈ T^k[s]` onto the `j`-th summand `T^k[s_j]`, `j ≥ 1`.
/// Idempotent and norm non-increasing by 1-unconditionality.
pub fn component_projection(x: &Vector, stem: &Seq, j: usize) -> Result<Vector> {
    check_stem(stem, x.k())?;
    check_in_trace(x, stem, x.k())?;
    if j == 0 {
        return Err(Error::Hypothesis("summand indices are 1-based".into()));
    }
    let s = summand_stem(stem, j);
    Ok(x.restrict(|v| s.is_prefix_of(v.as_seq())))
}

/// Restriction of `x ∈ T^k[s]` onto the first `m` summands.
pub fn tail_projection(x: &Vector, stem: &Seq, m: usize) -> Result<Vector> {
    check_stem(stem, x.k())?;
    check_in_trace(x, stem, x.k())?;
    let stems: Vec<Seq> = (1..=m).map(|j| summand_stem(stem, j)).collect();
    Ok(x.restrict(|v| stems.iter().any(|s| s.is_prefix_of(v.as_seq()))))
}

/// `tr_0` on finite sets: drop the leading zero of every member that has
/// one, discard the rest; `None` when nothing survives.
pub fn trace_zero_set(f: &FinSet) -> Option<FinSet> {
    let survivors: Vec<Vertex> = f
        .members()
        .iter()
        .filter(|v| v.first() == 0 && v.dim() >= 2)
        .map(|v| Vertex::new(v.entries()[1..].to_vec()).unwrap())
        .collect();
    if survivors.is_empty() {
        None
    } else {
        Some(FinSet::from_vertices(survivors).unwrap())
    }
}

/// Relabel a vector supported on `τ^k[stem]` down to dimension `k − |stem|`
/// by stripping the stem. Inverse of [`graft_stem`].
pub fn strip_stem(x: &Vector, stem: &Seq) -> Result<Vector> {
    check_stem(stem, x.k())?;
    check_in_trace(x, stem, x.k())?;
    let low = x.k() - stem.len();
    let mut out = Vector::zero(low)?;
    for (v, q) in x.iter() {
        let tail = Vertex::new(v.entries()[stem.len()..].to_vec()).unwrap();
        out.set(tail, q.clone())?;
    }
    Ok(out)
}

/// Relabel a vector at dimension `k − |stem|` into `τ^k[stem]` by prefixing
/// the stem. Requires every support point to start no lower than the stem's
/// last entry so the result stays non-decreasing.
pub fn graft_stem(x: &Vector, stem: &Seq, k: usize) -> Result<Vector> {
    check_stem(stem, k)?;
    if x.k() != k - stem.len() {
        return Err(Error::DimensionMismatch {
            expected: k - stem.len(),
            got: x.k(),
        });
    }
    let mut out = Vector::zero(k)?;
    for (v, q) in x.iter() {
        let mut e = stem.entries().to_vec();
        e.extend_from_slice(v.entries());
        let grafted = Vertex::new(e).map_err(|_| Error::OutsideTrace)?;
        out.set(grafted, q.clone())?;
    }
    Ok(out)
}
