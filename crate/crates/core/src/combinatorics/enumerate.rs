//! Enumeration of `(ω^k, ≺)` and `(ω^{≤k}, ≺)`: iterators, 1-based ranking
//! and unranking, and finite `≺`-intervals.
//!
//! Both orders have order type ω; the iterators walk them group by group,
//! where a group collects the sequences with a fixed last entry.

use super::order::{Seq, Vertex};
use crate::error::{Error, Result};

/// All non-decreasing tuples of length `len` with entries in `lo..=hi`,
/// in lexicographic order.
pub fn nondecreasing_tuples(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for z in lo..=hi {
            cur.push(z);
            rec(len, z, hi, cur, out);
            cur.pop();
        }
    }
    if len == 0 {
        out.push(Vec::new());
    } else if lo <= hi {
        rec(len, lo, hi, &mut cur, &mut out);
    }
    out
}

/// Iterate `ω^k` in strictly `≺`-increasing order, starting at `(0,…,0)`.
pub fn vertices(k: usize) -> impl Iterator<Item = Vertex> {
    assert!(k >= 1, "dimension must be at least 1");
    (0u32..).flat_map(move |c| {
        nondecreasing_tuples(k - 1, 0, c)
            .into_iter()
            .map(move |mut prefix| {
                prefix.push(c);
                Vertex::new(prefix).unwrap()
            })
    })
}

/// Iterate `ω^{≤k}` in strictly `≺`-increasing order, starting at `()`.
pub fn seqs(k: usize) -> impl Iterator<Item = Seq> {
    assert!(k >= 1, "dimension must be at least 1");
    std::iter::once(Seq::empty()).chain((0u32..).flat_map(move |c| {
        let mut group: Vec<Seq> = Vec::new();
        for len in 1..=k {
            for mut prefix in nondecreasing_tuples(len - 1, 0, c) {
                prefix.push(c);
                group.push(Seq::new(prefix).unwrap());
            }
        }
        group.sort();
        group
    }))
}

/// 1-based position of `v` in `(ω^k, ≺)`.
pub fn rank_vertex(v: &Vertex) -> u64 {
    let k = v.dim();
    vertices(k).take_while(|w| w < v).count() as u64 + 1
}

/// The `n`-th member of `(ω^k, ≺)`, `n ≥ 1`.
pub fn unrank_vertex(n: u64, k: usize) -> Result<Vertex> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(vertices(k).nth(n as usize - 1).unwrap())
}

/// 1-based position of `s` in `(ω^{≤k}, ≺)`; `rank_seq((), k) = 1`.
pub fn rank_seq(s: &Seq, k: usize) -> Result<u64> {
    if s.len() > k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: s.len(),
        });
    }
    Ok(seqs(k).take_while(|t| t < s).count() as u64 + 1)
}

/// The `m`-th member of `(ω^{≤k}, ≺)`, `m ≥ 1`.
pub fn unrank_seq(m: u64, k: usize) -> Result<Seq> {
    if m == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(seqs(k).nth(m as usize - 1).unwrap())
}

/// All vertices `v` with `lo ≺ v ≼ hi` (`v ≼ hi` when `lo` is absent),
/// in `≺` order. Empty when `lo ≽ hi`.
pub fn interval_vertices(lo: Option<&Vertex>, hi: &Vertex) -> Result<Vec<Vertex>> {
    let k = hi.dim();
    if let Some(l) = lo {
        l.check_dim(k)?;
    }
    Ok(vertices(k)
        .take_while(|v| v <= hi)
        .filter(|v| lo.is_none_or(|l| v > l))
        .collect())
}
