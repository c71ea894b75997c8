//! The tree of non-decreasing sequences and the well-order `≺` on it.
//!
//! `Seq` models a node of the tree of non-decreasing integer sequences of
//! length at most `k`; `Vertex` a node of full length `k`. The derived `Ord`
//! on both types is the well-order `≺`: compare last entries first, break
//! ties lexicographically (a proper initial segment comes first). The empty
//! sequence is the `≺`-minimum.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A non-decreasing sequence of naturals (possibly empty).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Seq(Vec<u32>);

impl Seq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone(entries));
        }
        Ok(Seq(entries))
    }

    pub fn empty() -> Self {
        Seq(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Append `z`; fails unless `z` keeps the sequence non-decreasing.
    pub fn child(&self, z: u32) -> Result<Seq> {
        if self.last().is_some_and(|l| z < l) {
            let mut v = self.0.clone();
            v.push(z);
            return Err(Error::NotMonotone(v));
        }
        let mut v = self.0.clone();
        v.push(z);
        Ok(Seq(v))
    }

    /// Drop the last entry; `None` for the empty sequence.
    pub fn parent(&self) -> Option<Seq> {
        if self.0.is_empty() {
            None
        } else {
            Some(Seq(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The strict initial-segment relation `⊏`.
    pub fn is_proper_prefix_of(&self, other: &Seq) -> bool {
        self.0.len() < other.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// `⊑`: initial segment or equal.
    pub fn is_prefix_of(&self, other: &Seq) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }
}

impl Ord for Seq {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0.last(), other.0.last()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b).then_with(|| self.0.cmp(&other.0)),
        }
    }
}

impl PartialOrd for Seq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A point of `ω^k`: a non-decreasing sequence of full length `k ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Seq);

impl Vertex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVertex);
        }
        Ok(Vertex(Seq::new(entries)?))
    }

    pub fn from_seq(s: Seq) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyVertex);
        }
        Ok(Vertex(s))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        self.0.entries()
    }

    pub fn as_seq(&self) -> &Seq {
        &self.0
    }

    pub fn first(&self) -> u32 {
        self.0.entries()[0]
    }

    /// Equals the maximum entry, since entries are non-decreasing.
    pub fn last(&self) -> u32 {
        self.0.last().unwrap()
    }

    pub fn check_dim(&self, k: usize) -> Result<()> {
        if self.dim() == k {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: k,
                got: self.dim(),
            })
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
