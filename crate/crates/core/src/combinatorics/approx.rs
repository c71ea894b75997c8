//! Finite approximations `AR^k`: certified initial segments of members of
//! the k-dimensional Ellentuck space.
//!
//! A set `F = {w_1 ≺ … ≺ w_n} ⊆ ω^k` lies in `AR^k` iff some tree prefix on
//! the first `M` nodes of `(ω^{≤k}, ≺)` (where the `M`-th node is the `n`-th
//! vertex) maps the `i`-th vertex to `w_i` while preserving lengths, `⊏` and
//! `≺`. Any such prefix extends to a full tree by choosing fresh entries
//! strictly above everything used so far, so the bounded search below is a
//! complete decision procedure.

use std::collections::HashMap;

use super::enumerate::seqs;
use super::order::{Seq, Vertex};
use super::xmax::xmax_contains;
use crate::error::{Error, Result};

/// A non-empty, strictly `≺`-increasing finite subset of `ω^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSet {
    members: Vec<Vertex>,
}

impl FinSet {
    /// Sorts and deduplicates; rejects empty input and mixed dimensions.
    pub fn from_vertices(mut members: Vec<Vertex>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::EmptySet);
        };
        let k = first.dim();
        for m in &members {
            m.check_dim(k)?;
        }
        members.sort();
        members.dedup();
        Ok(FinSet { members })
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn min(&self) -> &Vertex {
        &self.members[0]
    }

    pub fn max(&self) -> &Vertex {
        self.members.last().unwrap()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.members.binary_search(v).is_ok()
    }

    pub fn max_entry(&self) -> u32 {
        self.members.iter().map(|v| v.last()).max().unwrap()
    }
}

/// A partial Ellentuck tree: assignments on an initial `≺`-segment of
/// `ω^{≤k}`, preserving lengths, initial segments and `≺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePrefixWitness {
    assignments: Vec<(Seq, Seq)>,
}

impl TreePrefixWitness {
    pub fn new(assignments: Vec<(Seq, Seq)>) -> Self {
        TreePrefixWitness { assignments }
    }

    pub fn assignments(&self) -> &[(Seq, Seq)] {
        &self.assignments
    }

    pub fn get(&self, s: &Seq) -> Option<&Seq> {
        self.assignments
            .iter()
            .find(|(d, _)| d == s)
            .map(|(_, x)| x)
    }

    /// Images of the full-length domain nodes, in `≺` order.
    pub fn vertex_images(&self, k: usize) -> Vec<Vertex> {
        self.assignments
            .iter()
            .filter(|(d, _)| d.len() == k)
            .map(|(_, x)| Vertex::from_seq(x.clone()).unwrap())
            .collect()
    }

    /// Checks every witness invariant against dimension `k`: the domain is
    /// exactly an initial segment of `(ω^{≤k}, ≺)`, lengths are preserved,
    /// images are strictly `≺`-increasing, and each node's image properly
    /// extends its parent's image.
    pub fn validate(&self, k: usize) -> Result<()> {
        let domain: Vec<&Seq> = self.assignments.iter().map(|(d, _)| d).collect();
        for (expected, got) in seqs(k).zip(domain.iter()) {
            if &&expected != got {
                return Err(Error::Certificate(format!(
                    "witness domain is not an initial segment: expected {expected}, got {got}"
                )));
            }
        }
        let mut index: HashMap<&Seq, usize> = HashMap::new();
        for (i, (d, x)) in self.assignments.iter().enumerate() {
            if d.len() != x.len() {
                return Err(Error::Certificate(format!(
                    "witness does not preserve length at {d}"
                )));
            }
            if i > 0 {
                let prev = &self.assignments[i - 1].1;
                if prev >= x {
                    return Err(Error::Certificate(format!(
                        "witness images not increasing at {d}: {prev} !< {x}"
                    )));
                }
            }
            if let Some(p) = d.parent() {
                let pi = *index.get(&p).ok_or_else(|| {
                    Error::Certificate(format!("witness domain misses the parent of {d}"))
                })?;
                let pimg = &self.assignments[pi].1;
                if !(x.is_empty() && pimg.is_empty()) && !pimg.is_proper_prefix_of(x) {
                    return Err(Error::Certificate(format!(
                        "witness does not preserve initial segments at {d}"
                    )));
                }
            }
            index.insert(d, i);
        }
        Ok(())
    }
}

/// A member of `AR^k`: a finite set together with a tree-prefix witness
/// whose vertex images are exactly the set.
#[derive(Clone, Debug)]
pub struct Approximation {
    set: FinSet,
    witness: TreePrefixWitness,
}

impl Approximation {
    pub fn from_parts(set: FinSet, witness: TreePrefixWitness) -> Self {
        Approximation { set, witness }
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn witness(&self) -> &TreePrefixWitness {
        &self.witness
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn min(&self) -> &Vertex {
        self.set.min()
    }

    pub fn max(&self) -> &Vertex {
        self.set.max()
    }

    /// Full re-validation: witness invariants, set/witness agreement, and
    /// containment of the set in `X_v^max` for `v` the minimum.
    pub fn validate(&self) -> Result<()> {
        let k = self.set.dim();
        self.witness.validate(k)?;
        let images = self.witness.vertex_images(k);
        if images != self.set.members {
            return Err(Error::Certificate(
                "witness vertex images do not match the set".to_string(),
            ));
        }
        let v = self.set.min();
        for w in self.set.members() {
            if !xmax_contains(v, w)? {
                return Err(Error::Certificate(format!(
                    "member {w} escapes the maximal tree of the minimum {v}"
                )));
            }
        }
        Ok(())
    }
}

impl PartialEq for Approximation {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Approximation {}

impl std::hash::Hash for Approximation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

/// The domain `{s⃗_1, …, s⃗_M}` where `s⃗_M` is the `n`-th vertex, plus the
/// index of each node's parent within the domain.
fn witness_domain(k: usize, n: usize) -> (Vec<Seq>, Vec<Option<usize>>) {
    let mut domain = Vec::new();
    let mut count = 0;
    for s in seqs(k) {
        let full = s.len() == k;
        domain.push(s);
        if full {
            count += 1;
            if count == n {
                break;
            }
        }
    }
    let mut index: HashMap<Seq, usize> = HashMap::new();
    let mut parents = Vec::with_capacity(domain.len());
    for (i, s) in domain.iter().enumerate() {
        parents.push(s.parent().map(|p| index[&p]));
        index.insert(s.clone(), i);
    }
    (domain, parents)
}

struct MembershipSearch<'a> {
    domain: Vec<Seq>,
    parents: Vec<Option<usize>>,
    targets: &'a [Vertex],
    k: usize,
    bound: u32,
}

impl MembershipSearch<'_> {
    fn run(&self) -> Option<Vec<Seq>> {
        let mut assigned: Vec<Seq> = Vec::with_capacity(self.domain.len());
        let mut vcount = 0usize;
        if self.extend(&mut assigned, &mut vcount) {
            Some(assigned)
        } else {
            None
        }
    }

    fn extend(&self, assigned: &mut Vec<Seq>, vcount: &mut usize) -> bool {
        let pos = assigned.len();
        if pos == self.domain.len() {
            return true;
        }
        let t = &self.domain[pos];
        if t.is_empty() {
            assigned.push(Seq::empty());
            if self.extend(assigned, vcount) {
                return true;
            }
            assigned.pop();
            return false;
        }
        let parent_img = self.parents[pos].map(|pi| assigned[pi].clone()).unwrap();
        if t.len() == self.k {
            let w = self.targets[*vcount].as_seq().clone();
            if self.accepts(pos, &parent_img, &w, assigned) {
                assigned.push(w);
                *vcount += 1;
                if self.extend(assigned, vcount) {
                    return true;
                }
                *vcount -= 1;
                assigned.pop();
            }
            false
        } else {
            let lo = parent_img.last().unwrap_or(0);
            for z in lo..=self.bound {
                let cand = parent_img.child(z).unwrap();
                if !self.accepts(pos, &parent_img, &cand, assigned) {
                    continue;
                }
                assigned.push(cand);
                if self.extend(assigned, vcount) {
                    return true;
                }
                assigned.pop();
            }
            false
        }
    }

    fn accepts(&self, pos: usize, parent_img: &Seq, cand: &Seq, assigned: &[Seq]) -> bool {
        parent_img.is_proper_prefix_of(cand) && (pos == 0 || assigned[pos - 1] < *cand)
    }
}

/// Decide membership of `f` in `AR^k`; returns the witnessing tree prefix
/// if one exists. Entries of intermediate nodes are searched up to
/// `max(F) + |F| + k`, which is enough: fresh values can always be shifted up.
pub fn is_approximation(f: &FinSet) -> Option<TreePrefixWitness> {
    let k = f.dim();
    let n = f.len();
    let (domain, parents) = witness_domain(k, n);
    let bound = f.max_entry() + f.len() as u32 + k as u32;
    let search = MembershipSearch {
        domain,
        parents,
        targets: f.members(),
        k,
        bound,
    };
    let assigned = search.run()?;
    Some(TreePrefixWitness::new(
        search.domain.iter().cloned().zip(assigned).collect(),
    ))
}

/// Certify membership, bundling set and witness.
pub fn certify(f: &FinSet) -> Option<Approximation> {
    is_approximation(f).map(|w| Approximation::from_parts(f.clone(), w))
}

/// Exhaustively construct every member of `AR^k` whose vertices have entries
/// `≤ max_entry` and size `≤ max_size`, by building all tree prefixes with
/// entries inside the box. Reference oracle for [`is_approximation`]; the two
/// must agree and the agreement is part of the acceptance suite.
pub fn enumerate_approximations(k: usize, max_entry: u32, max_size: usize) -> Vec<Approximation> {
    let mut found: HashMap<Vec<Vertex>, Approximation> = HashMap::new();
    if max_size == 0 {
        return Vec::new();
    }
    let (domain, parents) = witness_domain(k, max_size);
    let mut assigned: Vec<Seq> = Vec::new();
    let mut images: Vec<Vertex> = Vec::new();

    fn rec(
        domain: &[Seq],
        parents: &[Option<usize>],
        k: usize,
        max_entry: u32,
        assigned: &mut Vec<Seq>,
        images: &mut Vec<Vertex>,
        found: &mut HashMap<Vec<Vertex>, Approximation>,
    ) {
        let pos = assigned.len();
        if pos == domain.len() {
            return;
        }
        let t = &domain[pos];
        if t.is_empty() {
            assigned.push(Seq::empty());
            rec(domain, parents, k, max_entry, assigned, images, found);
            assigned.pop();
            return;
        }
        let parent_img = parents[pos].map(|pi| assigned[pi].clone()).unwrap();
        let lo = parent_img.last().unwrap_or(0);
        for z in lo..=max_entry {
            let cand = parent_img.child(z).unwrap();
            if pos > 0 && assigned[pos - 1] >= cand {
                continue;
            }
            let full = cand.len() == k;
            assigned.push(cand.clone());
            if full {
                images.push(Vertex::from_seq(cand).unwrap());
                found.entry(images.clone()).or_insert_with(|| {
                    Approximation::from_parts(
                        FinSet::from_vertices(images.clone()).unwrap(),
                        TreePrefixWitness::new(
                            domain[..assigned.len()]
                                .iter()
                                .cloned()
                                .zip(assigned.iter().cloned())
                                .collect(),
                        ),
                    )
                });
            }
            rec(domain, parents, k, max_entry, assigned, images, found);
            if full {
                images.pop();
            }
            assigned.pop();
        }
    }

    rec(
        &domain,
        &parents,
        k,
        max_entry,
        &mut assigned,
        &mut images,
        &mut found,
    );
    let mut out: Vec<Approximation> = found.into_values().collect();
    out.sort_by(|a, b| a.set().members().cmp(b.set().members()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[u32]) -> Vertex {
        Vertex::new(e.to_vec()).unwrap()
    }

    fn fs(items: &[&[u32]]) -> FinSet {
        FinSet::from_vertices(items.iter().map(|e| v(e)).collect()).unwrap()
    }

    #[test]
    fn straight_pair_is_an_approximation() {
        let w = is_approximation(&fs(&[&[0, 0], &[0, 1]]));
        assert!(w.is_some());
        w.unwrap().validate(2).unwrap();
    }

    #[test]
    fn second_element_must_extend_the_first_prefix() {
        // the second element of an approximation is X̂(0,…,0,1) = (n_1,…,n_{k-1}, n_k')
        assert!(is_approximation(&fs(&[&[0, 0], &[1, 1]])).is_none());
    }

    #[test]
    fn every_singleton_is_an_approximation() {
        for w in crate::combinatorics::enumerate::vertices(3).take(15) {
            let f = FinSet::from_vertices(vec![w]).unwrap();
            assert!(is_approximation(&f).is_some());
        }
    }

    #[test]
    fn dimension_one_admits_every_finite_set() {
        let f = fs(&[&[3], &[5], &[11]]);
        assert!(is_approximation(&f).is_some());
    }

    #[test]
    fn witness_respects_the_targets() {
        let f = fs(&[&[2, 4], &[2, 5], &[5, 5]]);
        let w = is_approximation(&f).expect("initial segment of a maximal tree");
        let approx = Approximation::from_parts(f, w);
        approx.validate().unwrap();
    }

    #[test]
    fn enumeration_of_singletons_in_a_tight_box() {
        let got = enumerate_approximations(2, 1, 1);
        let sets: Vec<&[Vertex]> = got.iter().map(|a| a.set().members()).collect();
        assert_eq!(
            sets,
            vec![&[v(&[0, 0])][..], &[v(&[0, 1])][..], &[v(&[1, 1])][..]]
        );
    }

    #[test]
    fn enumerated_approximations_validate_and_sit_inside_the_minimums_tree() {
        for a in enumerate_approximations(2, 3, 3) {
            a.validate().unwrap();
        }
    }

    #[test]
    fn dimension_one_enumeration_has_every_finite_set_in_range() {
        use std::collections::HashSet;
        let got: HashSet<Vec<Vertex>> = enumerate_approximations(1, 3, 2)
            .into_iter()
            .map(|a| a.set().members().to_vec())
            .collect();
        for a in 0..=3u32 {
            assert!(got.contains(&vec![v(&[a])]));
            for b in a + 1..=3 {
                assert!(got.contains(&vec![v(&[a]), v(&[b])]));
            }
        }
        // nothing else: sizes and entries stay inside the box
        assert_eq!(got.len(), 4 + 6);
    }

    #[test]
    fn enumeration_matches_membership_on_a_small_box() {
        use std::collections::HashSet;
        let enumerated: HashSet<Vec<Vertex>> = enumerate_approximations(2, 2, 2)
            .into_iter()
            .map(|a| a.set().members().to_vec())
            .collect();
        let pool: Vec<Vertex> = crate::combinatorics::enumerate::vertices(2)
            .take_while(|w| w.last() <= 2)
            .collect();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let mut items = vec![pool[i].clone()];
                if j > i {
                    items.push(pool[j].clone());
                }
                let f = FinSet::from_vertices(items).unwrap();
                let member = is_approximation(&f).is_some();
                assert_eq!(member, enumerated.contains(f.members()), "at {f:?}");
            }
        }
    }
}
