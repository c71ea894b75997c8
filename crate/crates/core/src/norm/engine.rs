//! Exact norm computation by search over admissible block decompositions.
//!
//! A maximizing family can always be assumed to consist of maximal-tree
//! segments: replacing a block `E_i` by
//! `xmax_segment(min E_i, last captured support point)` never decreases any
//! `‖E_i x‖` (restriction monotonicity) and keeps the family successive. So
//! the search enumerates, per block, an anchor from the finite `≺`-interval
//! after the previous endpoint and a cutoff among support points. A lone
//! block capturing the whole support contributes `θ‖x‖ < ‖x‖` and is
//! skipped, which also makes the recursion well-founded.
//!
//! For the endpoint-separated variant every slot additionally carries a
//! separator; a slot may be a zero-capture "bridge" block `{v_i}`: dropping
//! such blocks is not sound there because a subset of an approximation need
//! not be an approximation, so bridges genuinely enlarge the feasible set.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::combinatorics::{
    interval_vertices, is_approximation, xmax_contains, xmax_segment, FinSet, Vertex,
};
use crate::error::{Error, Result};

use super::certificate::NormCertificate;
use super::family::AdmissibleFamily;
use super::params::{Params, Variant};
use super::vector::Vector;

type Key = Vec<(Vertex, BigRational)>;
/// Best capture for a (separator, cutoff) pair: value, anchor, covered points.
type CaptureChoice = Option<(BigRational, Vertex, Vec<Vertex>)>;

struct Outcome {
    value: BigRational,
    certificate: NormCertificate,
}

/// One chosen block: its separator (endpoint variant only), anchor, cutoff
/// and the support points it captures. An empty capture is a bridge block
/// `{anchor}` placed only to keep the separator set an approximation.
#[derive(Clone)]
struct Slot {
    separator: Option<Vertex>,
    anchor: Vertex,
    cutoff: Vertex,
    captured: Vec<Vertex>,
}

#[derive(Clone)]
struct FamilyChoice {
    sum: BigRational,
    slots: Vec<Slot>,
}

impl FamilyChoice {
    fn none() -> Self {
        FamilyChoice {
            sum: BigRational::zero(),
            slots: Vec::new(),
        }
    }

    fn tie_key(&self) -> (usize, Vec<&Vertex>, Vec<&Vertex>) {
        (
            self.slots.len(),
            self.slots.iter().map(|s| &s.anchor).collect(),
            self.slots
                .iter()
                .filter_map(|s| s.separator.as_ref())
                .collect(),
        )
    }

    /// Maximize the sum; among maximizers prefer fewer blocks, then
    /// lexicographically smaller anchors (deterministic output).
    fn better_than(&self, other: &FamilyChoice) -> bool {
        match self.sum.cmp(&other.sum) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.tie_key() < other.tie_key(),
        }
    }
}

#[derive(Clone, Copy)]
enum ChildEval {
    /// Evaluate children with the full norm.
    Norm,
    /// Evaluate children with the level norm `|·|_j`.
    Level(usize),
}

/// Exact norm computation for one parameter set, with a shared memo table.
/// All methods are pure functions of their inputs given the table; the table
/// supports concurrent readers with insert-if-absent, so the engine can be
/// shared across threads and single-threaded runs produce identical results.
pub struct NormEngine {
    params: Params,
    memo: RwLock<HashMap<Key, Arc<Outcome>>>,
    level_memo: RwLock<HashMap<(Key, usize), BigRational>>,
    sep_memo: RwLock<HashMap<Vec<Vertex>, bool>>,
}

impl NormEngine {
    pub fn new(params: Params) -> Self {
        NormEngine {
            params,
            memo: RwLock::new(HashMap::new()),
            level_memo: RwLock::new(HashMap::new()),
            sep_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.k() != self.params.k() {
            return Err(Error::DimensionMismatch {
                expected: self.params.k(),
                got: x.k(),
            });
        }
        Ok(())
    }

    /// The exact norm together with a certificate achieving it.
    pub fn norm(&self, x: &Vector) -> Result<(BigRational, NormCertificate)> {
        self.check_dim(x)?;
        let out = self.norm_inner(x);
        Ok((out.value.clone(), out.certificate.clone()))
    }

    pub fn norm_value(&self, x: &Vector) -> Result<BigRational> {
        self.check_dim(x)?;
        Ok(self.norm_inner(x).value.clone())
    }

    /// The `j`-th norm `|x|_j` of the defining recursion. Non-decreasing in
    /// `j` and equal to the norm from `j = |supp x|` on.
    pub fn norm_level(&self, x: &Vector, j: usize) -> Result<BigRational> {
        self.check_dim(x)?;
        Ok(self.level_inner(x, j))
    }

    fn norm_inner(&self, x: &Vector) -> Arc<Outcome> {
        if x.is_zero() {
            return Arc::new(Outcome {
                value: BigRational::zero(),
                certificate: NormCertificate::Zero,
            });
        }
        let key = x.canonical_key();
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let sup = x.sup_norm();
        let sup_vertex = x
            .iter()
            .find(|(_, q)| q.abs() == sup)
            .map(|(v, _)| v.clone())
            .unwrap();
        let fam = match self.params.variant() {
            Variant::Tk => self.search_tk(x, ChildEval::Norm),
            Variant::Ta => self.search_ta(x, ChildEval::Norm),
        };
        let outcome = match fam {
            Some(f) => {
                let total = self.params.theta() * &f.sum;
                if total > sup {
                    let (family, children) = self.assemble(x, &f);
                    Outcome {
                        value: total.clone(),
                        certificate: NormCertificate::Node {
                            family,
                            children,
                            value: total,
                        },
                    }
                } else {
                    Outcome {
                        value: sup.clone(),
                        certificate: NormCertificate::Leaf {
                            vertex: sup_vertex,
                            value: sup,
                        },
                    }
                }
            }
            None => Outcome {
                value: sup.clone(),
                certificate: NormCertificate::Leaf {
                    vertex: sup_vertex,
                    value: sup,
                },
            },
        };
        let arc = Arc::new(outcome);
        self.memo
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| arc.clone())
            .clone()
    }

    fn level_inner(&self, x: &Vector, j: usize) -> BigRational {
        if x.is_zero() {
            return BigRational::zero();
        }
        if j == 0 {
            return x.sup_norm();
        }
        let key = (x.canonical_key(), j);
        if let Some(hit) = self.level_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let below = self.level_inner(x, j - 1);
        let fam = match self.params.variant() {
            Variant::Tk => self.search_tk(x, ChildEval::Level(j - 1)),
            Variant::Ta => self.search_ta(x, ChildEval::Level(j - 1)),
        };
        let value = match fam {
            Some(f) => {
                let total = self.params.theta() * &f.sum;
                if total > below {
                    total
                } else {
                    below
                }
            }
            None => below,
        };
        self.level_memo
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| value.clone())
            .clone()
    }

    fn child_value(&self, sub: &Vector, eval: ChildEval) -> BigRational {
        match eval {
            ChildEval::Norm => self.norm_inner(sub).value.clone(),
            ChildEval::Level(j) => self.level_inner(sub, j),
        }
    }

    fn assemble(&self, x: &Vector, f: &FamilyChoice) -> (AdmissibleFamily, Vec<NormCertificate>) {
        let mut blocks = Vec::with_capacity(f.slots.len());
        let mut children = Vec::with_capacity(f.slots.len());
        for slot in &f.slots {
            blocks.push(xmax_segment(&slot.anchor, &slot.cutoff).unwrap());
            if slot.captured.is_empty() {
                children.push(NormCertificate::Zero);
            } else {
                let sub = x.restrict_to_sorted(&slot.captured);
                children.push(self.norm_inner(&sub).certificate.clone());
            }
        }
        let separators = if self.params.variant() == Variant::Ta {
            Some(
                f.slots
                    .iter()
                    .map(|s| s.separator.clone().unwrap())
                    .collect(),
            )
        } else {
            None
        };
        (AdmissibleFamily { blocks, separators }, children)
    }

    // ---- plain d-admissible search -------------------------------------

    fn search_tk(&self, x: &Vector, eval: ChildEval) -> Option<FamilyChoice> {
        let supp = x.support();
        if supp.is_empty() {
            return None;
        }
        let mut memo: HashMap<(usize, usize), FamilyChoice> = HashMap::new();
        let best = self.tk_rec(x, &supp, 0, self.params.d(), eval, &mut memo);
        if best.slots.is_empty() {
            None
        } else {
            Some(best)
        }
    }

    fn tk_rec(
        &self,
        x: &Vector,
        supp: &[Vertex],
        i: usize,
        b: usize,
        eval: ChildEval,
        memo: &mut HashMap<(usize, usize), FamilyChoice>,
    ) -> FamilyChoice {
        if b == 0 || i == supp.len() {
            return FamilyChoice::none();
        }
        if let Some(hit) = memo.get(&(i, b)) {
            return hit.clone();
        }
        let mut best = FamilyChoice::none();
        let prev = if i == 0 { None } else { Some(&supp[i - 1]) };
        for l in i..supp.len() {
            let cutoff = &supp[l];
            let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
            for anchor in interval_vertices(prev, cutoff).unwrap() {
                if !xmax_contains(&anchor, cutoff).unwrap() {
                    continue;
                }
                let captured: Vec<Vertex> = supp[i..=l]
                    .iter()
                    .filter(|p| xmax_contains(&anchor, p).unwrap())
                    .cloned()
                    .collect();
                if captured.len() == supp.len() {
                    continue; // lone full block: θ‖x‖ never attains the max
                }
                if !seen.insert(captured.clone()) {
                    continue;
                }
                let val = self.child_value(&x.restrict_to_sorted(&captured), eval);
                let rest = self.tk_rec(x, supp, l + 1, b - 1, eval, memo);
                let mut slots = Vec::with_capacity(1 + rest.slots.len());
                slots.push(Slot {
                    separator: None,
                    anchor: anchor.clone(),
                    cutoff: cutoff.clone(),
                    captured,
                });
                slots.extend(rest.slots);
                let cand = FamilyChoice {
                    sum: &val + &rest.sum,
                    slots,
                };
                if cand.better_than(&best) {
                    best = cand;
                }
            }
        }
        memo.insert((i, b), best.clone());
        best
    }

    // ---- endpoint-separated search -------------------------------------

    fn separator_prefix_ok(&self, seps: &[Vertex]) -> bool {
        if seps.len() <= 1 {
            return true;
        }
        if let Some(&b) = self.sep_memo.read().unwrap().get(seps) {
            return b;
        }
        let f = FinSet::from_vertices(seps.to_vec()).unwrap();
        let b = is_approximation(&f).is_some();
        self.sep_memo.write().unwrap().insert(seps.to_vec(), b);
        b
    }

    fn search_ta(&self, x: &Vector, eval: ChildEval) -> Option<FamilyChoice> {
        let supp = x.support();
        if supp.is_empty() {
            return None;
        }
        let pool = interval_vertices(None, supp.last().unwrap()).unwrap();
        let mut l1_after = vec![BigRational::zero(); supp.len() + 1];
        for i in (0..supp.len()).rev() {
            l1_after[i] = x.coefficient(&supp[i]).abs() + &l1_after[i + 1];
        }
        let mut ctx = TaSearch {
            eng: self,
            x,
            supp: &supp,
            pool: &pool,
            eval,
            l1_after,
            capture_cache: HashMap::new(),
            best: FamilyChoice::none(),
        };
        let mut seps = Vec::new();
        let mut slots = Vec::new();
        ctx.explore(None, &mut seps, &mut slots, BigRational::zero(), 0);
        if ctx.best.slots.is_empty() {
            None
        } else {
            Some(ctx.best)
        }
    }
}

struct TaSearch<'a> {
    eng: &'a NormEngine,
    x: &'a Vector,
    supp: &'a [Vertex],
    pool: &'a [Vertex],
    eval: ChildEval,
    l1_after: Vec<BigRational>,
    capture_cache: HashMap<(usize, usize), CaptureChoice>,
    best: FamilyChoice,
}

impl TaSearch<'_> {
    fn explore(
        &mut self,
        bound: Option<Vertex>,
        seps: &mut Vec<Vertex>,
        slots: &mut Vec<Slot>,
        sum: BigRational,
        captures: usize,
    ) {
        if captures >= 1 {
            let cand = FamilyChoice {
                sum: sum.clone(),
                slots: slots.clone(),
            };
            if cand.better_than(&self.best) {
                self.best = cand;
            }
        }
        let d = self.eng.params.d();
        if slots.len() == d {
            return;
        }
        let rem = match &bound {
            None => 0,
            Some(b) => self.supp.partition_point(|p| p <= b),
        };
        // nothing ahead can push the sum above the incumbent
        if &sum + &self.l1_after[rem] < self.best.sum {
            return;
        }
        let start = match &bound {
            None => 0,
            Some(b) => self.pool.partition_point(|v| v <= b),
        };
        for vi in start..self.pool.len() {
            let v = self.pool[vi].clone();
            seps.push(v.clone());
            if !self.eng.separator_prefix_ok(seps) {
                seps.pop();
                continue;
            }
            if slots.len() + 1 < d && self.supp[rem..].iter().any(|p| *p > v) {
                slots.push(Slot {
                    separator: Some(v.clone()),
                    anchor: v.clone(),
                    cutoff: v.clone(),
                    captured: Vec::new(),
                });
                self.explore(Some(v.clone()), seps, slots, sum.clone(), captures);
                slots.pop();
            }
            let ci_start = self.supp.partition_point(|p| p < &v);
            for ci in ci_start..self.supp.len() {
                if let Some((val, anchor, captured)) = self.best_capture(vi, ci) {
                    slots.push(Slot {
                        separator: Some(v.clone()),
                        anchor,
                        cutoff: self.supp[ci].clone(),
                        captured,
                    });
                    self.explore(
                        Some(self.supp[ci].clone()),
                        seps,
                        slots,
                        &sum + &val,
                        captures + 1,
                    );
                    slots.pop();
                }
            }
            seps.pop();
        }
    }

    fn best_capture(&mut self, vi: usize, ci: usize) -> CaptureChoice {
        if let Some(hit) = self.capture_cache.get(&(vi, ci)) {
            return hit.clone();
        }
        let cutoff = &self.supp[ci];
        let a_hi = self.pool.partition_point(|w| w <= cutoff);
        let mut best: CaptureChoice = None;
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        for ai in vi..a_hi {
            let a = &self.pool[ai];
            if !xmax_contains(a, cutoff).unwrap() {
                continue;
            }
            let captured: Vec<Vertex> = self
                .supp
                .iter()
                .filter(|p| *p <= cutoff && xmax_contains(a, p).unwrap())
                .cloned()
                .collect();
            if captured.len() == self.supp.len() {
                continue; // lone full block never attains the max
            }
            if !seen.insert(captured.clone()) {
                continue;
            }
            let val = self
                .eng
                .child_value(&self.x.restrict_to_sorted(&captured), self.eval);
            let improves = match &best {
                None => true,
                Some((bv, _, _)) => val > *bv,
            };
            if improves {
                best = Some((val, a.clone(), captured));
            }
        }
        self.capture_cache.insert((vi, ci), best.clone());
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::certificate::verify_certificate;
    use crate::rational::{big_int, big_rational};

    fn v(e: &[u32]) -> Vertex {
        Vertex::new(e.to_vec()).unwrap()
    }

    fn vector(k: usize, pairs: &[(&[u32], (i64, i64))]) -> Vector {
        let mut x = Vector::zero(k).unwrap();
        for (e, (n, d)) in pairs {
            x.set(v(e), big_rational(*n, *d)).unwrap();
        }
        x
    }

    fn engine(k: usize, d: usize, theta: (i64, i64), variant: Variant) -> NormEngine {
        NormEngine::new(Params::new(k, d, big_rational(theta.0, theta.1), variant).unwrap())
    }

    #[test]
    fn single_point_norm_is_the_sup_norm() {
        let eng = engine(2, 2, (1, 2), Variant::Tk);
        let x = vector(2, &[(&[0, 0], (1, 1))]);
        let (val, cert) = eng.norm(&x).unwrap();
        assert_eq!(val, big_int(1));
        assert!(matches!(cert, NormCertificate::Leaf { .. }));
        verify_certificate(&x, eng.params(), &cert).unwrap();
    }

    #[test]
    fn zero_vector_has_zero_norm_and_empty_certificate() {
        let eng = engine(2, 2, (1, 2), Variant::Tk);
        let x = Vector::zero(2).unwrap();
        let (val, cert) = eng.norm(&x).unwrap();
        assert!(val.is_zero());
        assert_eq!(cert, NormCertificate::Zero);
    }

    #[test]
    fn two_successive_singletons_give_four_thirds() {
        // k=2, d=2, θ=2/3: the blocks {(0,0)} < {(0,1)} norm e_{(0,0)}+e_{(0,1)} to 4/3
        let eng = engine(2, 2, (2, 3), Variant::Tk);
        let x = vector(2, &[(&[0, 0], (1, 1)), (&[0, 1], (1, 1))]);
        let (val, cert) = eng.norm(&x).unwrap();
        assert_eq!(val, big_rational(4, 3));
        verify_certificate(&x, eng.params(), &cert).unwrap();
        assert_eq!(cert.value(), big_rational(4, 3));

        // the endpoint-separated variant agrees here: {(0,0),(0,1)} is an approximation
        let eng_a = engine(2, 2, (2, 3), Variant::Ta);
        let (val_a, cert_a) = eng_a.norm(&x).unwrap();
        assert_eq!(val_a, big_rational(4, 3));
        verify_certificate(&x, eng_a.params(), &cert_a).unwrap();
    }

    #[test]
    fn endpoint_variant_can_be_strictly_smaller() {
        // x = e_{(0,1)} + e_{(1,1)}: no separator pair fits, so T_A sees only
        // single-block families and the norm drops to the sup norm.
        let x = vector(2, &[(&[0, 1], (1, 1)), (&[1, 1], (1, 1))]);
        let tk = engine(2, 2, (2, 3), Variant::Tk).norm_value(&x).unwrap();
        let ta = engine(2, 2, (2, 3), Variant::Ta).norm_value(&x).unwrap();
        assert_eq!(tk, big_rational(4, 3));
        assert_eq!(ta, big_int(1));
    }

    #[test]
    fn bellenot_space_of_four_units() {
        // k=1, d=2, θ=3/4: ‖e_1+e_2+e_3+e_4‖ = θ(‖e_1+e_2‖ + ‖e_3+e_4‖) = 9/4
        let eng = engine(1, 2, (3, 4), Variant::Tk);
        let x = vector(
            1,
            &[
                (&[0], (1, 1)),
                (&[1], (1, 1)),
                (&[2], (1, 1)),
                (&[3], (1, 1)),
            ],
        );
        let (val, cert) = eng.norm(&x).unwrap();
        assert_eq!(val, big_rational(9, 4));
        verify_certificate(&x, eng.params(), &cert).unwrap();
    }

    #[test]
    fn levels_start_at_sup_and_stabilize_at_the_support_size() {
        let eng = engine(2, 2, (1, 2), Variant::Tk);
        let x = vector(
            2,
            &[
                (&[0, 0], (1, 1)),
                (&[0, 1], (-1, 2)),
                (&[1, 1], (1, 1)),
                (&[0, 2], (1, 2)),
            ],
        );
        let sup = x.sup_norm();
        assert_eq!(eng.norm_level(&x, 0).unwrap(), sup);
        let n = x.len();
        let norm = eng.norm_value(&x).unwrap();
        assert_eq!(eng.norm_level(&x, n).unwrap(), norm);
        assert_eq!(eng.norm_level(&x, n + 2).unwrap(), norm);
        let mut prev = eng.norm_level(&x, 0).unwrap();
        for j in 1..=n {
            let cur = eng.norm_level(&x, j).unwrap();
            assert!(cur >= prev);
            prev = cur;
        }
    }

    #[test]
    fn branching_one_reduces_to_the_sup_norm() {
        // with a single block per family, θ‖Ex‖ < ‖x‖ never beats the sup
        for variant in [Variant::Tk, Variant::Ta] {
            let eng = engine(2, 1, (2, 3), variant);
            let x = vector(
                2,
                &[(&[0, 0], (1, 1)), (&[0, 1], (1, 2)), (&[1, 1], (-3, 2))],
            );
            assert_eq!(eng.norm_value(&x).unwrap(), x.sup_norm());
        }
    }

    #[test]
    fn certificates_are_deterministic_across_fresh_engines() {
        let x = vector(
            2,
            &[
                (&[0, 0], (1, 1)),
                (&[0, 1], (1, 1)),
                (&[1, 1], (1, 1)),
                (&[0, 2], (1, 2)),
            ],
        );
        for variant in [Variant::Tk, Variant::Ta] {
            let a = engine(2, 2, (3, 4), variant).norm(&x).unwrap();
            let b = engine(2, 2, (3, 4), variant).norm(&x).unwrap();
            assert_eq!(a.0, b.0);
            assert_eq!(
                crate::wire::certificate_to_json(&a.1),
                crate::wire::certificate_to_json(&b.1)
            );
        }
    }

    #[test]
    fn certificates_fail_on_mutation() {
        let eng = engine(2, 2, (2, 3), Variant::Tk);
        let x = vector(2, &[(&[0, 0], (1, 1)), (&[0, 1], (1, 1))]);
        let (_, cert) = eng.norm(&x).unwrap();
        // inflate the root value
        if let NormCertificate::Node {
            family,
            children,
            value,
        } = &cert
        {
            let bad = NormCertificate::Node {
                family: family.clone(),
                children: children.clone(),
                value: value + big_int(1),
            };
            assert!(verify_certificate(&x, eng.params(), &bad).is_err());
            // swap the blocks: breaks successiveness
            let mut fam = family.clone();
            fam.blocks.reverse();
            let bad = NormCertificate::Node {
                family: fam,
                children: children.clone(),
                value: value.clone(),
            };
            assert!(verify_certificate(&x, eng.params(), &bad).is_err());
        } else {
            panic!("expected a family certificate");
        }
    }

    #[test]
    fn engine_is_shareable_across_threads() {
        let eng = std::sync::Arc::new(engine(2, 2, (1, 2), Variant::Tk));
        let x = vector(
            2,
            &[
                (&[0, 0], (1, 1)),
                (&[0, 1], (1, 2)),
                (&[1, 1], (-1, 1)),
                (&[0, 2], (1, 1)),
            ],
        );
        let sequential = NormEngine::new(eng.params().clone())
            .norm_value(&x)
            .unwrap();
        let mut handles = Vec::new();
        for _ in 0..4 {
            let eng = eng.clone();
            let x = x.clone();
            handles.push(std::thread::spawn(move || eng.norm_value(&x).unwrap()));
        }
        for h in handles {
            assert_eq!(h.join().unwrap(), sequential);
        }
    }
}
