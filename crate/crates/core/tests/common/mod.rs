//! Test-side reference oracles, independent of the engine's search:
//! the naive maximizer enumerates *every* admissible family over a bounded
//! box of exhaustively constructed approximations and runs the plain level
//! recursion, with no segment reduction and no anchor pruning.

// shared by several integration test binaries; not all of them use every item
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;

use ellentuck::combinatorics::{enumerate_approximations, Vertex};
use ellentuck::norm::{Params, Variant, Vector};

/// One block up to what matters for a family: the support points it covers
/// and its endpoints (which drive successiveness and separator placement).
#[derive(Clone)]
struct BlockClass {
    covered: Vec<Vertex>,
    min: Vertex,
    max: Vertex,
}

pub struct NaiveNorm {
    params: Params,
    /// Families as lists of covered-point sets, feasibility already checked
    /// (successiveness, branching bound, separators for the endpoint
    /// variant). Independent of any particular vector.
    families: Vec<Vec<Vec<Vertex>>>,
    memo: HashMap<(Vec<(Vertex, BigRational)>, usize), BigRational>,
}

impl NaiveNorm {
    /// `universe`: the support points any test vector may use. `max_entry` /
    /// `max_size` bound the exhaustive approximation enumeration.
    pub fn new(params: &Params, universe: &[Vertex], max_entry: u32, max_size: usize) -> Self {
        let blocks = enumerate_approximations(params.k(), max_entry, max_size);
        let mut classes: Vec<BlockClass> = Vec::new();
        let mut seen: HashSet<(Vec<Vertex>, Vertex, Vertex)> = HashSet::new();
        for b in &blocks {
            let covered: Vec<Vertex> = b
                .set()
                .members()
                .iter()
                .filter(|v| universe.contains(v))
                .cloned()
                .collect();
            // blocks covering nothing only matter as fillers between the
            // separators of the endpoint variant
            if covered.is_empty() && params.variant() == Variant::Tk {
                continue;
            }
            let key = (covered.clone(), b.min().clone(), b.max().clone());
            if seen.insert(key) {
                classes.push(BlockClass {
                    covered,
                    min: b.min().clone(),
                    max: b.max().clone(),
                });
            }
        }
        // separator candidates: member lists of approximations of size ≤ d
        let separator_sets: Vec<Vec<Vertex>> = if params.variant() == Variant::Ta {
            enumerate_approximations(params.k(), max_entry, params.d())
                .iter()
                .map(|a| a.set().members().to_vec())
                .collect()
        } else {
            Vec::new()
        };

        let mut families: Vec<Vec<Vec<Vertex>>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        build_families(
            params,
            &classes,
            &separator_sets,
            &mut current,
            &mut families,
        );
        NaiveNorm {
            params: params.clone(),
            families,
            memo: HashMap::new(),
        }
    }

    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    pub fn norm(&mut self, x: &Vector) -> BigRational {
        self.level(x, x.len())
    }

    pub fn level(&mut self, x: &Vector, j: usize) -> BigRational {
        if x.is_zero() {
            return BigRational::zero();
        }
        if j == 0 {
            return x.sup_norm();
        }
        let key = (x.canonical_key(), j);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut best = self.level(x, j - 1);
        for fi in 0..self.families.len() {
            let family = self.families[fi].clone();
            let mut sum = BigRational::zero();
            let mut nonzero = false;
            for covered in &family {
                let sub = x.restrict_to_sorted(covered);
                if sub.is_zero() {
                    continue;
                }
                nonzero = true;
                sum += self.level(&sub, j - 1);
            }
            if nonzero {
                let total = self.params.theta() * sum;
                if total > best {
                    best = total;
                }
            }
        }
        self.memo.insert(key, best.clone());
        best
    }
}

fn build_families(
    params: &Params,
    classes: &[BlockClass],
    separator_sets: &[Vec<Vertex>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<Vertex>>>,
) {
    if !current.is_empty() {
        let feasible = match params.variant() {
            Variant::Tk => true,
            Variant::Ta => separator_sets.iter().any(|seps| {
                seps.len() == current.len()
                    && current.iter().enumerate().all(|(i, &ci)| {
                        let block = &classes[ci];
                        seps[i] <= block.min && (i == 0 || classes[current[i - 1]].max < seps[i])
                    })
            }),
        };
        if feasible {
            out.push(
                current
                    .iter()
                    .map(|&ci| classes[ci].covered.clone())
                    .collect(),
            );
        }
    }
    if current.len() == params.d() {
        return;
    }
    let bound = current.last().map(|&ci| classes[ci].max.clone());
    for (ci, c) in classes.iter().enumerate() {
        if bound.as_ref().is_none_or(|b| c.min > *b) {
            current.push(ci);
            build_families(params, classes, separator_sets, current, out);
            current.pop();
        }
    }
}

/// All vectors over the given support points with coefficients drawn from
/// `coeffs ∪ {0}`, excluding the zero vector.
pub fn coefficient_grid(points: &[Vertex], coeffs: &[BigRational]) -> Vec<Vector> {
    let k = points[0].dim();
    let mut out = Vec::new();
    let n = points.len();
    let base = coeffs.len() + 1;
    for code in 1..base.pow(n as u32) {
        let mut c = code;
        let mut x = Vector::zero(k).unwrap();
        for p in points {
            let digit = c % base;
            c /= base;
            if digit > 0 {
                x.set(p.clone(), coeffs[digit - 1].clone()).unwrap();
            }
        }
        if !x.is_zero() {
            out.push(x);
        }
    }
    out
}
