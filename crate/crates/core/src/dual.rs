//! The functional-side description of the norm: the sets `K_n` of signed
//! θ-weighted sums with almost admissible supports, used as a verification
//! oracle against the recursive norm levels.
//!
//! Generation is exponential, so it is restricted to an explicit vertex box
//! and small depth. This module is an oracle, not a production norm path.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

use crate::combinatorics::{interval_vertices, is_approximation, xmax_contains, FinSet, Vertex};
use crate::error::{Error, Result};
use crate::norm::{Params, Variant, Vector};

const BOX_LIMIT: usize = 12;
const DEPTH_LIMIT: usize = 4;

/// A signed finitely supported functional together with the construction
/// depth at which it first appears in the hierarchy `K_0 ⊆ K_1 ⊆ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub vector: Vector,
    pub depth: usize,
}

impl Functional {
    /// Exact pairing `f(x)`.
    pub fn apply(&self, x: &Vector) -> BigRational {
        self.vector
            .iter()
            .map(|(v, c)| c * x.coefficient(v))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Decide whether successive finite sets `(F_i)` are almost admissible for
/// the given variant:
///
/// - plain variant: there is a d-admissible `(E_i)` with `F_i ⊆ E_i`, which
///   reduces to an anchor `a_i ∈ (max F_{i−1}, min F_i]` with
///   `F_i ⊆ X_{a_i}^max`, independently per block;
/// - endpoint variant: there is an `A_d^k`-admissible ambient family, with
///   the `F_i` contained in a subsequence of its blocks (filler slots are
///   allowed and sometimes necessary).
pub fn almost_admissible(supports: &[FinSet], params: &Params) -> Result<bool> {
    if supports.is_empty() || supports.len() > params.d() {
        return Ok(false);
    }
    for f in supports {
        if f.dim() != params.k() {
            return Err(Error::DimensionMismatch {
                expected: params.k(),
                got: f.dim(),
            });
        }
    }
    for w in supports.windows(2) {
        if w[0].max() >= w[1].min() {
            return Ok(false);
        }
    }
    match params.variant() {
        Variant::Tk => Ok(tk_almost(supports)),
        Variant::Ta => Ok(ta_almost(supports, params.d())),
    }
}

fn block_has_anchor(bound: Option<&Vertex>, at_most: &Vertex, f: &FinSet) -> bool {
    interval_vertices(bound, at_most)
        .unwrap()
        .iter()
        .any(|a| f.members().iter().all(|w| xmax_contains(a, w).unwrap()))
}

fn tk_almost(supports: &[FinSet]) -> bool {
    let mut prev_max: Option<&Vertex> = None;
    for f in supports {
        if !block_has_anchor(prev_max, f.min(), f) {
            return false;
        }
        prev_max = Some(f.max());
    }
    true
}

fn ta_almost(supports: &[FinSet], d: usize) -> bool {
    fn rec(
        supports: &[FinSet],
        d: usize,
        bound: Option<&Vertex>,
        next: usize,
        slots: usize,
        seps: &mut Vec<Vertex>,
    ) -> bool {
        if next == supports.len() {
            return true;
        }
        if slots == d {
            return false;
        }
        let f = &supports[next];
        for v in interval_vertices(bound, f.min()).unwrap() {
            seps.push(v.clone());
            let set = FinSet::from_vertices(seps.clone()).unwrap();
            if set.len() == seps.len() && is_approximation(&set).is_some() {
                // match the next support: anchor a with v ≼ a ≼ min F, F ⊆ X_a^max
                let anchored = interval_vertices(bound, f.min())
                    .unwrap()
                    .into_iter()
                    .filter(|a| a >= &v)
                    .any(|a| f.members().iter().all(|w| xmax_contains(&a, w).unwrap()));
                if anchored && rec(supports, d, Some(f.max()), next + 1, slots + 1, seps) {
                    seps.pop();
                    return true;
                }
                // filler block {v}: must sit strictly before the next support
                if slots + 1 < d
                    && v < *f.min()
                    && rec(supports, d, Some(&v), next, slots + 1, seps)
                {
                    seps.pop();
                    return true;
                }
            }
            seps.pop();
        }
        false
    }
    rec(supports, d, None, 0, 0, &mut Vec::new())
}

/// The hierarchy `K_0 ⊆ K_1 ⊆ … ⊆ K_n` over a fixed vertex box, with
/// functionals deduplicated by coefficient pattern.
pub struct FunctionalFamily {
    params: Params,
    box_vertices: Vec<Vertex>,
    /// `layers[n]` holds the functionals first appearing at depth `n`,
    /// as dense coefficient rows over the box.
    layers: Vec<Vec<DenseRow>>,
}

#[derive(Clone)]
struct DenseRow {
    coeffs: Vec<BigRational>,
    mask: u32,
}

impl DenseRow {
    fn mask_min(&self) -> usize {
        self.mask.trailing_zeros() as usize
    }

    fn mask_max(&self) -> usize {
        31 - self.mask.leading_zeros() as usize
    }
}

impl FunctionalFamily {
    /// Generate all functionals of depth ≤ `depth` with supports inside the
    /// box. Guards reject boxes and depths past desk scale.
    pub fn generate(params: &Params, depth: usize, box_vertices: &[Vertex]) -> Result<Self> {
        if box_vertices.len() > BOX_LIMIT {
            return Err(Error::BoxTooLarge {
                got: box_vertices.len(),
                limit: BOX_LIMIT,
            });
        }
        if depth > DEPTH_LIMIT {
            return Err(Error::DepthTooLarge {
                got: depth,
                limit: DEPTH_LIMIT,
            });
        }
        let mut box_vertices = box_vertices.to_vec();
        box_vertices.sort();
        box_vertices.dedup();
        for v in &box_vertices {
            v.check_dim(params.k())?;
        }
        let b = box_vertices.len();

        let mut seen: HashMap<Vec<BigRational>, usize> = HashMap::new();
        let mut layers: Vec<Vec<DenseRow>> = Vec::with_capacity(depth + 1);

        // K_0: ± point evaluations
        let mut base = Vec::new();
        for i in 0..b {
            for sign in [1i64, -1] {
                let mut coeffs = vec![BigRational::zero(); b];
                coeffs[i] = BigRational::from_integer(sign.into());
                if seen.insert(coeffs.clone(), 0).is_none() {
                    base.push(DenseRow {
                        coeffs,
                        mask: 1 << i,
                    });
                }
            }
        }
        layers.push(base);

        // mask-tuple admissibility cache
        let mut adm_cache: HashMap<Vec<u32>, bool> = HashMap::new();
        let mut mask_support = |mask: u32| -> FinSet {
            let vs: Vec<Vertex> = (0..b)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| box_vertices[i].clone())
                .collect();
            FinSet::from_vertices(vs).unwrap()
        };

        for n in 1..=depth {
            let cumulative: Vec<DenseRow> = layers.iter().flatten().cloned().collect();
            let mut fresh: Vec<DenseRow> = Vec::new();
            // tuples (f_1, …, f_m), m ≤ d, successive supports
            let mut stack: Vec<usize> = Vec::new();
            #[allow(clippy::too_many_arguments)]
            fn build(
                cumulative: &[DenseRow],
                d: usize,
                params: &Params,
                box_vertices: &[Vertex],
                adm_cache: &mut HashMap<Vec<u32>, bool>,
                mask_support: &mut dyn FnMut(u32) -> FinSet,
                stack: &mut Vec<usize>,
                seen: &mut HashMap<Vec<BigRational>, usize>,
                fresh: &mut Vec<DenseRow>,
                n: usize,
            ) {
                if !stack.is_empty() {
                    let masks: Vec<u32> = stack.iter().map(|&i| cumulative[i].mask).collect();
                    let admissible = *adm_cache.entry(masks.clone()).or_insert_with(|| {
                        let supports: Vec<FinSet> =
                            masks.iter().map(|&m| mask_support(m)).collect();
                        almost_admissible(&supports, params).unwrap_or(false)
                    });
                    if admissible {
                        let mut coeffs = vec![BigRational::zero(); box_vertices.len()];
                        let mut mask = 0u32;
                        for &i in stack.iter() {
                            for (c, f) in coeffs.iter_mut().zip(&cumulative[i].coeffs) {
                                *c += f;
                            }
                            mask |= cumulative[i].mask;
                        }
                        for c in coeffs.iter_mut() {
                            *c *= params.theta();
                        }
                        if seen.insert(coeffs.clone(), n).is_none() {
                            fresh.push(DenseRow { coeffs, mask });
                        }
                    }
                }
                if stack.len() == d {
                    return;
                }
                let min_next = stack
                    .last()
                    .map(|&i| cumulative[i].mask_max() + 1)
                    .unwrap_or(0);
                for (j, row) in cumulative.iter().enumerate() {
                    if row.mask_min() >= min_next {
                        stack.push(j);
                        build(
                            cumulative,
                            d,
                            params,
                            box_vertices,
                            adm_cache,
                            mask_support,
                            stack,
                            seen,
                            fresh,
                            n,
                        );
                        stack.pop();
                    }
                }
            }
            build(
                &cumulative,
                params.d(),
                params,
                &box_vertices,
                &mut adm_cache,
                &mut mask_support,
                &mut stack,
                &mut seen,
                &mut fresh,
                n,
            );
            layers.push(fresh);
        }

        Ok(FunctionalFamily {
            params: params.clone(),
            box_vertices,
            layers,
        })
    }

    pub fn box_vertices(&self) -> &[Vertex] {
        &self.box_vertices
    }

    /// Number of functionals of depth ≤ `n`.
    pub fn count_up_to(&self, n: usize) -> usize {
        self.layers.iter().take(n + 1).map(|l| l.len()).sum()
    }

    /// Materialize the functionals of depth ≤ `n` as sparse vectors.
    pub fn functionals_up_to(&self, n: usize) -> Vec<Functional> {
        let mut out = Vec::new();
        for (depth, layer) in self.layers.iter().enumerate().take(n + 1) {
            for row in layer {
                let mut vector = Vector::zero(self.params.k()).unwrap();
                for (i, c) in row.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        vector.set(self.box_vertices[i].clone(), c.clone()).unwrap();
                    }
                }
                out.push(Functional { vector, depth });
            }
        }
        out
    }

    /// `|x|_n^* = max { f(x) : f ∈ K_n }`. The support of `x` must lie in
    /// the generation box.
    pub fn dual_norm_level(&self, x: &Vector, n: usize) -> Result<BigRational> {
        if x.k() != self.params.k() {
            return Err(Error::DimensionMismatch {
                expected: self.params.k(),
                got: x.k(),
            });
        }
        for (v, _) in x.iter() {
            if self.box_vertices.binary_search(v).is_err() {
                return Err(Error::BoxTooSmall);
            }
        }
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        let dense: Vec<BigRational> = self.box_vertices.iter().map(|v| x.coefficient(v)).collect();
        let mut best: Option<BigRational> = None;
        for layer in self.layers.iter().take(n + 1) {
            for row in layer {
                let val = row
                    .coeffs
                    .iter()
                    .zip(&dense)
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                if best.as_ref().is_none_or(|b| val > *b) {
                    best = Some(val);
                }
            }
        }
        Ok(best.unwrap())
    }
}

/// All functionals of depth ≤ `n` over the box, deduplicated.
pub fn generate_functionals(
    params: &Params,
    n: usize,
    box_vertices: &[Vertex],
) -> Result<Vec<Functional>> {
    Ok(FunctionalFamily::generate(params, n, box_vertices)?.functionals_up_to(n))
}

/// One-shot `|x|_n^*`; re-generates the family. Prefer [`FunctionalFamily`]
/// when evaluating many vectors over the same box.
pub fn dual_norm_level(
    x: &Vector,
    params: &Params,
    n: usize,
    box_vertices: &[Vertex],
) -> Result<BigRational> {
    FunctionalFamily::generate(params, n, box_vertices)?.dual_norm_level(x, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormEngine;
    use crate::rational::{big_int, big_rational};

    fn v(e: &[u32]) -> Vertex {
        Vertex::new(e.to_vec()).unwrap()
    }

    fn params(k: usize, d: usize, theta: (i64, i64), variant: Variant) -> Params {
        Params::new(k, d, big_rational(theta.0, theta.1), variant).unwrap()
    }

    #[test]
    fn depth_zero_has_signed_point_evaluations() {
        let p = params(2, 2, (1, 2), Variant::Tk);
        let fam = generate_functionals(&p, 0, &[v(&[0, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(fam.len(), 6);
        assert!(fam.iter().all(|f| f.depth == 0 && f.vector.len() == 1));
    }

    #[test]
    fn depth_one_contains_the_paired_functional() {
        // k=1, d=2, θ=1/2, box {u_1, u_2}: θ(e_1* + e_2*) ∈ K_1
        let p = params(1, 2, (1, 2), Variant::Tk);
        let fam = generate_functionals(&p, 1, &[v(&[0]), v(&[1])]).unwrap();
        let mut want = Vector::zero(1).unwrap();
        want.set(v(&[0]), big_rational(1, 2)).unwrap();
        want.set(v(&[1]), big_rational(1, 2)).unwrap();
        assert!(fam.iter().any(|f| f.vector == want && f.depth == 1));
    }

    #[test]
    fn depth_zero_dual_norm_is_the_sup_norm() {
        let p = params(2, 2, (1, 2), Variant::Tk);
        let bx = [v(&[0, 0]), v(&[0, 1]), v(&[1, 1])];
        let mut x = Vector::zero(2).unwrap();
        x.set(v(&[0, 0]), big_int(-3)).unwrap();
        x.set(v(&[1, 1]), big_int(2)).unwrap();
        assert_eq!(dual_norm_level(&x, &p, 0, &bx).unwrap(), big_int(3));
    }

    #[test]
    fn functionals_are_dominated_by_the_norm() {
        let p = params(2, 2, (1, 2), Variant::Tk);
        let bx = [v(&[0, 0]), v(&[0, 1]), v(&[1, 1]), v(&[0, 2])];
        let fam = FunctionalFamily::generate(&p, 2, &bx).unwrap();
        let eng = NormEngine::new(p.clone());
        let mut x = Vector::zero(2).unwrap();
        x.set(v(&[0, 0]), big_int(1)).unwrap();
        x.set(v(&[0, 1]), big_rational(-1, 2)).unwrap();
        x.set(v(&[0, 2]), big_int(1)).unwrap();
        let norm = eng.norm_value(&x).unwrap();
        for f in fam.functionals_up_to(2) {
            assert!(f.apply(&x) <= norm, "functional exceeds the norm");
        }
    }

    #[test]
    fn box_must_cover_the_support() {
        let p = params(2, 2, (1, 2), Variant::Tk);
        let bx = [v(&[0, 0])];
        let x = Vector::basis(v(&[0, 1]));
        assert!(matches!(
            dual_norm_level(&x, &p, 0, &bx),
            Err(Error::BoxTooSmall)
        ));
    }

    #[test]
    fn resource_guards_trip() {
        let p = params(2, 2, (1, 2), Variant::Tk);
        let big: Vec<Vertex> = crate::combinatorics::vertices(2).take(13).collect();
        assert!(matches!(
            FunctionalFamily::generate(&p, 1, &big),
            Err(Error::BoxTooLarge { .. })
        ));
        assert!(matches!(
            FunctionalFamily::generate(&p, 9, &big[..2]),
            Err(Error::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn almost_admissible_distinguishes_variants() {
        // {(0,1)} < {(1,1)}: coverable by successive approximations, but no
        // separator pair {v_1, v_2} forms an approximation around them.
        let p_tk = params(2, 2, (1, 2), Variant::Tk);
        let p_ta = params(2, 2, (1, 2), Variant::Ta);
        let supports = vec![
            FinSet::from_vertices(vec![v(&[0, 1])]).unwrap(),
            FinSet::from_vertices(vec![v(&[1, 1])]).unwrap(),
        ];
        assert!(almost_admissible(&supports, &p_tk).unwrap());
        assert!(!almost_admissible(&supports, &p_ta).unwrap());

        // {(0,0)} < {(0,1)} works for both
        let supports = vec![
            FinSet::from_vertices(vec![v(&[0, 0])]).unwrap(),
            FinSet::from_vertices(vec![v(&[0, 1])]).unwrap(),
        ];
        assert!(almost_admissible(&supports, &p_tk).unwrap());
        assert!(almost_admissible(&supports, &p_ta).unwrap());

        // non-successive supports are never almost admissible
        let supports = vec![
            FinSet::from_vertices(vec![v(&[0, 1])]).unwrap(),
            FinSet::from_vertices(vec![v(&[0, 0])]).unwrap(),
        ];
        assert!(!almost_admissible(&supports, &p_tk).unwrap());
    }
}
