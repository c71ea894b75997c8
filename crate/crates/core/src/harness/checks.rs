//! Executable reproductions of the quantitative inequalities: witness
//! construction and chain checking.
//!
//! Exact quantities are compared as rationals; only `ℓ_p` quantities with
//! irrational exponent go through floating point, guarded by `TOLERANCE`.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{
    seqs, xmax_contains, Approximation, FinSet, Seq, TreePrefixWitness, Vertex,
};
use crate::error::{Error, Result};
use crate::norm::{NormEngine, Params, Variant, Vector};
use crate::rational::format_rational;

use super::report::{CheckReport, GrowthRow};

pub const TOLERANCE: f64 = 1e-9;

fn f(q: &BigRational) -> f64 {
    q.to_f64().expect("desk-scale rational fits in f64")
}

/// Bellenot sandwich in dimension one: for `dθ > 1`,
/// `(1/(2d))‖x‖_p ≤ ‖x‖_{T_1} ≤ ‖x‖_p` with `p` from `dθ = d^{1/p}`.
pub fn check_bellenot(
    d: usize,
    theta: &BigRational,
    corpus: &[Vector],
) -> Result<Vec<CheckReport>> {
    let params = Params::new(1, d, theta.clone(), Variant::Tk)?;
    let p = params.lp_exponent().ok_or(Error::SubcriticalParams)?;
    let engine = NormEngine::new(params);
    let mut out = Vec::with_capacity(corpus.len());
    for (i, x) in corpus.iter().enumerate() {
        let lp = x.lp_norm(p)?;
        let norm = engine.norm_value(x)?;
        let nf = f(&norm);
        let lower = lp / (2.0 * d as f64);
        let verdict = lower <= nf + TOLERANCE && nf <= lp + TOLERANCE;
        out.push(CheckReport {
            check: "bellenot-sandwich".into(),
            instance: format!("vector {i} (support {})", x.len()),
            left: format!("{lower:.12}"),
            mid: format_rational(&norm),
            right: format!("{lp:.12}"),
            verdict,
            tolerance: Some(TOLERANCE),
            note: None,
        });
    }
    Ok(out)
}

/// Finite `ℓ_∞^N` chain: for same-length stems `s_1 ≺ … ≺ s_N ≺ v` and
/// `x_i ∈ T^k[s_i]` with `v < x_i`,
/// `max_i ‖x_i‖ ≤ ‖Σ x_i‖ ≤ (θ(d−1)/(1−θ))·max_i ‖x_i‖`, exactly.
pub fn check_linfty(
    params: &Params,
    stems: &[Seq],
    v: &Vertex,
    parts: &[Vector],
) -> Result<CheckReport> {
    let k = params.k();
    if stems.is_empty() || stems.len() != parts.len() {
        return Err(Error::Hypothesis("one summand per stem required".into()));
    }
    let len = stems[0].len();
    if len >= k {
        return Err(Error::Hypothesis(
            "stems must be shorter than the dimension".into(),
        ));
    }
    for w in stems.windows(2) {
        if w[0] >= w[1] || w[1].len() != len {
            return Err(Error::Hypothesis(
                "stems must be same-length and increasing".into(),
            ));
        }
    }
    if stems.last().unwrap() >= v.as_seq() {
        return Err(Error::Hypothesis(
            "the pivot must follow the last stem".into(),
        ));
    }
    for (s, x) in stems.iter().zip(parts) {
        if x.is_zero() {
            return Err(Error::Hypothesis("summands must be nonzero".into()));
        }
        for (w, _) in x.iter() {
            if !s.is_prefix_of(w.as_seq()) {
                return Err(Error::Hypothesis(format!(
                    "support {w} escapes the stem {s}"
                )));
            }
        }
        if x.min_support().unwrap() <= v {
            return Err(Error::Hypothesis(
                "summands must lie beyond the pivot".into(),
            ));
        }
    }
    let engine = NormEngine::new(params.clone());
    let mut sum = Vector::zero(k)?;
    let mut max_norm = BigRational::zero();
    for x in parts {
        sum = sum.add(x)?;
        let n = engine.norm_value(x)?;
        if n > max_norm {
            max_norm = n;
        }
    }
    let total = engine.norm_value(&sum)?;
    let constant = params.theta() * BigRational::from_integer((params.d() as i64 - 1).into())
        / (BigRational::one() - params.theta());
    let upper = &constant * &max_norm;
    let verdict = max_norm <= total && total <= upper;
    let note = if verdict && total < upper {
        Some(format!(
            "upper bound slack: a constant of {} would already suffice",
            format_rational(&(&total / &max_norm))
        ))
    } else {
        None
    };
    Ok(CheckReport {
        check: format!("linfty-chain-{}", params.variant()),
        instance: format!(
            "N={} stems {:?} d={} theta={}",
            stems.len(),
            stems,
            params.d(),
            params.theta()
        ),
        left: format_rational(&max_norm),
        mid: format_rational(&total),
        right: format_rational(&upper),
        verdict,
        tolerance: None,
        note,
    })
}

/// A block sequence meeting the hypotheses of the block-subspace theorem:
/// `v_1 ≤ x_1 < v_2 ≤ x_2 < …` with `supp x_i ⊆ X_{v_i}^max` and
/// `v_{i+1} ∈ X_{v_i}^max`. Vectors are normalized on construction.
#[derive(Clone, Debug)]
pub struct BlockWitness {
    pub params: Params,
    pub anchors: Vec<Vertex>,
    pub vectors: Vec<Vector>,
}

impl BlockWitness {
    pub fn new(params: Params, anchors: Vec<Vertex>, raw: Vec<Vector>) -> Result<Self> {
        if anchors.is_empty() || anchors.len() != raw.len() {
            return Err(Error::Hypothesis("one anchor per vector required".into()));
        }
        let engine = NormEngine::new(params.clone());
        let mut vectors = Vec::with_capacity(raw.len());
        for x in &raw {
            let n = engine.norm_value(x)?;
            if n.is_zero() {
                return Err(Error::Hypothesis("witness vectors must be nonzero".into()));
            }
            vectors.push(x.scale(&(BigRational::one() / n)));
        }
        let witness = BlockWitness {
            params,
            anchors,
            vectors,
        };
        witness.revalidate()?;
        Ok(witness)
    }

    /// Re-check both hypotheses through the membership predicate.
    pub fn revalidate(&self) -> Result<()> {
        for (i, (v, x)) in self.anchors.iter().zip(&self.vectors).enumerate() {
            v.check_dim(self.params.k())?;
            if v > x.min_support().unwrap() {
                return Err(Error::Hypothesis(format!(
                    "anchor {v} does not precede vector {i}"
                )));
            }
            for (w, _) in x.iter() {
                if !xmax_contains(v, w)? {
                    return Err(Error::Hypothesis(format!(
                        "support {w} of vector {i} escapes the maximal tree of {v}"
                    )));
                }
            }
            if i + 1 < self.anchors.len() {
                let next = &self.anchors[i + 1];
                if x.max_support().unwrap() >= next {
                    return Err(Error::Hypothesis(format!(
                        "vector {i} does not precede the next anchor {next}"
                    )));
                }
                if !xmax_contains(v, next)? {
                    return Err(Error::Hypothesis(format!(
                        "anchor {next} escapes the maximal tree of {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Diagonal witness above a stem: `v_i = s⌢(c+i−1,…)`, `x_i = e_{v_i}`.
    pub fn diagonal(params: Params, stem: &Seq, n: usize) -> Result<Self> {
        let basis = crate::embed::diagonal_basis(stem, params.k(), n)?;
        let vectors = basis.iter().cloned().map(Vector::basis).collect();
        BlockWitness::new(params, basis, vectors)
    }

    /// Top-tree witness above a stem of length `k−1`: the trace basis.
    pub fn top_tree(params: Params, stem: &Seq, n: usize) -> Result<Self> {
        if stem.len() + 1 != params.k() {
            return Err(Error::Hypothesis(
                "top trees need a stem of length k-1".into(),
            ));
        }
        let basis = crate::embed::trace_basis(stem, params.k(), n)?;
        let vectors = basis.iter().cloned().map(Vector::basis).collect();
        BlockWitness::new(params, basis, vectors)
    }
}

/// The block `ℓ_p` chain
/// `(1/(2d))(Σ|a_i|^p)^{1/p} ≤ ‖Σ a_i t_i‖_{T_1} ≤ ‖Σ a_i x_i‖ ≤ (2/θ)(Σ|a_i|^p)^{1/p}`.
/// For the endpoint variant the lower chain runs through the even-indexed
/// subsequence, matching how the estimate is actually obtained there.
pub fn check_block_lp(witness: &BlockWitness, coeffs: &[BigRational]) -> Result<CheckReport> {
    witness.revalidate()?;
    if coeffs.len() != witness.vectors.len() {
        return Err(Error::Hypothesis(
            "one coefficient per vector required".into(),
        ));
    }
    let params = &witness.params;
    let p = params.lp_exponent().ok_or(Error::SubcriticalParams)?;
    let engine = NormEngine::new(params.clone());
    let t1 = NormEngine::new(Params::new(
        1,
        params.d(),
        params.theta().clone(),
        Variant::Tk,
    )?);

    let mut z = Vector::zero(params.k())?;
    for (a, x) in coeffs.iter().zip(&witness.vectors) {
        z = z.add(&x.scale(a))?;
    }
    let z_norm = engine.norm_value(&z)?;

    // coefficients entering the lower chain
    let lower_coeffs: Vec<BigRational> = match params.variant() {
        Variant::Tk => coeffs.to_vec(),
        Variant::Ta => coeffs.iter().skip(1).step_by(2).cloned().collect(),
    };
    let lower_norm = match params.variant() {
        Variant::Tk => z_norm.clone(),
        Variant::Ta => {
            let mut ze = Vector::zero(params.k())?;
            for (j, a) in lower_coeffs.iter().enumerate() {
                ze = ze.add(&witness.vectors[2 * j + 1].scale(a))?;
            }
            engine.norm_value(&ze)?
        }
    };
    let t_vec = t1_vector(&lower_coeffs)?;
    let t_norm = t1.norm_value(&t_vec)?;

    let lp_all = lp_of(coeffs, p);
    let lp_lower = lp_of(&lower_coeffs, p);
    let lower_bound = lp_lower / (2.0 * params.d() as f64);
    let upper_bound = 2.0 / f(params.theta()) * lp_all;

    let lower_ok =
        lower_coeffs.is_empty() || (lower_bound <= f(&t_norm) + TOLERANCE && t_norm <= lower_norm);
    let upper_ok = f(&z_norm) <= upper_bound + TOLERANCE;
    let verdict = lower_ok && upper_ok;
    let note = match params.variant() {
        Variant::Ta => Some(format!(
            "lower chain on the even-indexed subsequence: {lower_bound:.12} <= {} <= {}",
            format_rational(&t_norm),
            format_rational(&lower_norm)
        )),
        Variant::Tk => Some(format!("T_1 middle term {}", format_rational(&t_norm))),
    };
    Ok(CheckReport {
        check: format!("block-lp-chain-{}", params.variant()),
        instance: format!(
            "N={} anchors start {} d={} theta={}",
            witness.vectors.len(),
            witness.anchors[0],
            params.d(),
            params.theta()
        ),
        left: format!("{lower_bound:.12}"),
        mid: format_rational(&z_norm),
        right: format!("{upper_bound:.12}"),
        verdict,
        tolerance: Some(TOLERANCE),
        note,
    })
}

fn lp_of(coeffs: &[BigRational], p: f64) -> f64 {
    coeffs
        .iter()
        .map(|a| f(&a.abs()).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

fn t1_vector(coeffs: &[BigRational]) -> Result<Vector> {
    let mut t = Vector::zero(1)?;
    for (i, a) in coeffs.iter().enumerate() {
        t.set(Vertex::new(vec![i as u32])?, a.clone())?;
    }
    Ok(t)
}

/// Build `{w_1,…,w_m} ∈ AR_m^k` with `max(w_i) = q_i` and every entry drawn
/// from the prescribed set, by the two-case induction: pad with the last
/// entry when the length grows by one, otherwise restart from the parent
/// with the next prescribed value.
pub fn build_prescribed_tree(qs: &[u32], k: usize) -> Result<Approximation> {
    if qs.is_empty() {
        return Err(Error::EmptySet);
    }
    if qs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    let m = qs.len();
    let mut assignments: Vec<(Seq, Seq)> = Vec::new();
    let mut members: Vec<Vertex> = Vec::new();
    let mut prev_len: usize = 0;
    for t in seqs(k) {
        if t.is_empty() {
            assignments.push((t, Seq::empty()));
            continue;
        }
        let parent = t.parent().unwrap();
        let parent_img = assignments
            .iter()
            .find(|(d, _)| *d == parent)
            .map(|(_, x)| x.clone())
            .unwrap();
        let image = if t.len() == prev_len + 1 {
            let pad = parent_img.last().unwrap_or(qs[0]);
            parent_img.child(pad).unwrap()
        } else {
            parent_img.child(qs[members.len()]).unwrap()
        };
        prev_len = t.len();
        let full = t.len() == k;
        assignments.push((t, image.clone()));
        if full {
            members.push(Vertex::from_seq(image).unwrap());
            if members.len() == m {
                break;
            }
        }
    }
    let approx = Approximation::from_parts(
        FinSet::from_vertices(members)?,
        TreePrefixWitness::new(assignments),
    );
    approx
        .validate()
        .map_err(|e| Error::Hypothesis(format!("prescribed tree invalid: {e}")))?;
    Ok(approx)
}

/// `‖x‖_{T_A} ≤ ‖x‖_{T_k}` exactly, per vector.
pub fn check_variant_dominance(corpus: &[Vector], params: &Params) -> Result<Vec<CheckReport>> {
    let tk = NormEngine::new(params.with_variant(Variant::Tk));
    let ta = NormEngine::new(params.with_variant(Variant::Ta));
    let mut out = Vec::with_capacity(corpus.len());
    for (i, x) in corpus.iter().enumerate() {
        let a = tk.norm_value(x)?;
        let b = ta.norm_value(x)?;
        out.push(CheckReport {
            check: format!("variant-dominance theta={}", params.theta()),
            instance: format!("vector {i} (support {})", x.len()),
            left: format_rational(&b),
            mid: format_rational(&b),
            right: format_rational(&a),
            verdict: b <= a,
            tolerance: None,
            note: None,
        });
    }
    Ok(out)
}

/// Search a corpus for a vector with `‖x‖_{T_A} < ‖x‖_{T_k}` strictly and
/// report the first one found. Strictness needs `dθ > 1`; at `dθ ≤ 1` both
/// norms collapse to the sup norm.
pub fn strict_dominance_exhibit(corpus: &[Vector], params: &Params) -> Result<CheckReport> {
    let tk = NormEngine::new(params.with_variant(Variant::Tk));
    let ta = NormEngine::new(params.with_variant(Variant::Ta));
    let mut strict: Option<String> = None;
    for (i, x) in corpus.iter().enumerate() {
        let a = tk.norm_value(x)?;
        let b = ta.norm_value(x)?;
        if b < a {
            strict = Some(format!(
                "vector {i}: {} < {}",
                format_rational(&b),
                format_rational(&a)
            ));
            break;
        }
    }
    Ok(CheckReport {
        check: format!("variant-dominance-strict-exhibit theta={}", params.theta()),
        instance: format!("corpus of {}", corpus.len()),
        left: "-".into(),
        mid: strict
            .clone()
            .unwrap_or_else(|| "no strict instance".into()),
        right: "-".into(),
        verdict: strict.is_some(),
        tolerance: None,
        note: strict,
    })
}

/// The finite `ℓ_∞`-vs-`ℓ_p` tension of the non-isomorphism argument, as a
/// table: `N` unit vectors in distinct traces of `ω^2` keep a bounded norm,
/// while the matching `T_1` mass `Σ‖y_i‖ = N` grows linearly and
/// `‖Σ y_i‖ ≈ N^{1/p}` in between. A demonstration, not a proof.
pub fn growth_table(d: usize, theta: &BigRational, n_max: usize) -> Result<Vec<GrowthRow>> {
    let p2 = Params::new(2, d, theta.clone(), Variant::Tk)?;
    let p1 = Params::new(1, d, theta.clone(), Variant::Tk)?;
    let e2 = NormEngine::new(p2);
    let e1 = NormEngine::new(p1);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let mut sum2 = Vector::zero(2)?;
        for i in 1..=n as u32 {
            // x_i = e_{(2i, 2n+1+i)} ∈ τ²[(2i)], beyond the pivot (2n, 2n)
            sum2 = sum2.add(&Vector::basis(Vertex::new(vec![
                2 * i,
                2 * n as u32 + 1 + i,
            ])?))?;
        }
        let mut sum1 = Vector::zero(1)?;
        for i in 0..n as u32 {
            sum1 = sum1.add(&Vector::basis(Vertex::new(vec![i])?))?;
        }
        rows.push(GrowthRow {
            n,
            linfty_witness_norm: format_rational(&e2.norm_value(&sum2)?),
            sum_of_norms: n.to_string(),
            block_norm: format_rational(&e1.norm_value(&sum1)?),
        });
    }
    Ok(rows)
}
