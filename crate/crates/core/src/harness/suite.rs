//! Suite assembly: run every check on seeded instances and aggregate.

use crate::combinatorics::{Seq, Vertex};
use crate::error::Result;
use crate::norm::{Params, Variant, Vector};
use crate::rational::big_rational;

use super::checks::{
    check_bellenot, check_block_lp, check_linfty, check_variant_dominance, growth_table,
    strict_dominance_exhibit, BlockWitness,
};
use super::corpus::{seeded_vectors, CorpusSpec};
use super::report::{CheckReport, SuiteReport};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub bellenot_count: usize,
    pub dominance_count: usize,
    pub growth_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            bellenot_count: 40,
            dominance_count: 30,
            growth_max: 6,
        }
    }
}

/// Execute all checks; deterministic for a fixed config.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut reports: Vec<CheckReport> = Vec::new();

    // Bellenot sandwich: k=1, d=2, θ=3/4
    let corpus1 = seeded_vectors(&CorpusSpec {
        k: 1,
        support_pool: 8,
        max_support: 6,
        count: config.bellenot_count,
        seed: config.seed,
    });
    reports.extend(check_bellenot(2, &big_rational(3, 4), &corpus1)?);

    // ℓ_∞^N chains: k=2, d=3, θ=1/2, N ∈ {2,3,4}, both variants
    for n in 2..=4usize {
        let stems: Vec<Seq> = (1..=n as u32)
            .map(|i| Seq::new(vec![2 * i + 2]).unwrap())
            .collect();
        let pivot = Vertex::new(vec![2 * n as u32 + 2, 2 * n as u32 + 2]).unwrap();
        let parts: Vec<Vector> = (1..=n as u32)
            .map(|i| Vector::basis(Vertex::new(vec![2 * i + 2, 2 * n as u32 + 3 + i]).unwrap()))
            .collect();
        for variant in [Variant::Tk, Variant::Ta] {
            let params = Params::new(2, 3, big_rational(1, 2), variant)?;
            reports.push(check_linfty(&params, &stems, &pivot, &parts)?);
        }
    }

    // block ℓ_p chains: k=2, d=2, θ=3/4, diagonal and top-tree witnesses
    let patterns: Vec<Vec<_>> = vec![
        vec![big_rational(1, 1); 4],
        vec![
            big_rational(1, 1),
            big_rational(1, 2),
            big_rational(1, 4),
            big_rational(1, 8),
        ],
    ];
    for variant in [Variant::Tk, Variant::Ta] {
        let params = Params::new(2, 2, big_rational(3, 4), variant)?;
        let diagonal = BlockWitness::diagonal(params.clone(), &Seq::new(vec![0]).unwrap(), 4)?;
        let top = BlockWitness::top_tree(params.clone(), &Seq::new(vec![1]).unwrap(), 4)?;
        for coeffs in &patterns {
            reports.push(check_block_lp(&diagonal, coeffs)?);
            reports.push(check_block_lp(&top, coeffs)?);
        }
    }

    // variant dominance: k=2, d=2, θ ∈ {1/2, 3/4}. At dθ = 1 the norms agree;
    // the strict exhibit lives at θ = 3/4, where e_{(0,1)} + e_{(1,1)} gives
    // 1 = ‖·‖_{T_A} < ‖·‖_{T_k} = 3/2 (no separator pair fits around the two
    // singleton blocks).
    let mut corpus2 = vec![Vector::basis(Vertex::new(vec![0, 1]).unwrap())
        .add(&Vector::basis(Vertex::new(vec![1, 1]).unwrap()))?];
    corpus2.extend(seeded_vectors(&CorpusSpec {
        k: 2,
        support_pool: 6,
        max_support: 4,
        count: config.dominance_count,
        seed: config.seed.wrapping_add(1),
    }));
    for theta in [big_rational(1, 2), big_rational(3, 4)] {
        let params = Params::new(2, 2, theta, Variant::Tk)?;
        reports.extend(check_variant_dominance(&corpus2, &params)?);
    }
    reports.push(strict_dominance_exhibit(
        &corpus2,
        &Params::new(2, 2, big_rational(3, 4), Variant::Tk)?,
    )?);

    // growth demonstration: d=2, θ=3/4
    let growth = if config.growth_max >= 2 {
        growth_table(2, &big_rational(3, 4), config.growth_max)?
    } else {
        Vec::new()
    };

    Ok(SuiteReport::assemble(reports, growth))
}
