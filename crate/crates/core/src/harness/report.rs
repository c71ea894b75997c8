//! Machine-readable reports for the quantitative checks.

use serde::{Deserialize, Serialize};

/// One verified inequality chain `left ≤ mid ≤ right`. All exact quantities
/// are compared as rationals; a tolerance is recorded only when a floating
/// `ℓ_p` quantity participates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub left: String,
    pub mid: String,
    pub right: String,
    pub verdict: bool,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One row of the finite `ℓ_∞`-vs-`ℓ_p` tension demonstration: the norm of
/// an `N`-term trace witness stays bounded while the sum of the `T_1` norms
/// grows linearly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `‖x_1 + … + x_N‖` in the two-dimensional space.
    pub linfty_witness_norm: String,
    /// `Σ ‖y_i‖` in `T_1` (equals `N` for unit vectors).
    pub sum_of_norms: String,
    /// `‖y_1 + … + y_N‖` in `T_1`, of order `N^{1/p}`.
    pub block_norm: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<CheckReport>,
    pub growth: Vec<GrowthRow>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    /// Assemble, sorting by check name then instance so the report is
    /// independent of execution order.
    pub fn assemble(mut reports: Vec<CheckReport>, growth: Vec<GrowthRow>) -> Self {
        reports.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
        let passed = reports.iter().filter(|r| r.verdict).count();
        let failed = reports.len() - passed;
        SuiteReport {
            reports,
            growth,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text table, one line per check.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let tol = r
                .tolerance
                .map(|t| format!(" (tol {t:.0e})"))
                .unwrap_or_default();
            let note = r
                .note
                .as_deref()
                .map(|n| format!("  [{n}]"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{}  {} :: {} | {} <= {} <= {}{}{}\n",
                if r.verdict { "PASS" } else { "FAIL" },
                r.check,
                r.instance,
                r.left,
                r.mid,
                r.right,
                tol,
                note
            ));
        }
        if !self.growth.is_empty() {
            out.push_str("growth table (bounded l_inf witness vs linear T_1 mass):\n");
            out.push_str("  N | ||sum x_i||_(k=2) | sum ||y_i||_(k=1) | ||sum y_i||_(k=1)\n");
            for g in &self.growth {
                out.push_str(&format!(
                    "  {} | {} | {} | {}\n",
                    g.n, g.linfty_witness_norm, g.sum_of_norms, g.block_norm
                ));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}
