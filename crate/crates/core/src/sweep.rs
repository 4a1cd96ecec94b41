//! Minimum cost as a function of the vendor set.
//!
//! Every supplier subset above a size floor is re-solved; dropping vendors
//! can only shrink the feasible region, so cost never falls as the set
//! shrinks. Infeasible subsets are kept in the report.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::solver::{solve, PlanStatus};

pub const MAX_SWEEP_SUPPLIERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    /// Bit `i` set iff supplier `i` (canonical order) is in the subset.
    #[serde(skip)]
    pub mask: u32,
    pub suppliers: Vec<String>,
    pub status: PlanStatus,
    pub z: Option<f64>,
}

impl SweepEntry {
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// Ordered by increasing bitmask.
    pub entries: Vec<SweepEntry>,
    pub baseline_z: Option<f64>,
}

impl SweepResult {
    pub fn entry(&self, mask: u32) -> Option<&SweepEntry> {
        self.entries
            .binary_search_by_key(&mask, |e| e.mask)
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Pairs `(a, b)` of masks with `a ⊂ b` where the smaller set is
    /// strictly cheaper, or feasible while the larger one is not.
    pub fn monotonicity_violations(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in &self.entries {
            for b in &self.entries {
                if a.mask == b.mask || a.mask & b.mask != a.mask {
                    continue;
                }
                let bad = match (a.z, b.z) {
                    (Some(za), Some(zb)) => za < zb,
                    (Some(_), None) => true,
                    _ => false,
                };
                if bad {
                    out.push((a.mask, b.mask));
                }
            }
        }
        out
    }
}

/// Solve every supplier subset with at least `min_size` members.
pub fn sweep_subsets(s: &Scenario, min_size: usize) -> Result<SweepResult> {
    let n = s.suppliers.len();
    if n > MAX_SWEEP_SUPPLIERS {
        return Err(Error::TooManySuppliers {
            count: n,
            limit: MAX_SWEEP_SUPPLIERS,
        });
    }
    if min_size < 1 || min_size > n {
        return Err(Error::invalid(format!(
            "min_size {min_size} outside 1..={n}"
        )));
    }
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    let masks: Vec<u32> = (1u32..1 << n)
        .filter(|m| m.count_ones() as usize >= min_size)
        .collect();
    let entries: Vec<SweepEntry> = masks
        .par_iter()
        .map(|&mask| {
            let kept: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let plan = solve(&s.select_suppliers(&kept));
            SweepEntry {
                mask,
                suppliers: kept.iter().map(|&i| s.suppliers[i].name.clone()).collect(),
                status: plan.status,
                z: plan.z,
            }
        })
        .collect();
    let full = (1u32 << n) - 1;
    let baseline_z = entries.last().filter(|e| e.mask == full).and_then(|e| e.z);
    Ok(SweepResult {
        entries,
        baseline_z,
    })
}

/// Extra cost of losing `supplier`: `z(all but supplier) - z(all)`.
/// `f64::INFINITY` when the remaining vendors cannot meet demand.
pub fn marginal_value(s: &Scenario, supplier: &str) -> Result<f64> {
    let drop = s
        .supplier_index(supplier)
        .ok_or_else(|| Error::UnknownSupplier(supplier.to_string()))?;
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    let full = solve(s).z.ok_or(Error::InfeasibleBaseline)?;
    let kept: Vec<usize> = (0..s.suppliers.len()).filter(|&i| i != drop).collect();
    Ok(match solve(&s.select_suppliers(&kept)).z {
        Some(z) => z - full,
        None => f64::INFINITY,
    })
}
