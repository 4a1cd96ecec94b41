use serde::Serialize;

use super::simulate::CostDistribution;
use crate::error::{Error, Result};

/// Location, spread and tail statistics of simulated total cost.
///
/// Quantiles use the nearest-rank rule: the `q`-quantile of `n` sorted
/// values is the one at 1-based rank `max(1, ceil(q * n))`. `tail_mean_99`
/// averages every value from the 0.99 rank upward, so it is never below
/// `q99`. `std_dev` is the population standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskSummary {
    pub trials: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub q50: f64,
    pub q90: f64,
    pub q99: f64,
    pub tail_mean_99: f64,
    pub infeasible_fraction: f64,
}

/// 1-based nearest rank of level `q` among `n` values.
pub fn nearest_rank(q: f64, n: usize) -> usize {
    ((q * n as f64).ceil() as usize).clamp(1, n)
}

pub fn summarize_risk(dist: &CostDistribution) -> Result<RiskSummary> {
    let n = dist.costs.len();
    if n == 0 {
        return Err(Error::EmptyDistribution);
    }
    let mut sorted = dist.costs.clone();
    sorted.sort_by(f64::total_cmp);

    let mean = dist.costs.iter().sum::<f64>() / n as f64;
    let var = dist.costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / n as f64;
    let at = |q: f64| sorted[nearest_rank(q, n) - 1];
    let tail = &sorted[nearest_rank(0.99, n) - 1..];
    let tail_mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let total_periods = n as u64 * dist.periods.max(1);

    Ok(RiskSummary {
        trials: n,
        mean,
        std_dev: var.sqrt(),
        q50: at(0.5),
        q90: at(0.9),
        q99: at(0.99),
        // summation noise must not break tail_mean >= q99
        tail_mean_99: tail_mean.max(at(0.99)),
        infeasible_fraction: dist.infeasible_periods as f64 / total_periods as f64,
    })
}
