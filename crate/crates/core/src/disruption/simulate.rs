use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::power_law::PowerLaw;
use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::rng::Stream;
use crate::solver::serve;

/// How a sampled severity translates into lost supplier capacity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CapacityRule {
    /// A disrupted supplier ships nothing that period.
    TotalLoss,
    /// Capacity scaled by `max(0, 1 - severity / severity_ref)`, rounded
    /// down to whole units.
    Proportional { severity_ref: f64 },
}

impl CapacityRule {
    pub fn remaining(&self, capacity: i64, severity: f64) -> i64 {
        match *self {
            CapacityRule::TotalLoss => 0,
            CapacityRule::Proportional { severity_ref } => {
                let keep = (1.0 - severity / severity_ref).max(0.0);
                (capacity as f64 * keep).floor() as i64
            }
        }
    }
}

/// Independent per-period supplier disruptions with power-law severity.
///
/// `per_supplier_p` holds the probability that a supplier is disrupted in
/// any one period; suppliers not listed never fail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisruptionModel {
    pub per_supplier_p: BTreeMap<String, f64>,
    pub severity: PowerLaw,
    /// Money-units per unit of unmet demand per period.
    pub shortage_penalty: f64,
    pub capacity_rule: CapacityRule,
}

impl DisruptionModel {
    pub fn new(
        per_supplier_p: BTreeMap<String, f64>,
        severity: PowerLaw,
        shortage_penalty: f64,
        capacity_rule: CapacityRule,
    ) -> Result<Self> {
        let model = DisruptionModel {
            per_supplier_p,
            severity,
            shortage_penalty,
            capacity_rule,
        };
        model.check()?;
        Ok(model)
    }

    /// Total-loss model with the given probabilities.
    pub fn total_loss<S: Into<String>>(
        probabilities: impl IntoIterator<Item = (S, f64)>,
        shortage_penalty: f64,
    ) -> Result<Self> {
        Self::new(
            probabilities
                .into_iter()
                .map(|(n, p)| (n.into(), p))
                .collect(),
            PowerLaw::new(2.0, 1.0)?,
            shortage_penalty,
            CapacityRule::TotalLoss,
        )
    }

    pub fn probability(&self, supplier: &str) -> f64 {
        self.per_supplier_p.get(supplier).copied().unwrap_or(0.0)
    }

    fn check(&self) -> Result<()> {
        for (name, &p) in &self.per_supplier_p {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!(
                    "disruption probability of `{name}` is {p}, outside [0, 1]"
                )));
            }
        }
        if !(self.shortage_penalty.is_finite() && self.shortage_penalty >= 0.0) {
            return Err(Error::invalid(format!(
                "shortage penalty {} must be finite and nonnegative",
                self.shortage_penalty
            )));
        }
        if let CapacityRule::Proportional { severity_ref } = self.capacity_rule {
            if !(severity_ref.is_finite() && severity_ref > 0.0) {
                return Err(Error::invalid(format!(
                    "severity_ref {severity_ref} must be positive"
                )));
            }
        }
        Ok(())
    }

    /// Probabilities keyed by names the scenario does not know.
    pub fn unknown_suppliers(&self, s: &Scenario) -> Vec<String> {
        self.per_supplier_p
            .keys()
            .filter(|n| s.supplier_index(n).is_none())
            .cloned()
            .collect()
    }
}

/// Per-trial total costs of a simulated horizon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostDistribution {
    pub costs: Vec<f64>,
    pub periods: u64,
    /// Periods, over all trials, in which some demand went unmet.
    pub infeasible_periods: u64,
}

impl CostDistribution {
    pub fn from_costs(costs: Vec<f64>) -> Self {
        CostDistribution {
            costs,
            periods: 1,
            infeasible_periods: 0,
        }
    }

    pub fn trials(&self) -> usize {
        self.costs.len()
    }
}

/// Monte Carlo over `trials` independent horizons of `periods` periods.
///
/// In each period every supplier, in canonical order, consumes two uniforms
/// from the period's stream `(seed, trial, period)`: the first decides
/// disruption (`u < p`), the second is the severity quantile. Surviving
/// capacity is then served at minimum cost; demand the reduced network cannot
/// carry is charged the shortage penalty per unit. Results are identical to
/// a sequential run in trial order.
pub fn simulate_horizon(
    s: &Scenario,
    dm: &DisruptionModel,
    periods: u64,
    trials: u64,
    seed: u64,
) -> Result<CostDistribution> {
    if periods < 1 || trials < 1 {
        return Err(Error::invalid(format!(
            "periods ({periods}) and trials ({trials}) must be at least 1"
        )));
    }
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    dm.check()?;
    let unknown = dm.unknown_suppliers(s);
    if !unknown.is_empty() {
        return Err(Error::invalid(format!(
            "disruption probabilities for unknown suppliers: {}",
            unknown.join(", ")
        )));
    }

    let probs: Vec<f64> = s
        .suppliers
        .iter()
        .map(|x| dm.probability(&x.name))
        .collect();
    let nominal: Vec<i64> = s.suppliers.iter().map(|x| x.capacity).collect();
    let baseline = serve(s);
    let penalty = dm.shortage_penalty;

    let outcomes: Vec<(f64, u64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut caps = nominal.clone();
            let mut total = 0.0;
            let mut short = 0;
            for period in 0..periods {
                let mut rng = Stream::new(seed, &[trial, period]);
                let mut disrupted = false;
                for (i, &p) in probs.iter().enumerate() {
                    let hit = rng.uniform();
                    let quantile = rng.uniform();
                    caps[i] = if hit < p {
                        disrupted = true;
                        let severity = dm.severity.sample(quantile);
                        dm.capacity_rule.remaining(nominal[i], severity)
                    } else {
                        nominal[i]
                    };
                }
                let service = if disrupted {
                    serve(&s.with_supplier_capacities(&caps))
                } else {
                    baseline
                };
                total += service.cost + penalty * service.unmet as f64;
                if service.unmet > 0 {
                    short += 1;
                }
            }
            (total, short)
        })
        .collect();

    Ok(CostDistribution {
        costs: outcomes.iter().map(|o| o.0).collect(),
        periods,
        infeasible_periods: outcomes.iter().map(|o| o.1).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn single_vendor_enumeration() {
        // outcomes: up -> 5, down -> 10 * 5; each with probability 1/2
        let s = Scenario::transportation(&[5], &[5], &[vec![1.0]]);
        let dm = DisruptionModel::total_loss([("s0", 0.5)], 10.0).unwrap();
        let d = simulate_horizon(&s, &dm, 1, 20_000, 11).unwrap();
        let (mean, se) = mean_and_se(&d.costs);
        assert!((mean - 27.5).abs() < 3.0 * se, "{mean} ± {se}");
        assert!(d.costs.iter().all(|&c| c == 5.0 || c == 50.0));
    }

    #[test]
    fn no_disruption_is_deterministic_baseline() {
        let s = Scenario::transportation(&[10, 10], &[5, 5], &[vec![1.0, 2.0], vec![3.0, 4.0]]);
        let dm = DisruptionModel::total_loss([("s0", 0.0), ("s1", 0.0)], 10.0).unwrap();
        let d = simulate_horizon(&s, &dm, 3, 100, 1).unwrap();
        assert!(d.costs.iter().all(|&c| c == 45.0));
        assert_eq!(d.infeasible_periods, 0);
    }

    #[test]
    fn proportional_rule() {
        let rule = CapacityRule::Proportional { severity_ref: 4.0 };
        assert_eq!(rule.remaining(10, 1.0), 7);
        assert_eq!(rule.remaining(10, 4.0), 0);
        assert_eq!(rule.remaining(10, 40.0), 0);
        assert_eq!(CapacityRule::TotalLoss.remaining(10, 1.0), 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = Scenario::transportation(&[5], &[5], &[vec![1.0]]);
        let dm = DisruptionModel::total_loss([("s0", 0.5)], 10.0).unwrap();
        assert!(simulate_horizon(&s, &dm, 0, 10, 0).is_err());
        assert!(simulate_horizon(&s, &dm, 1, 0, 0).is_err());
        assert!(DisruptionModel::total_loss([("s0", 1.5)], 10.0).is_err());
        assert!(DisruptionModel::total_loss([("s0", 0.5)], -1.0).is_err());
        let ghost = DisruptionModel::total_loss([("ghost", 0.5)], 1.0).unwrap();
        assert!(simulate_horizon(&s, &ghost, 1, 1, 0).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        let s = Scenario::transportation(&[5, 5], &[5], &[vec![1.0], vec![2.0]]);
        let dm = DisruptionModel::new(
            [("s0".to_string(), 0.3), ("s1".to_string(), 0.4)].into(),
            PowerLaw::new(2.5, 1.0).unwrap(),
            10.0,
            CapacityRule::Proportional { severity_ref: 3.0 },
        )
        .unwrap();
        let a = simulate_horizon(&s, &dm, 4, 500, 99).unwrap();
        let b = simulate_horizon(&s, &dm, 4, 500, 99).unwrap();
        let c = simulate_horizon(&s, &dm, 4, 500, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
