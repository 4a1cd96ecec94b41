use rayon::prelude::*;
use serde::Serialize;

use super::spread::mean_stderr;
use crate::error::{Error, Result};
use crate::rng::Stream;

/// `bets` independent attempts, each costing `trial_cost` and paying
/// `jackpot_value` with probability `jackpot_probability`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptionPortfolio {
    pub bets: u32,
    pub trial_cost: f64,
    pub jackpot_probability: f64,
    pub jackpot_value: f64,
}

impl OptionPortfolio {
    pub fn new(
        bets: u32,
        trial_cost: f64,
        jackpot_probability: f64,
        jackpot_value: f64,
    ) -> Result<Self> {
        let pf = OptionPortfolio {
            bets,
            trial_cost,
            jackpot_probability,
            jackpot_value,
        };
        pf.check()?;
        Ok(pf)
    }

    pub fn check(&self) -> Result<()> {
        if self.bets < 1 {
            return Err(Error::invalid("a portfolio needs at least one bet"));
        }
        if !(self.trial_cost.is_finite() && self.trial_cost >= 0.0) {
            return Err(Error::invalid(format!(
                "trial cost {} must be >= 0",
                self.trial_cost
            )));
        }
        if !(0.0..=1.0).contains(&self.jackpot_probability) {
            return Err(Error::invalid(format!(
                "jackpot probability {} outside [0, 1]",
                self.jackpot_probability
            )));
        }
        if !(self.jackpot_value.is_finite() && self.jackpot_value >= 0.0) {
            return Err(Error::invalid(format!(
                "jackpot value {} must be >= 0",
                self.jackpot_value
            )));
        }
        Ok(())
    }

    /// `1 - (1 - p)^N`
    pub fn capture_probability(&self) -> f64 {
        1.0 - (1.0 - self.jackpot_probability).powi(self.bets as i32)
    }

    /// `N * (p * J - c)`
    pub fn expected_payoff(&self) -> f64 {
        self.bets as f64 * (self.jackpot_probability * self.jackpot_value - self.trial_cost)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortfolioOutcome {
    /// Net payoff per trial: jackpots * J - N * c.
    #[serde(skip)]
    pub payoffs: Vec<f64>,
    /// Fraction of trials with at least one jackpot.
    pub capture_probability: f64,
    pub analytic_capture_probability: f64,
    pub mean_payoff: f64,
    pub mean_payoff_stderr: f64,
    pub analytic_expected_payoff: f64,
}

impl PortfolioOutcome {
    /// Binomial standard error of the capture estimate under the analytic
    /// probability.
    pub fn capture_stderr(&self) -> f64 {
        let p = self.analytic_capture_probability;
        (p * (1.0 - p) / self.payoffs.len() as f64).sqrt()
    }
}

/// Simulate the 1/N strategy. Trial `t` draws its `N` bets, in order, from
/// stream `(seed, t)`.
pub fn portfolio_simulate(
    pf: &OptionPortfolio,
    trials: u64,
    seed: u64,
) -> Result<PortfolioOutcome> {
    pf.check()?;
    if trials < 1 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let outlay = pf.bets as f64 * pf.trial_cost;
    let jackpots: Vec<u32> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = Stream::new(seed, &[t]);
            (0..pf.bets)
                .filter(|_| rng.uniform() < pf.jackpot_probability)
                .count() as u32
        })
        .collect();
    let captured = jackpots.iter().filter(|&&j| j > 0).count();
    let payoffs: Vec<f64> = jackpots
        .iter()
        .map(|&j| j as f64 * pf.jackpot_value - outlay)
        .collect();
    let (mean, se) = mean_stderr(&payoffs);
    Ok(PortfolioOutcome {
        capture_probability: captured as f64 / trials as f64,
        analytic_capture_probability: pf.capture_probability(),
        mean_payoff: mean,
        mean_payoff_stderr: se,
        analytic_expected_payoff: pf.expected_payoff(),
        payoffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_capture() {
        let one = OptionPortfolio::new(1, 1.0, 0.1, 10.0).unwrap();
        assert!((one.capture_probability() - 0.1).abs() < 1e-15);
        let ten = OptionPortfolio::new(10, 1.0, 0.1, 10.0).unwrap();
        assert!((ten.capture_probability() - 0.651_321_559_9).abs() < 1e-9);
    }

    #[test]
    fn zero_expectation() {
        let pf = OptionPortfolio::new(5, 1.0, 0.01, 100.0).unwrap();
        assert_eq!(pf.expected_payoff(), 0.0);
        let out = portfolio_simulate(&pf, 50_000, 8).unwrap();
        assert!(
            out.mean_payoff.abs() <= 3.0 * out.mean_payoff_stderr,
            "{out:?}"
        );
    }

    #[test]
    fn capture_matches_closed_form() {
        let pf = OptionPortfolio::new(10, 1.0, 0.1, 10.0).unwrap();
        let out = portfolio_simulate(&pf, 50_000, 2).unwrap();
        let err = (out.capture_probability - out.analytic_capture_probability).abs();
        assert!(err <= 3.0 * out.capture_stderr(), "{err}");
    }

    #[test]
    fn invalid() {
        assert!(OptionPortfolio::new(0, 1.0, 0.1, 1.0).is_err());
        assert!(OptionPortfolio::new(1, -1.0, 0.1, 1.0).is_err());
        assert!(OptionPortfolio::new(1, 1.0, 1.1, 1.0).is_err());
        let pf = OptionPortfolio::new(1, 1.0, 0.1, 1.0).unwrap();
        assert!(portfolio_simulate(&pf, 0, 1).is_err());
    }
}
