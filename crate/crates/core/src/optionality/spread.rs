//! Mean-preserving spreads and the Jensen gap of convex payoffs.
//!
//! A spread family scales a base distribution about its mean:
//! `X_s = mean + s * (X - mean)`. Monte Carlo estimates draw the base sample
//! once and reuse it for every scale (common random numbers). Deviations are
//! taken from the sample mean rather than the population mean, so every
//! scaled sample has exactly the target mean. That makes the empirical
//! Jensen gap nonnegative and the empirical curve nondecreasing in the scale
//! for any convex payoff, the same as their population counterparts.

use rayon::prelude::*;
use serde::Serialize;

use super::payoff::PayoffFunction;
use crate::error::{Error, Result};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseDistribution {
    Uniform {
        lo: f64,
        hi: f64,
    },
    /// `x1` with probability `p`, otherwise `x2`.
    TwoPoint {
        x1: f64,
        x2: f64,
        p: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
}

impl BaseDistribution {
    pub fn check(&self) -> Result<()> {
        let ok = match *self {
            BaseDistribution::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo < hi,
            BaseDistribution::TwoPoint { x1, x2, p } => {
                x1.is_finite() && x2.is_finite() && (0.0..=1.0).contains(&p)
            }
            BaseDistribution::Normal { mean, sd } => {
                mean.is_finite() && sd.is_finite() && sd >= 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("invalid distribution {self:?}")))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            BaseDistribution::Uniform { lo, hi } => 0.5 * (lo + hi),
            BaseDistribution::TwoPoint { x1, x2, p } => p * x1 + (1.0 - p) * x2,
            BaseDistribution::Normal { mean, .. } => mean,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            BaseDistribution::Uniform { lo, hi } => (hi - lo).powi(2) / 12.0,
            BaseDistribution::TwoPoint { x1, x2, p } => p * (1.0 - p) * (x2 - x1).powi(2),
            BaseDistribution::Normal { sd, .. } => sd * sd,
        }
    }

    pub(crate) fn draw(&self, rng: &mut Stream) -> f64 {
        match *self {
            BaseDistribution::Uniform { lo, hi } => lo + (hi - lo) * rng.uniform(),
            BaseDistribution::TwoPoint { x1, x2, p } => {
                if rng.uniform() < p {
                    x1
                } else {
                    x2
                }
            }
            BaseDistribution::Normal { mean, sd } => mean + sd * rng.standard_normal(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpreadFamily {
    pub base: BaseDistribution,
    /// Dispersion multiplier about the mean; 0 collapses onto the mean.
    pub scale: f64,
}

impl SpreadFamily {
    pub fn new(base: BaseDistribution, scale: f64) -> Result<Self> {
        let d = SpreadFamily { base, scale };
        d.check()?;
        Ok(d)
    }

    pub fn check(&self) -> Result<()> {
        self.base.check()?;
        check_scale(self.scale)
    }

    pub fn mean(&self) -> f64 {
        self.base.mean()
    }

    pub fn variance(&self) -> f64 {
        self.scale * self.scale * self.base.variance()
    }

    /// One draw of `X_scale` using the population mean.
    pub(crate) fn draw(&self, rng: &mut Stream) -> f64 {
        let mu = self.base.mean();
        mu + self.scale * (self.base.draw(rng) - mu)
    }
}

fn check_scale(s: f64) -> Result<()> {
    if s.is_finite() && s >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "spread scale {s} must be finite and nonnegative"
        )))
    }
}

/// A reported value alongside its Monte Carlo estimate. `value` is the
/// analytic result when one exists, else the Monte Carlo mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub mc_value: f64,
    pub mc_stderr: f64,
    pub analytic: Option<f64>,
}

impl Estimate {
    fn new(mc_value: f64, mc_stderr: f64, analytic: Option<f64>) -> Self {
        Estimate {
            value: analytic.unwrap_or(mc_value),
            mc_value,
            mc_stderr,
            analytic,
        }
    }

    /// Standard error of `value`: zero when it is analytic.
    pub fn stderr(&self) -> f64 {
        if self.analytic.is_some() {
            0.0
        } else {
            self.mc_stderr
        }
    }
}

/// Sample mean and standard error of the mean.
pub(crate) fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Base-distribution deviations from the sample mean, one per trial.
fn centered_deviations(base: &BaseDistribution, trials: u64, seed: u64) -> Vec<f64> {
    let draws: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| base.draw(&mut Stream::new(seed, &[t])))
        .collect();
    let center = draws.iter().sum::<f64>() / draws.len() as f64;
    draws.into_iter().map(|x| x - center).collect()
}

fn check_study(f: &PayoffFunction, base: &BaseDistribution, trials: u64) -> Result<()> {
    if trials < 1 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    f.check()?;
    base.check()
}

/// Exact `E[f(X_scale)]` where a closed form exists.
fn analytic_expectation(f: &PayoffFunction, base: &BaseDistribution, scale: f64) -> Option<f64> {
    let mu = base.mean();
    match f {
        PayoffFunction::Affine { a, b } => Some(a * mu + b),
        PayoffFunction::Quadratic => Some(mu * mu + scale * scale * base.variance()),
        _ => None,
    }
}

/// `E[f(X)] - f(E[X])` for `X` drawn from `d`.
pub fn jensen_gap(
    f: &PayoffFunction,
    d: &SpreadFamily,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    check_study(f, &d.base, trials)?;
    check_scale(d.scale)?;
    let mu = d.mean();
    let at_mean = f.eval(mu);
    let devs = centered_deviations(&d.base, trials, seed);
    let gaps: Vec<f64> = devs
        .iter()
        .map(|dev| f.eval(mu + d.scale * dev) - at_mean)
        .collect();
    let (mc, se) = mean_stderr(&gaps);
    let analytic = match f {
        PayoffFunction::Affine { .. } => Some(0.0),
        PayoffFunction::Quadratic => Some(d.variance()),
        _ => None,
    };
    Ok(Estimate::new(mc, se, analytic))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub sigma: f64,
    pub expected: Estimate,
}

/// `E[f(X_s)]` for each scale `s`, all from the same base sample. The
/// scale carried by `d` is ignored.
pub fn spread_curve(
    f: &PayoffFunction,
    d: &SpreadFamily,
    scales: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<CurvePoint>> {
    check_study(f, &d.base, trials)?;
    if scales.is_empty() {
        return Err(Error::invalid("at least one scale is required"));
    }
    for &s in scales {
        check_scale(s)?;
    }
    let mu = d.mean();
    let devs = centered_deviations(&d.base, trials, seed);
    Ok(scales
        .iter()
        .map(|&sigma| {
            let vals: Vec<f64> = devs.iter().map(|dev| f.eval(mu + sigma * dev)).collect();
            let (mc, se) = mean_stderr(&vals);
            CurvePoint {
                sigma,
                expected: Estimate::new(mc, se, analytic_expectation(f, &d.base, sigma)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> SpreadFamily {
        SpreadFamily::new(
            BaseDistribution::TwoPoint {
                x1: -1.0,
                x2: 1.0,
                p: 0.5,
            },
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn quadratic_gap_is_variance() {
        let g = jensen_gap(&PayoffFunction::Quadratic, &coin(), 1000, 3).unwrap();
        assert_eq!(g.value, 1.0);
        assert_eq!(g.analytic, Some(1.0));
    }

    #[test]
    fn affine_gap_is_zero() {
        let f = PayoffFunction::Affine { a: 3.0, b: 7.0 };
        for base in [
            BaseDistribution::Uniform { lo: -2.0, hi: 5.0 },
            BaseDistribution::Normal { mean: 1.0, sd: 4.0 },
        ] {
            let d = SpreadFamily::new(base, 2.0).unwrap();
            let g = jensen_gap(&f, &d, 1000, 9).unwrap();
            assert_eq!(g.value, 0.0);
            assert!(g.mc_value.abs() < 1e-9);
        }
    }

    #[test]
    fn hinge_coin_gap() {
        // outcomes -1 -> 0 and +1 -> 1, f(mean) = 0: gap 1/2
        let g = jensen_gap(&PayoffFunction::Hinge { strike: 0.0 }, &coin(), 20_000, 5).unwrap();
        assert!(g.analytic.is_none());
        assert!((g.value - 0.5).abs() <= 3.0 * g.mc_stderr, "{g:?}");
    }

    #[test]
    fn quadratic_curve_is_exact() {
        let c = spread_curve(
            &PayoffFunction::Quadratic,
            &coin(),
            &[0.0, 1.0, 2.0],
            100,
            1,
        )
        .unwrap();
        let vals: Vec<f64> = c.iter().map(|p| p.expected.value).collect();
        assert_eq!(vals, vec![0.0, 1.0, 4.0]);
    }

    #[test]
    fn affine_curve_is_flat() {
        let f = PayoffFunction::Affine { a: -2.0, b: 1.0 };
        let d = SpreadFamily::new(BaseDistribution::Uniform { lo: 1.0, hi: 3.0 }, 1.0).unwrap();
        let c = spread_curve(&f, &d, &[0.0, 0.5, 3.0], 100, 1).unwrap();
        assert!(c.iter().all(|p| p.expected.value == -3.0));
    }

    #[test]
    fn invalid_inputs() {
        let f = PayoffFunction::Quadratic;
        assert!(jensen_gap(&f, &coin(), 0, 1).is_err());
        assert!(spread_curve(&f, &coin(), &[], 10, 1).is_err());
        assert!(spread_curve(&f, &coin(), &[-1.0], 10, 1).is_err());
        assert!(SpreadFamily::new(BaseDistribution::Uniform { lo: 1.0, hi: 1.0 }, 1.0).is_err());
        assert!(SpreadFamily::new(
            BaseDistribution::Normal {
                mean: 0.0,
                sd: -1.0
            },
            1.0
        )
        .is_err());
        assert!(SpreadFamily::new(
            BaseDistribution::TwoPoint {
                x1: 0.0,
                x2: 1.0,
                p: 1.5
            },
            1.0
        )
        .is_err());
    }
}
