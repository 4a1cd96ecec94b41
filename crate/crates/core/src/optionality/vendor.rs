use rayon::prelude::*;
use serde::Serialize;

use super::spread::{mean_stderr, SpreadFamily};
use crate::error::{Error, Result};
use crate::rng::Stream;

/// Value of being free to buy from the cheapest of several vendors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VendorOptionValue {
    /// `E[min over vendors of price]`
    pub expected_min: f64,
    pub expected_min_stderr: f64,
    pub per_vendor_expected: Vec<f64>,
    /// Cheapest single-vendor mean minus `expected_min`.
    pub savings_vs_best_single: f64,
    /// Per-trial minimum price.
    #[serde(skip)]
    pub min_samples: Vec<f64>,
}

/// Vendor `v`'s price in trial `t` comes from stream `(seed, t, v)`, so
/// appending a vendor never changes earlier vendors' draws and the
/// per-trial minimum can only fall.
pub fn vendor_option_value(
    price_models: &[SpreadFamily],
    trials: u64,
    seed: u64,
) -> Result<VendorOptionValue> {
    if price_models.is_empty() {
        return Err(Error::invalid("at least one vendor is required"));
    }
    if trials < 1 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    for m in price_models {
        m.check()?;
    }

    let prices: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            price_models
                .iter()
                .enumerate()
                .map(|(v, m)| m.draw(&mut Stream::new(seed, &[t, v as u64])))
                .collect()
        })
        .collect();

    let n = trials as f64;
    let per_vendor_expected: Vec<f64> = (0..price_models.len())
        .map(|v| prices.iter().map(|row| row[v]).sum::<f64>() / n)
        .collect();
    let min_samples: Vec<f64> = prices
        .iter()
        .map(|row| row.iter().copied().fold(f64::INFINITY, f64::min))
        .collect();
    let (expected_min, expected_min_stderr) = mean_stderr(&min_samples);
    let best_single = per_vendor_expected
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);

    Ok(VendorOptionValue {
        expected_min,
        expected_min_stderr,
        savings_vs_best_single: best_single - expected_min,
        per_vendor_expected,
        min_samples,
    })
}
