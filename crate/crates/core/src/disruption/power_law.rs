use serde::Serialize;

use crate::error::{Error, Result};

/// Severity distribution with density proportional to `x^-k` on
/// `[x_min, inf)`. Normalizable only for `k > 1`; the CDF is then
/// `1 - (x_min / x)^(k - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLaw {
    k: f64,
    x_min: f64,
}

impl PowerLaw {
    pub fn new(k: f64, x_min: f64) -> Result<Self> {
        if !(k.is_finite() && k > 1.0) {
            return Err(Error::invalid(format!(
                "power-law exponent k = {k} must exceed 1"
            )));
        }
        if !(x_min.is_finite() && x_min > 0.0) {
            return Err(Error::invalid(format!(
                "power-law x_min = {x_min} must be positive"
            )));
        }
        Ok(PowerLaw { k, x_min })
    }

    pub fn exponent(&self) -> f64 {
        self.k
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    /// Inverse-CDF draw for `u` in `[0, 1)`.
    pub fn sample(&self, u: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&u), "u = {u}");
        // never below x_min, even if rounding nudges the power under 1
        (self.x_min * (1.0 - u).powf(-1.0 / (self.k - 1.0))).max(self.x_min)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.x_min {
            0.0
        } else {
            1.0 - (self.x_min / x).powf(self.k - 1.0)
        }
    }
}

/// Free-function form of [`PowerLaw::sample`].
pub fn sample_severity(pl: &PowerLaw, u: f64) -> f64 {
    pl.sample(u)
}
