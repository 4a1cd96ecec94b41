use serde::Serialize;

use crate::error::{Error, Result};

/// Closed family of payoff shapes.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PayoffFunction {
    /// `a * x + b`
    Affine { a: f64, b: f64 },
    /// `x^2`
    Quadratic,
    /// `max(x - strike, 0)`
    Hinge { strike: f64 },
    /// Piecewise-linear interpolation through the breakpoints, extended
    /// linearly beyond both ends.
    Table { breakpoints: Vec<(f64, f64)> },
}

impl PayoffFunction {
    pub fn table(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        let f = PayoffFunction::Table { breakpoints };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("payoff {what} is {v}")))
            }
        };
        match self {
            PayoffFunction::Affine { a, b } => {
                finite(*a, "slope")?;
                finite(*b, "intercept")
            }
            PayoffFunction::Quadratic => Ok(()),
            PayoffFunction::Hinge { strike } => finite(*strike, "strike"),
            PayoffFunction::Table { breakpoints } => {
                if breakpoints.len() < 2 {
                    return Err(Error::invalid(
                        "payoff table needs at least two breakpoints",
                    ));
                }
                for &(x, y) in breakpoints {
                    finite(x, "breakpoint x")?;
                    finite(y, "breakpoint y")?;
                }
                if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(Error::invalid(
                        "payoff table breakpoints must be strictly increasing in x",
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            PayoffFunction::Affine { a, b } => a * x + b,
            PayoffFunction::Quadratic => x * x,
            PayoffFunction::Hinge { strike } => (x - strike).max(0.0),
            PayoffFunction::Table { breakpoints } => {
                // segment whose right end is the first breakpoint past x,
                // clamped to the outer segments for extrapolation
                let right = breakpoints
                    .partition_point(|&(bx, _)| bx <= x)
                    .clamp(1, breakpoints.len() - 1);
                let (x0, y0) = breakpoints[right - 1];
                let (x1, y1) = breakpoints[right];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// True for shapes whose slopes never decrease. Affine, quadratic and
    /// hinge always are; a table is when its segment slopes are
    /// nondecreasing.
    pub fn is_convex(&self) -> bool {
        match self {
            PayoffFunction::Table { breakpoints } => {
                let slopes: Vec<f64> = breakpoints
                    .windows(2)
                    .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
                    .collect();
                slopes.windows(2).all(|s| s[0] <= s[1])
            }
            _ => true,
        }
    }
}
