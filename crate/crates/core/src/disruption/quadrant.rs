use serde::{Deserialize, Serialize};

/// Position on the disruption-probability vs consequence plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quadrant {
    LowPLowC,
    LowPHighC,
    HighPLowC,
    HighPHighC,
}

impl Quadrant {
    pub fn as_str(self) -> &'static str {
        match self {
            Quadrant::LowPLowC => "LOW_P_LOW_C",
            Quadrant::LowPHighC => "LOW_P_HIGH_C",
            Quadrant::HighPLowC => "HIGH_P_LOW_C",
            Quadrant::HighPHighC => "HIGH_P_HIGH_C",
        }
    }
}

/// A coordinate is LOW only when strictly below its threshold; ties (and
/// NaN) classify as HIGH. `consequence` is in whatever unit the caller
/// uses, e.g. a supplier's marginal value or a simulated cost increase.
pub fn classify_quadrant(
    probability: f64,
    consequence: f64,
    p_threshold: f64,
    c_threshold: f64,
) -> Quadrant {
    match (probability < p_threshold, consequence < c_threshold) {
        (true, true) => Quadrant::LowPLowC,
        (true, false) => Quadrant::LowPHighC,
        (false, true) => Quadrant::HighPLowC,
        (false, false) => Quadrant::HighPHighC,
    }
}
