//! Supplier disruption Monte Carlo with power-law severity, plus risk-plane
//! classification and cost-distribution summaries.

mod power_law;
mod quadrant;
mod risk;
mod simulate;

pub use power_law::{sample_severity, PowerLaw};
pub use quadrant::{classify_quadrant, Quadrant};
pub use risk::{nearest_rank, summarize_risk, RiskSummary};
pub use simulate::{simulate_horizon, CapacityRule, CostDistribution, DisruptionModel};
