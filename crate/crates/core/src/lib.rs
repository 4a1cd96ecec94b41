//! Exact multi-vendor procurement optimization and disruption/optionality
//! risk simulation.
//!
//! - [`model`] holds scenarios (suppliers, items, demand points, costs,
//!   item limits)
//! - [`format`] reads and writes JSON scenario and study files
//! - [`solver`] is the exact transportation solver via min-cost flow, plus
//!   an exhaustive oracle
//! - [`sweep`] computes minimum cost over supplier subsets
//! - [`disruption`] runs power-law disruption Monte Carlo and risk summaries
//! - [`optionality`] covers Jensen gaps, 1/N portfolios, vendor switching value
//!
//! All Monte Carlo routines take an explicit seed and produce identical
//! output for identical inputs regardless of thread count.

pub mod disruption;
pub mod error;
pub mod format;
pub mod model;
pub mod optionality;
pub mod rng;
pub mod solver;
pub mod sweep;

pub use error::{Error, Result};
pub use format::{
    load_document, load_scenario, load_study, scenario_to_json, PayoffStudy, ScenarioDocument,
};
pub use model::{restrict_suppliers, validate_scenario, DemandPoint, Scenario, Supplier};
pub use solver::{
    audit_plan, build_flow_network, oracle_min_cost, solve, solve_min_cost, PlanStatus,
    ShipmentPlan,
};
pub use sweep::{marginal_value, sweep_subsets, SweepResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
