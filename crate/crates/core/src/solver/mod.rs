//! Exact transportation solver: reduction to min-cost flow, plus a
//! brute-force oracle for cross-checking.
//!
//! The transportation constraint matrix is totally unimodular, so with
//! integral supplies, demands and item limits the flow optimum is integral
//! and no branching is needed.

mod mcf;
mod network;
mod oracle;
mod plan;

pub use mcf::{min_cost_max_flow, FlowSolution};
pub use network::{build_flow_network, Arc, ArcRole, FlowNetwork, Labels, Node};
pub use oracle::{oracle_min_cost, ORACLE_MAX_CELLS, ORACLE_MAX_DEMAND};
pub(crate) use plan::serve;
pub use plan::{
    audit_plan, solve, solve_min_cost, PlanStatus, Shipment, ShipmentPlan, OBJECTIVE_TOLERANCE,
};
