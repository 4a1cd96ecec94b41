use serde::{Deserialize, Serialize};

use super::mcf::min_cost_max_flow;
use super::network::{build_flow_network, ArcRole, FlowNetwork};
use crate::model::Scenario;

/// Absolute tolerance when re-deriving `z` from a plan's shipments.
pub const OBJECTIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PlanStatus {
    Optimal,
    Infeasible,
}

impl PlanStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanStatus::Optimal => "OPTIMAL",
            PlanStatus::Infeasible => "INFEASIBLE",
        }
    }
}

impl std::fmt::Display for PlanStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shipment {
    pub supplier: String,
    pub item: String,
    pub demand: String,
    pub units: i64,
}

/// Optimal shipments and total cost, or an infeasibility verdict.
///
/// `shipments` lists active cells only, in canonical (supplier, item,
/// demand) order. `z` is `None` for infeasible plans.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShipmentPlan {
    pub status: PlanStatus,
    pub z: Option<f64>,
    pub shipments: Vec<Shipment>,
}

impl ShipmentPlan {
    pub fn infeasible() -> Self {
        ShipmentPlan {
            status: PlanStatus::Infeasible,
            z: None,
            shipments: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == PlanStatus::Optimal
    }

    pub fn units(&self, supplier: &str, item: &str, demand: &str) -> i64 {
        self.shipments
            .iter()
            .find(|s| s.supplier == supplier && s.item == item && s.demand == demand)
            .map_or(0, |s| s.units)
    }
}

/// Solve the network built by [`build_flow_network`].
pub fn solve_min_cost(net: &FlowNetwork) -> ShipmentPlan {
    let flow = min_cost_max_flow(net);
    if flow.flow_value < net.required_flow {
        return ShipmentPlan::infeasible();
    }
    let mut z = 0.0;
    let mut shipments = Vec::new();
    // Ship arcs are stored in canonical (s, k, d) order
    for (arc, &units) in net.arcs.iter().zip(&flow.arc_flow) {
        if let ArcRole::Ship {
            supplier,
            item,
            demand,
        } = arc.role
        {
            if units > 0 {
                z += arc.unit_cost * units as f64;
                shipments.push(Shipment {
                    supplier: net.labels.suppliers[supplier].clone(),
                    item: net.labels.items[item].clone(),
                    demand: net.labels.demands[demand].clone(),
                    units,
                });
            }
        }
    }
    ShipmentPlan {
        status: PlanStatus::Optimal,
        z: Some(z),
        shipments,
    }
}

/// Build and solve in one step.
pub fn solve(s: &Scenario) -> ShipmentPlan {
    solve_min_cost(&build_flow_network(s))
}

/// Cheapest way to serve as much demand as current capacity allows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Service {
    pub cost: f64,
    pub unmet: i64,
}

pub(crate) fn serve(s: &Scenario) -> Service {
    let net = build_flow_network(s);
    let flow = min_cost_max_flow(&net);
    let cost = net
        .arcs
        .iter()
        .zip(&flow.arc_flow)
        .filter(|(a, &x)| x > 0 && matches!(a.role, ArcRole::Ship { .. }))
        .map(|(a, &x)| a.unit_cost * x as f64)
        .sum();
    Service {
        cost,
        unmet: net.required_flow - flow.flow_value,
    }
}

/// Check every plan invariant against the scenario. Returns one message per
/// violation; an empty list means the plan is consistent.
pub fn audit_plan(s: &Scenario, plan: &ShipmentPlan) -> Vec<String> {
    let mut out = Vec::new();
    if plan.status == PlanStatus::Infeasible {
        if !plan.shipments.is_empty() || plan.z.is_some() {
            out.push("infeasible plan carries shipments or an objective".to_string());
        }
        return out;
    }

    let (n_s, n_k, n_d) = (s.suppliers.len(), s.items.len(), s.demands.len());
    let mut x = vec![0i64; n_s * n_k * n_d];
    for sh in &plan.shipments {
        let (Some(i), Some(k), Some(j)) = (
            s.supplier_index(&sh.supplier),
            s.item_index(&sh.item),
            s.demand_index(&sh.demand),
        ) else {
            out.push(format!("shipment references unknown names: {sh:?}"));
            continue;
        };
        if sh.units <= 0 {
            out.push(format!("non-positive shipment listed: {sh:?}"));
        }
        x[(i * n_k + k) * n_d + j] += sh.units;
    }
    let at = |i: usize, k: usize, j: usize| x[(i * n_k + k) * n_d + j];

    for (i, sup) in s.suppliers.iter().enumerate() {
        let shipped: i64 = (0..n_k)
            .flat_map(|k| (0..n_d).map(move |j| (k, j)))
            .map(|(k, j)| at(i, k, j))
            .sum();
        if shipped > sup.capacity {
            out.push(format!(
                "supply: `{}` ships {shipped} > capacity {}",
                sup.name, sup.capacity
            ));
        }
        for k in 0..n_k {
            let per_item: i64 = (0..n_d).map(|j| at(i, k, j)).sum();
            if let Some(u) = s.item_capacity.get(k, i) {
                if per_item > u {
                    out.push(format!(
                        "item capacity: `{}` ships {per_item} of `{}` > {u}",
                        sup.name, s.items[k]
                    ));
                }
            }
        }
    }
    for (j, d) in s.demands.iter().enumerate() {
        let received: i64 = (0..n_s)
            .flat_map(|i| (0..n_k).map(move |k| (i, k)))
            .map(|(i, k)| at(i, k, j))
            .sum();
        if received != d.quantity {
            out.push(format!(
                "demand: `{}` receives {received}, requires {}",
                d.name, d.quantity
            ));
        }
    }

    let mut z = 0.0;
    for i in 0..n_s {
        for k in 0..n_k {
            for j in 0..n_d {
                let units = at(i, k, j);
                if units < 0 {
                    out.push(format!("negative shipment at ({i}, {k}, {j})"));
                }
                if units == 0 {
                    continue;
                }
                match s.costs.get(i, k, j) {
                    Some(c) if s.demands[j].item == s.items[k] => z += c * units as f64,
                    _ => out.push(format!(
                        "shipment on unavailable cell (`{}`, `{}`, `{}`)",
                        s.suppliers[i].name, s.items[k], s.demands[j].name
                    )),
                }
            }
        }
    }
    match plan.z {
        Some(pz) if (pz - z).abs() <= OBJECTIVE_TOLERANCE => {}
        other => out.push(format!("objective: reported {other:?}, recomputed {z}")),
    }
    out
}
