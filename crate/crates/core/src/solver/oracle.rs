//! Exhaustive enumeration oracle for small transportation instances.
//!
//! Shares nothing with the flow solver: it walks every integral shipment
//! tensor that meets each demand exactly, checks supply and item limits
//! directly, and keeps the cheapest. Only for verification.

use super::plan::{PlanStatus, Shipment, ShipmentPlan};
use crate::error::{Error, Result};
use crate::model::Scenario;

pub const ORACLE_MAX_CELLS: usize = 12;
pub const ORACLE_MAX_DEMAND: i64 = 10;

struct Search<'a> {
    s: &'a Scenario,
    /// Per demand point: the `(supplier, item, cost)` cells that may serve it.
    options: Vec<Vec<(usize, usize, f64)>>,
    supplier_left: Vec<i64>,
    /// `[supplier][item]` remaining limit, `i64::MAX` when unbounded.
    item_left: Vec<Vec<i64>>,
    x: Vec<Vec<i64>>,
    best: Option<(f64, Vec<Vec<i64>>)>,
}

impl Search<'_> {
    fn demand(&mut self, j: usize) {
        if j == self.s.demands.len() {
            self.leaf();
            return;
        }
        let need = self.s.demands[j].quantity;
        self.split(j, 0, need);
    }

    /// Distribute `left` units of demand `j` over options `o..`.
    fn split(&mut self, j: usize, o: usize, left: i64) {
        let n_opts = self.options[j].len();
        if o == n_opts {
            if left == 0 {
                self.demand(j + 1);
            }
            return;
        }
        let (i, k, _) = self.options[j][o];
        let room = left.min(self.supplier_left[i]).min(self.item_left[i][k]);
        for units in 0..=room {
            self.supplier_left[i] -= units;
            self.item_left[i][k] -= units;
            self.x[j][o] = units;
            self.split(j, o + 1, left - units);
            self.supplier_left[i] += units;
            self.item_left[i][k] += units;
        }
        self.x[j][o] = 0;
    }

    fn leaf(&mut self) {
        // canonical (s, k, d) summation order
        let mut cells: Vec<(usize, usize, usize, f64, i64)> = Vec::new();
        for (j, opts) in self.options.iter().enumerate() {
            for (o, &(i, k, c)) in opts.iter().enumerate() {
                cells.push((i, k, j, c, self.x[j][o]));
            }
        }
        cells.sort_by_key(|&(i, k, j, _, _)| (i, k, j));
        let z: f64 = cells.iter().map(|&(.., c, x)| c * x as f64).sum();
        if self.best.as_ref().is_none_or(|(bz, _)| z < *bz) {
            self.best = Some((z, self.x.clone()));
        }
    }
}

/// Minimum-cost plan by brute force. Limited to at most
/// [`ORACLE_MAX_CELLS`] tensor cells and demands of at most
/// [`ORACLE_MAX_DEMAND`] units.
pub fn oracle_min_cost(s: &Scenario) -> Result<ShipmentPlan> {
    let cells = s.costs.len();
    if cells > ORACLE_MAX_CELLS {
        return Err(Error::InstanceTooLarge(format!(
            "{cells} cells > {ORACLE_MAX_CELLS}"
        )));
    }
    if let Some(d) = s.demands.iter().find(|d| d.quantity > ORACLE_MAX_DEMAND) {
        return Err(Error::InstanceTooLarge(format!(
            "demand `{}` of {} units > {ORACLE_MAX_DEMAND}",
            d.name, d.quantity
        )));
    }
    let violations = s.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    let n_s = s.suppliers.len();
    let n_k = s.items.len();
    let options = (0..s.demands.len())
        .map(|j| {
            let k = s.demand_item(j).expect("validated");
            (0..n_s)
                .filter_map(|i| s.costs.get(i, k, j).map(|c| (i, k, c)))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let mut search = Search {
        s,
        x: options.iter().map(|o| vec![0; o.len()]).collect(),
        options,
        supplier_left: s.suppliers.iter().map(|x| x.capacity).collect(),
        item_left: (0..n_s)
            .map(|i| {
                (0..n_k)
                    .map(|k| s.item_capacity.get(k, i).unwrap_or(i64::MAX))
                    .collect()
            })
            .collect(),
        best: None,
    };
    search.demand(0);

    let Some((z, x)) = search.best else {
        return Ok(ShipmentPlan::infeasible());
    };
    let mut shipments = Vec::new();
    for (j, opts) in search.options.iter().enumerate() {
        for (o, &(i, k, _)) in opts.iter().enumerate() {
            if x[j][o] > 0 {
                shipments.push((i, k, j, x[j][o]));
            }
        }
    }
    shipments.sort_unstable();
    Ok(ShipmentPlan {
        status: PlanStatus::Optimal,
        z: Some(z),
        shipments: shipments
            .into_iter()
            .map(|(i, k, j, units)| Shipment {
                supplier: s.suppliers[i].name.clone(),
                item: s.items[k].clone(),
                demand: s.demands[j].name.clone(),
                units,
            })
            .collect(),
    })
}
