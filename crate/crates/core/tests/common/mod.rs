#![allow(dead_code)]

use multivendor_core::model::{DemandPoint, Scenario, Supplier};
use proptest::prelude::*;

/// Small random instances with integer costs. Roughly one cost cell in five
/// is unavailable and one item limit in three is bounded.
pub fn arb_scenario(
    max_suppliers: usize,
    max_items: usize,
    max_demands: usize,
    max_qty: i64,
) -> impl Strategy<Value = Scenario> {
    (1..=max_suppliers, 1..=max_items, 1..=max_demands).prop_flat_map(move |(n_s, n_k, n_d)| {
        (
            prop::collection::vec(0..=2 * max_qty, n_s),
            prop::collection::vec((0..n_k, 0..=max_qty), n_d),
            prop::collection::vec(prop::option::weighted(0.8, 0..=9i64), n_s * n_k * n_d),
            prop::collection::vec(prop::option::weighted(0.33, 0..=max_qty), n_k * n_s),
        )
            .prop_map(move |(caps, demands, costs, limits)| {
                build(n_s, n_k, &caps, &demands, &costs, &limits)
            })
    })
}

pub fn build(
    n_s: usize,
    n_k: usize,
    caps: &[i64],
    demands: &[(usize, i64)],
    costs: &[Option<i64>],
    limits: &[Option<i64>],
) -> Scenario {
    let n_d = demands.len();
    let mut s = Scenario::new(
        caps.iter()
            .enumerate()
            .map(|(i, &c)| Supplier::new(format!("s{i}"), c))
            .collect(),
        (0..n_k).map(|k| format!("k{k}")).collect(),
        demands
            .iter()
            .enumerate()
            .map(|(j, &(k, q))| DemandPoint::new(format!("d{j}"), format!("k{k}"), q))
            .collect(),
    );
    for i in 0..n_s {
        for k in 0..n_k {
            s.item_capacity.set(k, i, limits[k * n_s + i]);
            for (j, &(dk, _)) in demands.iter().enumerate() {
                if dk == k {
                    let c = costs[(i * n_k + k) * n_d + j];
                    s.costs.set(i, k, j, c.map(|c| c as f64));
                }
            }
        }
    }
    s
}
