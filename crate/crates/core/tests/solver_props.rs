mod common;

use common::arb_scenario;
use multivendor_core::solver::{audit_plan, oracle_min_cost, solve, PlanStatus};
use multivendor_core::sweep::{marginal_value, sweep_subsets};
use multivendor_core::Scenario;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_matches_oracle(s in arb_scenario(3, 2, 2, 5)) {
        let fast = solve(&s);
        let slow = oracle_min_cost(&s).unwrap();
        prop_assert_eq!(fast.status, slow.status);
        prop_assert_eq!(fast.z, slow.z);
    }

    #[test]
    fn optimal_plans_pass_audit(s in arb_scenario(4, 3, 4, 8)) {
        let plan = solve(&s);
        let v = audit_plan(&s, &plan);
        prop_assert!(v.is_empty(), "{:?}", v);
        if plan.status == PlanStatus::Optimal {
            prop_assert!(plan.shipments.iter().all(|x| x.units > 0));
        }
    }

    #[test]
    fn solve_is_deterministic(s in arb_scenario(4, 2, 4, 8)) {
        let a = solve(&s);
        let b = solve(&s.clone());
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        prop_assert_eq!(a.z.map(f64::to_bits), b.z.map(f64::to_bits));
    }

    #[test]
    fn more_capacity_never_costs_more(
        s in arb_scenario(3, 2, 3, 6),
        pick in any::<prop::sample::Index>(),
        extra in 1..5i64,
        which in 0..3u8,
    ) {
        let before = solve(&s);
        let mut t = s.clone();
        match which {
            0 => {
                let i = pick.index(t.suppliers.len());
                t.suppliers[i].capacity += extra;
            }
            1 => {
                let (n_k, n_s) = t.item_capacity.dims();
                let cell = pick.index(n_k * n_s);
                let (k, i) = (cell / n_s, cell % n_s);
                let cur = t.item_capacity.get(k, i);
                t.item_capacity.set(k, i, cur.map(|u| u + extra));
            }
            _ => {
                // open an unavailable cell that matches its demand's item
                let cells: Vec<(usize, usize, usize)> = (0..t.suppliers.len())
                    .flat_map(|i| (0..t.demands.len()).map(move |j| (i, j)))
                    .map(|(i, j)| (i, t.demand_item(j).unwrap(), j))
                    .filter(|&(i, k, j)| t.costs.get(i, k, j).is_none())
                    .collect();
                if !cells.is_empty() {
                    let (i, k, j) = cells[pick.index(cells.len())];
                    t.costs.set(i, k, j, Some(extra as f64));
                }
            }
        }
        let after = solve(&t);
        match (before.z, after.z) {
            (Some(b), Some(a)) => prop_assert!(a <= b),
            (Some(_), None) => prop_assert!(false, "relaxation became infeasible"),
            _ => {}
        }
    }

    #[test]
    fn sweep_entries_match_independent_solves(s in arb_scenario(4, 2, 3, 6)) {
        let r = sweep_subsets(&s, 1).unwrap();
        prop_assert_eq!(r.entries.len(), (1 << s.suppliers.len()) - 1);
        for e in &r.entries {
            let sub = s.restrict_suppliers(&e.suppliers).unwrap();
            prop_assert_eq!(solve(&sub).z, e.z);
        }
        prop_assert!(r.monotonicity_violations().is_empty());
        prop_assert_eq!(r.baseline_z, solve(&s).z);
    }

    #[test]
    fn marginal_value_nonnegative(s in arb_scenario(4, 2, 3, 6)) {
        if solve(&s).status == PlanStatus::Optimal {
            for sup in &s.suppliers {
                let v = marginal_value(&s, &sup.name).unwrap();
                prop_assert!(v >= 0.0, "{} -> {}", sup.name, v);
            }
        }
    }
}

#[test]
fn larger_instance_is_integral_and_audited() {
    // 6 suppliers x 3 items x 8 demand points, beyond the oracle's reach
    let mut caps = Vec::new();
    let mut demands = Vec::new();
    let mut costs = Vec::new();
    let mut limits = Vec::new();
    let mut x: u64 = 12345;
    let mut next = |m: u64| {
        x = x
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (x >> 33) % m
    };
    for _ in 0..6 {
        caps.push(20 + next(30) as i64);
    }
    for _ in 0..8 {
        demands.push((next(3) as usize, next(15) as i64));
    }
    for _ in 0..6 * 3 * 8 {
        costs.push(if next(5) == 0 {
            None
        } else {
            Some(next(50) as i64)
        });
    }
    for _ in 0..3 * 6 {
        limits.push(if next(3) == 0 {
            Some(next(20) as i64)
        } else {
            None
        });
    }
    let s: Scenario = common::build(6, 3, &caps, &demands, &costs, &limits);
    let plan = solve(&s);
    assert_eq!(plan.status, PlanStatus::Optimal);
    assert!(audit_plan(&s, &plan).is_empty());
}
