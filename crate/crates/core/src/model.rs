//! Problem-instance data model: suppliers, items, demand points, the cost
//! tensor and the per-(item, supplier) capacity matrix.
//!
//! A [`Scenario`] is a plain value. Nothing here mutates an instance after
//! construction except the explicit setters used while assembling one, and
//! derived instances ([`Scenario::restrict_suppliers`]) are fresh copies.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Supplier {
    pub name: String,
    /// Aggregate units this supplier can ship across all items.
    pub capacity: i64,
}

impl Supplier {
    pub fn new(name: impl Into<String>, capacity: i64) -> Self {
        Self {
            name: name.into(),
            capacity,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemandPoint {
    pub name: String,
    pub item: String,
    pub quantity: i64,
}

impl DemandPoint {
    pub fn new(name: impl Into<String>, item: impl Into<String>, quantity: i64) -> Self {
        Self {
            name: name.into(),
            item: item.into(),
            quantity,
        }
    }
}

/// Dense `[supplier][item][demand]` unit-cost tensor. `None` marks a cell the
/// supplier cannot serve.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTensor {
    suppliers: usize,
    items: usize,
    demands: usize,
    cells: Vec<Option<f64>>,
}

impl CostTensor {
    /// All cells unavailable.
    pub fn new(suppliers: usize, items: usize, demands: usize) -> Self {
        Self {
            suppliers,
            items,
            demands,
            cells: vec![None; suppliers * items * demands],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.suppliers, self.items, self.demands)
    }

    fn offset(&self, s: usize, k: usize, d: usize) -> usize {
        assert!(
            s < self.suppliers && k < self.items && d < self.demands,
            "cost cell ({s}, {k}, {d}) out of bounds for {:?}",
            self.dims()
        );
        (s * self.items + k) * self.demands + d
    }

    pub fn get(&self, s: usize, k: usize, d: usize) -> Option<f64> {
        self.cells[self.offset(s, k, d)]
    }

    pub fn set(&mut self, s: usize, k: usize, d: usize, cost: Option<f64>) {
        let at = self.offset(s, k, d);
        self.cells[at] = cost;
    }

    /// Available cells as `(s, k, d, cost)` in canonical `(s, k, d)` order.
    pub fn available(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        let (items, demands) = (self.items, self.demands);
        self.cells.iter().enumerate().filter_map(move |(i, c)| {
            c.map(|c| (i / (items * demands), (i / demands) % items, i % demands, c))
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// `[item][supplier]` limits on how many units of an item a supplier can
/// provide. `None` is unbounded.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityMatrix {
    items: usize,
    suppliers: usize,
    cells: Vec<Option<i64>>,
}

impl CapacityMatrix {
    /// All cells unbounded.
    pub fn new(items: usize, suppliers: usize) -> Self {
        Self {
            items,
            suppliers,
            cells: vec![None; items * suppliers],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.items, self.suppliers)
    }

    fn offset(&self, k: usize, s: usize) -> usize {
        assert!(
            k < self.items && s < self.suppliers,
            "capacity cell ({k}, {s}) out of bounds for {:?}",
            self.dims()
        );
        k * self.suppliers + s
    }

    pub fn get(&self, k: usize, s: usize) -> Option<i64> {
        self.cells[self.offset(k, s)]
    }

    pub fn set(&mut self, k: usize, s: usize, max_units: Option<i64>) {
        let at = self.offset(k, s);
        self.cells[at] = max_units;
    }
}

/// A complete procurement instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub suppliers: Vec<Supplier>,
    pub items: Vec<String>,
    pub demands: Vec<DemandPoint>,
    pub costs: CostTensor,
    pub item_capacity: CapacityMatrix,
}

impl Scenario {
    /// New instance with every cost cell unavailable and every item capacity
    /// unbounded.
    pub fn new(suppliers: Vec<Supplier>, items: Vec<String>, demands: Vec<DemandPoint>) -> Self {
        let costs = CostTensor::new(suppliers.len(), items.len(), demands.len());
        let item_capacity = CapacityMatrix::new(items.len(), suppliers.len());
        Self {
            suppliers,
            items,
            demands,
            costs,
            item_capacity,
        }
    }

    /// Classic single-item transportation instance. Suppliers are named
    /// `s0, s1, ..`, demand points `d0, d1, ..`, the item `item`.
    /// `costs[i][j]` is the unit cost from supplier `i` to demand `j`.
    pub fn transportation(supply: &[i64], demand: &[i64], costs: &[Vec<f64>]) -> Self {
        let suppliers = supply
            .iter()
            .enumerate()
            .map(|(i, &cap)| Supplier::new(format!("s{i}"), cap))
            .collect();
        let demands = demand
            .iter()
            .enumerate()
            .map(|(j, &qty)| DemandPoint::new(format!("d{j}"), "item", qty))
            .collect();
        let mut scenario = Scenario::new(suppliers, vec!["item".to_string()], demands);
        for (i, row) in costs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                scenario.costs.set(i, 0, j, Some(c));
            }
        }
        scenario
    }

    pub fn supplier_index(&self, name: &str) -> Option<usize> {
        self.suppliers.iter().position(|s| s.name == name)
    }

    pub fn item_index(&self, name: &str) -> Option<usize> {
        self.items.iter().position(|k| k == name)
    }

    pub fn demand_index(&self, name: &str) -> Option<usize> {
        self.demands.iter().position(|d| d.name == name)
    }

    /// Index of the item requested by demand point `d`.
    pub fn demand_item(&self, d: usize) -> Option<usize> {
        self.item_index(&self.demands[d].item)
    }

    pub fn total_demand(&self) -> i64 {
        self.demands.iter().map(|d| d.quantity.max(0)).sum()
    }

    /// Every violated invariant, in a stable order. Empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();

        duplicates(
            self.suppliers.iter().map(|s| s.name.as_str()),
            "supplier",
            &mut out,
        );
        duplicates(self.items.iter().map(String::as_str), "item", &mut out);
        duplicates(
            self.demands.iter().map(|d| d.name.as_str()),
            "demand point",
            &mut out,
        );

        for s in &self.suppliers {
            if s.capacity < 0 {
                out.push(format!(
                    "nonnegativity: supplier `{}` has capacity {}",
                    s.name, s.capacity
                ));
            }
        }
        for d in &self.demands {
            if d.quantity < 0 {
                out.push(format!(
                    "nonnegativity: demand point `{}` has quantity {}",
                    d.name, d.quantity
                ));
            }
            if self.item_index(&d.item).is_none() {
                out.push(format!(
                    "reference: demand point `{}` requests unknown item `{}`",
                    d.name, d.item
                ));
            }
        }

        let expected = (self.suppliers.len(), self.items.len(), self.demands.len());
        if self.costs.dims() != expected {
            out.push(format!(
                "shape: cost tensor is {:?}, expected {:?}",
                self.costs.dims(),
                expected
            ));
        } else {
            for (s, k, d, c) in self.costs.available() {
                let cell = format!(
                    "(`{}`, `{}`, `{}`)",
                    self.suppliers[s].name, self.items[k], self.demands[d].name
                );
                if !c.is_finite() {
                    out.push(format!("finiteness: cost {cell} is {c}"));
                } else if c < 0.0 {
                    out.push(format!("nonnegativity: cost {cell} is {c}"));
                }
                if self.demands[d].item != self.items[k] {
                    out.push(format!(
                        "consistency: cost {cell} quotes item `{}` but the demand point requests `{}`",
                        self.items[k], self.demands[d].item
                    ));
                }
            }
        }

        let expected = (self.items.len(), self.suppliers.len());
        if self.item_capacity.dims() != expected {
            out.push(format!(
                "shape: item capacity matrix is {:?}, expected {:?}",
                self.item_capacity.dims(),
                expected
            ));
        } else {
            for k in 0..self.items.len() {
                for s in 0..self.suppliers.len() {
                    if let Some(u) = self.item_capacity.get(k, s) {
                        if u < 0 {
                            out.push(format!(
                                "nonnegativity: item capacity of `{}` at `{}` is {u}",
                                self.items[k], self.suppliers[s].name
                            ));
                        }
                    }
                }
            }
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// A new instance containing only the `allowed` suppliers, in this
    /// instance's supplier order. Cost and capacity slices follow.
    pub fn restrict_suppliers<S: AsRef<str>>(&self, allowed: &[S]) -> Result<Scenario> {
        let mut keep = vec![false; self.suppliers.len()];
        for name in allowed {
            let name = name.as_ref();
            let idx = self
                .supplier_index(name)
                .ok_or_else(|| Error::UnknownSupplier(name.to_string()))?;
            keep[idx] = true;
        }
        let kept: Vec<usize> = (0..self.suppliers.len()).filter(|&s| keep[s]).collect();
        Ok(self.select_suppliers(&kept))
    }

    /// Same as [`restrict_suppliers`](Self::restrict_suppliers) but by
    /// index. `kept` must be strictly increasing.
    pub(crate) fn select_suppliers(&self, kept: &[usize]) -> Scenario {
        let suppliers = kept.iter().map(|&s| self.suppliers[s].clone()).collect();
        let mut out = Scenario::new(suppliers, self.items.clone(), self.demands.clone());
        for (new_s, &old_s) in kept.iter().enumerate() {
            for k in 0..self.items.len() {
                out.item_capacity
                    .set(k, new_s, self.item_capacity.get(k, old_s));
                for d in 0..self.demands.len() {
                    out.costs.set(new_s, k, d, self.costs.get(old_s, k, d));
                }
            }
        }
        out
    }

    /// Copy of this instance with aggregate supplier capacities replaced.
    pub(crate) fn with_supplier_capacities(&self, capacities: &[i64]) -> Scenario {
        debug_assert_eq!(capacities.len(), self.suppliers.len());
        let mut out = self.clone();
        for (s, &cap) in out.suppliers.iter_mut().zip(capacities) {
            s.capacity = cap;
        }
        out
    }
}

fn duplicates<'a>(names: impl Iterator<Item = &'a str>, what: &str, out: &mut Vec<String>) {
    let mut seen = HashSet::new();
    let mut reported = HashSet::new();
    for name in names {
        if !seen.insert(name) && reported.insert(name) {
            out.push(format!("uniqueness: duplicate {what} name `{name}`"));
        }
    }
}

/// Free-function form of [`Scenario::validate`].
pub fn validate_scenario(s: &Scenario) -> Vec<String> {
    s.validate()
}

/// Free-function form of [`Scenario::restrict_suppliers`].
pub fn restrict_suppliers<S: AsRef<str>>(s: &Scenario, allowed: &[S]) -> Result<Scenario> {
    s.restrict_suppliers(allowed)
}
