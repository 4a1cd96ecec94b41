//! JSON scenario and study files.
//!
//! Scenario file keys: `suppliers` (`[{name, capacity}]`), `items`
//! (`[string]`), `demands` (`[{name, item, quantity}]`), `costs`
//! (`[{supplier, item, demand, cost}]`, a missing entry is unavailable),
//! `item_capacity` (`[{item, supplier, max_units}]`, a missing entry is
//! unbounded) and an optional `disruption` section. Unknown keys anywhere
//! are a parse error.
//!
//! Study files carry an optional `description` and a `payoff` section.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::disruption::{CapacityRule, DisruptionModel, PowerLaw};
use crate::error::{Error, Result};
use crate::model::{DemandPoint, Scenario, Supplier};
use crate::optionality::{BaseDistribution, OptionPortfolio, PayoffFunction, SpreadFamily};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    suppliers: Vec<SupplierEntry>,
    items: Vec<String>,
    demands: Vec<DemandEntry>,
    #[serde(default)]
    costs: Vec<CostEntry>,
    #[serde(default)]
    item_capacity: Vec<ItemCapacityEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disruption: Option<DisruptionSection>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupplierEntry {
    name: String,
    capacity: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DemandEntry {
    name: String,
    item: String,
    quantity: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CostEntry {
    supplier: String,
    item: String,
    demand: String,
    cost: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemCapacityEntry {
    item: String,
    supplier: String,
    max_units: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DisruptionSection {
    #[serde(default)]
    per_supplier_p: BTreeMap<String, f64>,
    power_law: PowerLawEntry,
    shortage_penalty: f64,
    capacity_rule: RuleName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    severity_ref: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerLawEntry {
    k: f64,
    x_min: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum RuleName {
    #[serde(rename = "total_loss", alias = "TOTAL_LOSS")]
    TotalLoss,
    #[serde(rename = "proportional", alias = "PROPORTIONAL")]
    Proportional,
}

/// A scenario file: the instance plus its optional disruption parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDocument {
    pub scenario: Scenario,
    pub disruption: Option<DisruptionModel>,
}

/// Parse and validate a scenario file, discarding any disruption section.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    load_document(text).map(|d| d.scenario)
}

pub fn load_document(text: &str) -> Result<ScenarioDocument> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    let mut violations = Vec::new();

    let mut scenario = Scenario::new(
        file.suppliers
            .into_iter()
            .map(|s| Supplier::new(s.name, s.capacity))
            .collect(),
        file.items,
        file.demands
            .into_iter()
            .map(|d| DemandPoint::new(d.name, d.item, d.quantity))
            .collect(),
    );

    for (n, c) in file.costs.iter().enumerate() {
        let (i, k, j) = (
            scenario.supplier_index(&c.supplier),
            scenario.item_index(&c.item),
            scenario.demand_index(&c.demand),
        );
        let (Some(i), Some(k), Some(j)) = (i, k, j) else {
            violations.push(format!(
                "reference: cost entry {n} names unknown supplier, item or demand point \
                 (`{}`, `{}`, `{}`)",
                c.supplier, c.item, c.demand
            ));
            continue;
        };
        if scenario.costs.get(i, k, j).is_some() {
            violations.push(format!(
                "uniqueness: duplicate cost entry for (`{}`, `{}`, `{}`)",
                c.supplier, c.item, c.demand
            ));
        }
        scenario.costs.set(i, k, j, Some(c.cost));
    }

    let mut seen = vec![false; scenario.items.len() * scenario.suppliers.len()];
    for (n, u) in file.item_capacity.iter().enumerate() {
        let (Some(k), Some(i)) = (
            scenario.item_index(&u.item),
            scenario.supplier_index(&u.supplier),
        ) else {
            violations.push(format!(
                "reference: item_capacity entry {n} names unknown item or supplier (`{}`, `{}`)",
                u.item, u.supplier
            ));
            continue;
        };
        let cell = k * scenario.suppliers.len() + i;
        if seen[cell] {
            violations.push(format!(
                "uniqueness: duplicate item_capacity entry for (`{}`, `{}`)",
                u.item, u.supplier
            ));
        }
        seen[cell] = true;
        scenario.item_capacity.set(k, i, Some(u.max_units));
    }

    violations.extend(scenario.validate());

    let disruption = match file.disruption {
        None => None,
        Some(section) => match disruption_from_section(section, &scenario) {
            Ok(model) => Some(model),
            Err(mut v) => {
                violations.append(&mut v);
                None
            }
        },
    };

    if violations.is_empty() {
        Ok(ScenarioDocument {
            scenario,
            disruption,
        })
    } else {
        Err(Error::Validation(violations))
    }
}

fn disruption_from_section(
    d: DisruptionSection,
    s: &Scenario,
) -> std::result::Result<DisruptionModel, Vec<String>> {
    let mut v = Vec::new();
    let rule = match (d.capacity_rule, d.severity_ref) {
        (RuleName::TotalLoss, None) => Some(CapacityRule::TotalLoss),
        (RuleName::TotalLoss, Some(_)) => {
            v.push("disruption: severity_ref applies only to the proportional rule".into());
            None
        }
        (RuleName::Proportional, Some(severity_ref)) => {
            Some(CapacityRule::Proportional { severity_ref })
        }
        (RuleName::Proportional, None) => {
            v.push("disruption: the proportional rule requires severity_ref".into());
            None
        }
    };
    for name in d.per_supplier_p.keys() {
        if s.supplier_index(name).is_none() {
            v.push(format!(
                "reference: disruption probability for unknown supplier `{name}`"
            ));
        }
    }
    let power_law = PowerLaw::new(d.power_law.k, d.power_law.x_min)
        .map_err(|e| v.push(format!("disruption: {e}")))
        .ok();
    if let (Some(rule), Some(pl)) = (rule, power_law) {
        match DisruptionModel::new(d.per_supplier_p, pl, d.shortage_penalty, rule) {
            Ok(m) if v.is_empty() => return Ok(m),
            Ok(_) => {}
            Err(e) => v.push(format!("disruption: {e}")),
        }
    }
    Err(v)
}

fn scenario_file(s: &Scenario, disruption: Option<&DisruptionModel>) -> ScenarioFile {
    let n_s = s.suppliers.len();
    ScenarioFile {
        suppliers: s
            .suppliers
            .iter()
            .map(|x| SupplierEntry {
                name: x.name.clone(),
                capacity: x.capacity,
            })
            .collect(),
        items: s.items.clone(),
        demands: s
            .demands
            .iter()
            .map(|d| DemandEntry {
                name: d.name.clone(),
                item: d.item.clone(),
                quantity: d.quantity,
            })
            .collect(),
        costs: s
            .costs
            .available()
            .map(|(i, k, j, cost)| CostEntry {
                supplier: s.suppliers[i].name.clone(),
                item: s.items[k].clone(),
                demand: s.demands[j].name.clone(),
                cost,
            })
            .collect(),
        item_capacity: (0..s.items.len())
            .flat_map(|k| (0..n_s).map(move |i| (k, i)))
            .filter_map(|(k, i)| {
                s.item_capacity
                    .get(k, i)
                    .map(|max_units| ItemCapacityEntry {
                        item: s.items[k].clone(),
                        supplier: s.suppliers[i].name.clone(),
                        max_units,
                    })
            })
            .collect(),
        disruption: disruption.map(|d| {
            let (capacity_rule, severity_ref) = match d.capacity_rule {
                CapacityRule::TotalLoss => (RuleName::TotalLoss, None),
                CapacityRule::Proportional { severity_ref } => {
                    (RuleName::Proportional, Some(severity_ref))
                }
            };
            DisruptionSection {
                per_supplier_p: d.per_supplier_p.clone(),
                power_law: PowerLawEntry {
                    k: d.severity.exponent(),
                    x_min: d.severity.x_min(),
                },
                shortage_penalty: d.shortage_penalty,
                capacity_rule,
                severity_ref,
            }
        }),
    }
}

/// Scenario file text for `s` (pretty-printed, trailing newline).
pub fn scenario_to_json(s: &Scenario) -> String {
    to_pretty(&scenario_file(s, None))
}

impl ScenarioDocument {
    pub fn to_json(&self) -> String {
        to_pretty(&scenario_file(&self.scenario, self.disruption.as_ref()))
    }
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("file structs always serialize");
    out.push('\n');
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StudyFile {
    #[serde(default)]
    description: Option<String>,
    payoff: PayoffSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PayoffSection {
    function: PayoffFunctionEntry,
    distribution: DistributionEntry,
    #[serde(default = "one")]
    scale: f64,
    #[serde(default = "default_scales")]
    scales: Vec<f64>,
    #[serde(default)]
    portfolio: Option<PortfolioEntry>,
    #[serde(default)]
    vendors: Vec<VendorEntry>,
}

fn one() -> f64 {
    1.0
}

fn default_scales() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 1.5, 2.0]
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum PayoffFunctionEntry {
    Affine { a: f64, b: f64 },
    Quadratic,
    Hinge { strike: f64 },
    Table { breakpoints: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum DistributionEntry {
    Uniform { lo: f64, hi: f64 },
    TwoPoint { x1: f64, x2: f64, p: f64 },
    Normal { mean: f64, sd: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PortfolioEntry {
    bets: u32,
    trial_cost: f64,
    jackpot_probability: f64,
    jackpot_value: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VendorEntry {
    distribution: DistributionEntry,
    #[serde(default = "one")]
    scale: f64,
}

impl From<DistributionEntry> for BaseDistribution {
    fn from(d: DistributionEntry) -> Self {
        match d {
            DistributionEntry::Uniform { lo, hi } => BaseDistribution::Uniform { lo, hi },
            DistributionEntry::TwoPoint { x1, x2, p } => BaseDistribution::TwoPoint { x1, x2, p },
            DistributionEntry::Normal { mean, sd } => BaseDistribution::Normal { mean, sd },
        }
    }
}

/// Parameters of a convex-payoff study.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffStudy {
    pub description: Option<String>,
    pub function: PayoffFunction,
    /// Distribution for the Jensen gap; its scale is the study's `scale`.
    pub distribution: SpreadFamily,
    /// Scales for the spread curve.
    pub scales: Vec<f64>,
    pub portfolio: Option<OptionPortfolio>,
    pub vendors: Vec<SpreadFamily>,
}

pub fn load_study(text: &str) -> Result<PayoffStudy> {
    let file: StudyFile = serde_json::from_str(text)?;
    let p = file.payoff;
    let mut violations = Vec::new();
    let mut keep = |r: Result<()>| {
        if let Err(e) = r {
            violations.push(e.to_string());
        }
    };

    let function = match p.function {
        PayoffFunctionEntry::Affine { a, b } => PayoffFunction::Affine { a, b },
        PayoffFunctionEntry::Quadratic => PayoffFunction::Quadratic,
        PayoffFunctionEntry::Hinge { strike } => PayoffFunction::Hinge { strike },
        PayoffFunctionEntry::Table { breakpoints } => PayoffFunction::Table { breakpoints },
    };
    keep(function.check());
    let distribution = SpreadFamily {
        base: p.distribution.into(),
        scale: p.scale,
    };
    keep(distribution.check());
    if p.scales.is_empty() {
        keep(Err(Error::invalid("`scales` must not be empty")));
    }
    for &s in &p.scales {
        keep(
            SpreadFamily {
                scale: s,
                ..distribution
            }
            .check(),
        );
    }
    let portfolio = p.portfolio.map(|e| OptionPortfolio {
        bets: e.bets,
        trial_cost: e.trial_cost,
        jackpot_probability: e.jackpot_probability,
        jackpot_value: e.jackpot_value,
    });
    if let Some(pf) = &portfolio {
        keep(pf.check());
    }
    let vendors: Vec<SpreadFamily> = p
        .vendors
        .into_iter()
        .map(|v| SpreadFamily {
            base: v.distribution.into(),
            scale: v.scale,
        })
        .collect();
    for v in &vendors {
        keep(v.check());
    }

    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    Ok(PayoffStudy {
        description: file.description,
        function,
        distribution,
        scales: p.scales,
        portfolio,
        vendors,
    })
}
