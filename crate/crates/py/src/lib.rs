//! Python bindings. Scenarios, plans, disruption models and payoff study
//! inputs are classes; analyses are module functions returning plain
//! Python values (floats, lists, dicts).

use std::collections::BTreeMap;

use multivendor_core as mv;
use mv::disruption::{CapacityRule, CostDistribution, PowerLaw, RiskSummary};
use mv::optionality::{BaseDistribution, Estimate, OptionPortfolio, PayoffFunction, SpreadFamily};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(multivendor, MultivendorError, PyValueError);

fn err(e: mv::Error) -> PyErr {
    match e {
        mv::Error::Validation(v) => MultivendorError::new_err(v.join("\n")),
        other => MultivendorError::new_err(other.to_string()),
    }
}

#[pyclass(name = "Scenario", module = "multivendor", frozen)]
pub struct PyScenario {
    inner: mv::Scenario,
}

#[pymethods]
impl PyScenario {
    /// Parse and validate a scenario file. Any disruption section is
    /// ignored here; see `DisruptionModel.from_json`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        mv::load_scenario(text)
            .map(|inner| PyScenario { inner })
            .map_err(err)
    }

    /// Single-item instance: `costs[i][j]` is the unit cost from supplier
    /// `i` to demand point `j`.
    #[staticmethod]
    fn transportation(supply: Vec<i64>, demand: Vec<i64>, costs: Vec<Vec<f64>>) -> PyResult<Self> {
        if costs.len() != supply.len() || costs.iter().any(|row| row.len() != demand.len()) {
            return Err(PyValueError::new_err(format!(
                "costs must be {} rows of {} entries",
                supply.len(),
                demand.len()
            )));
        }
        Ok(PyScenario {
            inner: mv::Scenario::transportation(&supply, &demand, &costs),
        })
    }

    fn to_json(&self) -> String {
        mv::scenario_to_json(&self.inner)
    }

    /// Every violated constraint; empty when the scenario is valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate()
    }

    /// Copy keeping only the named suppliers, in their original order.
    fn restrict(&self, suppliers: Vec<String>) -> PyResult<Self> {
        self.inner
            .restrict_suppliers(&suppliers)
            .map(|inner| PyScenario { inner })
            .map_err(err)
    }

    /// `(name, capacity)` pairs.
    #[getter]
    fn suppliers(&self) -> Vec<(String, i64)> {
        self.inner
            .suppliers
            .iter()
            .map(|s| (s.name.clone(), s.capacity))
            .collect()
    }

    #[getter]
    fn items(&self) -> Vec<String> {
        self.inner.items.clone()
    }

    /// `(name, item, quantity)` triples.
    #[getter]
    fn demands(&self) -> Vec<(String, String, i64)> {
        self.inner
            .demands
            .iter()
            .map(|d| (d.name.clone(), d.item.clone(), d.quantity))
            .collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario(suppliers={}, items={}, demands={})",
            self.inner.suppliers.len(),
            self.inner.items.len(),
            self.inner.demands.len()
        )
    }
}

#[pyclass(name = "ShipmentPlan", module = "multivendor", frozen)]
pub struct PyShipmentPlan {
    inner: mv::ShipmentPlan,
}

#[pymethods]
impl PyShipmentPlan {
    /// "OPTIMAL" or "INFEASIBLE"
    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    #[getter]
    fn z(&self) -> Option<f64> {
        self.inner.z
    }

    /// `(supplier, item, demand, units)` for every positive shipment.
    #[getter]
    fn shipments(&self) -> Vec<(String, String, String, i64)> {
        self.inner
            .shipments
            .iter()
            .map(|s| {
                (
                    s.supplier.clone(),
                    s.item.clone(),
                    s.demand.clone(),
                    s.units,
                )
            })
            .collect()
    }

    fn is_optimal(&self) -> bool {
        self.inner.is_optimal()
    }

    fn units(&self, supplier: &str, item: &str, demand: &str) -> i64 {
        self.inner.units(supplier, item, demand)
    }

    fn __repr__(&self) -> String {
        match self.inner.z {
            Some(z) => format!("ShipmentPlan(status=OPTIMAL, z={z})"),
            None => "ShipmentPlan(status=INFEASIBLE)".to_string(),
        }
    }
}

#[pyfunction]
fn solve(scenario: PyRef<'_, PyScenario>) -> PyShipmentPlan {
    PyShipmentPlan {
        inner: mv::solve(&scenario.inner),
    }
}

/// Exhaustive search; only for tiny instances.
#[pyfunction]
fn oracle_min_cost(scenario: PyRef<'_, PyScenario>) -> PyResult<PyShipmentPlan> {
    mv::oracle_min_cost(&scenario.inner)
        .map(|inner| PyShipmentPlan { inner })
        .map_err(err)
}

#[pyfunction]
fn audit_plan(scenario: PyRef<'_, PyScenario>, plan: PyRef<'_, PyShipmentPlan>) -> Vec<String> {
    mv::audit_plan(&scenario.inner, &plan.inner)
}

/// One dict per subset with at least `min_size` suppliers, in bitmask order.
#[pyfunction]
#[pyo3(signature = (scenario, min_size = 1))]
fn sweep<'py>(
    py: Python<'py>,
    scenario: PyRef<'_, PyScenario>,
    min_size: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let result = mv::sweep_subsets(&scenario.inner, min_size).map_err(err)?;
    result
        .entries
        .iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("suppliers", e.suppliers.clone())?;
            d.set_item("size", e.size())?;
            d.set_item("status", e.status.as_str())?;
            d.set_item("z", e.z)?;
            Ok(d)
        })
        .collect()
}

/// Cost increase from losing `supplier`; `inf` if demand can no longer
/// be met.
#[pyfunction]
fn marginal_value(scenario: PyRef<'_, PyScenario>, supplier: &str) -> PyResult<f64> {
    mv::marginal_value(&scenario.inner, supplier).map_err(err)
}

#[pyfunction]
fn sample_severity(k: f64, x_min: f64, u: f64) -> PyResult<f64> {
    if !(0.0..1.0).contains(&u) {
        return Err(PyValueError::new_err(format!("u = {u} outside [0, 1)")));
    }
    let pl = PowerLaw::new(k, x_min).map_err(err)?;
    Ok(mv::disruption::sample_severity(&pl, u))
}

#[pyfunction]
fn classify_quadrant(
    probability: f64,
    consequence: f64,
    p_threshold: f64,
    c_threshold: f64,
) -> &'static str {
    mv::disruption::classify_quadrant(probability, consequence, p_threshold, c_threshold).as_str()
}

#[pyclass(name = "DisruptionModel", module = "multivendor", frozen)]
pub struct PyDisruptionModel {
    inner: mv::disruption::DisruptionModel,
}

#[pymethods]
impl PyDisruptionModel {
    #[new]
    #[pyo3(signature = (per_supplier_p, k, x_min, shortage_penalty, capacity_rule = "total_loss", severity_ref = None))]
    fn new(
        per_supplier_p: BTreeMap<String, f64>,
        k: f64,
        x_min: f64,
        shortage_penalty: f64,
        capacity_rule: &str,
        severity_ref: Option<f64>,
    ) -> PyResult<Self> {
        let rule = match (capacity_rule, severity_ref) {
            ("total_loss", None) => CapacityRule::TotalLoss,
            ("proportional", Some(severity_ref)) => CapacityRule::Proportional { severity_ref },
            _ => {
                return Err(PyValueError::new_err(
                    "capacity_rule is \"total_loss\", or \"proportional\" with severity_ref",
                ))
            }
        };
        let severity = PowerLaw::new(k, x_min).map_err(err)?;
        mv::disruption::DisruptionModel::new(per_supplier_p, severity, shortage_penalty, rule)
            .map(|inner| PyDisruptionModel { inner })
            .map_err(err)
    }

    /// The disruption section of a scenario file, or None without one.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Option<Self>> {
        let doc = mv::load_document(text).map_err(err)?;
        Ok(doc.disruption.map(|inner| PyDisruptionModel { inner }))
    }

    fn probability(&self, supplier: &str) -> f64 {
        self.inner.probability(supplier)
    }

    #[getter]
    fn shortage_penalty(&self) -> f64 {
        self.inner.shortage_penalty
    }
}

#[pyclass(name = "CostDistribution", module = "multivendor", frozen)]
pub struct PyCostDistribution {
    inner: CostDistribution,
}

#[pymethods]
impl PyCostDistribution {
    /// Total cost of each simulated horizon.
    #[getter]
    fn costs(&self) -> Vec<f64> {
        self.inner.costs.clone()
    }

    #[getter]
    fn periods(&self) -> u64 {
        self.inner.periods
    }

    #[getter]
    fn infeasible_periods(&self) -> u64 {
        self.inner.infeasible_periods
    }

    fn summary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        risk_dict(
            py,
            &mv::disruption::summarize_risk(&self.inner).map_err(err)?,
        )
    }

    fn __len__(&self) -> usize {
        self.inner.trials()
    }
}

fn risk_dict<'py>(py: Python<'py>, r: &RiskSummary) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("trials", r.trials)?;
    d.set_item("mean", r.mean)?;
    d.set_item("std_dev", r.std_dev)?;
    d.set_item("q50", r.q50)?;
    d.set_item("q90", r.q90)?;
    d.set_item("q99", r.q99)?;
    d.set_item("tail_mean_99", r.tail_mean_99)?;
    d.set_item("infeasible_fraction", r.infeasible_fraction)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (scenario, model, periods = 1, trials = 10_000, seed = 0))]
fn simulate(
    py: Python<'_>,
    scenario: PyRef<'_, PyScenario>,
    model: PyRef<'_, PyDisruptionModel>,
    periods: u64,
    trials: u64,
    seed: u64,
) -> PyResult<PyCostDistribution> {
    let (s, dm) = (&scenario.inner, &model.inner);
    py.detach(|| mv::disruption::simulate_horizon(s, dm, periods, trials, seed))
        .map(|inner| PyCostDistribution { inner })
        .map_err(err)
}

/// Risk statistics of a plain list of costs.
#[pyfunction]
fn summarize_risk<'py>(py: Python<'py>, costs: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let r = mv::disruption::summarize_risk(&CostDistribution::from_costs(costs)).map_err(err)?;
    risk_dict(py, &r)
}

#[pyclass(name = "Payoff", module = "multivendor", frozen)]
pub struct PyPayoff {
    inner: PayoffFunction,
}

#[pymethods]
impl PyPayoff {
    #[staticmethod]
    fn affine(a: f64, b: f64) -> PyResult<Self> {
        Self::checked(PayoffFunction::Affine { a, b })
    }

    #[staticmethod]
    fn quadratic() -> Self {
        PyPayoff {
            inner: PayoffFunction::Quadratic,
        }
    }

    #[staticmethod]
    fn hinge(strike: f64) -> PyResult<Self> {
        Self::checked(PayoffFunction::Hinge { strike })
    }

    /// Piecewise-linear through `(x, y)` points with increasing `x`.
    #[staticmethod]
    fn table(breakpoints: Vec<(f64, f64)>) -> PyResult<Self> {
        Self::checked(PayoffFunction::Table { breakpoints })
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    fn is_convex(&self) -> bool {
        self.inner.is_convex()
    }

    fn __repr__(&self) -> String {
        format!("Payoff({:?})", self.inner)
    }
}

impl PyPayoff {
    fn checked(inner: PayoffFunction) -> PyResult<Self> {
        inner.check().map_err(err)?;
        Ok(PyPayoff { inner })
    }
}

/// A base distribution spread about its mean by `scale`.
#[pyclass(name = "Distribution", module = "multivendor", frozen)]
pub struct PyDistribution {
    inner: SpreadFamily,
}

#[pymethods]
impl PyDistribution {
    #[staticmethod]
    #[pyo3(signature = (lo, hi, scale = 1.0))]
    fn uniform(lo: f64, hi: f64, scale: f64) -> PyResult<Self> {
        Self::make(BaseDistribution::Uniform { lo, hi }, scale)
    }

    /// `x1` with probability `p`, else `x2`.
    #[staticmethod]
    #[pyo3(signature = (x1, x2, p, scale = 1.0))]
    fn two_point(x1: f64, x2: f64, p: f64, scale: f64) -> PyResult<Self> {
        Self::make(BaseDistribution::TwoPoint { x1, x2, p }, scale)
    }

    #[staticmethod]
    #[pyo3(signature = (mean, sd, scale = 1.0))]
    fn normal(mean: f64, sd: f64, scale: f64) -> PyResult<Self> {
        Self::make(BaseDistribution::Normal { mean, sd }, scale)
    }

    fn with_scale(&self, scale: f64) -> PyResult<Self> {
        Self::make(self.inner.base, scale)
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.inner.scale
    }

    fn mean(&self) -> f64 {
        self.inner.mean()
    }

    fn variance(&self) -> f64 {
        self.inner.variance()
    }

    fn __repr__(&self) -> String {
        format!(
            "Distribution({:?}, scale={})",
            self.inner.base, self.inner.scale
        )
    }
}

impl PyDistribution {
    fn make(base: BaseDistribution, scale: f64) -> PyResult<Self> {
        SpreadFamily::new(base, scale)
            .map(|inner| PyDistribution { inner })
            .map_err(err)
    }
}

fn estimate_dict<'py>(py: Python<'py>, e: &Estimate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", e.value)?;
    d.set_item("mc_value", e.mc_value)?;
    d.set_item("mc_stderr", e.mc_stderr)?;
    d.set_item("analytic", e.analytic)?;
    Ok(d)
}

/// `E[f(X)] - f(E[X])`
#[pyfunction]
#[pyo3(signature = (f, d, trials = 10_000, seed = 0))]
fn jensen_gap<'py>(
    py: Python<'py>,
    f: PyRef<'_, PyPayoff>,
    d: PyRef<'_, PyDistribution>,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let e = mv::optionality::jensen_gap(&f.inner, &d.inner, trials, seed).map_err(err)?;
    estimate_dict(py, &e)
}

/// `E[f(X_s)]` for each scale, as dicts with a `sigma` key.
#[pyfunction]
#[pyo3(signature = (f, d, scales, trials = 10_000, seed = 0))]
fn spread_curve<'py>(
    py: Python<'py>,
    f: PyRef<'_, PyPayoff>,
    d: PyRef<'_, PyDistribution>,
    scales: Vec<f64>,
    trials: u64,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let curve =
        mv::optionality::spread_curve(&f.inner, &d.inner, &scales, trials, seed).map_err(err)?;
    curve
        .iter()
        .map(|p| {
            let d = estimate_dict(py, &p.expected)?;
            d.set_item("sigma", p.sigma)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (bets, trial_cost, jackpot_probability, jackpot_value, trials = 10_000, seed = 0))]
fn portfolio_simulate<'py>(
    py: Python<'py>,
    bets: u32,
    trial_cost: f64,
    jackpot_probability: f64,
    jackpot_value: f64,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let pf =
        OptionPortfolio::new(bets, trial_cost, jackpot_probability, jackpot_value).map_err(err)?;
    let out = mv::optionality::portfolio_simulate(&pf, trials, seed).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("capture_probability", out.capture_probability)?;
    d.set_item("capture_stderr", out.capture_stderr())?;
    d.set_item(
        "analytic_capture_probability",
        out.analytic_capture_probability,
    )?;
    d.set_item("mean_payoff", out.mean_payoff)?;
    d.set_item("mean_payoff_stderr", out.mean_payoff_stderr)?;
    d.set_item("analytic_expected_payoff", out.analytic_expected_payoff)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (vendors, trials = 10_000, seed = 0))]
fn vendor_option_value<'py>(
    py: Python<'py>,
    vendors: Vec<PyRef<'_, PyDistribution>>,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let models: Vec<SpreadFamily> = vendors.iter().map(|v| v.inner).collect();
    let v = mv::optionality::vendor_option_value(&models, trials, seed).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("expected_min", v.expected_min)?;
    d.set_item("expected_min_stderr", v.expected_min_stderr)?;
    d.set_item("per_vendor_expected", v.per_vendor_expected)?;
    d.set_item("savings_vs_best_single", v.savings_vs_best_single)?;
    Ok(d)
}

/// Add the module's classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", mv::VERSION)?;
    m.add("MultivendorError", m.py().get_type::<MultivendorError>())?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyShipmentPlan>()?;
    m.add_class::<PyDisruptionModel>()?;
    m.add_class::<PyCostDistribution>()?;
    m.add_class::<PyPayoff>()?;
    m.add_class::<PyDistribution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_min_cost, m)?)?;
    m.add_function(wrap_pyfunction!(audit_plan, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(marginal_value, m)?)?;
    m.add_function(wrap_pyfunction!(sample_severity, m)?)?;
    m.add_function(wrap_pyfunction!(classify_quadrant, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(summarize_risk, m)?)?;
    m.add_function(wrap_pyfunction!(jensen_gap, m)?)?;
    m.add_function(wrap_pyfunction!(spread_curve, m)?)?;
    m.add_function(wrap_pyfunction!(portfolio_simulate, m)?)?;
    m.add_function(wrap_pyfunction!(vendor_option_value, m)?)?;
    Ok(())
}

#[pymodule]
fn multivendor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
