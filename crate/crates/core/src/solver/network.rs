use crate::model::Scenario;

/// Node of the layered procurement network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Source,
    Supplier(usize),
    /// Item `item` as offered by `supplier`.
    Offer {
        supplier: usize,
        item: usize,
    },
    Demand(usize),
    Sink,
}

/// What constraint an arc encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcRole {
    /// Aggregate supplier capacity.
    Supply { supplier: usize },
    /// Per-(item, supplier) capacity.
    ItemLimit { supplier: usize, item: usize },
    /// An available cost cell; the flow on it is the shipment.
    Ship {
        supplier: usize,
        item: usize,
        demand: usize,
    },
    /// Demand requirement.
    Demand { demand: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
    pub unit_cost: f64,
    pub role: ArcRole,
}

/// Names carried along so plans can be reported without the scenario.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Labels {
    pub suppliers: Vec<String>,
    pub items: Vec<String>,
    pub demands: Vec<String>,
}

/// Source -> supplier -> (supplier, item) -> demand -> sink.
///
/// Nodes are numbered in that layer order (suppliers, then offers in
/// supplier-major order, then demand points), and arcs are stored in the
/// same canonical order. Shortest-path tie-breaking in the solver relies on
/// this numbering.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    pub source: usize,
    pub sink: usize,
    /// Total demand; a plan is feasible iff this much flow reaches the sink.
    pub required_flow: i64,
    pub labels: Labels,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// Encode the transportation constraints as arc capacities. The scenario
/// must be valid; cells whose item differs from the demand's item are
/// ignored.
pub fn build_flow_network(s: &Scenario) -> FlowNetwork {
    debug_assert!(s.is_valid(), "{:?}", s.validate());

    let n_s = s.suppliers.len();
    let n_k = s.items.len();
    let n_d = s.demands.len();
    let total = s.total_demand();

    let supplier_node = |i: usize| 1 + i;
    let offer_node = |i: usize, k: usize| 1 + n_s + i * n_k + k;
    let demand_node = |j: usize| 1 + n_s + n_s * n_k + j;
    let sink = 1 + n_s + n_s * n_k + n_d;

    let mut nodes = Vec::with_capacity(sink + 1);
    nodes.push(Node::Source);
    nodes.extend((0..n_s).map(Node::Supplier));
    for supplier in 0..n_s {
        nodes.extend((0..n_k).map(|item| Node::Offer { supplier, item }));
    }
    nodes.extend((0..n_d).map(Node::Demand));
    nodes.push(Node::Sink);

    let mut arcs = Vec::new();
    for (i, sup) in s.suppliers.iter().enumerate() {
        arcs.push(Arc {
            tail: 0,
            head: supplier_node(i),
            capacity: sup.capacity,
            unit_cost: 0.0,
            role: ArcRole::Supply { supplier: i },
        });
    }
    for i in 0..n_s {
        for k in 0..n_k {
            arcs.push(Arc {
                tail: supplier_node(i),
                head: offer_node(i, k),
                capacity: s.item_capacity.get(k, i).unwrap_or(total),
                unit_cost: 0.0,
                role: ArcRole::ItemLimit {
                    supplier: i,
                    item: k,
                },
            });
        }
    }
    let demand_items: Vec<Option<usize>> = (0..n_d).map(|j| s.demand_item(j)).collect();
    for (i, k, j, cost) in s.costs.available() {
        if demand_items[j] != Some(k) {
            continue;
        }
        arcs.push(Arc {
            tail: offer_node(i, k),
            head: demand_node(j),
            capacity: total,
            unit_cost: cost,
            role: ArcRole::Ship {
                supplier: i,
                item: k,
                demand: j,
            },
        });
    }
    for (j, d) in s.demands.iter().enumerate() {
        arcs.push(Arc {
            tail: demand_node(j),
            head: sink,
            capacity: d.quantity,
            unit_cost: 0.0,
            role: ArcRole::Demand { demand: j },
        });
    }

    FlowNetwork {
        nodes,
        arcs,
        source: 0,
        sink,
        required_flow: total,
        labels: Labels {
            suppliers: s.suppliers.iter().map(|x| x.name.clone()).collect(),
            items: s.items.clone(),
            demands: s.demands.iter().map(|x| x.name.clone()).collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Scenario;

    #[test]
    fn single_path() {
        let s = Scenario::transportation(&[5], &[5], &[vec![2.0]]);
        let n = build_flow_network(&s);
        assert_eq!(n.arcs.len(), 4);
        assert!(n.arcs.iter().all(|a| a.capacity == 5));
        assert_eq!(n.arcs.iter().map(|a| a.unit_cost).sum::<f64>(), 2.0);
        // consecutive arcs form a path source -> sink
        for w in n.arcs.windows(2) {
            assert_eq!(w[0].head, w[1].tail);
        }
        assert_eq!(n.arcs[0].tail, n.source);
        assert_eq!(n.arcs[3].head, n.sink);
    }

    #[test]
    fn unavailable_cell_has_no_arc() {
        let mut s = Scenario::transportation(&[5, 5], &[3, 3], &[vec![1.0, 1.0], vec![1.0, 1.0]]);
        s.costs.set(1, 0, 0, None);
        let n = build_flow_network(&s);
        let ships: Vec<_> = n
            .arcs
            .iter()
            .filter_map(|a| match a.role {
                ArcRole::Ship {
                    supplier, demand, ..
                } => Some((supplier, demand)),
                _ => None,
            })
            .collect();
        assert_eq!(ships, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn zero_item_capacity_gives_zero_arc() {
        let mut s = Scenario::transportation(&[5], &[5], &[vec![1.0]]);
        s.item_capacity.set(0, 0, Some(0));
        let n = build_flow_network(&s);
        let mid = n
            .arcs
            .iter()
            .find(|a| matches!(a.role, ArcRole::ItemLimit { .. }))
            .unwrap();
        assert_eq!(mid.capacity, 0);
    }
}
