//! Successive shortest augmenting paths with node potentials.
//!
//! All arc costs are nonnegative, so zero potentials are feasible to start
//! and every Dijkstra pass runs on nonnegative reduced costs. Each pass
//! augments along one cheapest source-sink path until the sink becomes
//! unreachable, which yields a minimum-cost maximum flow.
//!
//! Ties: Dijkstra settles nodes in `(distance, node index)` order and only
//! replaces a predecessor on strict improvement, so among equally short
//! paths the one reached first through lower-numbered nodes wins.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::network::FlowNetwork;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSolution {
    pub flow_value: i64,
    /// Flow on each arc, indexed like `FlowNetwork::arcs`.
    pub arc_flow: Vec<i64>,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Residual {
    // edge 2e is arc e forward, 2e+1 its reverse
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<f64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(net: &FlowNetwork) -> Self {
        let m = net.arcs.len();
        let mut r = Residual {
            head: Vec::with_capacity(2 * m),
            cap: Vec::with_capacity(2 * m),
            cost: Vec::with_capacity(2 * m),
            adj: vec![Vec::new(); net.node_count()],
        };
        for a in &net.arcs {
            let e = r.head.len();
            r.head.extend([a.head, a.tail]);
            r.cap.extend([a.capacity.max(0), 0]);
            r.cost.extend([a.unit_cost, -a.unit_cost]);
            r.adj[a.tail].push(e);
            r.adj[a.head].push(e + 1);
        }
        r
    }
}

/// Minimum-cost maximum flow from `net.source` to `net.sink`.
pub fn min_cost_max_flow(net: &FlowNetwork) -> FlowSolution {
    let n = net.node_count();
    let mut g = Residual::new(net);
    let mut potential = vec![0.0f64; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut flow_value = 0i64;

    loop {
        dist.fill(f64::INFINITY);
        parent.fill(usize::MAX);
        done.fill(false);
        dist[net.source] = 0.0;
        heap.push(Entry {
            dist: 0.0,
            node: net.source,
        });
        while let Some(Entry { dist: du, node: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &e in &g.adj[u] {
                if g.cap[e] <= 0 {
                    continue;
                }
                let v = g.head[e];
                if done[v] {
                    continue;
                }
                // float noise can push a reduced cost a hair below zero
                let reduced = (g.cost[e] + potential[u] - potential[v]).max(0.0);
                let dv = du + reduced;
                if dv < dist[v] {
                    dist[v] = dv;
                    parent[v] = e;
                    heap.push(Entry { dist: dv, node: v });
                }
            }
        }

        if !done[net.sink] {
            break;
        }

        let reach = dist[net.sink];
        for (p, &d) in potential.iter_mut().zip(&dist) {
            *p += d.min(reach);
        }

        let mut push = i64::MAX;
        let mut v = net.sink;
        while v != net.source {
            let e = parent[v];
            push = push.min(g.cap[e]);
            v = g.head[e ^ 1];
        }
        let mut v = net.sink;
        while v != net.source {
            let e = parent[v];
            g.cap[e] -= push;
            g.cap[e ^ 1] += push;
            v = g.head[e ^ 1];
        }
        flow_value += push;
    }

    let arc_flow = (0..net.arcs.len()).map(|a| g.cap[2 * a + 1]).collect();
    FlowSolution {
        flow_value,
        arc_flow,
    }
}
