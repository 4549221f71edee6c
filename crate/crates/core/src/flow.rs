//! Integral flows with arc demands: feasibility and maximum-cost circulation.
//!
//! Demands are shifted out (every arc starts at its demand), positive-cost arcs
//! are pre-saturated so the residual graph has no negative costs, and the
//! resulting excesses are routed by successive shortest paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(i64),
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub demand: i64,
    pub capacity: Capacity,
    pub cost: i64,
}

/// Directed network whose arcs carry demand `D <= f <= C` and a unit cost.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            nodes,
            arcs: Vec::new(),
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(
        &mut self,
        tail: usize,
        head: usize,
        demand: i64,
        capacity: Capacity,
        cost: i64,
    ) -> Result<usize> {
        let arc = FlowArc {
            tail,
            head,
            demand,
            capacity,
            cost,
        };
        check_arc(self.nodes, &arc)?;
        self.arcs.push(arc);
        Ok(self.arcs.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn validate(&self) -> Result<()> {
        self.arcs.iter().try_for_each(|a| check_arc(self.nodes, a))
    }

    /// The finite stand-in for unbounded capacity: all finite capacities plus all demands.
    pub fn unbounded_value(&self) -> i64 {
        self.arcs
            .iter()
            .map(|a| {
                a.demand
                    + match a.capacity {
                        Capacity::Finite(c) => c,
                        Capacity::Unbounded => 0,
                    }
            })
            .sum()
    }
}

fn check_arc(nodes: usize, a: &FlowArc) -> Result<()> {
    if a.tail >= nodes || a.head >= nodes {
        return Err(Error::Network(format!(
            "arc {} -> {} leaves the node range",
            a.tail, a.head
        )));
    }
    if a.demand < 0 {
        return Err(Error::Network(format!("negative demand {}", a.demand)));
    }
    match a.capacity {
        Capacity::Finite(c) if c < a.demand => Err(Error::Network(format!(
            "arc {} -> {}: demand {} exceeds capacity {c}",
            a.tail, a.head, a.demand
        ))),
        Capacity::Unbounded if a.demand != 0 => Err(Error::Network(format!(
            "arc {} -> {}: unbounded arcs cannot carry a demand",
            a.tail, a.head
        ))),
        _ => Ok(()),
    }
}

/// Whether `flow` respects every demand and capacity and is conserved at every
/// node other than the optional `(source, sink)` pair.
pub fn check_flow(net: &FlowNetwork, flow: &[i64], terminals: Option<(usize, usize)>) -> bool {
    if flow.len() != net.arcs().len() {
        return false;
    }
    let mut balance = vec![0i64; net.node_count()];
    for (a, &f) in net.arcs().iter().zip(flow) {
        let within = f >= a.demand
            && match a.capacity {
                Capacity::Finite(c) => f <= c,
                Capacity::Unbounded => true,
            };
        if !within {
            return false;
        }
        balance[a.tail] -= f;
        balance[a.head] += f;
    }
    balance
        .iter()
        .enumerate()
        .all(|(v, &b)| b == 0 || terminals.is_some_and(|(s, t)| v == s || v == t))
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual {
            head: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
        e
    }

    /// Sends as much as possible from `s` to `t` along cheapest paths; returns the amount.
    fn min_cost_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            let mut queued = vec![false; n];
            let mut queue = VecDeque::from([s]);
            dist[s] = 0;
            while let Some(u) = queue.pop_front() {
                queued[u] = false;
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[v] {
                        dist[v] = dist[u] + self.cost[e];
                        via[v] = e;
                        if !queued[v] {
                            queued[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.head[e ^ 1];
            }
            total += push;
        }
    }
}

/// Maximum-cost integral circulation as `(flow per arc, cost)`, or `None` if
/// the demands cannot be met.
pub fn max_cost_circulation(net: &FlowNetwork) -> Result<Option<(Vec<i64>, i64)>> {
    net.validate()?;
    let n = net.node_count();
    let (src, dst) = (n, n + 1);
    let mut res = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    // (residual edge, saturated at start)
    let mut handles = Vec::with_capacity(net.arcs().len());
    let big = net.unbounded_value();
    for a in net.arcs() {
        let cap = match a.capacity {
            Capacity::Finite(c) => c,
            Capacity::Unbounded => big,
        };
        let room = cap - a.demand;
        // Minimizing -cost; arcs with positive cost start full.
        let saturated = a.cost > 0;
        let start = if saturated { a.demand + room } else { a.demand };
        excess[a.head] += start;
        excess[a.tail] -= start;
        let e = if saturated {
            res.add(a.head, a.tail, room, a.cost)
        } else {
            res.add(a.tail, a.head, room, -a.cost)
        };
        handles.push((e, saturated, start));
    }
    let mut need = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            res.add(src, v, x, 0);
            need += x;
        } else if x < 0 {
            res.add(v, dst, -x, 0);
        }
    }
    if res.min_cost_flow(src, dst) < need {
        return Ok(None);
    }
    let flow: Vec<i64> = handles
        .iter()
        .map(|&(e, saturated, start)| {
            let moved = res.cap[e ^ 1];
            if saturated {
                start - moved
            } else {
                start + moved
            }
        })
        .collect();
    let cost = net.arcs().iter().zip(&flow).map(|(a, f)| a.cost * f).sum();
    debug_assert!(check_flow(net, &flow, None));
    Ok(Some((flow, cost)))
}

/// An integral `source`-`sink` flow meeting every demand and capacity, or `None`.
pub fn feasible_flow(net: &FlowNetwork, source: usize, sink: usize) -> Result<Option<Vec<i64>>> {
    net.validate()?;
    if source >= net.node_count() || sink >= net.node_count() {
        return Err(Error::Network("terminal outside the node range".into()));
    }
    let mut circ = FlowNetwork::new(net.node_count());
    for a in net.arcs() {
        circ.add_arc(a.tail, a.head, a.demand, a.capacity, 0)?;
    }
    circ.add_arc(sink, source, 0, Capacity::Unbounded, 0)?;
    Ok(max_cost_circulation(&circ)?.map(|(mut f, _)| {
        f.pop();
        f
    }))
}
