//! Flow polytopes on a directed acyclic network: the conservation polytope
//! (single-commodity flows of value `d` from source to sink) and its
//! capacitated subset.
//!
//! Graph file format, one record per line, `#` starts a comment:
//!
//! ```text
//! nodes <n> source <s> sink <t> demand <d>
//! <tail> <head> <capacity>
//! ...
//! ```
//!
//! Node ids are 0-based. Edge order in the file is the coordinate order of
//! every flow vector.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracles::{LinearMinimizer, LmoQuery, OracleRng};
use crate::space::{Point, Shape};

/// Tolerance used for residual capacities and membership tests.
pub const FLOW_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DagNetwork {
    nodes: usize,
    edges: Vec<Edge>,
    source: usize,
    sink: usize,
    demand: f64,
    topo: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl DagNetwork {
    pub fn new(
        nodes: usize,
        edges: Vec<Edge>,
        source: usize,
        sink: usize,
        demand: f64,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidNetwork(msg));
        if source >= nodes || sink >= nodes {
            return bad(format!("source {source} or sink {sink} outside 0..{nodes}"));
        }
        if source == sink {
            return bad("source and sink coincide".into());
        }
        if !(demand >= 0.0) || !demand.is_finite() {
            return bad(format!("demand {demand} must be nonnegative"));
        }
        let mut seen = HashSet::new();
        let mut out_edges = vec![Vec::new(); nodes];
        let mut in_edges = vec![Vec::new(); nodes];
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= nodes || e.head >= nodes {
                return bad(format!(
                    "edge {i} ({} -> {}) references a missing node",
                    e.tail, e.head
                ));
            }
            if e.tail == e.head {
                return bad(format!("edge {i} is a self-loop"));
            }
            if !(e.capacity >= 0.0) || !e.capacity.is_finite() {
                return bad(format!("edge {i} has capacity {}", e.capacity));
            }
            if !seen.insert((e.tail, e.head)) {
                return bad(format!("duplicate edge {} -> {}", e.tail, e.head));
            }
            out_edges[e.tail].push(i);
            in_edges[e.head].push(i);
        }
        let topo = topological_order(nodes, &edges, &out_edges)
            .ok_or_else(|| Error::InvalidNetwork("graph has a cycle".into()))?;
        Ok(DagNetwork {
            nodes,
            edges,
            source,
            sink,
            demand,
            topo,
            out_edges,
            in_edges,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn demand(&self) -> f64 {
        self.demand
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn capacities(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.capacity).collect()
    }

    pub fn shape(&self) -> Shape {
        Shape::Vector(self.edges.len())
    }

    pub fn with_demand(&self, demand: f64) -> Result<Self> {
        DagNetwork::new(
            self.nodes,
            self.edges.clone(),
            self.source,
            self.sink,
            demand,
        )
    }

    /// Net supply `r_i`: `+d` at the source, `-d` at the sink, zero elsewhere.
    pub fn supply(&self, node: usize) -> f64 {
        if node == self.source {
            self.demand
        } else if node == self.sink {
            -self.demand
        } else {
            0.0
        }
    }

    /// Per-edge upper bounds `max{d, k_e}` of the auxiliary box.
    pub fn box_upper(&self) -> Vec<f64> {
        self.edges
            .iter()
            .map(|e| e.capacity.max(self.demand))
            .collect()
    }

    /// `2 sqrt(sum_e max{d, k_e}^2)`, valid for both flow polytopes.
    pub fn diameter_bound(&self) -> f64 {
        2.0 * self.box_upper().iter().map(|u| u * u).sum::<f64>().sqrt()
    }

    /// Largest `|out - in - r_i|` over nodes.
    pub fn conservation_residual(&self, x: &Point) -> Result<f64> {
        x.ensure_shape(self.shape())?;
        let f = x.as_slice();
        let mut worst = 0.0f64;
        for v in 0..self.nodes {
            let out: f64 = self.out_edges[v].iter().map(|&e| f[e]).sum();
            let inn: f64 = self.in_edges[v].iter().map(|&e| f[e]).sum();
            worst = worst.max((out - inn - self.supply(v)).abs());
        }
        Ok(worst)
    }

    /// `max_e (x_e - k_e)`; positive means some capacity is exceeded.
    pub fn capacity_residual(&self, x: &Point) -> Result<f64> {
        x.ensure_shape(self.shape())?;
        Ok(x.as_slice()
            .iter()
            .zip(&self.edges)
            .map(|(xe, e)| xe - e.capacity)
            .fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn in_path_polytope(&self, x: &Point, tol: f64) -> bool {
        x.shape() == self.shape()
            && x.as_slice().iter().all(|&v| v >= -tol)
            && self.conservation_residual(x).is_ok_and(|r| r <= tol)
    }

    pub fn in_capacitated_polytope(&self, x: &Point, tol: f64) -> bool {
        self.in_path_polytope(x, tol) && self.capacity_residual(x).is_ok_and(|r| r <= tol)
    }

    /// Flow of value `d` along the given edge path.
    pub fn path_flow(&self, path: &[usize]) -> Point {
        let mut x = vec![0.0; self.edges.len()];
        for &e in path {
            x[e] = self.demand;
        }
        Point::vector(x)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize, f64)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if toks.len() != 8
                        || toks[0] != "nodes"
                        || toks[2] != "source"
                        || toks[4] != "sink"
                        || toks[6] != "demand"
                    {
                        return Err(perr(
                            "expected `nodes <n> source <s> sink <t> demand <d>`".into(),
                        ));
                    }
                    let int = |s: &str| s.parse::<usize>().map_err(|e| perr(format!("{s:?}: {e}")));
                    let demand = toks[7]
                        .parse::<f64>()
                        .map_err(|e| perr(format!("{:?}: {e}", toks[7])))?;
                    header = Some((int(toks[1])?, int(toks[3])?, int(toks[5])?, demand));
                }
                Some(_) => {
                    if toks.len() != 3 {
                        return Err(perr("expected `<tail> <head> <capacity>`".into()));
                    }
                    let int = |s: &str| s.parse::<usize>().map_err(|e| perr(format!("{s:?}: {e}")));
                    let capacity = toks[2]
                        .parse::<f64>()
                        .map_err(|e| perr(format!("{:?}: {e}", toks[2])))?;
                    edges.push(Edge {
                        tail: int(toks[0])?,
                        head: int(toks[1])?,
                        capacity,
                    });
                }
            }
        }
        let (n, s, t, d) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing header line".into(),
        })?;
        DagNetwork::new(n, edges, s, t, d)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "nodes {} source {} sink {} demand {}",
            self.nodes, self.source, self.sink, self.demand
        );
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.tail, e.head, e.capacity);
        }
        out
    }

    /// All source-to-sink paths as edge-index lists, in DFS order.
    pub fn enumerate_paths(&self) -> Vec<Vec<usize>> {
        fn dfs(net: &DagNetwork, v: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if v == net.sink {
                out.push(stack.clone());
                return;
            }
            for &e in &net.out_edges[v] {
                stack.push(e);
                dfs(net, net.edges[e].head, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        dfs(self, self.source, &mut Vec::new(), &mut out);
        out
    }

    /// Maximum source-to-sink flow under the capacities (Edmonds-Karp).
    pub fn max_flow(&self) -> f64 {
        let mut flow = vec![0.0; self.edges.len()];
        let mut total = 0.0;
        loop {
            // BFS over residual arcs; pred stores (edge, forward?)
            let mut pred: Vec<Option<(usize, bool)>> = vec![None; self.nodes];
            let mut visited = vec![false; self.nodes];
            visited[self.source] = true;
            let mut queue = VecDeque::from([self.source]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.out_edges[u] {
                    let v = self.edges[e].head;
                    if !visited[v] && self.edges[e].capacity - flow[e] > FLOW_TOL {
                        visited[v] = true;
                        pred[v] = Some((e, true));
                        queue.push_back(v);
                    }
                }
                for &e in &self.in_edges[u] {
                    let v = self.edges[e].tail;
                    if !visited[v] && flow[e] > FLOW_TOL {
                        visited[v] = true;
                        pred[v] = Some((e, false));
                        queue.push_back(v);
                    }
                }
            }
            if !visited[self.sink] {
                return total;
            }
            let mut bottleneck = f64::INFINITY;
            let mut v = self.sink;
            while v != self.source {
                let (e, fwd) = pred[v].expect("bfs predecessor");
                if fwd {
                    bottleneck = bottleneck.min(self.edges[e].capacity - flow[e]);
                    v = self.edges[e].tail;
                } else {
                    bottleneck = bottleneck.min(flow[e]);
                    v = self.edges[e].head;
                }
            }
            let mut v = self.sink;
            while v != self.source {
                let (e, fwd) = pred[v].expect("bfs predecessor");
                if fwd {
                    flow[e] += bottleneck;
                    v = self.edges[e].tail;
                } else {
                    flow[e] -= bottleneck;
                    v = self.edges[e].head;
                }
            }
            total += bottleneck;
        }
    }

    /// Shortest distances from the source over edge weights, by one pass in
    /// topological order. Unreachable nodes get `+inf`. Ties keep the
    /// predecessor with the smallest tail node index, then edge index.
    fn dag_distances(&self, w: &[f64]) -> (Vec<f64>, Vec<Option<usize>>) {
        let mut dist = vec![f64::INFINITY; self.nodes];
        let mut pred: Vec<Option<usize>> = vec![None; self.nodes];
        dist[self.source] = 0.0;
        for &u in &self.topo {
            if !dist[u].is_finite() {
                continue;
            }
            for &e in &self.out_edges[u] {
                let v = self.edges[e].head;
                let cand = dist[u] + w[e];
                let better = match pred[v] {
                    _ if cand < dist[v] => true,
                    Some(p) if cand == dist[v] => (u, e) < (self.edges[p].tail, p),
                    _ => false,
                };
                if better {
                    dist[v] = cand;
                    pred[v] = Some(e);
                }
            }
        }
        (dist, pred)
    }
}

/// Kahn's algorithm, always releasing the smallest ready node index.
fn topological_order(nodes: usize, edges: &[Edge], out_edges: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; nodes];
    for e in edges {
        indeg[e.head] += 1;
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..nodes).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(nodes);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &e in &out_edges[u] {
            let v = edges[e].head;
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    (order.len() == nodes).then_some(order)
}

/// `d` times the indicator of a minimum-weight source-to-sink path.
pub fn dag_shortest_path_lmo(net: &DagNetwork, weights: &Point) -> Result<Point> {
    weights.ensure_shape(net.shape())?;
    let w = weights.as_slice();
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::OracleFailure("non-finite edge weight".into()));
    }
    let (dist, pred) = net.dag_distances(w);
    if !dist[net.sink].is_finite() {
        return Err(Error::NoPathExists {
            source_node: net.source,
            sink: net.sink,
        });
    }
    let mut x = vec![0.0; net.num_edges()];
    let mut v = net.sink;
    while v != net.source {
        let e = pred[v].expect("reachable node has a predecessor");
        x[e] = net.demand;
        v = net.edges[e].tail;
    }
    Ok(Point::vector(x))
}

/// Exact linear minimum over the capacitated polytope by successive shortest
/// paths with node potentials. Potentials start from the DAG distances, so
/// negative weights are handled without Bellman-Ford.
pub fn capacitated_flow_lmo(net: &DagNetwork, weights: &Point) -> Result<Point> {
    weights.ensure_shape(net.shape())?;
    let w = weights.as_slice();
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::OracleFailure("non-finite edge weight".into()));
    }
    let n = net.nodes;
    let m = net.num_edges();
    let mut flow = vec![0.0; m];
    let (init, _) = net.dag_distances(w);
    let mut potential: Vec<f64> = init
        .iter()
        .map(|&d| if d.is_finite() { d } else { 0.0 })
        .collect();
    let mut remaining = net.demand;
    let mut delivered = 0.0;

    while remaining > FLOW_TOL * net.demand.max(1.0) * 1e-3 {
        // Dense Dijkstra on reduced costs over the residual graph.
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut done = vec![false; n];
        dist[net.source] = 0.0;
        loop {
            let mut u = None;
            for v in 0..n {
                if !done[v] && dist[v].is_finite() && u.is_none_or(|b: usize| dist[v] < dist[b]) {
                    u = Some(v);
                }
            }
            let Some(u) = u else { break };
            done[u] = true;
            for &e in &net.out_edges[u] {
                let v = net.edges[e].head;
                if net.edges[e].capacity - flow[e] > FLOW_TOL * 1e-3 {
                    let rc = (w[e] + potential[u] - potential[v]).max(0.0);
                    if dist[u] + rc < dist[v] {
                        dist[v] = dist[u] + rc;
                        pred[v] = Some((e, true));
                    }
                }
            }
            for &e in &net.in_edges[u] {
                let v = net.edges[e].tail;
                if flow[e] > FLOW_TOL * 1e-3 {
                    let rc = (-w[e] + potential[u] - potential[v]).max(0.0);
                    if dist[u] + rc < dist[v] {
                        dist[v] = dist[u] + rc;
                        pred[v] = Some((e, false));
                    }
                }
            }
        }
        if !dist[net.sink].is_finite() {
            return Err(Error::Infeasible {
                max_flow: delivered,
                demand: net.demand,
            });
        }
        for v in 0..n {
            if dist[v].is_finite() {
                potential[v] += dist[v];
            }
        }
        let mut amount = remaining;
        let mut v = net.sink;
        while v != net.source {
            let (e, fwd) = pred[v].expect("dijkstra predecessor");
            if fwd {
                amount = amount.min(net.edges[e].capacity - flow[e]);
                v = net.edges[e].tail;
            } else {
                amount = amount.min(flow[e]);
                v = net.edges[e].head;
            }
        }
        let mut v = net.sink;
        while v != net.source {
            let (e, fwd) = pred[v].expect("dijkstra predecessor");
            if fwd {
                flow[e] += amount;
                v = net.edges[e].tail;
            } else {
                flow[e] -= amount;
                v = net.edges[e].head;
            }
        }
        remaining -= amount;
        delivered += amount;
    }
    for (f, e) in flow.iter_mut().zip(&net.edges) {
        *f = f.clamp(0.0, e.capacity);
    }
    Ok(Point::vector(flow))
}

/// Flows of value `d` satisfying conservation, without capacities.
#[derive(Debug, Clone)]
pub struct PathPolytope {
    net: Arc<DagNetwork>,
}

impl PathPolytope {
    pub fn new(net: Arc<DagNetwork>) -> Self {
        PathPolytope { net }
    }

    pub fn network(&self) -> &DagNetwork {
        &self.net
    }
}

impl LinearMinimizer for PathPolytope {
    fn shape(&self) -> Shape {
        self.net.shape()
    }

    fn lmo(&self, query: &LmoQuery, _rng: &mut OracleRng) -> Result<Point> {
        dag_shortest_path_lmo(&self.net, &query.direction)
    }

    fn exact_min(&self, v: &Point) -> Result<f64> {
        dag_shortest_path_lmo(&self.net, v)?.inner(v)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.net.in_path_polytope(x, tol))
    }
}

/// Conservation polytope intersected with `0 <= x_e <= k_e`.
#[derive(Debug, Clone)]
pub struct CapacitatedPolytope {
    net: Arc<DagNetwork>,
}

impl CapacitatedPolytope {
    /// Fails with `Infeasible` when the capacities cannot carry the demand.
    pub fn new(net: Arc<DagNetwork>) -> Result<Self> {
        let max_flow = net.max_flow();
        if max_flow < net.demand - FLOW_TOL {
            return Err(Error::Infeasible {
                max_flow,
                demand: net.demand,
            });
        }
        Ok(CapacitatedPolytope { net })
    }

    pub fn network(&self) -> &DagNetwork {
        &self.net
    }
}

impl LinearMinimizer for CapacitatedPolytope {
    fn shape(&self) -> Shape {
        self.net.shape()
    }

    fn lmo(&self, query: &LmoQuery, _rng: &mut OracleRng) -> Result<Point> {
        capacitated_flow_lmo(&self.net, &query.direction)
    }

    fn exact_min(&self, v: &Point) -> Result<f64> {
        capacitated_flow_lmo(&self.net, v)?.inner(v)
    }

    fn contains(&self, x: &Point, tol: f64) -> Option<bool> {
        Some(self.net.in_capacitated_polytope(x, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(tail: usize, head: usize, capacity: f64) -> Edge {
        Edge {
            tail,
            head,
            capacity,
        }
    }

    /// s=0 -> a=1 -> t=2 plus the direct edge s -> t.
    fn triangle(k: [f64; 3], d: f64) -> DagNetwork {
        DagNetwork::new(
            3,
            vec![edge(0, 1, k[0]), edge(1, 2, k[1]), edge(0, 2, k[2])],
            0,
            2,
            d,
        )
        .unwrap()
    }

    #[test]
    fn shortest_path_on_triangle() {
        let net = triangle([10.0, 10.0, 10.0], 2.0);
        let w = Point::vector(vec![1.0, 1.0, 3.0]);
        let x = dag_shortest_path_lmo(&net, &w).unwrap();
        assert_eq!(x.as_slice(), &[2.0, 2.0, 0.0]);
        assert_eq!(x.inner(&w).unwrap(), 4.0);
        // the other path scores 6
        assert_eq!(net.path_flow(&[2]).inner(&w).unwrap(), 6.0);
    }

    #[test]
    fn zero_weights_tie_break_on_smallest_predecessor() {
        let net = triangle([1.0; 3], 1.0);
        let x = dag_shortest_path_lmo(&net, &Point::zeros(net.shape())).unwrap();
        // sink predecessors: node 1 (edge 1) and node 0 (edge 2); node 0 wins.
        assert_eq!(x.as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn no_path_is_an_error() {
        let net = DagNetwork::new(3, vec![edge(0, 1, 1.0)], 0, 2, 1.0).unwrap();
        assert!(matches!(
            dag_shortest_path_lmo(&net, &Point::zeros(net.shape())),
            Err(Error::NoPathExists { .. })
        ));
    }

    #[test]
    fn capacitated_triangle() {
        let net = triangle([1.0, 1.0, 5.0], 2.0);
        let w = Point::vector(vec![1.0, 1.0, 3.0]);
        let x = capacitated_flow_lmo(&net, &w).unwrap();
        assert!(x.distance(&Point::vector(vec![1.0, 1.0, 1.0])).unwrap() < 1e-12);
        assert!((x.inner(&w).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn capacitated_zero_demand_is_zero_flow() {
        let net = triangle([1.0, 1.0, 5.0], 0.0);
        let x = capacitated_flow_lmo(&net, &Point::vector(vec![-1.0, -1.0, 3.0])).unwrap();
        assert_eq!(x.max_abs(), 0.0);
    }

    #[test]
    fn capacitated_infeasible() {
        let net = Arc::new(triangle([1.0, 1.0, 0.5], 2.0));
        assert!((net.max_flow() - 1.5).abs() < 1e-12);
        assert!(matches!(
            CapacitatedPolytope::new(net.clone()),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            capacitated_flow_lmo(&net, &Point::vector(vec![1.0, 1.0, 1.0])),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn capacitated_with_negative_weights() {
        // Negative weights push flow onto the long path up to its capacity.
        let net = triangle([1.5, 1.0, 5.0], 2.0);
        let w = Point::vector(vec![-2.0, -2.0, 1.0]);
        let x = capacitated_flow_lmo(&net, &w).unwrap();
        assert!(x.distance(&Point::vector(vec![1.0, 1.0, 1.0])).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_cycles_duplicates_and_bad_endpoints() {
        assert!(DagNetwork::new(2, vec![edge(0, 1, 1.0), edge(1, 0, 1.0)], 0, 1, 1.0).is_err());
        assert!(DagNetwork::new(2, vec![edge(0, 1, 1.0), edge(0, 1, 2.0)], 0, 1, 1.0).is_err());
        assert!(DagNetwork::new(2, vec![edge(0, 1, 1.0)], 0, 0, 1.0).is_err());
        assert!(DagNetwork::new(2, vec![edge(0, 2, 1.0)], 0, 1, 1.0).is_err());
        assert!(DagNetwork::new(2, vec![edge(0, 1, -1.0)], 0, 1, 1.0).is_err());
    }

    #[test]
    fn parse_and_write_round_trip() {
        let text = "# demo\nnodes 3 source 0 sink 2 demand 2.5\n0 1 1.5  # first\n\n1 2 1\n0 2 4\n";
        let net = DagNetwork::parse(text).unwrap();
        assert_eq!(net.num_edges(), 3);
        assert_eq!(net.demand(), 2.5);
        assert_eq!(net.edges()[0].capacity, 1.5);
        let again = DagNetwork::parse(&net.to_text()).unwrap();
        assert_eq!(again, net);
        assert_eq!(again.to_text(), net.to_text());
    }

    #[test]
    fn parse_errors_report_lines() {
        assert!(matches!(DagNetwork::parse(""), Err(Error::Parse { .. })));
        let e = DagNetwork::parse("nodes 3 source 0 sink 2 demand 1\n0 1\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                msg: "expected `<tail> <head> <capacity>`".into()
            }
        );
        assert!(DagNetwork::parse("nodes x source 0 sink 2 demand 1\n").is_err());
    }

    #[test]
    fn membership_and_residuals() {
        let net = triangle([1.0, 1.0, 5.0], 2.0);
        let x = Point::vector(vec![1.0, 1.0, 1.0]);
        assert!(net.in_capacitated_polytope(&x, 1e-12));
        let y = Point::vector(vec![2.0, 2.0, 0.0]);
        assert!(net.in_path_polytope(&y, 1e-12));
        assert!(!net.in_capacitated_polytope(&y, 1e-12));
        assert_eq!(net.capacity_residual(&y).unwrap(), 1.0);
        assert!(
            net.conservation_residual(&Point::vector(vec![1.0, 0.0, 1.0]))
                .unwrap()
                > 0.5
        );
    }

    #[test]
    fn enumerate_paths_on_triangle() {
        let net = triangle([1.0; 3], 1.0);
        assert_eq!(net.enumerate_paths(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn topological_order_is_deterministic() {
        let net = DagNetwork::new(
            4,
            vec![
                edge(2, 3, 1.0),
                edge(0, 1, 1.0),
                edge(1, 3, 1.0),
                edge(0, 2, 1.0),
            ],
            0,
            3,
            1.0,
        )
        .unwrap();
        assert_eq!(net.topological_order(), &[0, 1, 2, 3]);
    }
}
