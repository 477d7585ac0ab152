//! Route generation: seed edges, ACU (centroid-angle sweep), ACCH (convex
//! hull tour), and DPE (degree-ordered edge accretion then hull).

use std::collections::BTreeSet;
use std::fmt;

use crate::apsp::{reconstruct_path, ApspTable};
use crate::arrangement::Arrangement;
use crate::geometry::Point;
use crate::hull::convex_hull;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteAlgorithm {
    Acu,
    Acch,
    Dpe,
}

impl RouteAlgorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            RouteAlgorithm::Acu => "acu",
            RouteAlgorithm::Acch => "acch",
            RouteAlgorithm::Dpe => "dpe",
        }
    }

    pub fn parse(raw: &str) -> Option<Self> {
        match raw {
            "acu" => Some(RouteAlgorithm::Acu),
            "acch" => Some(RouteAlgorithm::Acch),
            "dpe" => Some(RouteAlgorithm::Dpe),
            _ => None,
        }
    }
}

impl fmt::Display for RouteAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Seed or accretion edge: part of the route's initial edge set.
    Seed,
    /// Connector path between consecutive seed edges (ACU).
    Connect,
    /// Hull-tour path between consecutive hull vertices (ACCH, DPE).
    Hull,
    /// Path joining a leftover disconnected route piece.
    Join,
}

#[derive(Clone, Debug)]
pub struct LogStep {
    pub kind: StepKind,
    pub edges: Vec<usize>,
}

/// A generated scenic route: a connected subgraph of the arrangement.
#[derive(Clone, Debug)]
pub struct Route {
    pub algorithm: RouteAlgorithm,
    pub edges: BTreeSet<usize>,
    pub nodes: BTreeSet<usize>,
    pub construction_log: Vec<LogStep>,
}

impl Route {
    fn finish(
        algorithm: RouteAlgorithm,
        arr: &Arrangement,
        edges: BTreeSet<usize>,
        construction_log: Vec<LogStep>,
    ) -> Route {
        let mut nodes = BTreeSet::new();
        for &e in &edges {
            nodes.insert(arr.edges[e].endpoints.0);
            nodes.insert(arr.edges[e].endpoints.1);
        }
        Route {
            algorithm,
            edges,
            nodes,
            construction_log,
        }
    }

    pub fn total_length(&self, arr: &Arrangement) -> f64 {
        self.edges.iter().map(|&e| arr.edges[e].length).sum()
    }
}

/// The shortest edge of every curve's partition (ties to the lower edge id).
/// Bridge edges belong to no curve and are never candidates.
#[derive(Clone, Debug)]
pub struct SeedEdgeSet {
    /// One edge id per curve, indexed by curve id.
    pub edges: Vec<usize>,
    /// Endpoint node ids of all seed edges.
    pub endpoints: BTreeSet<usize>,
}

pub fn seed_edges(arr: &Arrangement) -> SeedEdgeSet {
    let mut edges = Vec::with_capacity(arr.curves.len());
    let mut endpoints = BTreeSet::new();
    for c in 0..arr.curves.len() {
        let best = arr.curve_edges[c]
            .iter()
            .copied()
            .min_by(|&a, &b| {
                (arr.edges[a].length, a)
                    .partial_cmp(&(arr.edges[b].length, b))
                    .unwrap()
            })
            .expect("every curve is partitioned into at least one edge");
        edges.push(best);
        endpoints.insert(arr.edges[best].endpoints.0);
        endpoints.insert(arr.edges[best].endpoints.1);
    }
    SeedEdgeSet { edges, endpoints }
}

/// Mean position of a node id set.
fn centroid(arr: &Arrangement, nodes: &BTreeSet<usize>) -> Point {
    let mut sum = Point::new(0.0, 0.0);
    for &n in nodes {
        sum = sum + arr.nodes[n].position;
    }
    sum / nodes.len() as f64
}

fn chord_midpoint(arr: &Arrangement, edge: usize) -> Point {
    let e = &arr.edges[edge];
    (arr.nodes[e.endpoints.0].position + arr.nodes[e.endpoints.1].position) / 2.0
}

/// All Curve Umbrella: sort the seed edges by the angle of their chord
/// midpoints around the seed centroid, join consecutive edges with APSP
/// paths, and keep the cheaper of the two traversal orientations
/// (ties to anticlockwise).
pub fn acu_route(arr: &Arrangement, apsp: &ApspTable) -> Route {
    let seeds = seed_edges(arr);
    let g = centroid(arr, &seeds.endpoints);

    let mut order: Vec<usize> = seeds.edges.clone();
    order.sort_by(|&a, &b| {
        let ka = ((chord_midpoint(arr, a) - g).angle(), a);
        let kb = ((chord_midpoint(arr, b) - g).angle(), b);
        ka.partial_cmp(&kb).unwrap()
    });

    let ccw = acu_oriented(arr, apsp, &order);
    let cw_order: Vec<usize> = order.iter().rev().copied().collect();
    let cw = acu_oriented(arr, apsp, &cw_order);

    let ccw_len: f64 = ccw.0.iter().map(|&e| arr.edges[e].length).sum();
    let cw_len: f64 = cw.0.iter().map(|&e| arr.edges[e].length).sum();
    let (edges, log) = if cw_len < ccw_len { cw } else { ccw };
    Route::finish(RouteAlgorithm::Acu, arr, edges, log)
}

/// Join the seed edges of `order` in sequence, returning the edge set and log.
fn acu_oriented(
    arr: &Arrangement,
    apsp: &ApspTable,
    order: &[usize],
) -> (BTreeSet<usize>, Vec<LogStep>) {
    let mut edges: BTreeSet<usize> = order.iter().copied().collect();
    let mut log = vec![LogStep {
        kind: StepKind::Seed,
        edges: order.to_vec(),
    }];

    let k = order.len();
    if k < 2 {
        return (edges, log);
    }

    let ends = |e: usize| arr.edges[e].endpoints;
    let add_path = |edges: &mut BTreeSet<usize>, log: &mut Vec<LogStep>, a: usize, b: usize| {
        let path = reconstruct_path(apsp, a, b);
        let added: Vec<usize> = path.iter().copied().filter(|e| edges.insert(*e)).collect();
        log.push(LogStep {
            kind: StepKind::Connect,
            edges: added,
        });
    };

    // First edge: all four endpoint combinations against the next edge.
    let (e0a, e0b) = ends(order[0]);
    let (e1a, e1b) = ends(order[1]);
    let mut best = (f64::INFINITY, e0a, e1a);
    for from in [e0a, e0b] {
        for to in [e1a, e1b] {
            let d = apsp.dist(from, to);
            if d < best.0 {
                best = (d, from, to);
            }
        }
    }
    add_path(&mut edges, &mut log, best.1, best.2);
    let first_free = if best.1 == e0a { e0b } else { e0a };
    let mut connected = best.2; // endpoint of order[1] now tied in

    // Middle edges: free endpoint to the closer endpoint of the next edge.
    for i in 1..k {
        let (ca, cb) = ends(order[i]);
        let free = if connected == ca { cb } else { ca };
        if i + 1 < k {
            let (na, nb) = ends(order[i + 1]);
            let to = if apsp.dist(free, na) <= apsp.dist(free, nb) {
                na
            } else {
                nb
            };
            add_path(&mut edges, &mut log, free, to);
            connected = to;
        } else {
            // Last edge closes the loop back to the first edge's free end.
            add_path(&mut edges, &mut log, free, first_free);
        }
    }

    (edges, log)
}

/// Union-find over node ids for the incremental "already connected" check.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All Curve Convex Hull: tour the hull of the seed endpoints, adding each
/// APSP edge only if its endpoints are not already connected in the route
/// built so far, then join any leftover pieces.
pub fn acch_route(arr: &Arrangement, apsp: &ApspTable) -> Route {
    let seeds = seed_edges(arr);
    let mut edges: BTreeSet<usize> = seeds.edges.iter().copied().collect();
    let mut log = vec![LogStep {
        kind: StepKind::Seed,
        edges: seeds.edges.clone(),
    }];

    let mut dsu = Dsu::new(arr.nodes.len());
    for &e in &edges {
        let (a, b) = arr.edges[e].endpoints;
        dsu.union(a, b);
    }

    let hull_nodes = hull_cycle(arr, &seeds.endpoints);
    let h = hull_nodes.len();
    if h >= 2 {
        for i in 0..h {
            let (a, b) = (hull_nodes[i], hull_nodes[(i + 1) % h]);
            let mut added = Vec::new();
            for e in reconstruct_path(apsp, a, b) {
                let (u, v) = arr.edges[e].endpoints;
                if dsu.find(u) != dsu.find(v) {
                    if edges.insert(e) {
                        added.push(e);
                    }
                    dsu.union(u, v);
                }
            }
            log.push(LogStep {
                kind: StepKind::Hull,
                edges: added,
            });
        }
    }

    join_remaining(arr, apsp, &mut edges, &mut log);
    Route::finish(RouteAlgorithm::Acch, arr, edges, log)
}

/// Dense Point Expansion: visit nodes by descending degree (ties: ascending
/// incident-length sum, then id), accreting any incident edge whose curve is
/// still uncovered; then tour the hull of the accumulated nodes and join
/// leftover pieces.
pub fn dpe_route(arr: &Arrangement, apsp: &ApspTable) -> Route {
    let node_edges = arr.node_edges();
    let mut order: Vec<usize> = (0..arr.nodes.len()).collect();
    let degree: Vec<usize> = (0..arr.nodes.len()).map(|n| arr.node_degree(n)).collect();
    let length_sum: Vec<f64> = (0..arr.nodes.len())
        .map(|n| {
            node_edges[n]
                .iter()
                .map(|&e| {
                    let edge = &arr.edges[e];
                    // Loops terminate twice at their node.
                    if edge.is_loop() {
                        edge.length * 2.0
                    } else {
                        edge.length
                    }
                })
                .sum()
        })
        .collect();
    order.sort_by(|&a, &b| {
        (std::cmp::Reverse(degree[a]), length_sum[a], a)
            .partial_cmp(&(std::cmp::Reverse(degree[b]), length_sum[b], b))
            .unwrap()
    });

    let mut covered = vec![false; arr.curves.len()];
    let mut edges = BTreeSet::new();
    let mut nodes = BTreeSet::new();
    let mut log = Vec::new();

    for &n in &order {
        if covered.iter().all(|&c| c) {
            break;
        }
        let mut incident = node_edges[n].clone();
        incident.sort_by(|&a, &b| {
            (arr.edges[a].length, a)
                .partial_cmp(&(arr.edges[b].length, b))
                .unwrap()
        });
        let mut added = Vec::new();
        for e in incident {
            let Some(curve) = arr.edges[e].kind.curve() else {
                continue; // bridges cover no curve
            };
            if covered[curve] {
                continue;
            }
            covered[curve] = true;
            edges.insert(e);
            nodes.insert(n);
            nodes.insert(arr.edges[e].other_endpoint(n));
            added.push(e);
        }
        if !added.is_empty() {
            log.push(LogStep {
                kind: StepKind::Seed,
                edges: added,
            });
        }
    }

    let hull_nodes = hull_cycle(arr, &nodes);
    let h = hull_nodes.len();
    if h >= 2 {
        for i in 0..h {
            let (a, b) = (hull_nodes[i], hull_nodes[(i + 1) % h]);
            let added: Vec<usize> = reconstruct_path(apsp, a, b)
                .into_iter()
                .filter(|&e| edges.insert(e))
                .collect();
            log.push(LogStep {
                kind: StepKind::Hull,
                edges: added,
            });
        }
    }

    join_remaining(arr, apsp, &mut edges, &mut log);
    Route::finish(RouteAlgorithm::Dpe, arr, edges, log)
}

/// Hull of a node id set, as the node cycle.
fn hull_cycle(arr: &Arrangement, nodes: &BTreeSet<usize>) -> Vec<usize> {
    let ids: Vec<usize> = nodes.iter().copied().collect();
    let positions: Vec<Point> = ids.iter().map(|&n| arr.nodes[n].position).collect();
    convex_hull(&positions).into_iter().map(|i| ids[i]).collect()
}

/// While the route subgraph is disconnected, join the pair of pieces with
/// the minimum APSP distance over cross-piece node pairs.
fn join_remaining(
    arr: &Arrangement,
    apsp: &ApspTable,
    edges: &mut BTreeSet<usize>,
    log: &mut Vec<LogStep>,
) {
    loop {
        let comps = route_components(arr, edges);
        if comps.len() <= 1 {
            return;
        }
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, ca) in comps.iter().enumerate() {
            for cb in &comps[i + 1..] {
                for &u in ca {
                    for &v in cb {
                        let d = apsp.dist(u, v);
                        if best.is_none_or(|(bd, ..)| d < bd) {
                            best = Some((d, u, v));
                        }
                    }
                }
            }
        }
        let (_, u, v) = best.expect("multiple components have node pairs");
        let added: Vec<usize> = reconstruct_path(apsp, u, v)
            .into_iter()
            .filter(|&e| edges.insert(e))
            .collect();
        log.push(LogStep {
            kind: StepKind::Join,
            edges: added,
        });
    }
}

/// Connected components of the route subgraph, ordered by smallest node.
pub fn route_components(arr: &Arrangement, edges: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut dsu = Dsu::new(arr.nodes.len());
    let mut members = BTreeSet::new();
    for &e in edges {
        let (a, b) = arr.edges[e].endpoints;
        dsu.union(a, b);
        members.insert(a);
        members.insert(b);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &n in &members {
        groups.entry(dsu.find(n)).or_default().push(n);
    }
    groups.into_values().collect()
}
