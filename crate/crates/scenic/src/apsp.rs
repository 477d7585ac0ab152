//! All-pairs shortest paths over the bridged arrangement.
//!
//! The arrangement is a multigraph (two arcs can share both endpoints);
//! distances are computed on the min-edge simple projection while
//! `edge_choice` remembers which concrete edge realizes each adjacency.

use crate::arrangement::Arrangement;
use crate::error::ScenicError;

#[derive(Clone, Debug)]
pub struct ApspTable {
    n: usize,
    dist: Vec<f64>,
    next_hop: Vec<usize>,
    edge_choice: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl ApspTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.n + b]
    }

    /// Concrete edge chosen for the adjacency step `a -> b`, if adjacent.
    pub fn step_edge(&self, a: usize, b: usize) -> Option<usize> {
        match self.edge_choice[a * self.n + b] {
            NONE => None,
            e => Some(e),
        }
    }
}

/// Floyd-Warshall over all nodes. Parallel edges collapse to the shorter
/// one (ties to the lower edge id); updates use strict improvement so the
/// result is deterministic. Errors if the graph is disconnected.
pub fn compute_apsp(arr: &Arrangement) -> Result<ApspTable, ScenicError> {
    let n = arr.nodes.len();
    let mut dist = vec![f64::INFINITY; n * n];
    let mut next_hop = vec![NONE; n * n];
    let mut edge_choice = vec![NONE; n * n];

    for i in 0..n {
        dist[i * n + i] = 0.0;
        next_hop[i * n + i] = i;
    }
    for e in &arr.edges {
        let (a, b) = e.endpoints;
        if a == b {
            continue; // loop edges never shorten a path
        }
        for (u, v) in [(a, b), (b, a)] {
            let idx = u * n + v;
            if e.length < dist[idx] {
                dist[idx] = e.length;
                next_hop[idx] = v;
                edge_choice[idx] = e.id;
            }
        }
    }

    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + dist[k * n + j];
                if cand < dist[i * n + j] {
                    dist[i * n + j] = cand;
                    next_hop[i * n + j] = next_hop[i * n + k];
                }
            }
        }
    }

    if dist.iter().any(|d| !d.is_finite()) {
        return Err(ScenicError::Disconnected);
    }

    Ok(ApspTable {
        n,
        dist,
        next_hop,
        edge_choice,
    })
}

/// Concrete edge sequence of the shortest path from `a` to `b`; empty when
/// `a == b`.
pub fn reconstruct_path(table: &ApspTable, a: usize, b: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut cur = a;
    while cur != b {
        let next = table.next_hop[cur * table.n + b];
        debug_assert_ne!(next, NONE);
        path.push(
            table
                .step_edge(cur, next)
                .expect("next hop is always adjacent"),
        );
        cur = next;
    }
    path
}
