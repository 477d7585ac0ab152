//! Shared helpers and independent oracles for the integration suites. The
//! oracles deliberately avoid the library's own shortest-path and peeling
//! code paths.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use scenic::arrangement::Arrangement;
use scenic::geometry::{PointClass, WeightedPoint};

pub fn random_instance(rng: &mut ChaCha8Rng, n_red: usize, n_blue: usize) -> Vec<WeightedPoint> {
    (0..(n_red + n_blue))
        .map(|i| {
            WeightedPoint::new(
                i as u32,
                if i < n_red {
                    PointClass::Red
                } else {
                    PointClass::Blue
                },
                rng.gen_range(-30.0..30.0),
                rng.gen_range(-30.0..30.0),
                rng.gen_range(1.0..50.0),
            )
        })
        .collect()
}

/// Single-source relaxation oracle (Bellman-Ford over the multigraph).
pub fn bellman_ford(arr: &Arrangement, src: usize) -> Vec<f64> {
    let n = arr.nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[src] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for e in &arr.edges {
            let (a, b) = e.endpoints;
            if dist[a] + e.length < dist[b] {
                dist[b] = dist[a] + e.length;
                changed = true;
            }
            if dist[b] + e.length < dist[a] {
                dist[a] = dist[b] + e.length;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Exhaustive simple-path enumeration from `src` (branch-and-bound; exact
/// because edge lengths are positive).
pub fn exhaustive_shortest(arr: &Arrangement, src: usize) -> Vec<f64> {
    let n = arr.nodes.len();
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in &arr.edges {
        let (a, b) = e.endpoints;
        if a == b {
            continue;
        }
        adjacency[a].push((b, e.length));
        adjacency[b].push((a, e.length));
    }
    let mut best = vec![f64::INFINITY; n];
    best[src] = 0.0;
    let mut visited = vec![false; n];
    visited[src] = true;
    fn dfs(
        node: usize,
        len: f64,
        adjacency: &[Vec<(usize, f64)>],
        visited: &mut [bool],
        best: &mut [f64],
    ) {
        for &(next, w) in &adjacency[node] {
            if visited[next] {
                continue;
            }
            let cand = len + w;
            if cand >= best[next] {
                // A longer prefix cannot produce a shorter simple path on
                // positive weights.
                if cand > best[next] {
                    continue;
                }
            }
            if cand < best[next] {
                best[next] = cand;
            }
            visited[next] = true;
            dfs(next, cand, adjacency, visited, best);
            visited[next] = false;
        }
    }
    dfs(src, 0.0, &adjacency, &mut visited, &mut best);
    best
}

/// Brute-force minimal covering closed walk on a small connected multigraph:
/// pick a multiplicity in {1,2} per edge, require all even degrees, minimize
/// total length (then doubled count), and report how many edges are doubled.
pub fn covering_walk_doubles(edges: &[(usize, usize, usize, f64)]) -> usize {
    assert!(edges.len() <= 20, "oracle is exponential in the edge count");
    let k = edges.len();
    let mut best: Option<(f64, usize)> = None;
    for mask in 0..(1u32 << k) {
        let mut deg = std::collections::BTreeMap::new();
        let mut total = 0.0;
        let mut doubles = 0;
        for (i, &(_, a, b, len)) in edges.iter().enumerate() {
            let mult = 1 + ((mask >> i) & 1) as usize;
            *deg.entry(a).or_insert(0usize) += mult;
            *deg.entry(b).or_insert(0usize) += mult;
            total += len * mult as f64;
            doubles += mult - 1;
        }
        if deg.values().any(|d| d % 2 != 0) {
            continue;
        }
        let better = match best {
            None => true,
            Some((bt, bd)) => {
                total < bt - 1e-12 || ((total - bt).abs() <= 1e-12 && doubles < bd)
            }
        };
        if better {
            best = Some((total, doubles));
        }
    }
    best.expect("doubling every edge always yields even degrees").1
}
