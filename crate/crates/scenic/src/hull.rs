//! Monotone-chain convex hull with strict turns (collinear points excluded).

use crate::geometry::Point;

/// Indices of the hull vertices as a counterclockwise cycle starting from
/// the lexicographically smallest point. Collinear interior points are
/// dropped; one or two distinct points come back as-is.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        (points[a].x, points[a].y)
            .partial_cmp(&(points[b].x, points[b].y))
            .unwrap()
    });
    order.dedup_by(|&mut a, &mut b| points[a] == points[b]);

    if order.len() <= 2 {
        return order;
    }

    let cross = |o: usize, a: usize, b: usize| {
        (points[a] - points[o]).cross(points[b] - points[o])
    };

    // Lower then upper chain; strict left turns keep collinear points out.
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    for &p in &order {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in order.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop(); // closing point repeats the start
    if hull.len() < 2 {
        // All input points collinear: keep the two extremes.
        return vec![order[0], *order.last().unwrap()];
    }
    hull
}
