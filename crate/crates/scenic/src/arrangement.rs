//! Arrangement graph over all scenic curves: intersection nodes, arc/segment
//! edges weighted by length, connected components, and the greedy bridging
//! pass that joins disconnected components with shortest straight segments.

use std::collections::{BTreeSet, HashMap};

use crate::error::ScenicError;
use crate::geometry::{
    intersect, norm_angle, scenic_curve, CurveKind, Point, PointClass, ScenicCurve, WeightedPoint,
    TAU,
};

/// Scale factor for the geometric tolerance: `eps = 1e-9 * bbox diagonal`
/// of the input point set. Used for on-curve tests and intersection dedup.
pub const GEOM_REL_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Curve/curve intersection point.
    Intersection,
    /// Synthetic anchor carrying the loop edge of an intersection-free circle.
    LoopAnchor,
    /// Endpoint where a bisector line meets the clip window (degree 1).
    ClipEnd,
    /// Attachment point of a bridge segment on a scenic edge.
    BridgeFoot,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub id: usize,
    pub position: Point,
    pub incident_curves: BTreeSet<usize>,
    pub kind: NodeKind,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeKind {
    /// Counterclockwise circular arc; `sweep > 0`.
    Arc {
        curve: usize,
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    /// Straight piece of a clipped bisector line.
    Segment { curve: usize },
    /// Full circle of an intersection-free curve, anchored at a synthetic node.
    Loop { curve: usize },
    /// Straight connector added by bridging; lies on no curve.
    Bridge,
}

impl EdgeKind {
    pub fn curve(&self) -> Option<usize> {
        match *self {
            EdgeKind::Arc { curve, .. }
            | EdgeKind::Segment { curve }
            | EdgeKind::Loop { curve } => Some(curve),
            EdgeKind::Bridge => None,
        }
    }

    pub fn is_bridge(&self) -> bool {
        matches!(self, EdgeKind::Bridge)
    }
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: usize,
    pub endpoints: (usize, usize),
    pub kind: EdgeKind,
    pub length: f64,
}

impl Edge {
    pub fn other_endpoint(&self, node: usize) -> usize {
        if self.endpoints.0 == node {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

/// Square clip window bounding the bisector lines.
#[derive(Clone, Copy, Debug)]
pub struct ClipWindow {
    pub center: Point,
    pub half: f64,
}

impl ClipWindow {
    pub fn contains(&self, p: Point, eps: f64) -> bool {
        (p.x - self.center.x).abs() <= self.half + eps
            && (p.y - self.center.y).abs() <= self.half + eps
    }

    /// Parameter span of `point + t*dir` inside the window (slab clipping).
    fn clip_line(&self, point: Point, dir: Point) -> Option<(f64, f64)> {
        let mut tmin = f64::NEG_INFINITY;
        let mut tmax = f64::INFINITY;
        for (p, d, c) in [
            (point.x, dir.x, self.center.x),
            (point.y, dir.y, self.center.y),
        ] {
            if d.abs() < 1e-15 {
                if (p - c).abs() > self.half {
                    return None;
                }
            } else {
                let t1 = (c - self.half - p) / d;
                let t2 = (c + self.half - p) / d;
                tmin = tmin.max(t1.min(t2));
                tmax = tmax.min(t1.max(t2));
            }
        }
        if tmin < tmax {
            Some((tmin, tmax))
        } else {
            None
        }
    }
}

/// The graph built over all scenic curves of a point set.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub points: Vec<WeightedPoint>,
    pub curves: Vec<ScenicCurve>,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// Edge ids partitioning each curve, indexed by curve id.
    pub curve_edges: Vec<Vec<usize>>,
    /// Node partition into connected components (one entry after bridging).
    pub components: Vec<Vec<usize>>,
    /// Ids of bridge edges, in insertion order.
    pub bridges: Vec<usize>,
    pub eps: f64,
    pub clip: ClipWindow,
}

impl Arrangement {
    pub fn red_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.class == PointClass::Red)
            .count()
    }

    pub fn blue_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.class == PointClass::Blue)
            .count()
    }

    /// Nodes arising from curve/curve intersections (the graph-theoretic
    /// node set the `nm(nm-1)` bound applies to).
    pub fn intersection_node_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Intersection)
            .count()
    }

    pub fn total_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Incident edge ids per node; loop edges appear once in their node's
    /// list but count twice toward degree.
    pub fn node_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            out[e.endpoints.0].push(e.id);
            if e.endpoints.1 != e.endpoints.0 {
                out[e.endpoints.1].push(e.id);
            }
        }
        out
    }

    /// Multigraph degree (loops contribute 2).
    pub fn node_degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .map(|e| {
                (e.endpoints.0 == node) as usize + (e.endpoints.1 == node) as usize
            })
            .sum()
    }
}

/// Build the arrangement of all |R|*|B| scenic curves of a point set.
pub fn build_arrangement(points: &[WeightedPoint]) -> Result<Arrangement, ScenicError> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p.id) {
            return Err(ScenicError::DuplicateId { id: p.id });
        }
        if p.weight <= 0.0 || !p.weight.is_finite() {
            return Err(ScenicError::NonPositiveWeight { id: p.id });
        }
    }
    let reds: Vec<&WeightedPoint> = points.iter().filter(|p| p.class == PointClass::Red).collect();
    let blues: Vec<&WeightedPoint> = points.iter().filter(|p| p.class == PointClass::Blue).collect();
    if reds.is_empty() {
        return Err(ScenicError::EmptyClass { missing: "red" });
    }
    if blues.is_empty() {
        return Err(ScenicError::EmptyClass { missing: "blue" });
    }

    // One curve per red-blue pair, red-major order.
    let mut curves = Vec::with_capacity(reds.len() * blues.len());
    for r in &reds {
        for b in &blues {
            let mut c = scenic_curve(r, b)?;
            c.id = curves.len();
            curves.push(c);
        }
    }

    let eps = GEOM_REL_EPS * bbox_diagonal(points);
    let clip = clip_window(points, &curves);

    let mut builder = Builder {
        nodes: Vec::new(),
        curve_nodes: vec![Vec::new(); curves.len()],
        eps,
    };

    // Pairwise intersections become (deduplicated) nodes. Intersections
    // involving a line only count inside the clip window.
    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            for p in intersect(&curves[i], &curves[j], eps) {
                if !clip.contains(p, eps) {
                    continue;
                }
                builder.upsert(p, NodeKind::Intersection, &[i, j]);
            }
        }
    }

    // Partition each curve at its nodes.
    let mut edges: Vec<Edge> = Vec::new();
    let mut curve_edges = vec![Vec::new(); curves.len()];
    for c in &curves {
        match c.kind {
            CurveKind::Circle { center, radius } => {
                let mut ns = builder.curve_nodes[c.id].clone();
                if ns.is_empty() {
                    let anchor =
                        builder.upsert(c.kind.point_at(0.0), NodeKind::LoopAnchor, &[c.id]);
                    push_edge(
                        &mut edges,
                        &mut curve_edges,
                        (anchor, anchor),
                        EdgeKind::Loop { curve: c.id },
                        TAU * radius,
                    );
                    continue;
                }
                let angle_of =
                    |n: usize| norm_angle((builder.nodes[n].position - center).angle());
                ns.sort_by(|&a, &b| {
                    (angle_of(a), a).partial_cmp(&(angle_of(b), b)).unwrap()
                });
                let k = ns.len();
                for idx in 0..k {
                    let a = ns[idx];
                    let b = ns[(idx + 1) % k];
                    let start = angle_of(a);
                    let sweep = if k == 1 {
                        TAU
                    } else {
                        let s = norm_angle(angle_of(b) - start);
                        if s == 0.0 {
                            TAU
                        } else {
                            s
                        }
                    };
                    push_edge(
                        &mut edges,
                        &mut curve_edges,
                        (a, b),
                        EdgeKind::Arc {
                            curve: c.id,
                            center,
                            radius,
                            start_angle: start,
                            sweep,
                        },
                        radius * sweep,
                    );
                }
            }
            CurveKind::Line { point, dir } => {
                // Lines always cross the window: they pass through the
                // midpoint of their defining pair.
                let (t0, t1) = clip
                    .clip_line(point, dir)
                    .expect("bisector line must cross the clip window");
                let e0 = builder.upsert(point + dir * t0, NodeKind::ClipEnd, &[c.id]);
                let e1 = builder.upsert(point + dir * t1, NodeKind::ClipEnd, &[c.id]);
                let mut ns = builder.curve_nodes[c.id].clone();
                let param =
                    |n: usize| (builder.nodes[n].position - point).dot(dir);
                ns.sort_by(|&a, &b| (param(a), a).partial_cmp(&(param(b), b)).unwrap());
                ns.dedup();
                debug_assert!(ns.contains(&e0) && ns.contains(&e1));
                for w in ns.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    if a == b {
                        continue;
                    }
                    let len = builder.nodes[a].position.dist(builder.nodes[b].position);
                    push_edge(
                        &mut edges,
                        &mut curve_edges,
                        (a, b),
                        EdgeKind::Segment { curve: c.id },
                        len,
                    );
                }
            }
        }
    }

    let components = node_components(builder.nodes.len(), &edges);
    Ok(Arrangement {
        points: points.to_vec(),
        curves,
        nodes: builder.nodes,
        edges,
        curve_edges,
        components,
        bridges: Vec::new(),
        eps,
        clip,
    })
}

fn push_edge(
    edges: &mut Vec<Edge>,
    curve_edges: &mut [Vec<usize>],
    endpoints: (usize, usize),
    kind: EdgeKind,
    length: f64,
) {
    let id = edges.len();
    if let Some(c) = kind.curve() {
        curve_edges[c].push(id);
    }
    edges.push(Edge {
        id,
        endpoints,
        kind,
        length,
    });
}

struct Builder {
    nodes: Vec<Node>,
    curve_nodes: Vec<Vec<usize>>,
    eps: f64,
}

impl Builder {
    /// Merge `pos` into an existing node within `eps`, or create a new one.
    fn upsert(&mut self, pos: Point, kind: NodeKind, curves: &[usize]) -> usize {
        let id = match self
            .nodes
            .iter()
            .find(|n| n.position.dist(pos) <= self.eps)
        {
            Some(n) => n.id,
            None => {
                let id = self.nodes.len();
                self.nodes.push(Node {
                    id,
                    position: pos,
                    incident_curves: BTreeSet::new(),
                    kind,
                });
                id
            }
        };
        for &c in curves {
            if self.nodes[id].incident_curves.insert(c) {
                self.curve_nodes[c].push(id);
            }
        }
        id
    }
}

fn bbox_diagonal(points: &[WeightedPoint]) -> f64 {
    let (mut lo, mut hi) = (points[0].pos, points[0].pos);
    for p in points {
        lo = Point::new(lo.x.min(p.pos.x), lo.y.min(p.pos.y));
        hi = Point::new(hi.x.max(p.pos.x), hi.y.max(p.pos.y));
    }
    let d = lo.dist(hi);
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

/// Square window over landmarks and circle extents, half-extent doubled.
fn clip_window(points: &[WeightedPoint], curves: &[ScenicCurve]) -> ClipWindow {
    let (mut lo, mut hi) = (points[0].pos, points[0].pos);
    let mut grow = |p: Point| {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    for p in points {
        grow(p.pos);
    }
    for c in curves {
        if let CurveKind::Circle { center, radius } = c.kind {
            grow(center + Point::new(radius, radius));
            grow(center - Point::new(radius, radius));
        }
    }
    let center = (lo + hi) / 2.0;
    let half = ((hi.x - lo.x) / 2.0).max((hi.y - lo.y) / 2.0).max(0.5);
    ClipWindow {
        center,
        half: half * 2.0,
    }
}

/// Connected components of the node set under the edge list, each sorted
/// ascending and ordered by smallest member.
pub fn connected_components(arr: &Arrangement) -> Vec<Vec<usize>> {
    node_components(arr.nodes.len(), &arr.edges)
}

fn node_components(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (
            find(&mut parent, e.endpoints.0),
            find(&mut parent, e.endpoints.1),
        );
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.iter_mut().for_each(|g| g.sort_unstable());
    out.sort_by_key(|g| g[0]);
    out
}

// ---------------------------------------------------------------------------
// Bridging (greedy shortest straight segments between components)
// ---------------------------------------------------------------------------

/// Geometry of a single scenic edge for distance queries.
#[derive(Clone, Copy, Debug)]
enum Prim {
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        sweep: f64,
    },
    Seg {
        a: Point,
        b: Point,
    },
}

fn edge_prim(arr: &Arrangement, e: &Edge) -> Prim {
    match e.kind {
        EdgeKind::Arc {
            center,
            radius,
            start_angle,
            sweep,
            ..
        } => Prim::Arc {
            center,
            radius,
            start: start_angle,
            sweep,
        },
        EdgeKind::Loop { curve } => match arr.curves[curve].kind {
            CurveKind::Circle { center, radius } => {
                let anchor = arr.nodes[e.endpoints.0].position;
                Prim::Arc {
                    center,
                    radius,
                    start: norm_angle((anchor - center).angle()),
                    sweep: TAU,
                }
            }
            CurveKind::Line { .. } => unreachable!("loop edges only exist on circles"),
        },
        EdgeKind::Segment { .. } | EdgeKind::Bridge => Prim::Seg {
            a: arr.nodes[e.endpoints.0].position,
            b: arr.nodes[e.endpoints.1].position,
        },
    }
}

fn angle_in_arc(theta: f64, start: f64, sweep: f64, ang_eps: f64) -> bool {
    if sweep >= TAU - 1e-12 {
        return true;
    }
    let rel = norm_angle(theta - start);
    rel <= sweep + ang_eps || rel >= TAU - ang_eps
}

fn arc_endpoints(center: Point, radius: f64, start: f64, sweep: f64) -> (Point, Point) {
    (
        center + Point::new(start.cos(), start.sin()) * radius,
        center + Point::new((start + sweep).cos(), (start + sweep).sin()) * radius,
    )
}

/// Closest point of a primitive to `p`.
fn closest_on_prim(prim: &Prim, p: Point) -> Point {
    match *prim {
        Prim::Seg { a, b } => closest_on_segment(a, b, p),
        Prim::Arc {
            center,
            radius,
            start,
            sweep,
        } => {
            let v = p - center;
            let n = v.norm();
            if n > 1e-300 && angle_in_arc(v.angle(), start, sweep, 0.0) {
                return center + v * (radius / n);
            }
            let (ea, eb) = arc_endpoints(center, radius, start, sweep);
            if p.dist(ea) <= p.dist(eb) {
                ea
            } else {
                eb
            }
        }
    }
}

fn closest_on_segment(a: Point, b: Point, p: Point) -> Point {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 <= 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    a + ab * t
}

/// Minimum distance between two edge primitives, with the realizing points.
///
/// Exact: interior-interior optima lie on the center line of two circles,
/// at a circle/segment perpendicular foot, or at an intersection point;
/// every other optimum involves an endpoint of one primitive. All of these
/// appear in the candidate set.
fn prim_distance(a: &Prim, b: &Prim) -> (f64, Point, Point) {
    let mut best: Option<(f64, Point, Point)> = None;
    let mut consider = |pa: Point, pb: Point| {
        let d = pa.dist(pb);
        if best.is_none_or(|(bd, _, _)| d < bd) {
            best = Some((d, pa, pb));
        }
    };

    // Endpoint candidates both ways.
    for (from, to, flip) in [(a, b, false), (b, a, true)] {
        let ends = match *from {
            Prim::Seg { a, b } => (a, b),
            Prim::Arc {
                center,
                radius,
                start,
                sweep,
            } => arc_endpoints(center, radius, start, sweep),
        };
        for p in [ends.0, ends.1] {
            let q = closest_on_prim(to, p);
            if flip {
                consider(q, p);
            } else {
                consider(p, q);
            }
        }
    }

    match (*a, *b) {
        (Prim::Seg { a: a1, b: b1 }, Prim::Seg { a: a2, b: b2 }) => {
            if let Some(p) = segments_intersection(a1, b1, a2, b2) {
                consider(p, p);
            }
        }
        (
            Prim::Arc {
                center: c1,
                radius: r1,
                start: s1,
                sweep: w1,
            },
            Prim::Arc {
                center: c2,
                radius: r2,
                start: s2,
                sweep: w2,
            },
        ) => {
            let d = c1.dist(c2);
            if d > 1e-12 {
                let u = (c2 - c1) / d;
                for sa in [1.0, -1.0] {
                    let pa = c1 + u * (r1 * sa);
                    if !angle_in_arc((pa - c1).angle(), s1, w1, 0.0) {
                        continue;
                    }
                    for sb in [1.0, -1.0] {
                        let pb = c2 + u * (r2 * sb);
                        if angle_in_arc((pb - c2).angle(), s2, w2, 0.0) {
                            consider(pa, pb);
                        }
                    }
                }
                // Crossing circles meet at explicit points.
                for p in circle_pair_points(c1, r1, c2, r2) {
                    if angle_in_arc((p - c1).angle(), s1, w1, 0.0)
                        && angle_in_arc((p - c2).angle(), s2, w2, 0.0)
                    {
                        consider(p, p);
                    }
                }
            }
        }
        (
            Prim::Arc {
                center,
                radius,
                start,
                sweep,
            },
            Prim::Seg { a: sa, b: sb },
        ) => {
            for (pa, pb) in arc_segment_candidates(center, radius, start, sweep, sa, sb) {
                consider(pa, pb);
            }
        }
        (
            Prim::Seg { a: sa, b: sb },
            Prim::Arc {
                center,
                radius,
                start,
                sweep,
            },
        ) => {
            for (pa, pb) in arc_segment_candidates(center, radius, start, sweep, sa, sb) {
                consider(pb, pa);
            }
        }
    }

    best.expect("candidate set is never empty")
}

fn arc_segment_candidates(
    center: Point,
    radius: f64,
    start: f64,
    sweep: f64,
    sa: Point,
    sb: Point,
) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    // Perpendicular foot from the circle center onto the segment.
    let q = closest_on_segment(sa, sb, center);
    let v = q - center;
    if v.norm() > 1e-12 {
        let theta = v.angle();
        if angle_in_arc(theta, start, sweep, 0.0) {
            out.push((center + v.unit() * radius, q));
        }
    }
    // Segment crossing the circle.
    let ab = sb - sa;
    let len = ab.norm();
    if len > 0.0 {
        let dir = ab / len;
        let foot = sa + dir * (center - sa).dot(dir);
        let off2 = center.dist(foot);
        if off2 <= radius {
            let h = (radius * radius - off2 * off2).max(0.0).sqrt();
            for p in [foot - dir * h, foot + dir * h] {
                let t = (p - sa).dot(dir);
                if t >= 0.0 && t <= len && angle_in_arc((p - center).angle(), start, sweep, 0.0) {
                    out.push((p, p));
                }
            }
        }
    }
    out
}

fn circle_pair_points(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<Point> {
    let d = c1.dist(c2);
    if d < 1e-12 || d > r1 + r2 || d < (r1 - r2).abs() {
        return vec![];
    }
    let u = (c2 - c1) / d;
    let t = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - t * t;
    let foot = c1 + u * t;
    if h2 <= 0.0 {
        return vec![foot];
    }
    let n = u.perp() * h2.sqrt();
    vec![foot + n, foot - n]
}

fn segments_intersection(a1: Point, b1: Point, a2: Point, b2: Point) -> Option<Point> {
    let d1 = b1 - a1;
    let d2 = b2 - a2;
    let denom = d1.cross(d2);
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = (a2 - a1).cross(d2) / denom;
    let s = (a2 - a1).cross(d1) / denom;
    if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s) {
        Some(a1 + d1 * t)
    } else {
        None
    }
}

/// One planned bridge: host edges and attachment points.
#[derive(Clone, Copy, Debug)]
struct PlannedBridge {
    edge_a: usize,
    edge_b: usize,
    at_a: Point,
    at_b: Point,
}

/// Connect all components with greedy shortest straight segments.
///
/// Candidates are the minimum straight segments between scenic edges of two
/// components; after each insertion the merged super-component competes as a
/// whole and candidates are re-evaluated. Attachment points become nodes,
/// splitting their host edges.
pub fn bridge_components(mut arr: Arrangement) -> Arrangement {
    let comps = connected_components(&arr);
    if comps.len() <= 1 {
        arr.components = comps;
        return arr;
    }

    // Scenic edges per component (an edge's endpoints share a component).
    let mut comp_of_node = vec![0usize; arr.nodes.len()];
    for (ci, comp) in comps.iter().enumerate() {
        for &n in comp {
            comp_of_node[n] = ci;
        }
    }
    let mut comp_edges: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for e in &arr.edges {
        if !e.kind.is_bridge() {
            comp_edges[comp_of_node[e.endpoints.0]].push(e.id);
        }
    }
    let prims: Vec<Prim> = arr.edges.iter().map(|e| edge_prim(&arr, e)).collect();

    // Greedy merge: |sigma| - 1 bridges in total.
    let mut planned = Vec::new();
    let mut active: Vec<Option<Vec<usize>>> = comp_edges.into_iter().map(Some).collect();
    loop {
        let live: Vec<usize> = (0..active.len()).filter(|&i| active[i].is_some()).collect();
        if live.len() <= 1 {
            break;
        }
        let mut best: Option<(f64, usize, usize, PlannedBridge)> = None;
        for (li, &i) in live.iter().enumerate() {
            for &j in &live[li + 1..] {
                let (ea_list, eb_list) =
                    (active[i].as_ref().unwrap(), active[j].as_ref().unwrap());
                for &ea in ea_list {
                    for &eb in eb_list {
                        let (d, pa, pb) = prim_distance(&prims[ea], &prims[eb]);
                        if best.as_ref().is_none_or(|(bd, ..)| d < *bd) {
                            best = Some((
                                d,
                                i,
                                j,
                                PlannedBridge {
                                    edge_a: ea,
                                    edge_b: eb,
                                    at_a: pa,
                                    at_b: pb,
                                },
                            ));
                        }
                    }
                }
            }
        }
        let (_, i, j, bridge) = best.expect("two live components have a candidate");
        planned.push(bridge);
        let merged = active[j].take().unwrap();
        active[i].as_mut().unwrap().extend(merged);
    }

    apply_bridges(&mut arr, &planned);
    arr.components = connected_components(&arr);
    debug_assert!(arr.components.len() == 1);
    arr
}

/// Insert the planned bridges, splitting host edges at attachment points.
fn apply_bridges(arr: &mut Arrangement, planned: &[PlannedBridge]) {
    let eps = arr.eps;
    let mut slots: Vec<Option<Edge>> = arr.edges.drain(..).map(Some).collect();
    let mut children: HashMap<usize, (usize, usize)> = HashMap::new();
    // Containment geometry for every slot ever created; unlike `slots`
    // entries this survives further splits, so navigation to the live
    // sub-edge works at any split depth.
    let mut geoms: Vec<Prim> = slots
        .iter()
        .map(|s| edge_prim(arr, s.as_ref().unwrap()))
        .collect();

    for b in planned {
        let na = attach(arr, &mut slots, &mut children, &mut geoms, b.edge_a, b.at_a, eps);
        let nb = attach(arr, &mut slots, &mut children, &mut geoms, b.edge_b, b.at_b, eps);
        let length = arr.nodes[na].position.dist(arr.nodes[nb].position);
        let id = slots.len();
        slots.push(Some(Edge {
            id,
            endpoints: (na, nb),
            kind: EdgeKind::Bridge,
            length,
        }));
        geoms.push(Prim::Seg {
            a: arr.nodes[na].position,
            b: arr.nodes[nb].position,
        });
    }

    // Compact: renumber surviving edges, rebuild per-curve index.
    let mut edges = Vec::new();
    for slot in slots.into_iter().flatten() {
        let mut e = slot;
        e.id = edges.len();
        edges.push(e);
    }
    let mut curve_edges = vec![Vec::new(); arr.curves.len()];
    let mut bridges = Vec::new();
    for e in &edges {
        match e.kind.curve() {
            Some(c) => curve_edges[c].push(e.id),
            None => bridges.push(e.id),
        }
    }
    arr.edges = edges;
    arr.curve_edges = curve_edges;
    arr.bridges = bridges;
}

/// Resolve the live sub-edge containing `p` and return the node to attach
/// to, splitting the edge unless `p` falls on an existing endpoint.
fn attach(
    arr: &mut Arrangement,
    slots: &mut Vec<Option<Edge>>,
    children: &mut HashMap<usize, (usize, usize)>,
    geoms: &mut Vec<Prim>,
    mut edge_id: usize,
    p: Point,
    eps: f64,
) -> usize {
    while let Some(&(l, r)) = children.get(&edge_id) {
        edge_id = if prim_contains(&geoms[l], p, eps) { l } else { r };
    }
    let edge = slots[edge_id].as_ref().unwrap().clone();
    let (ea, eb) = edge.endpoints;
    if arr.nodes[ea].position.dist(p) <= eps {
        return ea;
    }
    if arr.nodes[eb].position.dist(p) <= eps {
        return eb;
    }

    let node_id = arr.nodes.len();
    let (split_pos, parts) = split_edge(arr, &edge, p, node_id);
    let curve = edge.kind.curve().expect("bridges never host attachments");
    arr.nodes.push(Node {
        id: node_id,
        position: split_pos,
        incident_curves: BTreeSet::from([curve]),
        kind: NodeKind::BridgeFoot,
    });
    slots[edge_id] = None;
    let l = slots.len();
    geoms.push(part_prim(arr, &parts.0));
    slots.push(Some(parts.0));
    let r = slots.len();
    geoms.push(part_prim(arr, &parts.1));
    slots.push(Some(parts.1));
    children.insert(edge_id, (l, r));
    node_id
}

fn part_prim(arr: &Arrangement, e: &Edge) -> Prim {
    match e.kind {
        EdgeKind::Arc {
            center,
            radius,
            start_angle,
            sweep,
            ..
        } => Prim::Arc {
            center,
            radius,
            start: start_angle,
            sweep,
        },
        _ => Prim::Seg {
            a: arr.nodes[e.endpoints.0].position,
            b: arr.nodes[e.endpoints.1].position,
        },
    }
}

fn prim_contains(prim: &Prim, p: Point, eps: f64) -> bool {
    match *prim {
        Prim::Arc {
            center,
            radius,
            start,
            sweep,
        } => {
            let ang_eps = eps / radius.max(eps);
            angle_in_arc((p - center).angle(), start, sweep, ang_eps)
        }
        Prim::Seg { a, b } => closest_on_segment(a, b, p).dist(p) <= eps * 2.0,
    }
}

/// Split `edge` at `p`, producing the snapped node position and two parts
/// (ids assigned by the caller are placeholders; compaction renumbers).
fn split_edge(arr: &Arrangement, edge: &Edge, p: Point, node_id: usize) -> (Point, (Edge, Edge)) {
    match edge.kind {
        EdgeKind::Arc {
            curve,
            center,
            radius,
            start_angle,
            sweep,
        } => {
            let theta = (p - center).angle();
            let snapped = center + Point::new(theta.cos(), theta.sin()) * radius;
            let sweep1 = norm_angle(theta - start_angle).min(sweep);
            let first = Edge {
                id: usize::MAX,
                endpoints: (edge.endpoints.0, node_id),
                kind: EdgeKind::Arc {
                    curve,
                    center,
                    radius,
                    start_angle,
                    sweep: sweep1,
                },
                length: radius * sweep1,
            };
            let second = Edge {
                id: usize::MAX,
                endpoints: (node_id, edge.endpoints.1),
                kind: EdgeKind::Arc {
                    curve,
                    center,
                    radius,
                    start_angle: norm_angle(start_angle + sweep1),
                    sweep: sweep - sweep1,
                },
                length: radius * (sweep - sweep1),
            };
            (snapped, (first, second))
        }
        EdgeKind::Loop { curve } => {
            let (center, radius) = match arr.curves[curve].kind {
                CurveKind::Circle { center, radius } => (center, radius),
                CurveKind::Line { .. } => unreachable!(),
            };
            let anchor = arr.nodes[edge.endpoints.0].position;
            let start = norm_angle((anchor - center).angle());
            let theta = (p - center).angle();
            let snapped = center + Point::new(theta.cos(), theta.sin()) * radius;
            let sweep1 = norm_angle(theta - start);
            let first = Edge {
                id: usize::MAX,
                endpoints: (edge.endpoints.0, node_id),
                kind: EdgeKind::Arc {
                    curve,
                    center,
                    radius,
                    start_angle: start,
                    sweep: sweep1,
                },
                length: radius * sweep1,
            };
            let second = Edge {
                id: usize::MAX,
                endpoints: (node_id, edge.endpoints.1),
                kind: EdgeKind::Arc {
                    curve,
                    center,
                    radius,
                    start_angle: norm_angle(start + sweep1),
                    sweep: TAU - sweep1,
                },
                length: radius * (TAU - sweep1),
            };
            (snapped, (first, second))
        }
        EdgeKind::Segment { curve } => {
            let a = arr.nodes[edge.endpoints.0].position;
            let b = arr.nodes[edge.endpoints.1].position;
            let snapped = closest_on_segment(a, b, p);
            let first = Edge {
                id: usize::MAX,
                endpoints: (edge.endpoints.0, node_id),
                kind: EdgeKind::Segment { curve },
                length: a.dist(snapped),
            };
            let second = Edge {
                id: usize::MAX,
                endpoints: (node_id, edge.endpoints.1),
                kind: EdgeKind::Segment { curve },
                length: snapped.dist(b),
            };
            (snapped, (first, second))
        }
        EdgeKind::Bridge => unreachable!("bridges never host attachments"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WeightedPoint;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn wp(id: u32, class: PointClass, x: f64, y: f64, w: f64) -> WeightedPoint {
        WeightedPoint::new(id, class, x, y, w)
    }

    /// One red and three blue points whose circles pairwise intersect:
    /// 3 curves, 6 intersection nodes, 12 arcs.
    pub fn demo_one_red_three_blue() -> Vec<WeightedPoint> {
        vec![
            wp(0, PointClass::Red, 0.0, 0.0, 2.5),
            wp(1, PointClass::Blue, 4.0, 0.0, 1.5),
            wp(2, PointClass::Blue, 3.0, 1.0, 1.8),
            wp(3, PointClass::Blue, 3.0, -1.0, 2.0),
        ]
    }

    /// One red, two blues whose circles are far apart: two components.
    pub fn two_cluster_points() -> Vec<WeightedPoint> {
        vec![
            wp(0, PointClass::Red, 0.0, 0.0, 2.0),
            wp(1, PointClass::Blue, 3.0, 0.0, 1.0),
            wp(2, PointClass::Blue, 100.0, 0.0, 1.0),
        ]
    }

    #[test]
    fn demo_structure_counts() {
        let arr = build_arrangement(&demo_one_red_three_blue()).unwrap();
        assert_eq!(arr.curves.len(), 3);
        assert_eq!(arr.nodes.len(), 6);
        assert_eq!(arr.edges.len(), 12);
        assert!(arr.edges.iter().all(|e| matches!(e.kind, EdgeKind::Arc { .. })));
        assert_eq!(arr.components.len(), 1);
        // Every intersection node joins two curves and has degree 4.
        for n in &arr.nodes {
            assert_eq!(n.kind, NodeKind::Intersection);
            assert_eq!(n.incident_curves.len(), 2);
            assert_eq!(arr.node_degree(n.id), 4);
        }
    }

    #[test]
    fn single_pair_is_one_loop() {
        let pts = vec![
            wp(0, PointClass::Red, 0.0, 0.0, 2.0),
            wp(1, PointClass::Blue, 3.0, 0.0, 1.0),
        ];
        let arr = build_arrangement(&pts).unwrap();
        assert_eq!(arr.curves.len(), 1);
        assert_eq!(arr.nodes.len(), 1);
        assert_eq!(arr.nodes[0].kind, NodeKind::LoopAnchor);
        assert_eq!(arr.edges.len(), 1);
        match arr.edges[0].kind {
            EdgeKind::Loop { curve: 0 } => {}
            ref k => panic!("expected loop, got {k:?}"),
        }
        // Circle center (4,0), radius 2: loop length 4*pi.
        assert!((arr.edges[0].length - 2.0 * TAU).abs() < 1e-9);
    }

    #[test]
    fn equal_weight_pair_is_clipped_line() {
        let pts = vec![
            wp(0, PointClass::Red, 0.0, 0.0, 1.0),
            wp(1, PointClass::Blue, 4.0, 0.0, 1.0),
        ];
        let arr = build_arrangement(&pts).unwrap();
        assert_eq!(arr.curves.len(), 1);
        assert_eq!(arr.nodes.len(), 2);
        assert!(arr.nodes.iter().all(|n| n.kind == NodeKind::ClipEnd));
        assert_eq!(arr.edges.len(), 1);
        assert!(matches!(arr.edges[0].kind, EdgeKind::Segment { curve: 0 }));
        // Clip ends have degree 1.
        assert_eq!(arr.node_degree(0), 1);
    }

    #[test]
    fn mixed_line_and_circle_partition() {
        // Two reds, one blue: the equal-weight pair yields a bisector line,
        // the other pair a circle crossing it.
        let pts = vec![
            wp(0, PointClass::Red, 0.0, 0.0, 1.0),
            wp(1, PointClass::Red, 6.0, 0.0, 2.0),
            wp(2, PointClass::Blue, 2.0, 0.0, 1.0),
        ];
        let arr = build_arrangement(&pts).unwrap();
        assert_eq!(arr.curves.len(), 2);
        let line = arr
            .curves
            .iter()
            .find(|c| !c.kind.is_circle())
            .expect("one bisector line");
        let circle = arr.curves.iter().find(|c| c.kind.is_circle()).unwrap();
        // Circle for (6,0,w2)-(2,0,w1): delta 2, d 4 -> center (2-4/3,0)?
        // center = p1 + (d2/(d2-1))(p2-p1) with p1=(6,0), p2=(2,0):
        // (6,0) + (4/3)(-4,0) = (2/3, 0), r = 2*4/3 = 8/3.
        match circle.kind {
            CurveKind::Circle { center, radius } => {
                assert!(center.dist(Point::new(2.0 / 3.0, 0.0)) < 1e-9);
                assert!((radius - 8.0 / 3.0).abs() < 1e-9);
            }
            _ => unreachable!(),
        }
        // Bisector x=1 crosses that circle twice: 2 interior nodes on the
        // line -> 3 segments (k+1), and 2 arcs on the circle.
        let interior = arr
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Intersection)
            .count();
        assert_eq!(interior, 2);
        assert_eq!(arr.curve_edges[line.id].len(), 3);
        assert_eq!(arr.curve_edges[circle.id].len(), 2);
        // Clip endpoints close the line partition with degree 1.
        let clip_ends: Vec<_> = arr
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::ClipEnd)
            .collect();
        assert_eq!(clip_ends.len(), 2);
        for n in clip_ends {
            assert_eq!(arr.node_degree(n.id), 1);
        }
    }

    #[test]
    fn missing_class_is_rejected() {
        let pts = vec![
            wp(0, PointClass::Red, 0.0, 0.0, 1.0),
            wp(1, PointClass::Red, 4.0, 0.0, 1.0),
        ];
        assert!(matches!(
            build_arrangement(&pts),
            Err(ScenicError::EmptyClass { missing: "blue" })
        ));
    }

    #[test]
    fn degenerate_pair_propagates() {
        let pts = vec![
            wp(0, PointClass::Red, 1.0, 1.0, 1.0),
            wp(1, PointClass::Blue, 1.0, 1.0, 2.0),
        ];
        assert!(matches!(
            build_arrangement(&pts),
            Err(ScenicError::DegeneratePair { .. })
        ));
    }

    #[test]
    fn components_of_separated_clusters() {
        let arr = build_arrangement(&two_cluster_points()).unwrap();
        assert_eq!(arr.curves.len(), 2);
        assert_eq!(connected_components(&arr).len(), 2);
        let arr = bridge_components(arr);
        assert_eq!(arr.components.len(), 1);
        assert_eq!(arr.bridges.len(), 1);
        // Circles: center (4,0) r=2 and center (400/3,0) r=200/3. Bridge runs
        // from (6,0) to (200/3,0); length = 388/3 - 206/3 = 182/3.
        let b = &arr.edges[arr.bridges[0]];
        assert!((b.length - 182.0 / 3.0).abs() < 1e-9, "length {}", b.length);
        let pa = arr.nodes[b.endpoints.0].position;
        let pb = arr.nodes[b.endpoints.1].position;
        let (pa, pb) = if pa.x < pb.x { (pa, pb) } else { (pb, pa) };
        assert!(pa.dist(Point::new(6.0, 0.0)) < 1e-9);
        assert!(pb.dist(Point::new(200.0 / 3.0, 0.0)) < 1e-9);
    }

    #[test]
    fn bridging_connected_graph_is_identity() {
        let arr = build_arrangement(&demo_one_red_three_blue()).unwrap();
        let edges_before = arr.edges.len();
        let arr = bridge_components(arr);
        assert_eq!(arr.bridges.len(), 0);
        assert_eq!(arr.edges.len(), edges_before);
    }

    #[test]
    fn unit_circle_bridge_distance() {
        // Unit circles centered (0,0) and (5,0): min straight segment is
        // (1,0)-(4,0), length 3 = center distance - 2.
        let a = Prim::Arc {
            center: Point::new(0.0, 0.0),
            radius: 1.0,
            start: 0.0,
            sweep: TAU,
        };
        let b = Prim::Arc {
            center: Point::new(5.0, 0.0),
            radius: 1.0,
            start: 0.0,
            sweep: TAU,
        };
        let (d, pa, pb) = prim_distance(&a, &b);
        assert!((d - 3.0).abs() < 1e-12);
        assert!(pa.dist(Point::new(1.0, 0.0)) < 1e-12);
        assert!(pb.dist(Point::new(4.0, 0.0)) < 1e-12);
    }

    #[test]
    fn three_component_greedy_bridging() {
        // Circles at (4,0) r=2, (-4,0) r=2, (0,40) r=20; pairwise disjoint.
        let pts = vec![
            wp(0, PointClass::Red, 0.0, 0.0, 2.0),
            wp(1, PointClass::Blue, 3.0, 0.0, 1.0),
            wp(2, PointClass::Blue, -3.0, 0.0, 1.0),
            wp(3, PointClass::Blue, 0.0, 30.0, 1.0),
        ];
        let arr = build_arrangement(&pts).unwrap();
        assert_eq!(connected_components(&arr).len(), 3);
        let arr = bridge_components(arr);
        assert_eq!(arr.bridges.len(), 2);
        assert_eq!(arr.components.len(), 1);

        let total: f64 = arr.bridges.iter().map(|&b| arr.edges[b].length).sum();
        // Pairwise circle gaps by hand: d12 = 8-4 = 4, d13 = d23 =
        // sqrt(16+1600) - 22. Greedy takes 4 first, then the cheaper link
        // from the merged pair to the third; enumerate all spanning pairings.
        let d12 = 4.0;
        let d13 = (16.0f64 + 1600.0).sqrt() - 22.0;
        let pairings = [d12 + d13, d12 + d13, 2.0 * d13];
        let expect = d12 + d13;
        assert!((total - expect).abs() < 1e-9);
        for p in pairings {
            assert!(total <= p + 1e-9);
        }
    }

    #[test]
    fn bridge_feet_split_loops() {
        let arr = bridge_components(build_arrangement(&two_cluster_points()).unwrap());
        // The first circle's anchor sits at angle 0 = (6,0), exactly where
        // the bridge lands: the node is reused and its loop survives. The
        // second circle is split at (200/3, 0) into two arcs.
        assert_eq!(arr.curve_edges[0].len(), 1);
        assert_eq!(arr.curve_edges[1].len(), 2);
        assert_eq!(
            arr.nodes.iter().filter(|n| n.kind == NodeKind::BridgeFoot).count(),
            1
        );
        for c in 0..arr.curves.len() {
            let total: f64 = arr.curve_edges[c].iter().map(|&e| arr.edges[e].length).sum();
            let r = match arr.curves[c].kind {
                CurveKind::Circle { radius, .. } => radius,
                _ => unreachable!(),
            };
            assert!((total - TAU * r).abs() < 1e-6 * TAU * r, "circumference conserved");
        }
    }

    #[test]
    fn curve_edges_and_bridges_partition_the_edge_set() {
        for pts in [two_cluster_points(), demo_one_red_three_blue(), lens_like()] {
            let arr = bridge_components(build_arrangement(&pts).unwrap());
            let mut seen: Vec<usize> = arr.curve_edges.iter().flatten().copied().collect();
            seen.extend(arr.bridges.iter().copied());
            seen.sort_unstable();
            let all: Vec<usize> = (0..arr.edges.len()).collect();
            assert_eq!(seen, all);
        }
    }

    fn lens_like() -> Vec<WeightedPoint> {
        vec![
            wp(0, PointClass::Red, 0.0, 0.0, 2.0),
            wp(1, PointClass::Blue, 3.0, 0.0, 1.0),
            wp(2, PointClass::Blue, 2.5, 1.0, 1.0),
        ]
    }

    #[test]
    fn random_instances_respect_intersection_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3usize);
            let m = rng.gen_range(1..=3usize);
            let mut pts = Vec::new();
            for i in 0..(n + m) {
                pts.push(WeightedPoint::new(
                    i as u32,
                    if i < n { PointClass::Red } else { PointClass::Blue },
                    rng.gen_range(-30.0..30.0),
                    rng.gen_range(-30.0..30.0),
                    rng.gen_range(1.0..50.0),
                ));
            }
            let arr = match build_arrangement(&pts) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let nm = n * m;
            assert!(arr.intersection_node_count() <= nm * (nm.max(1) - 1));
        }
    }

    #[test]
    fn circumference_is_conserved_and_degrees_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let mut pts = Vec::new();
            for i in 0..6 {
                pts.push(WeightedPoint::new(
                    i as u32,
                    if i < 3 { PointClass::Red } else { PointClass::Blue },
                    rng.gen_range(-30.0..30.0),
                    rng.gen_range(-30.0..30.0),
                    rng.gen_range(1.0..50.0),
                ));
            }
            let arr = match build_arrangement(&pts) {
                Ok(a) => a,
                Err(_) => continue,
            };
            for c in &arr.curves {
                if let CurveKind::Circle { radius, .. } = c.kind {
                    let total: f64 = arr.curve_edges[c.id]
                        .iter()
                        .map(|&e| arr.edges[e].length)
                        .sum();
                    let expect = TAU * radius;
                    assert!(
                        (total - expect).abs() <= 1e-6 * expect,
                        "circumference {total} vs {expect}"
                    );
                }
            }
            for n in &arr.nodes {
                if n.kind == NodeKind::Intersection {
                    assert!(arr.node_degree(n.id) >= 2);
                }
            }
        }
    }
}
