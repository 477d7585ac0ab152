//! Text file formats: point sets and self-contained route files.
//!
//! Both formats are line-oriented `key=value` text with numbers serialized
//! to 9 significant digits, so serialize(parse(x)) is byte-identical on
//! canonical files and goldens diff cleanly.

use std::collections::BTreeSet;

use crate::arrangement::{Arrangement, EdgeKind};
use crate::error::ScenicError;
use crate::geometry::{CurveKind, Point, PointClass, WeightedPoint};
use crate::metrics::{peel_multigraph, repeated_edges, RouteMetrics};
use crate::route::{Route, RouteAlgorithm, StepKind};

/// Format with 9 significant digits, trailing zeros trimmed.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).clamp(0, 25) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn parse_f64(raw: &str, what: &str) -> Result<f64, ScenicError> {
    let v: f64 = raw
        .parse()
        .map_err(|_| ScenicError::Parse(format!("invalid number for {what}: {raw}")))?;
    if !v.is_finite() {
        return Err(ScenicError::Parse(format!("{what} must be finite")));
    }
    Ok(v)
}

fn parse_usize(raw: &str, what: &str) -> Result<usize, ScenicError> {
    raw.parse()
        .map_err(|_| ScenicError::Parse(format!("invalid integer for {what}: {raw}")))
}

/// Split a line of `key=value` tokens after a fixed tag.
fn kv_tokens<'a>(line: &'a str, tag: &str) -> Result<Vec<(&'a str, &'a str)>, ScenicError> {
    let rest = line
        .strip_prefix(tag)
        .ok_or_else(|| ScenicError::Parse(format!("expected `{tag}` line, got: {line}")))?;
    rest.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| ScenicError::Parse(format!("expected key=value, got: {tok}")))
        })
        .collect()
}

fn lookup<'a>(pairs: &[(&'a str, &'a str)], key: &str) -> Result<&'a str, ScenicError> {
    pairs
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| ScenicError::Parse(format!("missing key `{key}`")))
}

// ---------------------------------------------------------------------------
// Point set files
// ---------------------------------------------------------------------------

pub const POINTSET_HEADER: &str = "pointset v1";

pub fn write_pointset(points: &[WeightedPoint]) -> String {
    let mut out = String::from(POINTSET_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "point id={} class={} x={} y={} w={}\n",
            p.id,
            p.class,
            fmt_sig9(p.pos.x),
            fmt_sig9(p.pos.y),
            fmt_sig9(p.weight)
        ));
    }
    out
}

pub fn parse_pointset(text: &str) -> Result<Vec<WeightedPoint>, ScenicError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| ScenicError::Parse("empty point set file".into()))?;
    if header != POINTSET_HEADER {
        return Err(ScenicError::Parse(format!(
            "bad header: expected `{POINTSET_HEADER}`, got `{header}`"
        )));
    }

    let mut points = Vec::new();
    let mut ids = BTreeSet::new();
    for line in lines {
        let kv = kv_tokens(line, "point ")?;
        let id: u32 = lookup(&kv, "id")?
            .parse()
            .map_err(|_| ScenicError::Parse(format!("invalid point id in: {line}")))?;
        if !ids.insert(id) {
            return Err(ScenicError::DuplicateId { id });
        }
        let class = PointClass::parse(lookup(&kv, "class")?)
            .ok_or_else(|| ScenicError::Parse(format!("invalid class in: {line}")))?;
        let x = parse_f64(lookup(&kv, "x")?, "x")?;
        let y = parse_f64(lookup(&kv, "y")?, "y")?;
        let w = parse_f64(lookup(&kv, "w")?, "w")?;
        if w <= 0.0 {
            return Err(ScenicError::NonPositiveWeight { id });
        }
        points.push(WeightedPoint::new(id, class, x, y, w));
    }

    if !points.iter().any(|p| p.class == PointClass::Red) {
        return Err(ScenicError::EmptyClass { missing: "red" });
    }
    if !points.iter().any(|p| p.class == PointClass::Blue) {
        return Err(ScenicError::EmptyClass { missing: "blue" });
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// Route files
// ---------------------------------------------------------------------------

pub const ROUTE_HEADER: &str = "route v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeRole {
    Seed,
    Connector,
}

impl EdgeRole {
    fn as_str(self) -> &'static str {
        match self {
            EdgeRole::Seed => "seed",
            EdgeRole::Connector => "connector",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RouteEdgeGeom {
    Arc {
        curve: usize,
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    Segment {
        curve: usize,
    },
    Loop {
        curve: usize,
        center: Point,
        radius: f64,
    },
    Bridge,
}

impl RouteEdgeGeom {
    pub fn curve(&self) -> Option<usize> {
        match *self {
            RouteEdgeGeom::Arc { curve, .. }
            | RouteEdgeGeom::Segment { curve }
            | RouteEdgeGeom::Loop { curve, .. } => Some(curve),
            RouteEdgeGeom::Bridge => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RouteFileEdge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub geom: RouteEdgeGeom,
    pub length: f64,
    pub role: EdgeRole,
    pub repeated: bool,
}

/// A route with enough geometry to re-render and re-measure it without the
/// arrangement it came from.
#[derive(Clone, Debug)]
pub struct RouteFile {
    pub algorithm: RouteAlgorithm,
    pub seed: Option<u64>,
    pub curve_count: usize,
    pub metrics: RouteMetrics,
    pub nodes: Vec<(usize, Point)>,
    pub edges: Vec<RouteFileEdge>,
}

impl RouteFile {
    pub fn from_route(
        arr: &Arrangement,
        route: &Route,
        metrics: &RouteMetrics,
        seed: Option<u64>,
    ) -> RouteFile {
        let seed_ids: BTreeSet<usize> = route
            .construction_log
            .iter()
            .filter(|s| s.kind == StepKind::Seed)
            .flat_map(|s| s.edges.iter().copied())
            .collect();
        let repeated = repeated_edges(route, arr);
        let nodes = route
            .nodes
            .iter()
            .map(|&n| (n, arr.nodes[n].position))
            .collect();
        let edges = route
            .edges
            .iter()
            .map(|&eid| {
                let e = &arr.edges[eid];
                let geom = match e.kind {
                    EdgeKind::Arc {
                        curve,
                        center,
                        radius,
                        start_angle,
                        sweep,
                    } => RouteEdgeGeom::Arc {
                        curve,
                        center,
                        radius,
                        start_angle,
                        sweep,
                    },
                    EdgeKind::Segment { curve } => RouteEdgeGeom::Segment { curve },
                    EdgeKind::Loop { curve } => {
                        let (center, radius) = match arr.curves[curve].kind {
                            CurveKind::Circle { center, radius } => (center, radius),
                            CurveKind::Line { .. } => unreachable!("loops live on circles"),
                        };
                        RouteEdgeGeom::Loop {
                            curve,
                            center,
                            radius,
                        }
                    }
                    EdgeKind::Bridge => RouteEdgeGeom::Bridge,
                };
                RouteFileEdge {
                    id: eid,
                    from: e.endpoints.0,
                    to: e.endpoints.1,
                    geom,
                    length: e.length,
                    role: if seed_ids.contains(&eid) {
                        EdgeRole::Seed
                    } else {
                        EdgeRole::Connector
                    },
                    repeated: repeated.contains(&eid),
                }
            })
            .collect();
        RouteFile {
            algorithm: route.algorithm,
            seed,
            curve_count: arr.curves.len(),
            metrics: *metrics,
            nodes,
            edges,
        }
    }

    /// Re-derive the metrics from the edge list alone.
    pub fn recompute_metrics(&self) -> RouteMetrics {
        let route_length: f64 = self.edges.iter().map(|e| e.length).sum();
        let peeled = peel_multigraph(self.edges.iter().map(|e| (e.id, e.from, e.to)));
        let repeated_length: f64 = self
            .edges
            .iter()
            .filter(|e| peeled.contains(&e.id))
            .map(|e| e.length)
            .sum();
        let covered: BTreeSet<usize> =
            self.edges.iter().filter_map(|e| e.geom.curve()).collect();
        let num_edges = self.edges.len();
        RouteMetrics {
            route_length,
            walk_length: route_length + repeated_length,
            num_edges,
            num_repeated: peeled.len(),
            repeated_pct: 100.0 * peeled.len() as f64 / num_edges as f64,
            complete: (0..self.curve_count).all(|c| covered.contains(&c)),
            scenic_only: self
                .edges
                .iter()
                .all(|e| e.geom != RouteEdgeGeom::Bridge),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(ROUTE_HEADER);
        out.push('\n');
        out.push_str(&format!("algorithm {}\n", self.algorithm));
        match self.seed {
            Some(s) => out.push_str(&format!("seed {s}\n")),
            None => out.push_str("seed -\n"),
        }
        out.push_str(&format!("curves {}\n", self.curve_count));
        let m = &self.metrics;
        out.push_str(&format!(
            "metrics rl={} walk={} noe={} nore={} repct={} complete={} scenic_only={}\n",
            fmt_sig9(m.route_length),
            fmt_sig9(m.walk_length),
            m.num_edges,
            m.num_repeated,
            fmt_sig9(m.repeated_pct),
            m.complete,
            m.scenic_only
        ));
        for (id, pos) in &self.nodes {
            out.push_str(&format!(
                "node id={} x={} y={}\n",
                id,
                fmt_sig9(pos.x),
                fmt_sig9(pos.y)
            ));
        }
        for e in &self.edges {
            let geom = match e.geom {
                RouteEdgeGeom::Arc {
                    curve,
                    center,
                    radius,
                    start_angle,
                    sweep,
                } => format!(
                    "kind=arc curve={} cx={} cy={} r={} start={} sweep={}",
                    curve,
                    fmt_sig9(center.x),
                    fmt_sig9(center.y),
                    fmt_sig9(radius),
                    fmt_sig9(start_angle),
                    fmt_sig9(sweep)
                ),
                RouteEdgeGeom::Segment { curve } => format!("kind=segment curve={curve}"),
                RouteEdgeGeom::Loop {
                    curve,
                    center,
                    radius,
                } => format!(
                    "kind=loop curve={} cx={} cy={} r={}",
                    curve,
                    fmt_sig9(center.x),
                    fmt_sig9(center.y),
                    fmt_sig9(radius)
                ),
                RouteEdgeGeom::Bridge => "kind=bridge".to_string(),
            };
            out.push_str(&format!(
                "edge id={} from={} to={} {} length={} role={} repeated={}\n",
                e.id,
                e.from,
                e.to,
                geom,
                fmt_sig9(e.length),
                e.role.as_str(),
                e.repeated
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<RouteFile, ScenicError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| ScenicError::Parse("empty route file".into()))?;
        if header != ROUTE_HEADER {
            return Err(ScenicError::Parse(format!(
                "bad header: expected `{ROUTE_HEADER}`, got `{header}`"
            )));
        }

        let algo_line = lines
            .next()
            .ok_or_else(|| ScenicError::Parse("missing algorithm line".into()))?;
        let algorithm = algo_line
            .strip_prefix("algorithm ")
            .and_then(RouteAlgorithm::parse)
            .ok_or_else(|| ScenicError::Parse(format!("invalid algorithm line: {algo_line}")))?;

        let seed_line = lines
            .next()
            .ok_or_else(|| ScenicError::Parse("missing seed line".into()))?;
        let seed_raw = seed_line
            .strip_prefix("seed ")
            .ok_or_else(|| ScenicError::Parse(format!("invalid seed line: {seed_line}")))?;
        let seed = match seed_raw {
            "-" => None,
            s => Some(
                s.parse()
                    .map_err(|_| ScenicError::Parse(format!("invalid seed: {s}")))?,
            ),
        };

        let curves_line = lines
            .next()
            .ok_or_else(|| ScenicError::Parse("missing curves line".into()))?;
        let curve_count = parse_usize(
            curves_line
                .strip_prefix("curves ")
                .ok_or_else(|| ScenicError::Parse(format!("invalid curves line: {curves_line}")))?,
            "curves",
        )?;

        let metrics_line = lines
            .next()
            .ok_or_else(|| ScenicError::Parse("missing metrics line".into()))?;
        let kv = kv_tokens(metrics_line, "metrics ")?;
        let metrics = RouteMetrics {
            route_length: parse_f64(lookup(&kv, "rl")?, "rl")?,
            walk_length: parse_f64(lookup(&kv, "walk")?, "walk")?,
            num_edges: parse_usize(lookup(&kv, "noe")?, "noe")?,
            num_repeated: parse_usize(lookup(&kv, "nore")?, "nore")?,
            repeated_pct: parse_f64(lookup(&kv, "repct")?, "repct")?,
            complete: lookup(&kv, "complete")? == "true",
            scenic_only: lookup(&kv, "scenic_only")? == "true",
        };

        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for line in lines {
            if line.starts_with("node ") {
                let kv = kv_tokens(line, "node ")?;
                nodes.push((
                    parse_usize(lookup(&kv, "id")?, "node id")?,
                    Point::new(
                        parse_f64(lookup(&kv, "x")?, "x")?,
                        parse_f64(lookup(&kv, "y")?, "y")?,
                    ),
                ));
            } else if line.starts_with("edge ") {
                let kv = kv_tokens(line, "edge ")?;
                let geom = match lookup(&kv, "kind")? {
                    "arc" => RouteEdgeGeom::Arc {
                        curve: parse_usize(lookup(&kv, "curve")?, "curve")?,
                        center: Point::new(
                            parse_f64(lookup(&kv, "cx")?, "cx")?,
                            parse_f64(lookup(&kv, "cy")?, "cy")?,
                        ),
                        radius: parse_f64(lookup(&kv, "r")?, "r")?,
                        start_angle: parse_f64(lookup(&kv, "start")?, "start")?,
                        sweep: parse_f64(lookup(&kv, "sweep")?, "sweep")?,
                    },
                    "segment" => RouteEdgeGeom::Segment {
                        curve: parse_usize(lookup(&kv, "curve")?, "curve")?,
                    },
                    "loop" => RouteEdgeGeom::Loop {
                        curve: parse_usize(lookup(&kv, "curve")?, "curve")?,
                        center: Point::new(
                            parse_f64(lookup(&kv, "cx")?, "cx")?,
                            parse_f64(lookup(&kv, "cy")?, "cy")?,
                        ),
                        radius: parse_f64(lookup(&kv, "r")?, "r")?,
                    },
                    "bridge" => RouteEdgeGeom::Bridge,
                    other => {
                        return Err(ScenicError::Parse(format!("unknown edge kind: {other}")))
                    }
                };
                edges.push(RouteFileEdge {
                    id: parse_usize(lookup(&kv, "id")?, "edge id")?,
                    from: parse_usize(lookup(&kv, "from")?, "from")?,
                    to: parse_usize(lookup(&kv, "to")?, "to")?,
                    geom,
                    length: parse_f64(lookup(&kv, "length")?, "length")?,
                    role: match lookup(&kv, "role")? {
                        "seed" => EdgeRole::Seed,
                        "connector" => EdgeRole::Connector,
                        other => {
                            return Err(ScenicError::Parse(format!("unknown role: {other}")))
                        }
                    },
                    repeated: lookup(&kv, "repeated")? == "true",
                });
            } else {
                return Err(ScenicError::Parse(format!("unexpected line: {line}")));
            }
        }
        Ok(RouteFile {
            algorithm,
            seed,
            curve_count,
            metrics,
            nodes,
            edges,
        })
    }
}
