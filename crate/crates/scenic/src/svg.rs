//! Deterministic SVG rendering of arrangements and routes.
//!
//! Color convention: scenic curves green, route seed edges magenta, route
//! connector edges bluish-green, repeated edges overlaid in yellow, bridge
//! segments gray, landmarks as class-colored dots scaled by weight.

use std::collections::BTreeSet;

use crate::arrangement::{Arrangement, Edge, EdgeKind};
use crate::geometry::{CurveKind, Point, PointClass, TAU};
use crate::io::{fmt_sig9, EdgeRole, RouteEdgeGeom, RouteFile};
use crate::metrics::repeated_edges;
use crate::route::{Route, StepKind};

const COLOR_CURVE: &str = "green";
const COLOR_BRIDGE: &str = "#888888";
const COLOR_SEED: &str = "magenta";
const COLOR_CONNECTOR: &str = "#009e73";
const COLOR_REPEATED: &str = "yellow";

#[derive(Clone, Copy, Debug)]
enum Shape {
    Circle { c: Point, r: f64 },
    Arc { c: Point, r: f64, start: f64, sweep: f64 },
    Seg { a: Point, b: Point },
}

#[derive(Clone, Copy, Debug)]
struct Styled {
    shape: Shape,
    color: &'static str,
    /// Stroke width as a fraction of the drawing diagonal.
    width: f64,
    dashed: bool,
}

#[derive(Clone, Copy, Debug)]
struct Dot {
    at: Point,
    /// Radius as a fraction of the drawing diagonal.
    radius: f64,
    color: &'static str,
}

fn edge_shape(arr: &Arrangement, e: &Edge) -> Shape {
    match e.kind {
        EdgeKind::Arc {
            center,
            radius,
            start_angle,
            sweep,
            ..
        } => {
            if sweep >= TAU - 1e-9 {
                Shape::Circle {
                    c: center,
                    r: radius,
                }
            } else {
                Shape::Arc {
                    c: center,
                    r: radius,
                    start: start_angle,
                    sweep,
                }
            }
        }
        EdgeKind::Loop { curve } => match arr.curves[curve].kind {
            CurveKind::Circle { center, radius } => Shape::Circle {
                c: center,
                r: radius,
            },
            CurveKind::Line { .. } => unreachable!("loops live on circles"),
        },
        EdgeKind::Segment { .. } | EdgeKind::Bridge => Shape::Seg {
            a: arr.nodes[e.endpoints.0].position,
            b: arr.nodes[e.endpoints.1].position,
        },
    }
}

/// Render an arrangement, optionally overlaying a route generated on it.
pub fn render_svg(arr: &Arrangement, route: Option<&Route>) -> String {
    let mut items = Vec::new();
    for e in &arr.edges {
        let (color, dashed) = if e.kind.is_bridge() {
            (COLOR_BRIDGE, true)
        } else {
            (COLOR_CURVE, false)
        };
        items.push(Styled {
            shape: edge_shape(arr, e),
            color,
            width: 0.0015,
            dashed,
        });
    }

    if let Some(route) = route {
        let seed_ids: BTreeSet<usize> = route
            .construction_log
            .iter()
            .filter(|s| s.kind == StepKind::Seed)
            .flat_map(|s| s.edges.iter().copied())
            .collect();
        let repeated = repeated_edges(route, arr);
        // Connectors under seeds, yellow repeats on top.
        for pass in 0..3 {
            for &eid in &route.edges {
                let e = &arr.edges[eid];
                let styled = match pass {
                    0 if !seed_ids.contains(&eid) => Styled {
                        shape: edge_shape(arr, e),
                        color: COLOR_CONNECTOR,
                        width: 0.004,
                        dashed: false,
                    },
                    1 if seed_ids.contains(&eid) => Styled {
                        shape: edge_shape(arr, e),
                        color: COLOR_SEED,
                        width: 0.004,
                        dashed: false,
                    },
                    2 if repeated.contains(&eid) => Styled {
                        shape: edge_shape(arr, e),
                        color: COLOR_REPEATED,
                        width: 0.002,
                        dashed: false,
                    },
                    _ => continue,
                };
                items.push(styled);
            }
        }
    }

    let max_w = arr
        .points
        .iter()
        .map(|p| p.weight)
        .fold(f64::NEG_INFINITY, f64::max);
    let dots: Vec<Dot> = arr
        .points
        .iter()
        .map(|p| Dot {
            at: p.pos,
            radius: 0.012 * (0.4 + 0.6 * p.weight / max_w),
            color: match p.class {
                PointClass::Red => "red",
                PointClass::Blue => "blue",
            },
        })
        .collect();

    emit(&items, &dots)
}

/// Render a route from its file alone (no arrangement recomputation).
pub fn render_route_file(file: &RouteFile) -> String {
    let pos_of = |node: usize| {
        file.nodes
            .iter()
            .find(|(id, _)| *id == node)
            .map(|(_, p)| *p)
            .unwrap_or(Point::new(0.0, 0.0))
    };
    let mut items = Vec::new();
    for pass in 0..3 {
        for e in &file.edges {
            let shape = match e.geom {
                RouteEdgeGeom::Arc {
                    center,
                    radius,
                    start_angle,
                    sweep,
                    ..
                } => {
                    if sweep >= TAU - 1e-9 {
                        Shape::Circle {
                            c: center,
                            r: radius,
                        }
                    } else {
                        Shape::Arc {
                            c: center,
                            r: radius,
                            start: start_angle,
                            sweep,
                        }
                    }
                }
                RouteEdgeGeom::Loop { center, radius, .. } => Shape::Circle {
                    c: center,
                    r: radius,
                },
                RouteEdgeGeom::Segment { .. } | RouteEdgeGeom::Bridge => Shape::Seg {
                    a: pos_of(e.from),
                    b: pos_of(e.to),
                },
            };
            let styled = match pass {
                0 if e.role == EdgeRole::Connector => Styled {
                    shape,
                    color: COLOR_CONNECTOR,
                    width: 0.004,
                    dashed: false,
                },
                1 if e.role == EdgeRole::Seed => Styled {
                    shape,
                    color: COLOR_SEED,
                    width: 0.004,
                    dashed: false,
                },
                2 if e.repeated => Styled {
                    shape,
                    color: COLOR_REPEATED,
                    width: 0.002,
                    dashed: false,
                },
                _ => continue,
            };
            items.push(styled);
        }
    }
    emit(&items, &[])
}

fn emit(items: &[Styled], dots: &[Dot]) -> String {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: Point| {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    for it in items {
        match it.shape {
            Shape::Circle { c, r } | Shape::Arc { c, r, .. } => {
                grow(c + Point::new(r, r));
                grow(c - Point::new(r, r));
            }
            Shape::Seg { a, b } => {
                grow(a);
                grow(b);
            }
        }
    }
    for d in dots {
        grow(d.at);
    }
    if !lo.x.is_finite() {
        lo = Point::new(-1.0, -1.0);
        hi = Point::new(1.0, 1.0);
    }
    let diag = (hi - lo).norm().max(1e-9);
    let pad = diag * 0.04;
    lo = lo - Point::new(pad, pad);
    hi = hi + Point::new(pad, pad);

    // Math y points up; SVG y points down. Emit with y negated.
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        fmt_sig9(lo.x),
        fmt_sig9(-hi.y),
        fmt_sig9(hi.x - lo.x),
        fmt_sig9(hi.y - lo.y)
    ));
    for it in items {
        let width = fmt_sig9(it.width * diag);
        let dash = if it.dashed {
            format!(" stroke-dasharray=\"{}\"", fmt_sig9(0.01 * diag))
        } else {
            String::new()
        };
        match it.shape {
            Shape::Circle { c, r } => out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
                fmt_sig9(c.x),
                fmt_sig9(-c.y),
                fmt_sig9(r),
                it.color,
                width,
                dash
            )),
            Shape::Arc { c, r, start, sweep } => {
                let p0 = c + Point::new(start.cos(), start.sin()) * r;
                let p1 = c + Point::new((start + sweep).cos(), (start + sweep).sin()) * r;
                let large = if sweep > std::f64::consts::PI { 1 } else { 0 };
                // Math-ccw arcs run in the negative-angle direction once y
                // is flipped, so the sweep flag is always 0.
                out.push_str(&format!(
                    "<path d=\"M {} {} A {} {} 0 {} 0 {} {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
                    fmt_sig9(p0.x),
                    fmt_sig9(-p0.y),
                    fmt_sig9(r),
                    fmt_sig9(r),
                    large,
                    fmt_sig9(p1.x),
                    fmt_sig9(-p1.y),
                    it.color,
                    width,
                    dash
                ));
            }
            Shape::Seg { a, b } => out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
                fmt_sig9(a.x),
                fmt_sig9(-a.y),
                fmt_sig9(b.x),
                fmt_sig9(-b.y),
                it.color,
                width,
                dash
            )),
        }
    }
    for d in dots {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            fmt_sig9(d.at.x),
            fmt_sig9(-d.at.y),
            fmt_sig9(d.radius * diag),
            d.color
        ));
    }
    out.push_str("</svg>\n");
    out
}
