//! Scenic-curve construction and curve/curve intersection primitives.
//!
//! A scenic point for a weighted pair sees both landmarks with equal apparent
//! weight: `w1 * d2 == w2 * d1`. The full locus is a circle when the weights
//! differ and the perpendicular bisector of the pair when they are equal.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::ScenicError;

/// Relative tolerance on the weight ratio below which a pair is treated as
/// equal-weighted and its curve degenerates to the bisector line.
pub const DELTA_ONE_REL_TOL: f64 = 1e-12;

pub const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn unit(self) -> Point {
        self / self.norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointClass {
    Red,
    Blue,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Red => "red",
            PointClass::Blue => "blue",
        }
    }

    pub fn parse(raw: &str) -> Option<PointClass> {
        match raw {
            "red" => Some(PointClass::Red),
            "blue" => Some(PointClass::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A landmark: class label, position, and a positive weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedPoint {
    pub id: u32,
    pub class: PointClass,
    pub pos: Point,
    pub weight: f64,
}

impl WeightedPoint {
    pub fn new(id: u32, class: PointClass, x: f64, y: f64, weight: f64) -> Self {
        Self {
            id,
            class,
            pos: Point::new(x, y),
            weight,
        }
    }
}

/// Curve geometry: a circle, or a line stored as point + unit direction.
///
/// Line directions are canonical (lexicographically positive) so that a
/// curve's identity does not depend on the order its defining pair was given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    Circle { center: Point, radius: f64 },
    Line { point: Point, dir: Point },
}

impl CurveKind {
    pub fn is_circle(&self) -> bool {
        matches!(self, CurveKind::Circle { .. })
    }

    /// Point on a circle at the given angle, or on a line at the given
    /// signed parameter along its direction.
    pub fn point_at(&self, t: f64) -> Point {
        match *self {
            CurveKind::Circle { center, radius } => {
                center + Point::new(t.cos(), t.sin()) * radius
            }
            CurveKind::Line { point, dir } => point + dir * t,
        }
    }

    /// Unsigned distance from `p` to the curve's point set.
    pub fn distance_to(&self, p: Point) -> f64 {
        match *self {
            CurveKind::Circle { center, radius } => (center.dist(p) - radius).abs(),
            CurveKind::Line { point, dir } => (p - point).cross(dir).abs(),
        }
    }
}

/// The scenic locus of one weighted point pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenicCurve {
    pub id: usize,
    /// Ids of the defining pair in the order the points were given
    /// (red, blue) everywhere the arrangement builds curves.
    pub pair: (u32, u32),
    /// Weight ratio w1 / w2 of the defining pair.
    pub delta: f64,
    pub kind: CurveKind,
}

impl ScenicCurve {
    /// Scenic-condition residual `|w1*d2 - w2*d1|` of a query point, given
    /// the defining pair. Zero (up to rounding) for points on the curve.
    pub fn residual(p1: &WeightedPoint, p2: &WeightedPoint, q: Point) -> f64 {
        (p1.weight * q.dist(p2.pos) - p2.weight * q.dist(p1.pos)).abs()
    }
}

/// Construct the scenic curve of a weighted pair.
///
/// Circle parameters come from the general-position conic form of the locus
/// equation; the canonical-frame closed forms (`r = delta*d/|delta^2-1|`,
/// center offset `delta^2*d/(delta^2-1)` along the pair axis) are kept as an
/// independent check in the tests.
pub fn scenic_curve(p1: &WeightedPoint, p2: &WeightedPoint) -> Result<ScenicCurve, ScenicError> {
    if p1.weight <= 0.0 || !p1.weight.is_finite() {
        return Err(ScenicError::NonPositiveWeight { id: p1.id });
    }
    if p2.weight <= 0.0 || !p2.weight.is_finite() {
        return Err(ScenicError::NonPositiveWeight { id: p2.id });
    }
    if p1.pos == p2.pos {
        return Err(ScenicError::DegeneratePair {
            first: p1.id,
            second: p2.id,
        });
    }

    let delta = p1.weight / p2.weight;
    let kind = if (p1.weight - p2.weight).abs() <= DELTA_ONE_REL_TOL * p1.weight.max(p2.weight) {
        // Equal weights: perpendicular bisector of the segment.
        let mid = (p1.pos + p2.pos) / 2.0;
        let dir = canonical_dir((p2.pos - p1.pos).perp().unit());
        CurveKind::Line { point: mid, dir }
    } else {
        // Conic form x^2 + y^2 - 2Gx - 2Fy + C = 0 of the locus, evaluated
        // with p1 translated to the origin; world coordinates would cancel
        // catastrophically when the circle is small far from the origin.
        let q = p2.pos - p1.pos;
        let d2 = delta * delta;
        let denom = d2 - 1.0;
        let g = d2 * q.x / denom;
        let f = d2 * q.y / denom;
        let c = d2 * q.dot(q) / denom;
        let r2 = (g * g + f * f - c).max(0.0);
        CurveKind::Circle {
            center: p1.pos + Point::new(g, f),
            radius: r2.sqrt(),
        }
    };

    Ok(ScenicCurve {
        id: 0,
        pair: (p1.id, p2.id),
        delta,
        kind,
    })
}

/// Flip a unit direction so that `(dx, dy) > (0, 0)` lexicographically.
fn canonical_dir(d: Point) -> Point {
    if d.x < 0.0 || (d.x == 0.0 && d.y < 0.0) {
        -d
    } else {
        d
    }
}

/// Intersection points of two curves: 0, 1 (tangency), or 2 points.
///
/// Symmetric in its arguments as a point set; the result is sorted by
/// `(x, y)` and computed in a canonical operand order so that swapping the
/// arguments returns identical points.
pub fn intersect(c1: &ScenicCurve, c2: &ScenicCurve, eps: f64) -> Vec<Point> {
    let mut pts = match (&c1.kind, &c2.kind) {
        (
            &CurveKind::Circle {
                center: a,
                radius: ra,
            },
            &CurveKind::Circle {
                center: b,
                radius: rb,
            },
        ) => {
            // Canonical operand order keeps the computation symmetric.
            if (a.x, a.y, ra) <= (b.x, b.y, rb) {
                circle_circle(a, ra, b, rb, eps)
            } else {
                circle_circle(b, rb, a, ra, eps)
            }
        }
        (&CurveKind::Circle { center, radius }, &CurveKind::Line { point, dir })
        | (&CurveKind::Line { point, dir }, &CurveKind::Circle { center, radius }) => {
            circle_line(center, radius, point, dir, eps)
        }
        (
            &CurveKind::Line { point: p1, dir: d1 },
            &CurveKind::Line { point: p2, dir: d2 },
        ) => {
            if (p1.x, p1.y) <= (p2.x, p2.y) {
                line_line(p1, d1, p2, d2)
            } else {
                line_line(p2, d2, p1, d1)
            }
        }
    };
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts
}

fn circle_circle(c1: Point, r1: f64, c2: Point, r2: f64, eps: f64) -> Vec<Point> {
    let d = c1.dist(c2);
    if d <= eps {
        // Concentric (including coincident): no isolated intersection points.
        return vec![];
    }
    let u = (c2 - c1) / d;
    if (d - (r1 + r2)).abs() <= eps {
        return vec![c1 + u * r1]; // external tangency
    }
    if (d - (r1 - r2).abs()).abs() <= eps {
        // Internal tangency: touch on the side of the larger circle.
        let sign = if r1 >= r2 { 1.0 } else { -1.0 };
        return vec![c1 + u * (r1 * sign)];
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return vec![];
    }
    let t = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - t * t).max(0.0).sqrt();
    let foot = c1 + u * t;
    let n = u.perp();
    vec![foot + n * h, foot - n * h]
}

fn circle_line(center: Point, radius: f64, point: Point, dir: Point, eps: f64) -> Vec<Point> {
    // Signed offset of the center from the line.
    let offset = (center - point).cross(dir);
    let foot = point + dir * (center - point).dot(dir);
    if (offset.abs() - radius).abs() <= eps {
        return vec![foot]; // tangency
    }
    if offset.abs() > radius {
        return vec![];
    }
    let h = (radius * radius - offset * offset).max(0.0).sqrt();
    vec![foot - dir * h, foot + dir * h]
}

fn line_line(p1: Point, d1: Point, p2: Point, d2: Point) -> Vec<Point> {
    let denom = d1.cross(d2);
    if denom.abs() < 1e-12 {
        return vec![]; // parallel or coincident
    }
    let t = (p2 - p1).cross(d2) / denom;
    vec![p1 + d1 * t]
}

/// Traversal direction for a directed circular arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Length of the directed arc of `curve` from `a` to `b`, or the segment
/// length for line curves. Errors when either point is off the curve.
pub fn arc_length(
    curve: &ScenicCurve,
    a: Point,
    b: Point,
    side: Orientation,
    eps: f64,
) -> Result<f64, ScenicError> {
    if curve.kind.distance_to(a) > eps {
        return Err(ScenicError::PointNotOnCurve { point: a });
    }
    if curve.kind.distance_to(b) > eps {
        return Err(ScenicError::PointNotOnCurve { point: b });
    }
    match curve.kind {
        CurveKind::Circle { center, radius } => {
            let ta = (a - center).angle();
            let tb = (b - center).angle();
            let ccw = (tb - ta).rem_euclid(TAU);
            let sweep = match side {
                Orientation::Ccw => ccw,
                Orientation::Cw => (ta - tb).rem_euclid(TAU),
            };
            Ok(radius * sweep)
        }
        CurveKind::Line { .. } => Ok(a.dist(b)),
    }
}

/// Normalize an angle into `[0, 2*pi)`.
pub fn norm_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}
