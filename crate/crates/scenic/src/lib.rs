//! Scenic curves and routes over weighted two-class point sets in the plane.
//!
//! Given red and blue landmarks with positive weights, every red-blue pair
//! induces a scenic curve (an Apollonius circle, or the perpendicular
//! bisector for equal weights). The curves are assembled into an arrangement
//! graph whose nodes are curve intersections and whose edges are the arcs
//! between them, disconnected components are bridged by shortest straight
//! segments, and routes covering every curve are generated by three
//! heuristics (ACU, ACCH, DPE) on top of all-pairs shortest paths.

pub mod apsp;
pub mod arrangement;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod hull;
pub mod io;
pub mod metrics;
pub mod route;
pub mod svg;
pub mod synth;

pub use crate::apsp::{compute_apsp, reconstruct_path, ApspTable};
pub use crate::arrangement::{
    build_arrangement, bridge_components, connected_components, Arrangement, Edge, EdgeKind, Node,
    NodeKind,
};
pub use crate::error::ScenicError;
pub use crate::experiment::{run_random_experiment, ExperimentConfig, ExperimentSummary};
pub use crate::geometry::{
    arc_length, intersect, scenic_curve, CurveKind, Orientation, Point, PointClass, ScenicCurve,
    WeightedPoint,
};
pub use crate::hull::convex_hull;
pub use crate::metrics::{requirement_report, route_metrics, RequirementReport, RouteMetrics};
pub use crate::route::{
    acch_route, acu_route, dpe_route, seed_edges, Route, RouteAlgorithm, SeedEdgeSet,
};
pub use crate::synth::{generate_synthetic, SynthConfig, SynthShape};
