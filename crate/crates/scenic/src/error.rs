use thiserror::Error;

use crate::geometry::Point;

#[derive(Debug, Error)]
pub enum ScenicError {
    #[error("degenerate pair: points {first} and {second} share a position")]
    DegeneratePair { first: u32, second: u32 },

    #[error("point {id} has a non-positive weight")]
    NonPositiveWeight { id: u32 },

    #[error("duplicate point id {id}")]
    DuplicateId { id: u32 },

    #[error("both classes required: point set has no {missing} points")]
    EmptyClass { missing: &'static str },

    #[error("graph is disconnected; bridge components first")]
    Disconnected,

    #[error("point ({}, {}) does not lie on the curve", point.x, point.y)]
    PointNotOnCurve { point: Point },

    #[error("route is empty")]
    EmptyRoute,

    #[error("parse error: {0}")]
    Parse(String),
}
