//! Deterministic synthetic point configurations: alternating grid and line,
//! split half-line, and split half-circle layouts.

use std::fmt;

use crate::error::ScenicError;
use crate::geometry::{PointClass, WeightedPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SynthShape {
    GridAlternating,
    LineAlternating,
    HalflineSplit,
    HalfcircleSplit,
}

impl SynthShape {
    pub fn as_str(self) -> &'static str {
        match self {
            SynthShape::GridAlternating => "grid_alternating",
            SynthShape::LineAlternating => "line_alternating",
            SynthShape::HalflineSplit => "halfline_split",
            SynthShape::HalfcircleSplit => "halfcircle_split",
        }
    }

    pub fn parse(raw: &str) -> Option<SynthShape> {
        match raw {
            "grid_alternating" => Some(SynthShape::GridAlternating),
            "line_alternating" => Some(SynthShape::LineAlternating),
            "halfline_split" => Some(SynthShape::HalflineSplit),
            "halfcircle_split" => Some(SynthShape::HalfcircleSplit),
        _ => None,
        }
    }

    /// Blue/red weight ratio used when none is given: 0.5 for the
    /// half-circle layout, 0.75 otherwise.
    pub fn default_delta(self) -> f64 {
        match self {
            SynthShape::HalfcircleSplit => 0.5,
            _ => 0.75,
        }
    }

    /// Points per class when none is given: 8 for the grid (a 4x4 board),
    /// 4 for the linear and circular layouts.
    pub fn default_count(self) -> usize {
        match self {
            SynthShape::GridAlternating => 8,
            _ => 4,
        }
    }
}

impl fmt::Display for SynthShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub shape: SynthShape,
    /// Points per class.
    pub count: usize,
    /// Grid/line spacing, or the circle radius for the half-circle layout.
    pub extent: f64,
    /// Uniform blue/red weight ratio; red weights are 1.
    pub delta: f64,
}

impl SynthConfig {
    pub fn new(shape: SynthShape) -> SynthConfig {
        SynthConfig {
            shape,
            count: shape.default_count(),
            extent: match shape {
                SynthShape::HalfcircleSplit => 20.0,
                _ => 10.0,
            },
            delta: shape.default_delta(),
        }
    }
}

/// Lay out `2 * count` weighted points per the configured shape. Red points
/// carry weight 1, blue points weight `delta`.
pub fn generate_synthetic(cfg: &SynthConfig) -> Result<Vec<WeightedPoint>, ScenicError> {
    if cfg.count < 1 {
        return Err(ScenicError::Parse("count must be at least 1".into()));
    }
    if cfg.delta <= 0.0 || !cfg.delta.is_finite() {
        return Err(ScenicError::Parse("delta must be positive".into()));
    }
    if cfg.extent <= 0.0 || !cfg.extent.is_finite() {
        return Err(ScenicError::Parse("spacing/radius must be positive".into()));
    }

    let total = 2 * cfg.count;
    let class_of = |red: bool| if red { PointClass::Red } else { PointClass::Blue };
    let weight_of = |red: bool| if red { 1.0 } else { cfg.delta };
    let mut out = Vec::with_capacity(total);
    let mut push = |id: usize, red: bool, x: f64, y: f64| {
        out.push(WeightedPoint::new(
            id as u32,
            class_of(red),
            x,
            y,
            weight_of(red),
        ));
    };

    match cfg.shape {
        SynthShape::GridAlternating => {
            // Checkerboard classes on an even-sided board so both classes
            // come out exactly `count` strong.
            let mut side = 2;
            while side * side < total {
                side += 2;
            }
            for k in 0..total {
                let (row, col) = (k / side, k % side);
                push(
                    k,
                    (row + col) % 2 == 0,
                    col as f64 * cfg.extent,
                    row as f64 * cfg.extent,
                );
            }
        }
        SynthShape::LineAlternating => {
            for k in 0..total {
                push(k, k % 2 == 0, k as f64 * cfg.extent, 0.0);
            }
        }
        SynthShape::HalflineSplit => {
            for k in 0..total {
                push(k, k < cfg.count, k as f64 * cfg.extent, 0.0);
            }
        }
        SynthShape::HalfcircleSplit => {
            for k in 0..total {
                let angle = std::f64::consts::TAU * k as f64 / total as f64;
                push(
                    k,
                    k < cfg.count,
                    cfg.extent * angle.cos(),
                    cfg.extent * angle.sin(),
                );
            }
        }
    }
    Ok(out)
}
