//! Planar convex geometry with explicit tolerances: affine maps, convex
//! polygons, half-plane clipping, region subtraction into convex cells,
//! connected components, inradii and inner parallel bodies.
//!
//! All "interior" questions are answered with area or length thresholds
//! ([`Tol`]) rather than point predicates on boundaries.

mod affine;
mod cells;
mod hull;
mod lp;
mod point;
mod poly;

pub use affine::{AffineMap2, MapKind};
pub use cells::{components, inradius_component, neumaier_sum, subtract, subtract_all, CellSet, Component};
pub use hull::{convex_hull, hull_points};
pub use point::{Mat2, Point2};
pub use poly::{point_segment_distance, ConvexPoly, HalfPlane};

use crate::scalar::Real;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon has no area")]
    ZeroArea,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("affine image of polygon is degenerate")]
    DegenerateImage,
    #[error("points do not span the plane (attractor has dimension < 2)")]
    DegenerateHull,
}

/// Absolute length and area tolerances for one working scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol<T> {
    pub geom: T,
    pub area: T,
}

impl<T: Real> Tol<T> {
    /// Tolerances for a configuration of diameter `diam`:
    /// `geom = 1e-9·diam`, `area = 1e-12·diam²` in double precision.
    pub fn for_diameter(diam: T) -> Self {
        Self::with_relative(T::relative_geom(), T::relative_area(), diam)
    }

    pub fn with_relative(rel_geom: T, rel_area: T, diam: T) -> Self {
        Self { geom: rel_geom * diam, area: rel_area * diam * diam }
    }

    pub fn unit() -> Self {
        Self::for_diameter(T::one())
    }
}
