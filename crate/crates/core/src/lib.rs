//! Canonical self-affine tilings of the convex hull of an iterated function
//! system attractor, together with the scaling and geometric zeta functions,
//! complex dimensions and inner tube volumes of the tiling.
//!
//! The planar kernel in [`geom2d`] is generic over the scalar type; the
//! aliases below fix it to `f64`, which every other module uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod geom2d;
pub mod ifs;
pub mod tiling;
pub mod tube;
pub mod scalar;
pub mod spectra;

pub use scalar::Real;

pub type Point2 = geom2d::Point2<f64>;
pub type Mat2 = geom2d::Mat2<f64>;
pub type AffineMap2 = geom2d::AffineMap2<f64>;
pub type ConvexPoly = geom2d::ConvexPoly<f64>;
pub type CellSet = geom2d::CellSet<f64>;
pub type Component = geom2d::Component<f64>;
pub type HalfPlane = geom2d::HalfPlane<f64>;
pub type Tol = geom2d::Tol<f64>;
