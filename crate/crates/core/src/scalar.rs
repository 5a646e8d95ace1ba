//! Scalar abstraction for the planar geometry kernel.
//!
//! Everything in [`crate::geom2d`] is generic over [`Real`]. The higher
//! layers (systems, tilings, zeta functions, tube volumes) are pinned to
//! `f64` through the aliases at the crate root, since their tolerances are
//! stated for double precision.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating point scalar usable by the geometry kernel: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative length tolerance: `1e-9` in double precision, widened for
    /// narrower types so that it stays well above rounding noise.
    fn relative_geom() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(1e3))
    }

    /// Relative area tolerance (multiplied by diameter squared).
    fn relative_area() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(1e3))
    }
}

impl Real for f32 {}
impl Real for f64 {}
