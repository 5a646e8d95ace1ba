//! Self-affine systems: configuration, word combinatorics, attractor
//! sampling, hull estimation and admissibility checks.

mod config;
mod hull;
mod koch;
mod validate;
mod words;

pub use config::{bundled, load_system, MapConfig, SystemConfig, BUNDLED};
pub use hull::{estimate_hull, sample_attractor, HullEstimate, DEFAULT_HULL_TOL};
pub use koch::koch_family;
pub use validate::{validate, OffendingPair, ValidationReport};
pub use words::{map_of_word, words, Word, Words};

use crate::geom2d::GeomError;
use crate::{AffineMap2, Point2};
use thiserror::Error;

/// Default cap on enumerated items (words, points, tiles, atoms).
pub const DEFAULT_BUDGET: usize = 4_000_000;
/// Default cap on the number of generators.
pub const DEFAULT_MAX_COMPONENTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IfsError {
    #[error("malformed system config: {0}")]
    Parse(String),
    #[error("map {index} is not a contraction (spectral bound {bound})")]
    NotContractive { index: usize, bound: f64 },
    #[error("a system needs at least 2 maps, got {0}")]
    TooFewMaps(usize),
    #[error("enumeration of {requested} items exceeds the budget of {cap}")]
    BudgetExceeded { requested: u128, cap: usize },
    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),
    #[error("system '{0}' carries scaling ratios only; planar geometry is unsupported")]
    GeometryUnsupported(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// Enumeration caps, shared by every module that expands the word tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub budget: usize,
    pub max_components: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, max_components: DEFAULT_MAX_COMPONENTS }
    }
}

impl Limits {
    pub fn with_budget(budget: usize) -> Self {
        Self { budget, ..Self::default() }
    }

    pub(crate) fn check(&self, requested: u128) -> Result<(), IfsError> {
        if requested > self.budget as u128 {
            Err(IfsError::BudgetExceeded { requested, cap: self.budget })
        } else {
            Ok(())
        }
    }
}

/// A validated family of `J >= 2` contracting affine maps.
#[derive(Clone, Debug, PartialEq)]
pub struct IfsSystem {
    name: String,
    maps: Vec<AffineMap2>,
    geometry_supported: bool,
}

impl IfsSystem {
    pub fn new(name: impl Into<String>, maps: Vec<AffineMap2>) -> Result<Self, IfsError> {
        if maps.len() < 2 {
            return Err(IfsError::TooFewMaps(maps.len()));
        }
        if maps.len() > u16::MAX as usize {
            return Err(IfsError::Parse(format!("too many maps: {}", maps.len())));
        }
        for (index, m) in maps.iter().enumerate() {
            let bound = m.spectral_bound();
            if !(bound < 1.0) || !bound.is_finite() {
                return Err(IfsError::NotContractive { index: index + 1, bound });
            }
        }
        Ok(Self { name: name.into(), maps, geometry_supported: true })
    }

    /// A self-similar system known only through its scaling ratios (for
    /// instance a 3D system); zeta computations work, planar geometry does not.
    pub fn ratios_only(name: impl Into<String>, ratios: &[f64]) -> Result<Self, IfsError> {
        let maps = ratios
            .iter()
            .map(|&r| AffineMap2::similarity(r, 0.0, false, Point2::origin()))
            .collect();
        let mut sys = Self::new(name, maps)?;
        sys.geometry_supported = false;
        Ok(sys)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn maps(&self) -> &[AffineMap2] {
        &self.maps
    }

    /// Number of maps `J`.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn geometry_supported(&self) -> bool {
        self.geometry_supported
    }

    pub fn is_self_similar(&self) -> bool {
        self.maps.iter().all(|m| m.is_similarity())
    }

    /// Scaling ratios `r_j` when every map is a similarity.
    pub fn ratios(&self) -> Option<Vec<f64>> {
        self.maps.iter().map(|m| m.ratio()).collect()
    }

    /// `Σ_j |det A_j|`, the area contraction factor of one application of Φ.
    pub fn area_factor(&self) -> f64 {
        self.maps.iter().map(|m| m.det().abs()).sum()
    }

    /// Largest spectral bound `λ` among the maps.
    pub fn contraction_bound(&self) -> f64 {
        self.maps.iter().map(|m| m.spectral_bound()).fold(0.0, f64::max)
    }

    pub fn require_geometry(&self) -> Result<(), IfsError> {
        if self.geometry_supported {
            Ok(())
        } else {
            Err(IfsError::GeometryUnsupported(self.name.clone()))
        }
    }

    /// The system conjugated by the dilation `x -> t x`.
    pub fn scaled(&self, t: f64) -> Self {
        Self {
            name: format!("{}×{t}", self.name),
            maps: self.maps.iter().map(|m| m.conjugate_by_scale(t)).collect(),
            geometry_supported: self.geometry_supported,
        }
    }
}

/// Unique fixed point of a contraction.
pub fn fixed_point(f: &AffineMap2) -> Point2 {
    f.fixed_point().expect("contractions have an invertible I - A")
}
