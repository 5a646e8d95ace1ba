//! The canonical tiling of the hull: hull iterates, tilesets, generators and
//! lazily enumerated tiles `φ_w(G_q)`.

mod enumerate;
mod structure;
mod svg;

pub use enumerate::{hull_iterate, hull_iterates, tile_cells, tiles_by_level, tiles_down_to, tileset, TileIter, Tileset};
pub use structure::{verify_structure, LevelReport, StructureReport};
pub use svg::{render_svg, RenderDepth};

use crate::geom2d::{components, subtract_all};
use crate::ifs::{estimate_hull, validate, IfsError, IfsSystem, Limits, ValidationReport, Word};
use crate::{AffineMap2, CellSet, Component, ConvexPoly, Tol};
use thiserror::Error;

/// Relative hull refinement target used when building a tiling. Tighter than
/// the reporting default so that hull images leave no slivers in `C ∖ Φ(C)`.
const TILING_HULL_TOL: f64 = 1e-13;
/// Largest acceptable relative stabilization gap.
const MAX_HULL_GAP: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TilingError {
    #[error("system is not admissible (tileset condition: {tileset_ok}, nontrivial: {nontrivial_ok})")]
    NotAdmissible { tileset_ok: bool, nontrivial_ok: bool },
    #[error("{count} generators exceed the cap of {cap}")]
    TooManyComponents { count: usize, cap: usize },
    #[error("operation requires a self-similar system")]
    NotSelfSimilar,
    #[error("hull estimate did not stabilize (gap {0})")]
    HullNotStabilized(f64),
    #[error(transparent)]
    Ifs(#[from] IfsError),
}

impl From<crate::geom2d::GeomError> for TilingError {
    fn from(e: crate::geom2d::GeomError) -> Self {
        TilingError::Ifs(e.into())
    }
}

/// An admissible system together with its hull and generators `G_q`.
#[derive(Clone, Debug)]
pub struct TilingSpec {
    sys: IfsSystem,
    hull: ConvexPoly,
    hull_gap: f64,
    tol: Tol,
    validation: ValidationReport,
    generators: Vec<Component>,
}

impl TilingSpec {
    pub fn system(&self) -> &IfsSystem {
        &self.sys
    }

    pub fn hull(&self) -> &ConvexPoly {
        &self.hull
    }

    /// Hausdorff gap of the final hull refinement.
    pub fn hull_gap(&self) -> f64 {
        self.hull_gap
    }

    pub fn tol(&self) -> &Tol {
        &self.tol
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    /// Generators in index order (`q = 1..Q` is position + 1).
    pub fn generators(&self) -> &[Component] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_inradii(&self) -> Vec<f64> {
        self.generators.iter().map(|g| g.inradius).collect()
    }

    pub fn generator_areas(&self) -> Vec<f64> {
        self.generators.iter().map(|g| g.area).collect()
    }

    /// Scaling ratios, or [`TilingError::NotSelfSimilar`].
    pub fn ratios(&self) -> Result<Vec<f64>, TilingError> {
        self.sys.ratios().ok_or(TilingError::NotSelfSimilar)
    }
}

/// One tile `φ_w(G_q)`. `q` is 0-based; the tile's level is `|w| + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TileHandle {
    pub word: Word,
    pub q: usize,
    pub map: AffineMap2,
    /// Similarity ratio `ρ_w` of `φ_w` (self-similar systems only).
    pub scale: Option<f64>,
    /// `g_q·ρ_w` (self-similar systems only).
    pub inradius: Option<f64>,
}

impl TileHandle {
    pub fn level(&self) -> usize {
        self.word.len() + 1
    }
}

/// Validates `sys`, estimates its hull and extracts the generators as the
/// components of `C ∖ Φ(C)`.
pub fn build_tiling(sys: &IfsSystem, limits: &Limits) -> Result<TilingSpec, TilingError> {
    sys.require_geometry()?;
    let est = estimate_hull(sys, TILING_HULL_TOL)?;
    let diam = est.hull.diameter();
    if !(est.stabilization_gap <= MAX_HULL_GAP * diam) {
        return Err(TilingError::HullNotStabilized(est.stabilization_gap));
    }
    let tol = Tol::for_diameter(diam);
    let validation = validate(sys, &est.hull, &tol)?;
    if !(validation.tileset_ok && validation.nontrivial_ok) {
        return Err(TilingError::NotAdmissible {
            tileset_ok: validation.tileset_ok,
            nontrivial_ok: validation.nontrivial_ok,
        });
    }
    let images = sys
        .maps()
        .iter()
        .map(|f| f.apply_poly(&est.hull))
        .collect::<Result<Vec<_>, _>>()?;
    let rest = subtract_all(&CellSet::single(est.hull.clone()), &images, &tol);
    if rest.len() > limits.max_components.saturating_mul(64) {
        return Err(TilingError::TooManyComponents { count: rest.len(), cap: limits.max_components });
    }
    let generators = components(&rest, &tol);
    if generators.len() > limits.max_components {
        return Err(TilingError::TooManyComponents { count: generators.len(), cap: limits.max_components });
    }
    Ok(TilingSpec {
        sys: sys.clone(),
        hull: est.hull,
        hull_gap: est.stabilization_gap,
        tol,
        validation,
        generators,
    })
}
