//! Inner tube volume of the tiling: exact head/tail evaluation, a Monte
//! Carlo oracle, tube curves and asymptotic slopes.

mod curve;
mod montecarlo;

pub use curve::{asymptotic_slope, eps_grid, tube_curve, tube_curve_via_measure, SlopeFit, TubeCurve};
pub use montecarlo::{monte_carlo_tube, McEstimate, DEFAULT_SEED};

use crate::geom2d::neumaier_sum;
use crate::ifs::{IfsError, Limits};
use crate::spectra::scaling_measure;
use crate::tiling::{tiles_down_to, TilingError, TilingSpec};
use crate::{Component, Tol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TubeError {
    #[error("Σ r_j² = {0} >= 1: total tile area diverges")]
    DivergentTail(f64),
    #[error("tube volumes require a self-similar system")]
    NotSelfSimilar,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("curve spans too little range below the smallest generator inradius")]
    InsufficientRange,
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

impl From<IfsError> for TubeError {
    fn from(e: IfsError) -> Self {
        TubeError::Tiling(e.into())
    }
}

/// Samples used for the inner tube of a nonconvex generator.
const NONCONVEX_SAMPLES: usize = 1 << 20;

/// `V(ε)` with its decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeValue {
    pub eps: f64,
    pub value: f64,
    /// Tiles with inradius `>= ε` (evaluated individually).
    pub head_tiles: u128,
    /// Total area of the remaining tiles, each fully inside its own tube.
    pub tail_mass: f64,
    /// False when some generator's tube area was sampled.
    pub exact: bool,
}

/// Generators, ratios and the total tile area `S = Σ_q A_q/(1 − Σ_j r_j²)`.
#[derive(Clone, Debug)]
pub struct TubeModel {
    ratios: Vec<f64>,
    generators: Vec<Component>,
    areas: Vec<f64>,
    inradii: Vec<f64>,
    total_area: f64,
    erosion_tol: Tol,
    spec: Option<TilingSpec>,
    limits: Limits,
}

impl TubeModel {
    pub fn new(spec: &TilingSpec, limits: &Limits) -> Result<Self, TubeError> {
        let ratios = spec.system().ratios().ok_or(TubeError::NotSelfSimilar)?;
        let mut m = Self::from_parts(ratios, spec.generators().to_vec(), spec.hull().diameter(), limits)?;
        m.spec = Some(spec.clone());
        Ok(m)
    }

    /// A model from raw parts; `ratios` may be empty (the generators are then
    /// the only tiles).
    pub fn from_parts(ratios: Vec<f64>, generators: Vec<Component>, diam: f64, limits: &Limits) -> Result<Self, TubeError> {
        let sq: f64 = ratios.iter().map(|r| r * r).sum();
        if sq >= 1.0 {
            return Err(TubeError::DivergentTail(sq));
        }
        if generators.is_empty() {
            return Err(TubeError::InvalidArgument("no generators".into()));
        }
        let areas: Vec<f64> = generators.iter().map(|g| g.area).collect();
        let inradii: Vec<f64> = generators.iter().map(|g| g.inradius).collect();
        let total_area = neumaier_sum(areas.iter().copied()) / (1.0 - sq);
        Ok(Self {
            ratios,
            generators,
            areas,
            inradii,
            total_area,
            erosion_tol: Tol::with_relative(1e-13, 1e-16, diam),
            spec: None,
            limits: *limits,
        })
    }

    /// `S`, the total area of all tiles.
    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    pub fn generator_inradii(&self) -> &[f64] {
        &self.inradii
    }

    /// Inner tube area of `G_q`: `(value, exact)`.
    pub fn v_generator(&self, q: usize, eps: f64) -> (f64, bool) {
        let g = &self.generators[q];
        if eps <= 0.0 {
            return (0.0, true);
        }
        if eps >= g.inradius {
            return (g.area, g.hull.is_some());
        }
        match g.exact_inner_tube_area(eps, &self.erosion_tol) {
            Some(v) => (v, true),
            None => (sampled_tube_area(g, eps), false),
        }
    }

    fn check_eps(eps: f64) -> Result<(), TubeError> {
        if eps > 0.0 && eps.is_finite() {
            Ok(())
        } else {
            Err(TubeError::InvalidArgument(format!("eps must be positive, got {eps}")))
        }
    }

    /// `V(ε)` by enumerating the head tiles `g_q·ρ_w >= ε` one by one.
    pub fn volume(&self, eps: f64) -> Result<TubeValue, TubeError> {
        Self::check_eps(eps)?;
        let Some(spec) = &self.spec else {
            return self.volume_via_measure(eps);
        };
        let mut cache: HashMap<(usize, u64), (f64, bool)> = HashMap::new();
        let mut corrections = Vec::new();
        let mut head_area = Vec::new();
        let mut exact = true;
        let mut iter = tiles_down_to(spec, eps, &self.limits)?;
        for tile in iter.by_ref() {
            let rho = tile.scale.expect("self-similar tiles carry a scale");
            let (v, ex) = *cache
                .entry((tile.q, rho.to_bits()))
                .or_insert_with(|| self.v_generator(tile.q, eps / rho));
            exact &= ex;
            let r2 = rho * rho;
            corrections.push(r2 * (v - self.areas[tile.q]));
            head_area.push(r2 * self.areas[tile.q]);
        }
        if iter.truncated() {
            return Err(IfsError::BudgetExceeded { requested: self.limits.budget as u128 + 1, cap: self.limits.budget }.into());
        }
        let head_tiles = corrections.len() as u128;
        Ok(TubeValue {
            eps,
            value: self.total_area + neumaier_sum(corrections.into_iter()),
            head_tiles,
            tail_mass: self.total_area - neumaier_sum(head_area.into_iter()),
            exact,
        })
    }

    /// `V(ε)` paired against the geometric measure: per generator, the atoms
    /// `ρ` of the scaling measure with `g_q·ρ >= ε`, weighted by multiplicity.
    pub fn volume_via_measure(&self, eps: f64) -> Result<TubeValue, TubeError> {
        Self::check_eps(eps)?;
        let mut corrections = Vec::new();
        let mut head_area = Vec::new();
        let mut head_tiles = 0u128;
        let mut exact = true;
        for (q, &g) in self.inradii.iter().enumerate() {
            if g < eps {
                continue;
            }
            let atoms = if self.ratios.is_empty() {
                vec![(1.0, 1u128)]
            } else {
                scaling_measure(&self.ratios, (eps / g).min(1.0 - f64::EPSILON), &self.limits)?.atoms
            };
            for (x, w) in atoms {
                let rho = 1.0 / x;
                if g * rho < eps {
                    continue;
                }
                let (v, ex) = self.v_generator(q, eps / rho);
                exact &= ex;
                let r2 = rho * rho * w as f64;
                corrections.push(r2 * (v - self.areas[q]));
                head_area.push(r2 * self.areas[q]);
                head_tiles += w;
            }
        }
        Ok(TubeValue {
            eps,
            value: self.total_area + neumaier_sum(corrections.into_iter()),
            head_tiles,
            tail_mass: self.total_area - neumaier_sum(head_area.into_iter()),
            exact,
        })
    }
}

/// Monte Carlo inner tube area of a (nonconvex) component, fixed seed.
fn sampled_tube_area(g: &Component, eps: f64) -> f64 {
    let pts: Vec<_> = g.cells.cells.iter().flat_map(|c| c.vertices().iter().copied()).collect();
    let (lo, hi) = pts.iter().fold(
        ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| ((lo.0.min(p.x), lo.1.min(p.y)), (hi.0.max(p.x), hi.1.max(p.y))),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut inside, mut hits) = (0usize, 0usize);
    for _ in 0..NONCONVEX_SAMPLES {
        let p = crate::Point2::new(lo.0 + (hi.0 - lo.0) * rng.random::<f64>(), lo.1 + (hi.1 - lo.1) * rng.random::<f64>());
        if g.contains(p, 0.0) {
            inside += 1;
            if g.distance_to_boundary(p) < eps {
                hits += 1;
            }
        }
    }
    if inside == 0 {
        return g.area;
    }
    g.area * hits as f64 / inside as f64
}

/// Inner tube area of generator `q` at `eps`, and whether it is exact.
pub fn v_eps_generator(spec: &TilingSpec, q: usize, eps: f64) -> Result<(f64, bool), TubeError> {
    Ok(TubeModel::new(spec, &Limits::default())?.v_generator(q, eps))
}

/// `V(ε)` for the tiling of `spec`.
pub fn tube_volume(spec: &TilingSpec, eps: f64, limits: &Limits) -> Result<TubeValue, TubeError> {
    TubeModel::new(spec, limits)?.volume(eps)
}
