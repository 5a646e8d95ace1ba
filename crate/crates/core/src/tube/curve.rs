use super::{TubeError, TubeModel, TubeValue};
use serde::Serialize;

/// `V(ε)` sampled on a descending geometric grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TubeCurve {
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub head_tiles: Vec<u128>,
    pub tail_mass: Vec<f64>,
    /// `S`, the saturation value.
    pub total_area: f64,
    pub min_generator_inradius: f64,
    pub exact: bool,
}

/// `eps_max·10^{−i/ppd}` down to `eps_min` (included).
pub fn eps_grid(eps_max: f64, eps_min: f64, points_per_decade: usize) -> Result<Vec<f64>, TubeError> {
    if !(eps_min > 0.0 && eps_min <= eps_max && eps_max.is_finite()) || points_per_decade == 0 {
        return Err(TubeError::InvalidArgument(format!(
            "need 0 < eps_min <= eps_max and ppd >= 1 (got {eps_min}, {eps_max}, {points_per_decade})"
        )));
    }
    let decades = (eps_max / eps_min).log10();
    let n = (decades * points_per_decade as f64 - 1e-9).ceil().max(0.0) as usize;
    let mut grid: Vec<f64> = (0..n).map(|i| eps_max * 10f64.powf(-(i as f64) / points_per_decade as f64)).collect();
    grid.push(eps_min);
    Ok(grid)
}

/// Exact tube volumes on the grid of [`eps_grid`], tile by tile.
pub fn tube_curve(model: &TubeModel, eps_max: f64, eps_min: f64, points_per_decade: usize) -> Result<TubeCurve, TubeError> {
    curve_with(model, eps_max, eps_min, points_per_decade, TubeModel::volume)
}

/// Same as [`tube_curve`] but each value goes through
/// [`TubeModel::volume_via_measure`], which reaches much smaller `ε`.
pub fn tube_curve_via_measure(
    model: &TubeModel,
    eps_max: f64,
    eps_min: f64,
    points_per_decade: usize,
) -> Result<TubeCurve, TubeError> {
    curve_with(model, eps_max, eps_min, points_per_decade, TubeModel::volume_via_measure)
}

fn curve_with(
    model: &TubeModel,
    eps_max: f64,
    eps_min: f64,
    points_per_decade: usize,
    volume: fn(&TubeModel, f64) -> Result<TubeValue, TubeError>,
) -> Result<TubeCurve, TubeError> {
    use rayon::prelude::*;
    let grid = eps_grid(eps_max, eps_min, points_per_decade)?;
    let vals: Vec<TubeValue> = grid.par_iter().map(|&e| volume(model, e)).collect::<Result<_, _>>()?;
    Ok(TubeCurve {
        values: vals.iter().map(|v| v.value).collect(),
        head_tiles: vals.iter().map(|v| v.head_tiles).collect(),
        tail_mass: vals.iter().map(|v| v.tail_mass).collect(),
        exact: vals.iter().all(|v| v.exact),
        eps: grid,
        total_area: model.total_area(),
        min_generator_inradius: model.generator_inradii().iter().copied().fold(f64::INFINITY, f64::min),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(eps_lo, eps_hi)` of the fitted decade.
    pub window: (f64, f64),
    /// Range of `log(V(ε)·ε^{D−2})` over one multiplicative period at the
    /// small end of the grid (lattice systems).
    pub oscillation_amplitude: Option<f64>,
}

/// Least-squares slope of `log V` against `log ε` over the smallest decade of
/// the grid. `lattice` = `(D, r)` adds the oscillation amplitude over
/// `ε ∈ [ε_min, ε_min/r]`.
pub fn asymptotic_slope(curve: &TubeCurve, lattice: Option<(f64, f64)>) -> Result<SlopeFit, TubeError> {
    let eps_min = curve.eps.iter().copied().fold(f64::INFINITY, f64::min);
    if !(eps_min * 100.0 <= curve.min_generator_inradius * (1.0 + 1e-12)) {
        return Err(TubeError::InsufficientRange);
    }
    let hi = eps_min * 10.0 * (1.0 + 1e-12);
    let pts: Vec<(f64, f64)> = curve
        .eps
        .iter()
        .zip(&curve.values)
        .filter(|(e, _)| **e <= hi)
        .map(|(e, v)| (e.ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(TubeError::InsufficientRange);
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let oscillation_amplitude = lattice.map(|(d, r)| {
        let top = eps_min / r * (1.0 + 1e-12);
        let vals: Vec<f64> = curve
            .eps
            .iter()
            .zip(&curve.values)
            .filter(|(e, _)| **e <= top)
            .map(|(e, v)| v.ln() + (d - 2.0) * e.ln())
            .collect();
        let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    });
    Ok(SlopeFit { slope, intercept: my - slope * mx, window: (eps_min, eps_min * 10.0), oscillation_amplitude })
}
