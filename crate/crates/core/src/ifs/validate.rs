use super::{IfsError, IfsSystem};
use crate::geom2d::subtract_all;
use crate::{CellSet, ConvexPoly, Tol};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OffendingPair {
    /// 1-based map indices, `j < l`.
    pub j: usize,
    pub l: usize,
    pub overlap_area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub contraction_ok: bool,
    pub tileset_ok: bool,
    pub offending_pairs: Vec<OffendingPair>,
    pub nontrivial_ok: bool,
    /// `area(C) − area(∪_j φ_j(C))`.
    pub residual_area: f64,
    pub hull_area: f64,
}

impl ValidationReport {
    pub fn admissible(&self) -> bool {
        self.contraction_ok && self.tileset_ok && self.nontrivial_ok
    }
}

/// Checks the tileset condition (hull images overlap in area at most
/// `tol.area`) and nontriviality (`Φ(C)` leaves area in `C`).
pub fn validate(sys: &IfsSystem, hull: &ConvexPoly, tol: &Tol) -> Result<ValidationReport, IfsError> {
    sys.require_geometry()?;
    let images = sys
        .maps()
        .iter()
        .map(|f| f.apply_poly(hull))
        .collect::<Result<Vec<_>, _>>()?;
    let mut offending_pairs = Vec::new();
    for j in 0..images.len() {
        for l in j + 1..images.len() {
            let overlap_area = images[j].overlap_area(&images[l], tol);
            if overlap_area > tol.area {
                offending_pairs.push(OffendingPair { j: j + 1, l: l + 1, overlap_area });
            }
        }
    }
    let residual = subtract_all(&CellSet::single(hull.clone()), &images, tol);
    let residual_area = residual.area();
    Ok(ValidationReport {
        contraction_ok: sys.contraction_bound() < 1.0,
        tileset_ok: offending_pairs.is_empty(),
        offending_pairs,
        nontrivial_ok: residual_area > tol.area,
        residual_area,
        hull_area: hull.area(),
    })
}
