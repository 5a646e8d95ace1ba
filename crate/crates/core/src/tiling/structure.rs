use super::enumerate::{hull_iterate, tileset};
use super::{TilingError, TilingSpec};
use crate::geom2d::{components, neumaier_sum};
use crate::ifs::Limits;
use crate::CellSet;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub k: usize,
    pub area: f64,
    /// `(Σ_j |det A_j|)^{k−1} · Σ_q area(G_q)`.
    pub expected_area: f64,
    /// Number of edge-connected components of `T_k`.
    pub component_count: usize,
    /// Symmetric-difference area between `Φ(T_k)` and `T_{k+1}` (absent for the last level).
    pub propagation_discrepancy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub levels: Vec<LevelReport>,
    /// `|area(C) − Σ_k area(T_k) − area(C_{k_max})|`.
    pub completeness_discrepancy: f64,
    pub hull_area: f64,
    /// Largest discrepancy relative to `area(C)`.
    pub max_relative_discrepancy: f64,
}

impl StructureReport {
    pub fn ok(&self, rel_tol: f64) -> bool {
        self.max_relative_discrepancy <= rel_tol
    }
}

/// Area-based checks of the structure theorems for levels `1..=k_max`:
/// tilesets propagate under `Φ`, their areas follow the geometric recursion,
/// and tilesets plus the last hull iterate exhaust the hull.
pub fn verify_structure(spec: &TilingSpec, k_max: usize, limits: &Limits) -> Result<StructureReport, TilingError> {
    let tol = spec.tol();
    let factor = spec.system().area_factor();
    let generator_area = neumaier_sum(spec.generator_areas().into_iter());
    let sets = (1..=k_max).map(|k| tileset(spec, k, limits)).collect::<Result<Vec<_>, _>>()?;
    let mut levels = Vec::with_capacity(k_max);
    for (i, t) in sets.iter().enumerate() {
        let propagation_discrepancy = match sets.get(i + 1) {
            Some(next) => {
                let image = CellSet::new(
                    spec.system()
                        .maps()
                        .iter()
                        .flat_map(|f| t.cells.cells.iter().map(move |c| f.apply_poly(c)))
                        .collect::<Result<Vec<_>, _>>()?,
                );
                let common = image.overlap_area(&next.cells, tol);
                Some((image.area() - common).abs() + (next.area - common).abs())
            }
            None => None,
        };
        levels.push(LevelReport {
            k: t.k,
            area: t.area,
            expected_area: factor.powi(t.k as i32 - 1) * generator_area,
            component_count: components(&t.cells, tol).len(),
            propagation_discrepancy,
        });
    }
    let last = hull_iterate(spec, k_max, limits)?;
    let hull_area = spec.hull().area();
    let covered = neumaier_sum(sets.iter().map(|t| t.area).chain(std::iter::once(last.area())));
    let completeness_discrepancy = (hull_area - covered).abs();
    let max_relative_discrepancy = levels
        .iter()
        .flat_map(|l| [(l.area - l.expected_area).abs(), l.propagation_discrepancy.unwrap_or(0.0)])
        .chain(std::iter::once(completeness_discrepancy))
        .fold(0.0, f64::max)
        / hull_area;
    Ok(StructureReport { levels, completeness_discrepancy, hull_area, max_relative_discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::tests::spec;

    #[test]
    fn gasket_structure() {
        let r = verify_structure(&spec("gasket"), 4, &Limits::default()).unwrap();
        assert!(r.max_relative_discrepancy < 1e-9, "{r:?}");
        let counts: Vec<usize> = r.levels.iter().map(|l| l.component_count).collect();
        assert_eq!(counts, vec![1, 3, 9, 27]);
    }

    #[test]
    fn koch_structure() {
        let r = verify_structure(&spec("koch_standard"), 4, &Limits::default()).unwrap();
        assert!(r.max_relative_discrepancy < 1e-9, "{r:?}");
        let counts: Vec<usize> = r.levels.iter().map(|l| l.component_count).collect();
        assert_eq!(counts, vec![1, 2, 4, 8]);
    }
}
