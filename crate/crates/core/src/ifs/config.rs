use super::{IfsError, IfsSystem};
use crate::{AffineMap2, Mat2, Point2};
use serde::{Deserialize, Serialize};

/// On-disk system description (JSON).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub name: String,
    pub dimension: u32,
    /// Set for systems whose geometry lives outside the plane; only their
    /// scaling ratios are used.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub geometry_unsupported: bool,
    pub maps: Vec<MapConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapConfig {
    Similarity {
        ratio: f64,
        #[serde(default)]
        rotation_deg: f64,
        #[serde(default)]
        reflect: bool,
        #[serde(default)]
        translation: [f64; 2],
    },
    Affine {
        matrix: [[f64; 2]; 2],
        translation: [f64; 2],
    },
}

impl MapConfig {
    fn build(&self, index: usize) -> Result<AffineMap2, IfsError> {
        match *self {
            MapConfig::Similarity { ratio, rotation_deg, reflect, translation } => {
                if !ratio.is_finite() || !rotation_deg.is_finite() || translation.iter().any(|t| !t.is_finite()) {
                    return Err(IfsError::Parse(format!("map {index}: non-finite parameter")));
                }
                if ratio <= 0.0 {
                    return Err(IfsError::Parse(format!("map {index}: ratio must be positive")));
                }
                if ratio >= 1.0 {
                    return Err(IfsError::NotContractive { index, bound: ratio });
                }
                Ok(AffineMap2::similarity(
                    ratio,
                    rotation_deg.to_radians(),
                    reflect,
                    Point2::new(translation[0], translation[1]),
                ))
            }
            MapConfig::Affine { matrix, translation } => {
                let [[a, b], [c, d]] = matrix;
                if [a, b, c, d, translation[0], translation[1]].iter().any(|v| !v.is_finite()) {
                    return Err(IfsError::Parse(format!("map {index}: non-finite parameter")));
                }
                let linear = Mat2::new(a, b, c, d);
                if linear.det() == 0.0 {
                    return Err(IfsError::Parse(format!("map {index}: singular matrix")));
                }
                Ok(AffineMap2::new(linear, Point2::new(translation[0], translation[1])))
            }
        }
    }
}

impl SystemConfig {
    pub fn into_system(self) -> Result<IfsSystem, IfsError> {
        match (self.dimension, self.geometry_unsupported) {
            (2, _) | (_, true) => {}
            (d, false) => {
                return Err(IfsError::Parse(format!(
                    "dimension {d} requires \"geometry_unsupported\": true"
                )))
            }
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| m.build(i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if self.geometry_unsupported {
            let ratios = maps
                .iter()
                .map(|m| m.ratio())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| IfsError::Parse("ratio-only systems must be similarities".into()))?;
            return IfsSystem::ratios_only(self.name, &ratios);
        }
        IfsSystem::new(self.name, maps)
    }
}

/// Parses and validates a JSON system description.
pub fn load_system(text: &str) -> Result<IfsSystem, IfsError> {
    let cfg: SystemConfig = serde_json::from_str(text).map_err(|e| IfsError::Parse(e.to_string()))?;
    cfg.into_system()
}

/// Names of the configurations shipped with the crate.
pub const BUNDLED: &[&str] = &[
    "gasket",
    "koch_standard",
    "koch_nonlattice",
    "harmonic_gasket",
    "pentagasket",
    "carpet",
    "tileset_counterexample",
    "menger_ratios_only",
];

/// JSON text of a bundled configuration (name with or without `.json`).
pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    Some(match name {
        "gasket" => include_str!("../../configs/gasket.json"),
        "koch_standard" => include_str!("../../configs/koch_standard.json"),
        "koch_nonlattice" => include_str!("../../configs/koch_nonlattice.json"),
        "harmonic_gasket" => include_str!("../../configs/harmonic_gasket.json"),
        "pentagasket" => include_str!("../../configs/pentagasket.json"),
        "carpet" => include_str!("../../configs/carpet.json"),
        "tileset_counterexample" => include_str!("../../configs/tileset_counterexample.json"),
        "menger_ratios_only" => include_str!("../../configs/menger_ratios_only.json"),
        _ => return None,
    })
}
