//! Scaling and geometric measures, their zeta functions, the real
//! dimension, complex dimensions and residues.

mod expsum;
mod lattice;
mod measure;
mod poles;
mod residue;
mod zeta;

pub use expsum::ExpSum;
pub use lattice::{detect_lattice, LatticeStructure};
pub use measure::{geometric_measure, geometric_measure_q, mellin, scaling_measure, AtomicMeasure, MeasureKind};
pub use poles::{complex_dimensions, complex_dimensions_with, ScanOptions, ComplexDim, DimensionScan, UnresolvedCell, Window, MAX_WINDOW_HEIGHT};
pub use residue::{residue_check, ResidueReport};
pub use zeta::{real_dimension, zeta_g, zeta_g_terms, zeta_s, ZetaModel};

use crate::ifs::IfsError;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("operation requires a self-similar system")]
    NotSelfSimilar,
    #[error("s = {0} is within the pole guard of 1 - Σ r_j^s")]
    NearPole(Complex64),
    #[error("window height {t} exceeds the cap {cap}")]
    WindowTooLarge { t: f64, cap: f64 },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("{omega} is not a simple pole (contour residue {contour}, closed form {closed_form})")]
    NotSimple { omega: Complex64, contour: Complex64, closed_form: Complex64 },
    #[error(transparent)]
    Ifs(#[from] IfsError),
}
