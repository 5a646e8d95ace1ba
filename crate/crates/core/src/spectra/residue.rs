use super::{SpectraError, ZetaModel};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const RADIUS: f64 = 1e-3;
const NODES: usize = 64;
const AGREEMENT: f64 = 1e-6;

/// `(1/2πi)∮ ζ_s` over the circle of radius `1e-3` about `omega`, by the
/// 64-node trapezoid rule.
pub fn contour_residue(model: &ZetaModel, omega: Complex64) -> Complex64 {
    contour_moment(model, omega, 1)
}

/// `(1/2πi)∮ (s − ω)^{k−1} ζ_s ds`; `k = 1` is the residue.
fn contour_moment(model: &ZetaModel, omega: Complex64, k: i32) -> Complex64 {
    let f = model.pole_equation();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..NODES {
        let u = Complex64::from_polar(RADIUS, 2.0 * PI * n as f64 / NODES as f64);
        // ds = i·u dθ, so (1/2πi)∮ g ds = mean of g·u
        acc += f.eval(omega + u).inv() * u.powi(k);
    }
    acc / NODES as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueReport {
    pub omega: [f64; 2],
    pub closed_form: [f64; 2],
    pub contour: [f64; 2],
    pub relative_gap: f64,
}

/// Compares `1/Σ_j r_j^ω ln(1/r_j)` with the contour integral; fails with
/// [`SpectraError::NotSimple`] when `ω` is not a simple pole.
pub fn residue_check(model: &ZetaModel, omega: Complex64) -> Result<ResidueReport, SpectraError> {
    let f = model.pole_equation();
    let closed = f.derivative(omega).inv();
    let contour = contour_residue(model, omega);
    // for a simple pole the next Laurent coefficient a_{−2} vanishes
    let second = contour_moment(model, omega, 2);
    let relative_gap = (contour - closed).norm() / closed.norm();
    let not_simple = !(relative_gap <= AGREEMENT) || second.norm() > AGREEMENT * RADIUS * contour.norm();
    if not_simple {
        return Err(SpectraError::NotSimple { omega, contour, closed_form: closed });
    }
    Ok(ResidueReport {
        omega: [omega.re, omega.im],
        closed_form: [closed.re, closed.im],
        contour: [contour.re, contour.im],
        relative_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::real_dimension;

    #[test]
    fn gasket_residue_at_dimension() {
        let m = ZetaModel::scaling("g", vec![0.5; 3]).unwrap();
        let r = residue_check(&m, Complex64::new(3f64.log2(), 0.0)).unwrap();
        assert!((r.closed_form[0] - 1.0 / 2f64.ln()).abs() < 1e-12);
        assert!((r.contour[0] - 1.0 / 2f64.ln()).abs() < 1e-6);
        assert!(r.relative_gap < 1e-6);
    }

    #[test]
    fn golden_residue() {
        let m = ZetaModel::scaling("g", vec![0.5, 0.25]).unwrap();
        let d = real_dimension(&m);
        let r = residue_check(&m, Complex64::new(d, 0.0)).unwrap();
        let l2 = 2f64.ln();
        let want = 1.0 / (0.5f64.powf(d) * l2 + 0.25f64.powf(d) * 2.0 * l2);
        assert!((r.closed_form[0] - want).abs() < 1e-12 * want);
        assert!((r.contour[0] - want).abs() < 1e-6 * want);
    }

    #[test]
    fn regular_point_is_flagged() {
        let m = ZetaModel::scaling("g", vec![0.5; 3]).unwrap();
        assert!(matches!(residue_check(&m, Complex64::new(0.3, 0.1)), Err(SpectraError::NotSimple { .. })));
    }
}
