use super::{IfsError, IfsSystem};
use crate::{AffineMap2, Point2};
use num_complex::Complex64;

/// The two-map Koch family `φ_1(z) = ξ·z̄`, `φ_2(z) = (1 − ξ)(z̄ − 1) + 1`,
/// admissible when `|ξ|² + |1 − ξ|² < 1`.
pub fn koch_family(xi: Complex64) -> Result<IfsSystem, IfsError> {
    let one_minus = Complex64::new(1.0, 0.0) - xi;
    let s = xi.norm_sqr() + one_minus.norm_sqr();
    if !(s < 1.0) || !s.is_finite() {
        return Err(IfsError::InadmissibleParameter(format!(
            "|xi|^2 + |1 - xi|^2 = {s} is not below 1"
        )));
    }
    let phi1 = AffineMap2::similarity(xi.norm(), xi.arg(), true, Point2::origin());
    let phi2 = AffineMap2::similarity(one_minus.norm(), one_minus.arg(), true, Point2::new(xi.re, xi.im));
    IfsSystem::new(format!("koch({}, {})", xi.re, xi.im), vec![phi1, phi2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_parameter_gives_equal_ratios() {
        let sys = koch_family(Complex64::new(0.5, 0.5 / 3f64.sqrt())).unwrap();
        for r in sys.ratios().unwrap() {
            assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        // ratio of φ_1 ∘ φ_1
        let c = sys.maps()[0].compose(&sys.maps()[0]);
        assert!((c.ratio().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn maps_act_as_complex_formulas() {
        let xi = Complex64::new(0.55, 0.22);
        let sys = koch_family(xi).unwrap();
        let z = Complex64::new(0.3, -0.7);
        let w1 = xi * z.conj();
        let w2 = (1.0 - xi) * (z.conj() - 1.0) + 1.0;
        let p = Point2::new(z.re, z.im);
        let a = sys.maps()[0].apply(p);
        let b = sys.maps()[1].apply(p);
        assert!((a.x - w1.re).abs() < 1e-15 && (a.y - w1.im).abs() < 1e-15);
        assert!((b.x - w2.re).abs() < 1e-15 && (b.y - w2.im).abs() < 1e-15);
    }

    #[test]
    fn nonlattice_parameter_is_admissible() {
        let xi = Complex64::new(0.55, 0.22);
        // |xi|^2 + |1 - xi|^2 = 0.3509 + 0.2509
        assert!((xi.norm_sqr() + (1.0 - xi).norm_sqr() - 0.6018).abs() < 1e-12);
        let r = koch_family(xi).unwrap().ratios().unwrap();
        assert!((r[0] - r[1]).abs() > 0.05);
    }

    #[test]
    fn boundary_parameter_is_rejected() {
        assert!(matches!(
            koch_family(Complex64::new(1.0, 0.0)),
            Err(IfsError::InadmissibleParameter(_))
        ));
    }
}
