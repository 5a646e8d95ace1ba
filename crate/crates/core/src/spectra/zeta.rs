use super::{ExpSum, SpectraError};
use crate::ifs::IfsSystem;
use crate::tiling::TilingSpec;
use num_complex::Complex64;

/// Guard on `|1 − Σ r_j^s|` below which zeta values are refused.
const POLE_GUARD: f64 = 1e-14;

/// Scaling ratios plus optional generator inradii (geometric zeta).
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaModel {
    pub name: String,
    pub ratios: Vec<f64>,
    /// Empty for the scaling zeta function.
    pub generator_inradii: Vec<f64>,
}

impl ZetaModel {
    pub fn scaling(name: impl Into<String>, ratios: Vec<f64>) -> Result<Self, SpectraError> {
        Self::geometric(name, ratios, Vec::new())
    }

    pub fn geometric(name: impl Into<String>, ratios: Vec<f64>, g: Vec<f64>) -> Result<Self, SpectraError> {
        if ratios.len() < 2 {
            return Err(SpectraError::InvalidModel(format!("need at least 2 ratios, got {}", ratios.len())));
        }
        if ratios.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(SpectraError::InvalidModel("ratios must lie in (0, 1)".into()));
        }
        if g.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
            return Err(SpectraError::InvalidModel("inradii must be positive".into()));
        }
        Ok(Self { name: name.into(), ratios, generator_inradii: g })
    }

    pub fn from_system(sys: &IfsSystem) -> Result<Self, SpectraError> {
        let ratios = sys.ratios().ok_or(SpectraError::NotSelfSimilar)?;
        Self::scaling(sys.name(), ratios)
    }

    pub fn from_tiling(spec: &TilingSpec) -> Result<Self, SpectraError> {
        let ratios = spec.system().ratios().ok_or(SpectraError::NotSelfSimilar)?;
        Self::geometric(spec.system().name(), ratios, spec.generator_inradii())
    }

    pub fn is_geometric(&self) -> bool {
        !self.generator_inradii.is_empty()
    }

    /// `1 − Σ_j r_j^s`.
    pub fn pole_equation(&self) -> ExpSum {
        ExpSum::pole_equation(&self.ratios)
    }

    /// `h(s) = Σ_q g_q^s`.
    pub fn numerator(&self) -> ExpSum {
        ExpSum::new(0.0, self.generator_inradii.iter().map(|&g| (1.0, g)))
    }

    /// `Σ_j r_j^s`.
    pub fn ratio_sum(&self, s: Complex64) -> Complex64 {
        self.ratios.iter().map(|&r| (s * r.ln()).exp()).sum()
    }
}

/// `ζ_s(s) = 1/(1 − Σ_j r_j^s)`.
pub fn zeta_s(model: &ZetaModel, s: Complex64) -> Result<Complex64, SpectraError> {
    let d = Complex64::new(1.0, 0.0) - model.ratio_sum(s);
    if d.norm() <= POLE_GUARD {
        return Err(SpectraError::NearPole(s));
    }
    Ok(d.inv())
}

/// `ζ_g(s) = (Σ_q g_q^s)·ζ_s(s)`.
pub fn zeta_g(model: &ZetaModel, s: Complex64) -> Result<Complex64, SpectraError> {
    Ok(model.numerator().eval(s) * zeta_s(model, s)?)
}

/// The per-generator terms `ζ_{g,q}(s) = g_q^s·ζ_s(s)`.
pub fn zeta_g_terms(model: &ZetaModel, s: Complex64) -> Result<Vec<Complex64>, SpectraError> {
    let z = zeta_s(model, s)?;
    Ok(model.generator_inradii.iter().map(|&g| (s * g.ln()).exp() * z).collect())
}

/// The unique real `D` with `Σ_j r_j^D = 1`.
pub fn real_dimension(model: &ZetaModel) -> f64 {
    let f = |s: f64| model.ratios.iter().map(|r| r.powf(s)).sum::<f64>();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi) >= 1.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-14 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = 0.5 * (lo + hi);
    let df: f64 = model.ratios.iter().map(|r| r.ln() * r.powf(d)).sum();
    let polished = d - (f(d) - 1.0) / df;
    if (f(polished) - 1.0).abs() <= (f(d) - 1.0).abs() {
        polished
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gasket() -> ZetaModel {
        ZetaModel::geometric("gasket", vec![0.5; 3], vec![3f64.sqrt() / 12.0]).unwrap()
    }

    #[test]
    fn gasket_values() {
        let m = gasket();
        assert!((zeta_s(&m, Complex64::new(2.0, 0.0)).unwrap() - 4.0).norm() < 1e-15);
        assert!((zeta_g(&m, Complex64::new(2.0, 0.0)).unwrap() - 1.0 / 12.0).norm() < 1e-15);
        assert!((zeta_s(&m, Complex64::new(60.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let d = 3f64.log2();
        assert!(matches!(zeta_s(&m, Complex64::new(d, 0.0)), Err(SpectraError::NearPole(_))));
    }

    #[test]
    fn unit_numerator_reduces_to_scaling_zeta() {
        let m = ZetaModel::geometric("x", vec![0.3, 0.6], vec![1.0]).unwrap();
        for s in [Complex64::new(2.0, 1.0), Complex64::new(-0.5, 7.0)] {
            assert!((zeta_g(&m, s).unwrap() - zeta_s(&m, s).unwrap()).norm() < 1e-15);
        }
    }

    #[test]
    fn real_dimensions() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r_koch = 1.0 / 3f64.sqrt();
        let cases = [
            (vec![0.5; 3], 3f64.ln() / 2f64.ln()),
            (vec![r_koch; 2], 4f64.ln() / 3f64.ln()),
            (vec![(3.0 - 5f64.sqrt()) / 2.0; 5], 5f64.ln() / (2.0 * phi.ln())),
            (vec![1.0 / 3.0; 20], 20f64.ln() / 3f64.ln()),
            (vec![0.5, 0.25], phi.log2()),
        ];
        for (ratios, want) in cases {
            let m = ZetaModel::scaling("t", ratios.clone()).unwrap();
            let d = real_dimension(&m);
            assert!((d - want).abs() < 1e-12, "{ratios:?}: {d} vs {want}");
            let f: f64 = ratios.iter().map(|r| r.powf(d)).sum();
            assert!((f - 1.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn rejects_bad_models() {
        assert!(ZetaModel::scaling("x", vec![0.5]).is_err());
        assert!(ZetaModel::scaling("x", vec![0.5, 1.0]).is_err());
        assert!(ZetaModel::geometric("x", vec![0.5, 0.5], vec![0.0]).is_err());
    }
}
