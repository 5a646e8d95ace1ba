use num_complex::Complex64;

/// An exponential polynomial `c + Σ_i a_i·b_i^s` with real coefficients and
/// positive bases, e.g. `1 − Σ_j r_j^s` or `Σ_q g_q^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum {
    pub constant: f64,
    /// `(a_i, ln b_i)`.
    pub terms: Vec<(f64, f64)>,
}

impl ExpSum {
    pub fn new(constant: f64, terms: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            constant,
            terms: terms.into_iter().map(|(a, b)| (a, b.ln())).collect(),
        }
    }

    /// `1 − Σ_j r_j^s`, whose zeros are the poles of the scaling zeta function.
    pub fn pole_equation(ratios: &[f64]) -> Self {
        Self::new(1.0, ratios.iter().map(|&r| (-1.0, r)))
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.constant, 0.0);
        for &(a, lb) in &self.terms {
            acc += a * (s * lb).exp();
        }
        acc
    }

    pub fn derivative(&self, s: Complex64) -> Complex64 {
        self.terms.iter().map(|&(a, lb)| a * lb * (s * lb).exp()).sum()
    }

    /// `n`-th derivative.
    pub fn nth_derivative(&self, s: Complex64, n: u32) -> Complex64 {
        if n == 0 {
            return self.eval(s);
        }
        self.terms.iter().map(|&(a, lb)| a * lb.powi(n as i32) * (s * lb).exp()).sum()
    }

    pub fn eval_with_derivative(&self, s: Complex64) -> (Complex64, Complex64) {
        let mut f = Complex64::new(self.constant, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &(a, lb) in &self.terms {
            let e = a * (s * lb).exp();
            f += e;
            d += lb * e;
        }
        (f, d)
    }

    /// Upper bound on `|f^{(n)}|` over the strip `lo <= Re s <= hi`.
    pub fn derivative_bound(&self, n: u32, lo: f64, hi: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(a, lb)| (a * lb.powi(n as i32)).abs() * (lo * lb).exp().max((hi * lb).exp()))
            .sum()
    }

    /// Scale of the individual terms at `Re s = sigma` (used for relative
    /// tolerances on cancellation).
    pub fn magnitude(&self, sigma: f64) -> f64 {
        self.constant.abs() + self.terms.iter().map(|&(a, lb)| a.abs() * (sigma * lb).exp()).sum::<f64>()
    }

    /// True when the sum can have zeros: at least two distinct exponentials,
    /// or one exponential plus a constant.
    pub fn has_zeros(&self) -> bool {
        let mut bases: Vec<f64> = self.terms.iter().map(|t| t.1).collect();
        bases.sort_by(f64::total_cmp);
        bases.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()));
        bases.len() + usize::from(self.constant != 0.0) >= 2
    }

    /// Newton iteration from `s0`; `None` if it does not reach `|f| <= tol`.
    pub fn newton(&self, s0: Complex64, tol: f64, max_iter: usize) -> Option<Complex64> {
        let mut s = s0;
        for _ in 0..max_iter {
            let (f, d) = self.eval_with_derivative(s);
            if !f.is_finite() || !d.is_finite() || d.norm() == 0.0 {
                return None;
            }
            let step = f / d;
            s -= step;
            if step.norm() <= 1e-15 * s.norm().max(1.0) {
                break;
            }
        }
        // a few extra steps guard against stopping one iteration early
        for _ in 0..2 {
            let (f, d) = self.eval_with_derivative(s);
            if d.norm() > 0.0 {
                let next = s - f / d;
                if self.eval(next).norm() < f.norm() {
                    s = next;
                }
            }
        }
        (self.eval(s).norm() <= tol).then_some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_matches_definition() {
        let e = ExpSum::pole_equation(&[0.5, 0.25]);
        let s = Complex64::new(0.7, 2.0);
        let want = 1.0 - Complex64::new(0.5, 0.0).powc(s) - Complex64::new(0.25, 0.0).powc(s);
        assert!((e.eval(s) - want).norm() < 1e-15);
        let h = 1e-6;
        let fd = (e.eval(s + h) - e.eval(s - h)) / (2.0 * h);
        assert!((e.derivative(s) - fd).norm() < 1e-8);
    }

    #[test]
    fn zero_capability() {
        assert!(!ExpSum::new(0.0, [(1.0, 0.3)]).has_zeros());
        assert!(!ExpSum::new(0.0, [(1.0, 0.3), (1.0, 0.3)]).has_zeros());
        assert!(ExpSum::new(0.0, [(1.0, 0.3), (5.0, 0.2)]).has_zeros());
        assert!(ExpSum::pole_equation(&[0.5]).has_zeros());
    }
}
