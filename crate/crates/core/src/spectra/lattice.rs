use super::ZetaModel;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

const MAX_DENOMINATOR: u64 = 64;
const MAX_EXPONENT: u64 = 64;
const RESIDUAL: f64 = 1e-10;

/// Common base `r` with `r_j = r^{k_j}`, when it exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeStructure {
    pub is_lattice: bool,
    pub base: Option<f64>,
    pub exponents: Vec<u32>,
    /// Oscillation period `2π/ln(1/r)` along the imaginary axis.
    pub period: Option<f64>,
}

impl LatticeStructure {
    fn nonlattice() -> Self {
        Self { is_lattice: false, base: None, exponents: Vec::new(), period: None }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Best rational `p/q`, `q <= MAX_DENOMINATOR`, within `RESIDUAL` of `x`.
fn small_rational(x: f64) -> Option<(u64, u64)> {
    (1..=MAX_DENOMINATOR).find_map(|q| {
        let p = (x * q as f64).round();
        (p >= 1.0 && (x - p / q as f64).abs() <= RESIDUAL * x.max(1.0)).then_some((p as u64, q))
    })
}

/// Decides whether the logarithms of the ratios are commensurable.
pub fn detect_lattice(model: &ZetaModel) -> LatticeStructure {
    let logs: Vec<f64> = model.ratios.iter().map(|r| -r.ln()).collect();
    let mut fracs = Vec::with_capacity(logs.len());
    for l in &logs {
        match small_rational(l / logs[0]) {
            Some(f) => fracs.push(f),
            None => return LatticeStructure::nonlattice(),
        }
    }
    // ℓ_j/ℓ_1 = p_j/q_j; with L = lcm(q_j), ℓ_j = (p_j L/q_j)·(ℓ_1/L)
    let l = fracs.iter().fold(1u64, |acc, &(_, q)| acc / gcd(acc, q) * q);
    let mut k: Vec<u64> = fracs.iter().map(|&(p, q)| p * (l / q)).collect();
    let g = k.iter().fold(0u64, |acc, &x| gcd(acc, x));
    k.iter_mut().for_each(|x| *x /= g);
    if k.iter().any(|&x| x > MAX_EXPONENT) {
        return LatticeStructure::nonlattice();
    }
    // least squares for ln r over all ratios
    let num: f64 = logs.iter().zip(&k).map(|(l, &k)| l * k as f64).sum();
    let den: f64 = k.iter().map(|&k| (k * k) as f64).sum();
    let ell = num / den;
    let base = (-ell).exp();
    let ok = model
        .ratios
        .iter()
        .zip(&k)
        .all(|(r, &k)| (r - base.powi(k as i32)).abs() <= RESIDUAL);
    if !ok {
        return LatticeStructure::nonlattice();
    }
    LatticeStructure {
        is_lattice: true,
        base: Some(base),
        exponents: k.iter().map(|&x| x as u32).collect(),
        period: Some(2.0 * PI / ell),
    }
}

/// Roots `z` of `1 − Σ_j z^{k_j}` with their multiplicities.
pub(crate) fn polynomial_roots(exponents: &[u32]) -> Vec<(Complex64, u32)> {
    let deg = *exponents.iter().max().unwrap() as usize;
    // p(z) = Σ c_k z^k − 1
    let mut c = vec![0.0f64; deg + 1];
    c[0] = -1.0;
    for &k in exponents {
        c[k as usize] += 1.0;
    }
    let roots: Vec<Complex64> = if deg == 1 {
        vec![Complex64::new(-c[0] / c[1], 0.0)]
    } else {
        // companion matrix of the monic polynomial
        let lead = c[deg];
        let mut m = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -c[i] / lead;
        }
        m.complex_eigenvalues().iter().copied().collect()
    };
    let eval = |z: Complex64, n: usize| -> Complex64 {
        // n-th derivative of p at z
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &ck) in c.iter().enumerate().skip(n) {
            if ck != 0.0 {
                let falling: f64 = ((k - n + 1)..=k).map(|x| x as f64).product();
                acc += ck * falling * z.powu((k - n) as u32);
            }
        }
        acc
    };
    let mut out: Vec<(Complex64, u32)> = Vec::new();
    for z0 in roots {
        // Newton polish on the polynomial itself
        let mut z = z0;
        for _ in 0..50 {
            let d = eval(z, 1);
            if d.norm() < 1e-12 {
                break;
            }
            let step = eval(z, 0) / d;
            z -= step;
            if step.norm() < 1e-16 * z.norm() {
                break;
            }
        }
        if let Some(e) = out.iter_mut().find(|(w, _)| (*w - z).norm() < 1e-6 * z.norm().max(1.0)) {
            e.1 += 1;
        } else {
            out.push((z, 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(r: Vec<f64>) -> ZetaModel {
        ZetaModel::scaling("t", r).unwrap()
    }

    #[test]
    fn equal_ratios_are_lattice() {
        let l = detect_lattice(&model(vec![0.5; 3]));
        assert!(l.is_lattice);
        assert!((l.base.unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(l.exponents, vec![1, 1, 1]);
        assert!((l.period.unwrap() - 2.0 * PI / 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn powers_of_a_common_base() {
        let l = detect_lattice(&model(vec![0.5, 0.25]));
        assert_eq!(l.exponents, vec![1, 2]);
        assert!((l.base.unwrap() - 0.5).abs() < 1e-15);
        let l = detect_lattice(&model(vec![0.25, 0.125]));
        assert_eq!(l.exponents, vec![2, 3]);
        assert!((l.base.unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn nonlattice_koch() {
        let xi = Complex64::new(0.55, 0.22);
        let l = detect_lattice(&model(vec![xi.norm(), (1.0 - xi).norm()]));
        assert!(!l.is_lattice);
        assert!(!detect_lattice(&model(vec![0.5, 1.0 / 3.0])).is_lattice);
    }

    #[test]
    fn golden_polynomial_roots() {
        let mut roots = polynomial_roots(&[1, 2]);
        roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
        let s5 = 5f64.sqrt();
        assert!((roots[0].0.re - (-1.0 - s5) / 2.0).abs() < 1e-15);
        assert!((roots[1].0.re - (-1.0 + s5) / 2.0).abs() < 1e-15);
        assert!(roots.iter().all(|r| r.1 == 1 && r.0.im.abs() < 1e-15));
    }
}
