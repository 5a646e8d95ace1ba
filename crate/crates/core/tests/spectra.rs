use fractile::ifs::{bundled, load_system, Limits};
use fractile::spectra::{
    complex_dimensions, complex_dimensions_with, detect_lattice, geometric_measure, mellin, real_dimension,
    residue_check, scaling_measure, zeta_g, zeta_g_terms, zeta_s, ScanOptions, SpectraError, Window, ZetaModel,
};
use fractile::tiling::build_tiling;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::{LN_2, PI};

fn scaling(name: &str) -> ZetaModel {
    ZetaModel::from_system(&load_system(bundled(name).unwrap()).unwrap()).unwrap()
}

fn geometric(name: &str) -> ZetaModel {
    let spec = build_tiling(&load_system(bundled(name).unwrap()).unwrap(), &Limits::default()).unwrap();
    ZetaModel::from_tiling(&spec).unwrap()
}

/// `1 − Σ r_j^s` written out directly.
fn moran(ratios: &[f64], s: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - ratios.iter().map(|r| (s * r.ln()).exp()).sum::<Complex64>()
}

#[test]
fn similarity_dimensions() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for (name, d) in [
        ("gasket", 3f64.ln() / 2f64.ln()),
        ("koch_standard", 4f64.ln() / 3f64.ln()),
        ("pentagasket", 5f64.ln() / (2.0 * phi.ln())),
        ("menger_ratios_only", 20f64.ln() / 3f64.ln()),
        ("carpet", 8f64.ln() / 3f64.ln()),
    ] {
        assert!((real_dimension(&scaling(name)) - d).abs() <= 1e-10, "{name}");
    }
    let nl = scaling("koch_nonlattice");
    let d = real_dimension(&nl);
    assert!(moran(&nl.ratios, Complex64::new(d, 0.0)).norm() < 1e-12);
}

#[test]
fn gasket_lattice_poles() {
    let m = scaling("gasket");
    let scan = complex_dimensions(&m, Window::new(-2.0, 3.0, 40.0)).unwrap();
    assert!(scan.lattice.is_lattice);
    assert_eq!(scan.poles.len(), 9);
    let d = 3f64.ln() / LN_2;
    let p = 2.0 * PI / LN_2;
    let mut ims: Vec<f64> = scan.poles.iter().map(|c| c.omega.im).collect();
    ims.sort_by(f64::total_cmp);
    for (n, im) in (-4..=4).zip(ims) {
        assert!((im - n as f64 * p).abs() < 1e-9);
    }
    for c in &scan.poles {
        assert!((c.omega.re - d).abs() < 1e-10);
        assert!(moran(&m.ratios, c.omega).norm() <= 1e-9);
        assert_eq!(c.order, 1);
        let res = c.residue.unwrap();
        assert!((res - 1.0 / LN_2).norm() < 1e-6);
        assert!((c.residue_contour.unwrap() - res).norm() < 1e-6);
    }
    assert_eq!(scan.poles.iter().filter(|c| c.is_real_dimension).count(), 1);
}

#[test]
fn koch_lattice_poles_follow_the_period() {
    let m = scaling("koch_standard");
    let scan = complex_dimensions(&m, Window::new(-2.0, 3.0, 40.0)).unwrap();
    let p = 2.0 * PI / 3f64.sqrt().ln();
    // |n| p <= 40 with p ≈ 11.44
    assert_eq!(scan.poles.len(), 7);
    assert!((scan.lattice.period.unwrap() - p).abs() < 1e-9);
    for c in &scan.poles {
        let n = (c.omega.im / p).round();
        assert!((c.omega.im - n * p).abs() < 1e-9);
        assert_eq!(c.lattice_index, Some(n as i64));
    }
}

#[test]
fn forced_argument_principle_reproduces_lattice_poles() {
    for name in ["gasket", "koch_standard", "pentagasket"] {
        let m = scaling(name);
        let w = Window::new(-2.0, 3.0, 30.0);
        let a = complex_dimensions(&m, w).unwrap();
        let b = complex_dimensions_with(&m, w, ScanOptions { force_argument_principle: true }).unwrap();
        assert_eq!(a.poles.len(), b.poles.len(), "{name}");
        for (x, y) in a.poles.iter().zip(&b.poles) {
            assert!((x.omega - y.omega).norm() < 1e-9, "{name}");
        }
    }
}

/// Zeros of `f` inside the rectangle by unwrapping its phase along a dense
/// boundary walk.
fn winding_count(ratios: &[f64], re: (f64, f64), t: f64, steps: usize) -> i64 {
    let corners = [
        Complex64::new(re.0, -t),
        Complex64::new(re.1, -t),
        Complex64::new(re.1, t),
        Complex64::new(re.0, t),
    ];
    let mut total = 0.0;
    let mut prev = moran(ratios, corners[0]).arg();
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        for k in 1..=steps {
            let z = a + (b - a) * (k as f64 / steps as f64);
            let cur = moran(ratios, z).arg();
            let mut d = cur - prev;
            while d > PI {
                d -= 2.0 * PI;
            }
            while d < -PI {
                d += 2.0 * PI;
            }
            total += d;
            prev = cur;
        }
    }
    (total / (2.0 * PI)).round() as i64
}

#[test]
fn nonlattice_koch_pole_count() {
    let m = scaling("koch_nonlattice");
    assert!(!detect_lattice(&m).is_lattice);
    let scan = complex_dimensions(&m, Window::new(-2.0, 3.0, 40.0)).unwrap();
    assert!(scan.unresolved.is_empty());
    assert_eq!(scan.poles.len() as i64, winding_count(&m.ratios, (-2.0, 3.0), 40.0, 200_000));
    for c in &scan.poles {
        assert!(moran(&m.ratios, c.omega).norm() < 1e-9);
        // poles come in conjugate pairs
        assert!(scan.poles.iter().any(|o| (o.omega - c.omega.conj()).norm() < 1e-9));
        assert!(c.omega.re <= real_dimension(&m) + 1e-12);
    }
}

#[test]
fn residues_are_contour_validated() {
    for name in ["gasket", "koch_standard", "koch_nonlattice", "pentagasket"] {
        let m = scaling(name);
        let scan = complex_dimensions(&m, Window::new(-1.0, 3.0, 25.0)).unwrap();
        for c in &scan.poles {
            let r = residue_check(&m, c.omega).unwrap();
            assert!(r.relative_gap < 1e-6, "{name} {}", c.omega);
        }
    }
    let m = scaling("gasket");
    assert!(matches!(residue_check(&m, Complex64::new(0.5, 0.5)), Err(SpectraError::NotSimple { .. })));
}

#[test]
fn mellin_sums_match_closed_forms_within_tail_bound() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
    let limits = Limits::default();
    for name in ["gasket", "koch_standard", "koch_nonlattice", "pentagasket", "carpet", "menger_ratios_only"] {
        let sm = scaling(name);
        let d = real_dimension(&sm);
        let eta_s = scaling_measure(&sm.ratios, 1e-4, &limits).unwrap();
        let gm = (name != "menger_ratios_only").then(|| geometric(name));
        let eta_g = gm.as_ref().map(|g| geometric_measure(&g.ratios, &g.generator_inradii, 1e-5, &limits).unwrap());
        for _ in 0..20 {
            let s = Complex64::new(d + rng.random_range(0.2..2.0), rng.random_range(-30.0..30.0));
            let closed = zeta_s(&sm, s).unwrap();
            let gap = (closed - mellin(&eta_s, s)).norm();
            assert!(gap <= eta_s.tail_bound(&sm.ratios, s.re) + 1e-12 * closed.norm(), "{name} {s}");
            if let (Some(g), Some(eg)) = (&gm, &eta_g) {
                let closed = zeta_g(g, s).unwrap();
                let gap = (closed - mellin(eg, s)).norm();
                assert!(gap <= eg.tail_bound(&g.ratios, s.re) + 1e-12 * closed.norm(), "{name} {s}");
            }
        }
    }
}

#[test]
fn zeta_g_splits_by_generator() {
    let m = geometric("pentagasket");
    let s = Complex64::new(2.5, 3.0);
    let total: Complex64 = zeta_g_terms(&m, s).unwrap().into_iter().sum();
    assert!((total - zeta_g(&m, s).unwrap()).norm() < 1e-13 * total.norm());
    // ζ_g = (Σ g_q^s)·ζ_s
    let h: Complex64 = m.generator_inradii.iter().map(|g| (s * g.ln()).exp()).sum();
    assert!((total - h * zeta_s(&m, s).unwrap()).norm() < 1e-12 * total.norm());
}

#[test]
fn cancellation_by_numerator_zeros() {
    // 1 − 2^{−s} − 2·4^{−s} = (1 − 2^{1−s})(1 + 2^{−s}), h(s) = 1 + 2^{−s}:
    // the poles on Re s = 0 cancel, only the line Re s = 1 survives
    let m = ZetaModel::geometric("c", vec![0.5, 0.25, 0.25], vec![1.0, 0.5]).unwrap();
    let scan = complex_dimensions(&m, Window::new(-2.0, 3.0, 40.0)).unwrap();
    assert!(!scan.cancelled.is_empty());
    assert!(scan.cancelled.iter().all(|c| c.omega.re.abs() < 1e-9));
    assert!(scan.poles.iter().all(|c| (c.omega.re - 1.0).abs() < 1e-9));
}

#[test]
fn guards_and_windows() {
    let m = scaling("gasket");
    let d = real_dimension(&m);
    assert!(matches!(zeta_s(&m, Complex64::new(d, 0.0)), Err(SpectraError::NearPole(_))));
    assert!(matches!(
        complex_dimensions(&m, Window::new(-2.0, 3.0, 5000.0)),
        Err(SpectraError::WindowTooLarge { .. })
    ));
    assert!(matches!(complex_dimensions(&m, Window::new(3.0, -2.0, 10.0)), Err(SpectraError::InvalidWindow(_))));
    let harmonic = load_system(bundled("harmonic_gasket").unwrap()).unwrap();
    assert!(matches!(ZetaModel::from_system(&harmonic), Err(SpectraError::NotSelfSimilar)));
}
