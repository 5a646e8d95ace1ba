use super::lattice::{detect_lattice, polynomial_roots, LatticeStructure};
use super::residue::contour_residue;
use super::{real_dimension, ExpSum, SpectraError, ZetaModel};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::f64::consts::PI;

/// Largest accepted `T` in `|Im s| <= T`.
pub const MAX_WINDOW_HEIGHT: f64 = 1000.0;
const MAX_WINDOW_WIDTH: f64 = 200.0;
/// Smallest cell side in the rectangle subdivision.
const MIN_CELL: f64 = 1e-4;
/// Poles with `|h(ω)| <= CANCEL_REL·Σ g_q^{Re ω}` are treated as cancelled.
const CANCEL_REL: f64 = 1e-10;
const MAX_SEGMENT_STEPS: usize = 400_000;
const SPLIT_RATIOS: [f64; 4] = [0.5, 0.4371, 0.5629, 0.3819];
const GRID_SHIFTS: [f64; 4] = [0.0123, 0.2718, 0.1414, 0.3931];

/// Search region `re.0 <= Re s <= re.1`, `|Im s| <= t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub re: (f64, f64),
    pub t: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, t: f64) -> Self {
        Self { re: (re_min, re_max), t }
    }

    fn check(&self) -> Result<(), SpectraError> {
        let (a, b) = self.re;
        if !(a.is_finite() && b.is_finite() && a < b && self.t > 0.0) {
            return Err(SpectraError::InvalidWindow(format!("Re in [{a}, {b}], |Im| <= {}", self.t)));
        }
        if self.t > MAX_WINDOW_HEIGHT {
            return Err(SpectraError::WindowTooLarge { t: self.t, cap: MAX_WINDOW_HEIGHT });
        }
        if b - a > MAX_WINDOW_WIDTH {
            return Err(SpectraError::InvalidWindow(format!("real width {} exceeds {MAX_WINDOW_WIDTH}", b - a)));
        }
        Ok(())
    }

    fn contains(&self, s: Complex64) -> bool {
        s.re >= self.re.0 && s.re <= self.re.1 && s.im.abs() <= self.t
    }
}

impl Default for Window {
    fn default() -> Self {
        Self::new(-2.0, 3.0, 40.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexDim {
    #[serde(serialize_with = "ser_complex")]
    pub omega: Complex64,
    pub order: u32,
    /// `1/Σ_j r_j^ω ln(1/r_j)` for simple poles.
    #[serde(serialize_with = "ser_opt_complex")]
    pub residue: Option<Complex64>,
    /// Trapezoid contour integral of `ζ_s` around `ω`.
    #[serde(serialize_with = "ser_opt_complex")]
    pub residue_contour: Option<Complex64>,
    pub is_real_dimension: bool,
    /// Index `n` of `ω = ω_0 + i·n·p` on its lattice line.
    pub lattice_index: Option<i64>,
}

/// A subdivision cell whose zero count could not be resolved.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnresolvedCell {
    pub re: (f64, f64),
    pub im: (f64, f64),
    /// Winding count, or `None` if a zero sits on the cell boundary.
    pub count: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionScan {
    pub dimension: f64,
    pub lattice: LatticeStructure,
    pub window: Window,
    /// Poles of the zeta function in the window, sorted by real part
    /// descending, then imaginary part ascending.
    pub poles: Vec<ComplexDim>,
    /// Roots of `1 − Σ r_j^s` where the numerator also vanishes.
    pub cancelled: Vec<ComplexDim>,
    #[serde(serialize_with = "ser_complex_vec")]
    pub zeros_of_numerator: Vec<Complex64>,
    pub unresolved: Vec<UnresolvedCell>,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_opt_complex<S: serde::Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    z.map(|z| [z.re, z.im]).serialize(s)
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

/// Scan options; the defaults pick the lattice formula when it applies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub force_argument_principle: bool,
}

/// Poles of `ζ_s` (scaling models) or `ζ_g` (geometric models) in `window`.
pub fn complex_dimensions(model: &ZetaModel, window: Window) -> Result<DimensionScan, SpectraError> {
    complex_dimensions_with(model, window, ScanOptions { force_argument_principle: false })
}

pub fn complex_dimensions_with(model: &ZetaModel, window: Window, opts: ScanOptions) -> Result<DimensionScan, SpectraError> {
    window.check()?;
    let dimension = real_dimension(model);
    let lattice = detect_lattice(model);
    let f = model.pole_equation();
    let (roots, unresolved) = if lattice.is_lattice && !opts.force_argument_principle {
        (lattice_poles(&f, &lattice, &window), Vec::new())
    } else {
        let (r, u) = find_zeros(&f, &window);
        (r.into_iter().map(|(z, order)| (z, order, None)).collect(), u)
    };
    let h = model.numerator();
    let mut poles = Vec::new();
    let mut cancelled = Vec::new();
    for (omega, order, lattice_index) in roots {
        let is_real_dimension = omega.im == 0.0 && (omega.re - dimension).abs() <= 1e-9 * dimension.max(1.0);
        let (residue, residue_contour) = if order == 1 {
            (Some(f.derivative(omega).inv()), Some(contour_residue(model, omega)))
        } else {
            (None, None)
        };
        let dim = ComplexDim { omega, order, residue, residue_contour, is_real_dimension, lattice_index };
        if model.is_geometric() && h.eval(omega).norm() <= CANCEL_REL * h.magnitude(omega.re) {
            cancelled.push(dim);
        } else {
            poles.push(dim);
        }
    }
    sort_dims(&mut poles);
    sort_dims(&mut cancelled);
    let mut unresolved = unresolved;
    let zeros_of_numerator = if model.is_geometric() && h.has_zeros() {
        let (z, u) = find_zeros(&h, &window);
        unresolved.extend(u);
        let mut z: Vec<Complex64> = z.into_iter().map(|p| p.0).collect();
        z.sort_by(cmp_points);
        z
    } else {
        Vec::new()
    };
    Ok(DimensionScan { dimension, lattice, window, poles, cancelled, zeros_of_numerator, unresolved })
}

fn cmp_points(a: &Complex64, b: &Complex64) -> Ordering {
    if (a.re - b.re).abs() > 1e-9 * a.re.abs().max(b.re.abs()).max(1.0) {
        b.re.total_cmp(&a.re)
    } else {
        a.im.total_cmp(&b.im)
    }
}

fn sort_dims(v: &mut [ComplexDim]) {
    v.sort_by(|a, b| cmp_points(&a.omega, &b.omega));
}

fn snap_real(s: Complex64, f: &ExpSum) -> Complex64 {
    if s.im.abs() < 1e-10 * s.re.abs().max(1.0) {
        let r = f.newton(Complex64::new(s.re, 0.0), f64::INFINITY, 50).unwrap_or(s);
        Complex64::new(r.re, 0.0)
    } else {
        s
    }
}

fn root_tol(f: &ExpSum, s: Complex64) -> f64 {
    1e-12f64.max(64.0 * f64::EPSILON * f.magnitude(s.re))
}

/// Lattice case: each root `z_0` of `1 − Σ z^{k_j}` gives the line
/// `s = −(ln z_0 + 2πin)/ln(1/r)`.
fn lattice_poles(f: &ExpSum, lattice: &LatticeStructure, window: &Window) -> Vec<(Complex64, u32, Option<i64>)> {
    let ell = -lattice.base.unwrap().ln();
    let mut out = Vec::new();
    for (z, mult) in polynomial_roots(&lattice.exponents) {
        let re = -z.norm().ln() / ell;
        if re < window.re.0 || re > window.re.1 {
            continue;
        }
        let theta = z.arg();
        // Im s = −(θ + 2πn)/ℓ within [−t, t]
        let n_lo = ((-window.t * ell - theta) / (2.0 * PI)).ceil() as i64;
        let n_hi = ((window.t * ell - theta) / (2.0 * PI)).floor() as i64;
        for n in n_lo..=n_hi {
            let mut s = Complex64::new(re, -(theta + 2.0 * PI * n as f64) / ell);
            if z.im == 0.0 && n == 0 && z.re > 0.0 {
                s.im = 0.0;
            }
            if mult == 1 {
                if let Some(p) = f.newton(s, root_tol(f, s), 8) {
                    s = if s.im == 0.0 { Complex64::new(p.re, 0.0) } else { p };
                }
            }
            if window.contains(s) {
                out.push((s, mult, Some(-n)));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn side(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn contains(&self, s: Complex64) -> bool {
        s.re >= self.x0 && s.re <= self.x1 && s.im >= self.y0 && s.im <= self.y1
    }

    fn split(&self, t: f64) -> [Rect; 4] {
        let xm = self.x0 + t * (self.x1 - self.x0);
        let ym = self.y0 + t * (self.y1 - self.y0);
        [
            Rect { x0: self.x0, x1: xm, y0: self.y0, y1: ym },
            Rect { x0: xm, x1: self.x1, y0: self.y0, y1: ym },
            Rect { x0: self.x0, x1: xm, y0: ym, y1: self.y1 },
            Rect { x0: xm, x1: self.x1, y0: ym, y1: self.y1 },
        ]
    }

    fn unresolved(&self, count: Option<i64>) -> UnresolvedCell {
        UnresolvedCell { re: (self.x0, self.x1), im: (self.y0, self.y1), count }
    }
}

/// Change of `arg f` along the segment `a → b`, with steps small enough that
/// `f` cannot wind between samples: `|f(p + h) − f(p)| <= |h|·M <= |f(p)|/2`.
/// `None` if `f` comes too close to zero on the segment.
fn arg_change(f: &ExpSum, a: Complex64, b: Complex64) -> Option<f64> {
    let len = (b - a).norm();
    let bound = f.derivative_bound(1, a.re.min(b.re), a.re.max(b.re)).max(f64::MIN_POSITIVE);
    let floor = 1e-11 * f.magnitude(a.re.max(b.re)).max(f.magnitude(a.re.min(b.re)));
    let dir = (b - a) / len;
    let mut t = 0.0;
    let mut val = f.eval(a);
    let mut total = 0.0;
    for _ in 0..MAX_SEGMENT_STEPS {
        if val.norm() <= floor {
            return None;
        }
        let h = (0.5 * val.norm() / bound).min(len - t);
        t += h;
        let p = if len - t <= 0.0 { b } else { a + dir * t };
        let next = f.eval(p);
        total += (next / val).arg();
        val = next;
        if len - t <= 0.0 {
            return (val.norm() > floor).then_some(total);
        }
    }
    None
}

/// Number of zeros inside `r` by the argument principle.
fn count_zeros(f: &ExpSum, r: &Rect) -> Option<i64> {
    let c = [
        Complex64::new(r.x0, r.y0),
        Complex64::new(r.x1, r.y0),
        Complex64::new(r.x1, r.y1),
        Complex64::new(r.x0, r.y1),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        total += arg_change(f, c[i], c[(i + 1) % 4])?;
    }
    let n = total / (2.0 * PI);
    let k = n.round();
    ((n - k).abs() < 0.1).then_some(k as i64)
}

struct Found {
    roots: Vec<(Complex64, u32)>,
    unresolved: Vec<UnresolvedCell>,
}

fn search(f: &ExpSum, r: Rect, n: i64, out: &mut Found) {
    if n <= 0 {
        return;
    }
    if n == 1 {
        if let Some(s) = f.newton(r.center(), root_tol(f, r.center()), 60) {
            if r.contains(s) {
                out.roots.push((snap_real(s, f), 1));
                return;
            }
        }
    }
    if r.side() < MIN_CELL {
        // a collapsed cluster is a multiple zero when derivatives vanish too
        if let Some(s) = f.newton(r.center(), f64::INFINITY, 60) {
            let scale = f.derivative_bound(1, r.x0, r.x1);
            let multiple = (1..n as u32).all(|k| f.nth_derivative(s, k).norm() <= 1e-6 * scale.max(1.0));
            if r.contains(s) && f.eval(s).norm() <= 1e-9 && multiple {
                out.roots.push((snap_real(s, f), n as u32));
                return;
            }
        }
        out.unresolved.push(r.unresolved(Some(n)));
        return;
    }
    for t in SPLIT_RATIOS {
        let kids = r.split(t);
        let counts: Option<Vec<i64>> = kids.iter().map(|k| count_zeros(f, k)).collect();
        if let Some(counts) = counts {
            if counts.iter().sum::<i64>() == n {
                for (k, c) in kids.into_iter().zip(counts) {
                    search(f, k, c, out);
                }
                return;
            }
        }
    }
    out.unresolved.push(r.unresolved(Some(n)));
}

/// Zeros of `f` in `window`, using conjugate symmetry: the upper half plane
/// is searched and mirrored.
fn find_zeros(f: &ExpSum, window: &Window) -> (Vec<(Complex64, u32)>, Vec<UnresolvedCell>) {
    for shift in GRID_SHIFTS {
        let margin = shift * 0.1;
        let x0 = window.re.0 - margin;
        let x1 = window.re.1 + margin * 0.5;
        let y0 = -margin - 0.01;
        let y1 = window.t + margin;
        let nx = (x1 - x0).ceil().max(1.0) as usize;
        let ny = (y1 - y0).ceil().max(1.0) as usize;
        let (dx, dy) = ((x1 - x0) / nx as f64, (y1 - y0) / ny as f64);
        let cells: Vec<Rect> = (0..ny)
            .flat_map(|j| {
                (0..nx).map(move |i| Rect {
                    x0: x0 + i as f64 * dx,
                    x1: if i + 1 == nx { x1 } else { x0 + (i + 1) as f64 * dx },
                    y0: y0 + j as f64 * dy,
                    y1: if j + 1 == ny { y1 } else { y0 + (j + 1) as f64 * dy },
                })
            })
            .collect();
        let counts: Vec<Option<i64>> = cells.par_iter().map(|c| count_zeros(f, c)).collect();
        if counts.iter().any(Option::is_none) {
            continue;
        }
        let results: Vec<Found> = cells
            .par_iter()
            .zip(counts.par_iter())
            .map(|(c, n)| {
                let mut found = Found { roots: Vec::new(), unresolved: Vec::new() };
                search(f, *c, n.unwrap(), &mut found);
                found
            })
            .collect();
        let mut roots: Vec<(Complex64, u32)> = Vec::new();
        let mut unresolved = Vec::new();
        for r in results {
            for (s, m) in r.roots {
                if s.im < 0.0 || roots.iter().any(|(t, _)| (*t - s).norm() < 1e-8) {
                    continue;
                }
                roots.push((s, m));
            }
            unresolved.extend(r.unresolved);
        }
        let mut all: Vec<(Complex64, u32)> = Vec::new();
        for (s, m) in roots {
            if window.contains(s) {
                all.push((s, m));
                if s.im > 0.0 {
                    all.push((s.conj(), m));
                }
            }
        }
        return (all, unresolved);
    }
    let whole = Rect { x0: window.re.0, x1: window.re.1, y0: -window.t, y1: window.t };
    (Vec::new(), vec![whole.unresolved(None)])
}
