use crate::ifs::{IfsError, Limits};
use num_complex::Complex64;

/// Relative distance under which atom locations are identified.
const MERGE_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    Scaling,
    /// The `q`-th geometric measure (0-based).
    Geometric(usize),
    GeometricTotal,
}

/// Finite truncation of a discrete measure on `[1, ∞)` or `(0, ∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicMeasure {
    /// `(location, weight)`, locations ascending.
    pub atoms: Vec<(f64, u128)>,
    pub kind: MeasureKind,
    /// Truncation threshold on `r_w` (scaling) or `g_q·r_w` (geometric).
    pub r_min: f64,
    /// One entry per dilated scaling measure: `(g, n)` meaning words of length
    /// `< n` are all present with dilation `1/g`.
    pub(crate) complete: Vec<(f64, usize)>,
}

impl AtomicMeasure {
    pub fn total_weight(&self) -> u128 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Shortest word length not fully represented, per dilated component.
    pub fn min_excluded_lengths(&self) -> Vec<usize> {
        self.complete.iter().map(|c| c.1).collect()
    }

    /// Bound on `|ζ(s) − mellin(μ, s)|` for `Re s = sigma`, where `ζ` is the
    /// full (untruncated) Dirichlet series: every missing atom comes from a
    /// word of length at least `n`, so the defect is at most
    /// `Σ g^σ·f(σ)^n/(1 − f(σ))`, `f(σ) = Σ_j r_j^σ`. Infinite if `f(σ) >= 1`.
    pub fn tail_bound(&self, ratios: &[f64], sigma: f64) -> f64 {
        let f: f64 = ratios.iter().map(|r| r.powf(sigma)).sum();
        if f >= 1.0 {
            return f64::INFINITY;
        }
        self.complete
            .iter()
            .map(|&(g, n)| g.powf(sigma) * f.powi(n as i32) / (1.0 - f))
            .sum()
    }
}

fn merge(mut atoms: Vec<(f64, u128)>) -> Vec<(f64, u128)> {
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, u128)> = Vec::with_capacity(atoms.len());
    let mut anchor = f64::NAN;
    for (x, w) in atoms {
        match out.last_mut() {
            Some(last) if x - anchor <= MERGE_REL * anchor => last.1 += w,
            _ => {
                anchor = x;
                out.push((x, w));
            }
        }
    }
    out
}

/// Atoms `1/r_w` (merged) for all words with `r_w >= r_min`, and the length of
/// the shortest word not all of whose members are included.
fn scaling_atoms(ratios: &[f64], r_min: f64, limits: &Limits) -> Result<(Vec<(f64, u128)>, usize), IfsError> {
    let x_max = (1.0 + MERGE_REL) / r_min;
    let inv: Vec<f64> = ratios.iter().map(|r| 1.0 / r).collect();
    let r_low = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let mut all = Vec::new();
    let mut level = vec![(1.0f64, 1u128)];
    let mut complete = 0usize;
    let mut len = 0usize;
    while !level.is_empty() {
        if r_low.powi(len as i32) >= r_min * (1.0 - MERGE_REL) {
            complete = len + 1;
        }
        all.extend(level.iter().filter(|a| a.0 <= x_max).copied());
        limits.check(all.len() as u128)?;
        let mut next = Vec::with_capacity(level.len() * ratios.len());
        for &(x, w) in &level {
            for &s in &inv {
                let y = x * s;
                if y <= x_max {
                    next.push((y, w));
                }
            }
        }
        level = merge(next);
        len += 1;
    }
    Ok((merge(all), complete))
}

/// `η_s` truncated to words with `r_w >= r_min`: atoms at `1/r_w`.
pub fn scaling_measure(ratios: &[f64], r_min: f64, limits: &Limits) -> Result<AtomicMeasure, IfsError> {
    assert!(r_min > 0.0 && r_min < 1.0, "r_min must lie in (0, 1)");
    let (atoms, n) = scaling_atoms(ratios, r_min, limits)?;
    Ok(AtomicMeasure { atoms, kind: MeasureKind::Scaling, r_min, complete: vec![(1.0, n)] })
}

/// `η_{g,q}`: atoms at `1/(g_q·r_w)` for `g_q·r_w >= rho_min`.
pub fn geometric_measure_q(
    ratios: &[f64],
    g: &[f64],
    q: usize,
    rho_min: f64,
    limits: &Limits,
) -> Result<AtomicMeasure, IfsError> {
    let gq = g[q];
    let (atoms, n) = if gq * (1.0 + MERGE_REL) < rho_min {
        (Vec::new(), 0)
    } else {
        let (a, n) = scaling_atoms(ratios, (rho_min / gq).min(1.0), limits)?;
        (a.into_iter().map(|(x, w)| (x / gq, w)).collect(), n)
    };
    Ok(AtomicMeasure { atoms, kind: MeasureKind::Geometric(q), r_min: rho_min, complete: vec![(gq, n)] })
}

/// `η_g = Σ_q η_{g,q}`, merged.
pub fn geometric_measure(ratios: &[f64], g: &[f64], rho_min: f64, limits: &Limits) -> Result<AtomicMeasure, IfsError> {
    assert!(rho_min > 0.0, "rho_min must be positive");
    let mut atoms = Vec::new();
    let mut complete = Vec::new();
    for q in 0..g.len() {
        let m = geometric_measure_q(ratios, g, q, rho_min, limits)?;
        atoms.extend(m.atoms);
        complete.extend(m.complete);
        limits.check(atoms.len() as u128)?;
    }
    Ok(AtomicMeasure { atoms: merge(atoms), kind: MeasureKind::GeometricTotal, r_min: rho_min, complete })
}

/// `∫ x^{-s} μ(dx) = Σ w·x^{-s}`, Neumaier-compensated in order of
/// descending weight.
pub fn mellin(mu: &AtomicMeasure, s: Complex64) -> Complex64 {
    let mut order: Vec<usize> = (0..mu.atoms.len()).collect();
    order.sort_by(|&a, &b| mu.atoms[b].1.cmp(&mu.atoms[a].1).then(a.cmp(&b)));
    let terms = order.iter().map(|&i| {
        let (x, w) = mu.atoms[i];
        w as f64 * (-s * x.ln()).exp()
    });
    let (mut re, mut re_c, mut im, mut im_c) = (0.0, 0.0, 0.0, 0.0);
    for t in terms {
        neumaier_step(&mut re, &mut re_c, t.re);
        neumaier_step(&mut im, &mut im_c, t.im);
    }
    Complex64::new(re + re_c, im + im_c)
}

fn neumaier_step(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}
