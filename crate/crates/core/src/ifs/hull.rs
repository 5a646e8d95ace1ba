use super::{fixed_point, map_of_word, words, IfsError, IfsSystem, Limits};
use crate::geom2d::{hull_points, GeomError};
use crate::{ConvexPoly, Point2, Tol};
use serde::Serialize;

/// Default relative stabilization threshold for [`estimate_hull`].
pub const DEFAULT_HULL_TOL: f64 = 1e-9;
const MAX_REFINEMENTS: usize = 400;
const MAX_HULL_VERTICES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullEstimate {
    pub hull: ConvexPoly,
    /// Word depth of the last refinement.
    pub sample_depth: usize,
    /// Hausdorff distance between the last two refinement hulls.
    pub stabilization_gap: f64,
    pub stabilized: bool,
}

/// The points `φ_w(x*)` for all `|w| = m`, `x*` the fixed point of `φ_1`,
/// followed by the `J` fixed points of the maps.
pub fn sample_attractor(sys: &IfsSystem, m: usize, limits: &Limits) -> Result<Vec<Point2>, IfsError> {
    sys.require_geometry()?;
    let count = (sys.len() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    limits.check(count)?;
    let seed = fixed_point(&sys.maps()[0]);
    let mut out = Vec::with_capacity(count as usize + sys.len());
    out.extend(words(sys, m).map(|w| map_of_word(sys, &w).apply(seed)));
    out.extend(sys.maps().iter().map(fixed_point));
    Ok(out)
}

/// Convex hull of the attractor, refined until successive estimates are
/// within `rel_tol · diam` in Hausdorff distance.
///
/// Depth `m` uses the hull of `Φ^m` applied to the fixed points, which equals
/// the hull of [`sample_attractor`] at depth `m` but only carries extreme
/// points between refinements.
pub fn estimate_hull(sys: &IfsSystem, rel_tol: f64) -> Result<HullEstimate, IfsError> {
    sys.require_geometry()?;
    let fixed: Vec<Point2> = sys.maps().iter().map(fixed_point).collect();
    let mut diam = 0.0f64;
    for a in &fixed {
        for b in &fixed {
            diam = diam.max(a.distance(*b));
        }
    }
    if diam == 0.0 {
        // all maps share one fixed point: attractor is that point
        return Err(GeomError::DegenerateHull.into());
    }
    let work_tol = 1e-13 * diam;
    let mut prev = hull_points(&fixed, work_tol);
    let mut gap = f64::INFINITY;
    let mut depth = 0;
    for m in 1..=MAX_REFINEMENTS {
        let images: Vec<Point2> = sys
            .maps()
            .iter()
            .flat_map(|f| prev.iter().map(move |&p| f.apply(p)))
            .chain(prev.iter().copied())
            .collect();
        let next = hull_points(&images, work_tol);
        for a in &next {
            for b in &next {
                diam = diam.max(a.distance(*b));
            }
        }
        depth = m;
        if m >= 2 {
            gap = point_hull_hausdorff(&prev, &next);
        }
        prev = next;
        if gap <= rel_tol * diam || prev.len() > MAX_HULL_VERTICES {
            break;
        }
    }
    let tol = Tol::for_diameter(diam);
    let hull = ConvexPoly::new(hull_points(&prev, tol.geom), &tol).map_err(|_| GeomError::DegenerateHull)?;
    Ok(HullEstimate {
        hull,
        sample_depth: depth,
        stabilization_gap: gap,
        stabilized: gap <= rel_tol * diam,
    })
}

/// Hausdorff distance between the convex hulls of two extreme-point lists
/// (each possibly a point or a segment).
fn point_hull_hausdorff(a: &[Point2], b: &[Point2]) -> f64 {
    let one_way = |from: &[Point2], to: &[Point2]| {
        from.iter().map(|&p| distance_to_hull(p, to)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

fn distance_to_hull(p: Point2, h: &[Point2]) -> f64 {
    use crate::geom2d::point_segment_distance;
    match h.len() {
        0 => f64::INFINITY,
        1 => p.distance(h[0]),
        2 => point_segment_distance(p, h[0], h[1]),
        n => {
            let inside = (0..n).all(|i| (h[(i + 1) % n] - h[i]).cross(p - h[i]) >= 0.0);
            if inside {
                0.0
            } else {
                (0..n)
                    .map(|i| point_segment_distance(p, h[i], h[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}
