use super::point::Point2;
use super::poly::ConvexPoly;
use super::{GeomError, Tol};
use crate::scalar::Real;

/// Extreme points of a planar point set in counterclockwise order (Andrew's
/// monotone chain). Collinear boundary points are dropped; the result may
/// have fewer than three points for degenerate inputs.
pub fn hull_points<T: Real>(points: &[Point2<T>], tol: T) -> Vec<Point2<T>> {
    let mut pts: Vec<Point2<T>> = points.iter().copied().filter(|p| p.is_finite()).collect();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a.distance(*b) <= tol);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point2<T>, a: Point2<T>, b: Point2<T>| {
        let e = b - o;
        let len = e.norm();
        // distance of `a` to the left of o->b is positive for a right turn at a
        (a - o).cross(e) / len.max(T::min_positive_value())
    };
    let mut lower: Vec<Point2<T>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2<T>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Minimal counterclockwise convex polygon containing `points`.
///
/// Fails with [`GeomError::DegenerateHull`] when the points are coincident or
/// collinear within `tol.geom`, i.e. the set spans less than two dimensions.
pub fn convex_hull<T: Real>(points: &[Point2<T>], tol: &Tol<T>) -> Result<ConvexPoly<T>, GeomError> {
    let h = hull_points(points, tol.geom);
    if h.len() < 3 {
        return Err(GeomError::DegenerateHull);
    }
    ConvexPoly::new(h, tol).map_err(|_| GeomError::DegenerateHull)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_interior_points() {
        let s3 = 3f64.sqrt();
        let pts = vec![
            Point2::new(0.3, 0.2),
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 0.0),
            Point2::new(0.5, s3 / 2.0),
            Point2::new(0.5, 0.3),
        ];
        let h = convex_hull(&pts, &Tol::unit()).unwrap();
        assert_eq!(h.len(), 3);
        assert!((h.area() - s3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_is_degenerate() {
        let pts: Vec<_> = (0..10).map(|i| Point2::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(convex_hull(&pts, &Tol::unit()), Err(GeomError::DegenerateHull));
        assert_eq!(
            convex_hull(&[Point2::new(1.0, 1.0); 4], &Tol::unit()),
            Err(GeomError::DegenerateHull)
        );
    }
}
