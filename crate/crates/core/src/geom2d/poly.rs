use super::lp::chebyshev_center;
use super::point::Point2;
use super::{GeomError, Tol};
use crate::scalar::Real;

/// Closed half-plane `normal · x <= offset` with unit `normal`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane<T> {
    pub normal: Point2<T>,
    pub offset: T,
}

impl<T: Real> HalfPlane<T> {
    /// Normalizes `normal`; `None` for a zero normal.
    pub fn new(normal: Point2<T>, offset: T) -> Option<Self> {
        let len = normal.norm();
        if !(len > T::zero()) {
            return None;
        }
        Some(Self { normal: normal * (T::one() / len), offset: offset / len })
    }

    /// Positive outside, negative inside.
    #[inline]
    pub fn signed_distance(&self, p: Point2<T>) -> T {
        self.normal.dot(p) - self.offset
    }

    /// The complementary closed half-plane.
    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal, offset: -self.offset }
    }

    /// Moves the boundary line inward by `eps`.
    pub fn shrunk(&self, eps: T) -> Self {
        Self { normal: self.normal, offset: self.offset - eps }
    }
}

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ConvexPoly<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Real> ConvexPoly<T> {
    /// Validates and normalizes: accepts either orientation, removes
    /// duplicate and collinear vertices (within `tol.geom`), and rejects
    /// reflex vertices or areas at most `tol.area`.
    pub fn new(vertices: Vec<Point2<T>>, tol: &Tol<T>) -> Result<Self, GeomError> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let mut vertices = vertices;
        if signed_area_of(&vertices) < T::zero() {
            vertices.reverse();
        }
        let vertices = clean_ring(vertices, tol.geom, true)?;
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        let poly = Self { vertices };
        if !(poly.area() > tol.area) {
            return Err(GeomError::ZeroArea);
        }
        Ok(poly)
    }

    /// Trusted constructor for vertices already known to be counterclockwise
    /// and strictly convex.
    pub(crate) fn from_raw(vertices: Vec<Point2<T>>) -> Self {
        Self { vertices }
    }

    pub fn axis_rect(x0: T, y0: T, x1: T, y1: T) -> Self {
        Self::from_raw(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn signed_area(&self) -> T {
        signed_area_of(&self.vertices)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> T {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn centroid(&self) -> Point2<T> {
        let mut cx = T::zero();
        let mut cy = T::zero();
        let mut a2 = T::zero();
        let o = self.vertices[0];
        for (p, q) in self.edges() {
            let (p, q) = (p - o, q - o);
            let w = p.cross(q);
            a2 = a2 + w;
            cx = cx + (p.x + q.x) * w;
            cy = cy + (p.y + q.y) * w;
        }
        let k = T::one() / (T::lit(3.0) * a2);
        Point2::new(o.x + cx * k, o.y + cy * k)
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bbox(&self) -> (Point2<T>, Point2<T>) {
        bbox_of(&self.vertices)
    }

    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Edge half-planes with outward unit normals.
    pub fn halfplanes(&self) -> Vec<HalfPlane<T>> {
        self.edges()
            .filter_map(|(a, b)| {
                let e = b - a;
                HalfPlane::new(Point2::new(e.y, -e.x), e.y * a.x - e.x * a.y)
            })
            .collect()
    }

    /// Minimum over edges of the inward distance to the edge line; positive
    /// inside, and equal to the distance to the boundary for inside points.
    pub fn boundary_margin(&self, p: Point2<T>) -> T {
        self.halfplanes()
            .iter()
            .map(|h| -h.signed_distance(p))
            .fold(T::infinity(), T::min)
    }

    /// Same as `boundary_margin(p) >= -slack`, without allocating.
    pub fn contains(&self, p: Point2<T>, slack: T) -> bool {
        self.edges().all(|(a, b)| {
            let e = b - a;
            let len = e.norm();
            e.cross(p - a) >= -slack * len
        })
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to(&self, p: Point2<T>) -> T {
        if self.contains(p, T::zero()) {
            return T::zero();
        }
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(T::infinity(), T::min)
    }

    /// Hausdorff distance between two convex polygons (attained at vertices).
    pub fn hausdorff(&self, other: &Self) -> T {
        let ab = self.vertices.iter().map(|&v| other.distance_to(v)).fold(T::zero(), T::max);
        let ba = other.vertices.iter().map(|&v| self.distance_to(v)).fold(T::zero(), T::max);
        ab.max(ba)
    }

    /// `self ∩ h`; `None` when the result has area at most `tol.area`.
    /// Vertices within `tol.geom` of the line count as on it.
    pub fn clip_halfplane(&self, h: &HalfPlane<T>, tol: &Tol<T>) -> Option<Self> {
        let dist: Vec<T> = self.vertices.iter().map(|&v| h.signed_distance(v)).collect();
        if dist.iter().all(|&d| d <= tol.geom) {
            return Some(self.clone());
        }
        if dist.iter().all(|&d| d >= -tol.geom) {
            return None;
        }
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (di, dj) = (dist[i], dist[j]);
            if di <= tol.geom {
                out.push(self.vertices[i]);
            }
            if (di < -tol.geom && dj > tol.geom) || (di > tol.geom && dj < -tol.geom) {
                let t = di / (di - dj);
                out.push(self.vertices[i].lerp(self.vertices[j], t));
            }
        }
        let out = clean_ring(out, tol.geom, false).ok()?;
        if out.len() < 3 {
            return None;
        }
        let poly = Self { vertices: out };
        (poly.area() > tol.area).then_some(poly)
    }

    /// Convex intersection by sequential half-plane clipping.
    pub fn intersect(&self, other: &Self, tol: &Tol<T>) -> Option<Self> {
        if !bbox_overlap(self.bbox(), other.bbox(), tol.geom) {
            return None;
        }
        let mut acc = self.clone();
        for h in other.halfplanes() {
            acc = acc.clip_halfplane(&h, tol)?;
        }
        Some(acc)
    }

    /// Area of `self ∩ other`, zero when empty.
    pub fn overlap_area(&self, other: &Self, tol: &Tol<T>) -> T {
        self.intersect(other, tol).map_or(T::zero(), |p| p.area())
    }

    /// Inner parallel body `{x : dist(x, ∂self) >= eps}`: every edge moved
    /// inward by `eps`.
    pub fn erode(&self, eps: T, tol: &Tol<T>) -> Option<Self> {
        if eps <= T::zero() {
            return Some(self.clone());
        }
        let mut acc = self.clone();
        for h in self.halfplanes() {
            acc = acc.clip_halfplane(&h.shrunk(eps), tol)?;
        }
        Some(acc)
    }

    /// Area of the points within `eps` of the boundary.
    pub fn inner_tube_area(&self, eps: T, tol: &Tol<T>) -> T {
        if eps <= T::zero() {
            return T::zero();
        }
        let total = self.area();
        let core = self.erode(eps, tol).map_or(T::zero(), |p| p.area());
        (total - core).max(T::zero())
    }

    /// Chebyshev center: `(inradius, incenter)`.
    pub fn inradius(&self) -> (T, Point2<T>) {
        chebyshev_center(&self.halfplanes(), self.centroid())
    }
}

pub(crate) fn signed_area_of<T: Real>(v: &[Point2<T>]) -> T {
    if v.len() < 3 {
        return T::zero();
    }
    let o = v[0];
    let mut s = T::zero();
    for i in 1..v.len() - 1 {
        s = s + (v[i] - o).cross(v[i + 1] - o);
    }
    s / T::lit(2.0)
}

pub(crate) fn bbox_of<T: Real>(v: &[Point2<T>]) -> (Point2<T>, Point2<T>) {
    let mut lo = Point2::new(T::infinity(), T::infinity());
    let mut hi = Point2::new(T::neg_infinity(), T::neg_infinity());
    for p in v {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

pub(crate) fn bbox_overlap<T: Real>(
    a: (Point2<T>, Point2<T>),
    b: (Point2<T>, Point2<T>),
    slack: T,
) -> bool {
    a.0.x <= b.1.x + slack && b.0.x <= a.1.x + slack && a.0.y <= b.1.y + slack && b.0.y <= a.1.y + slack
}

pub fn point_segment_distance<T: Real>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    let e = b - a;
    let len2 = e.dot(e);
    if !(len2 > T::zero()) {
        return p.distance(a);
    }
    let t = ((p - a).dot(e) / len2).max(T::zero()).min(T::one());
    p.distance(a + e * t)
}

/// Removes near-duplicate and near-collinear vertices from a
/// counterclockwise ring. With `strict`, a clearly reflex vertex is an error.
fn clean_ring<T: Real>(
    mut v: Vec<Point2<T>>,
    tol: T,
    strict: bool,
) -> Result<Vec<Point2<T>>, GeomError> {
    loop {
        let n = v.len();
        if n < 3 {
            return Ok(v);
        }
        let mut changed = false;
        // duplicates
        let mut keep: Vec<Point2<T>> = Vec::with_capacity(n);
        for &p in &v {
            if keep.last().is_none_or(|q| q.distance(p) > tol) {
                keep.push(p);
            } else {
                changed = true;
            }
        }
        while keep.len() > 1 && keep[0].distance(*keep.last().unwrap()) <= tol {
            keep.pop();
            changed = true;
        }
        v = keep;
        let n = v.len();
        if n < 3 {
            return Ok(v);
        }
        // collinear or reflex
        let mut worst: Option<(usize, T)> = None;
        for i in 0..n {
            let prev = v[(i + n - 1) % n];
            let next = v[(i + 1) % n];
            let base = next - prev;
            let len = base.norm();
            if !(len > T::zero()) {
                worst = Some((i, T::neg_infinity()));
                break;
            }
            // signed distance of v[i] to the chord, positive when convex
            let h = -(base.cross(v[i] - prev)) / len;
            if strict && h < -tol {
                return Err(GeomError::NotConvex);
            }
            if h <= tol && worst.is_none_or(|(_, w)| h < w) {
                worst = Some((i, h));
            }
        }
        if let Some((i, _)) = worst {
            v.remove(i);
            changed = true;
        }
        if !changed {
            return Ok(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPoly<f64> {
        ConvexPoly::axis_rect(0.0, 0.0, 1.0, 1.0)
    }

    fn tol() -> Tol<f64> {
        Tol::unit()
    }

    fn equilateral(side: f64) -> ConvexPoly<f64> {
        ConvexPoly::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(side, 0.0),
                Point2::new(side / 2.0, side * 3f64.sqrt() / 2.0),
            ],
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn new_normalizes_orientation_and_collinear_points() {
        let p = ConvexPoly::new(
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(0.0, 1.0),
                Point2::new(1.0, 1.0),
                Point2::new(1.0, 0.5),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 0.0),
            ],
            &tol(),
        )
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.signed_area() > 0.0);
    }

    #[test]
    fn new_rejects_reflex_and_degenerate() {
        let reflex = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.5),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        assert_eq!(ConvexPoly::new(reflex, &tol()), Err(GeomError::NotConvex));
        let line = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        assert!(ConvexPoly::new(line, &tol()).is_err());
    }

    #[test]
    fn clip_square_in_half() {
        let h = HalfPlane::new(Point2::new(1.0, 0.0), 0.5).unwrap();
        let c = unit_square().clip_halfplane(&h, &tol()).unwrap();
        assert!((c.area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn clip_outside_is_empty() {
        let h = HalfPlane::new(Point2::new(1.0, 0.0), -0.5).unwrap();
        assert!(unit_square().clip_halfplane(&h, &tol()).is_none());
    }

    #[test]
    fn clip_by_own_edge_is_identity() {
        let t = equilateral(1.0);
        for h in t.halfplanes() {
            assert_eq!(t.clip_halfplane(&h, &tol()).unwrap(), t);
        }
    }

    #[test]
    fn self_intersection() {
        let t = equilateral(1.0);
        let i = t.intersect(&t, &tol()).unwrap();
        assert!((i.area() - t.area()).abs() < 1e-12);
    }

    #[test]
    fn erode_square_and_triangle() {
        let e = unit_square().erode(0.25, &tol()).unwrap();
        assert!((e.area() - 0.25).abs() < 1e-15);
        assert_eq!(unit_square().erode(0.0, &tol()).unwrap(), unit_square());
        // half the inradius of a unit equilateral triangle leaves the
        // half-scale triangle about the incenter
        let t = equilateral(1.0);
        let e = t.erode(3f64.sqrt() / 12.0, &tol()).unwrap();
        let expected = 3f64.sqrt() / 4.0 / 4.0;
        assert!((e.area() - expected).abs() < 1e-14);
        assert!(t.erode(3f64.sqrt() / 6.0 * 1.001, &tol()).is_none());
        assert!(t.erode(3f64.sqrt() / 6.0 * 0.999, &tol()).is_some());
    }

    #[test]
    fn inner_tube_examples() {
        assert!((unit_square().inner_tube_area(0.1, &tol()) - 0.36).abs() < 1e-14);
        assert_eq!(unit_square().inner_tube_area(0.0, &tol()), 0.0);
        let koch_gen = equilateral(1.0 / 3.0);
        let full = 3f64.sqrt() / 36.0;
        // inradius is sqrt(3)/18; at half of it the core is the half-scale triangle
        assert!((koch_gen.inner_tube_area(3f64.sqrt() / 18.0, &tol()) - full).abs() < 1e-15);
        let half = koch_gen.inner_tube_area(3f64.sqrt() / 36.0, &tol());
        assert!((half - 3f64.sqrt() / 48.0).abs() < 1e-15);
        assert!((koch_gen.inner_tube_area(1.0, &tol()) - full).abs() < 1e-15);
    }

    #[test]
    fn inradius_examples() {
        let (r, c) = unit_square().inradius();
        assert!((r - 0.5).abs() < 1e-14);
        assert!(c.distance(Point2::new(0.5, 0.5)) < 1e-12);
        for side in [1.0, 0.5, 1.0 / 3.0] {
            let t = equilateral(side);
            // area / semiperimeter
            let oracle = t.area() / (1.5 * side);
            assert!((t.inradius().0 - oracle).abs() < 1e-14);
            assert!((oracle - side * 3f64.sqrt() / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn distance_and_hausdorff() {
        let s = unit_square();
        assert_eq!(s.distance_to(Point2::new(0.5, 0.5)), 0.0);
        assert!((s.distance_to(Point2::new(2.0, 0.5)) - 1.0).abs() < 1e-15);
        let big = ConvexPoly::axis_rect(0.0, 0.0, 2.0, 1.0);
        assert!((s.hausdorff(&big) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let s = ConvexPoly::<f32>::axis_rect(0.0, 0.0, 1.0, 1.0);
        let t = Tol::<f32>::unit();
        assert!((s.inner_tube_area(0.1, &t) - 0.36).abs() < 1e-5);
        assert!((s.inradius().0 - 0.5).abs() < 1e-5);
    }
}
