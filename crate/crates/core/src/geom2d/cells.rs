use super::hull::hull_points;
use super::point::Point2;
use super::poly::{bbox_of, bbox_overlap, point_segment_distance, ConvexPoly};
use super::Tol;
use crate::scalar::Real;
use std::cmp::Ordering;

type BBox<T> = (Point2<T>, Point2<T>);

/// Finite union of interior-disjoint convex cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CellSet<T> {
    pub cells: Vec<ConvexPoly<T>>,
}

impl<T: Real> CellSet<T> {
    pub fn new(cells: Vec<ConvexPoly<T>>) -> Self {
        Self { cells }
    }

    pub fn single(p: ConvexPoly<T>) -> Self {
        Self { cells: vec![p] }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn area(&self) -> T {
        neumaier_sum(self.cells.iter().map(|c| c.area()))
    }

    pub fn contains(&self, p: Point2<T>, slack: T) -> bool {
        self.cells.iter().any(|c| c.contains(p, slack))
    }

    /// Total area of pairwise cell intersections between `self` and `other`.
    pub fn overlap_area(&self, other: &Self, tol: &Tol<T>) -> T {
        let mut idx: Vec<(usize, BBox<T>)> =
            other.cells.iter().map(|c| c.bbox()).enumerate().collect();
        idx.sort_by(|a, b| a.1 .0.x.partial_cmp(&b.1 .0.x).unwrap_or(Ordering::Equal));
        let mut total = Vec::new();
        for a in &self.cells {
            let ab = a.bbox();
            for (j, bb) in &idx {
                if bb.0.x > ab.1.x + tol.geom {
                    break;
                }
                if bbox_overlap(ab, *bb, tol.geom) {
                    total.push(a.overlap_area(&other.cells[*j], tol));
                }
            }
        }
        neumaier_sum(total.into_iter())
    }

    /// Largest pairwise intersection area among distinct cells.
    pub fn max_self_overlap(&self, tol: &Tol<T>) -> T {
        let mut worst = T::zero();
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                worst = worst.max(a.overlap_area(b, tol));
            }
        }
        worst
    }
}

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<T: Real>(values: impl Iterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut comp = T::zero();
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp = comp + ((sum - t) + v);
        } else {
            comp = comp + ((v - t) + sum);
        }
        sum = t;
    }
    sum + comp
}

/// `region ∖ p` as convex cells: each cell meeting `p` is split along the
/// edge lines of `p` and the piece inside `p` is dropped.
pub fn subtract<T: Real>(region: &CellSet<T>, p: &ConvexPoly<T>, tol: &Tol<T>) -> CellSet<T> {
    let planes = p.halfplanes();
    let pb = p.bbox();
    let mut out = Vec::with_capacity(region.cells.len() + planes.len());
    for cell in &region.cells {
        if !bbox_overlap(cell.bbox(), pb, tol.geom) || cell.intersect(p, tol).is_none() {
            out.push(cell.clone());
            continue;
        }
        let mut rest = Some(cell.clone());
        for h in &planes {
            let Some(r) = rest.take() else { break };
            if let Some(outside) = r.clip_halfplane(&h.flipped(), tol) {
                out.push(outside);
            }
            rest = r.clip_halfplane(h, tol);
        }
    }
    CellSet::new(out)
}

/// Subtracts every polygon in `ps`, pruning by bounding boxes.
pub fn subtract_all<T: Real>(region: &CellSet<T>, ps: &[ConvexPoly<T>], tol: &Tol<T>) -> CellSet<T> {
    let mut cells = region.cells.clone();
    let mut order: Vec<usize> = (0..ps.len()).collect();
    let boxes: Vec<_> = ps.iter().map(|p| p.bbox()).collect();
    order.sort_by(|&a, &b| boxes[a].0.x.partial_cmp(&boxes[b].0.x).unwrap_or(Ordering::Equal));
    let mut next = Vec::new();
    for cell in cells.drain(..) {
        let mut pieces = vec![cell];
        let cb = pieces[0].bbox();
        for &k in &order {
            if boxes[k].0.x > cb.1.x + tol.geom {
                break;
            }
            if !bbox_overlap(cb, boxes[k], tol.geom) {
                continue;
            }
            pieces = subtract(&CellSet::new(pieces), &ps[k], tol).cells;
            if pieces.is_empty() {
                break;
            }
        }
        next.extend(pieces);
    }
    CellSet::new(next)
}

/// Edge-connected component of a cell set.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<T> {
    pub cells: CellSet<T>,
    pub area: T,
    /// Length of the outer boundary (shared internal edges excluded).
    pub perimeter: T,
    pub inradius: T,
    pub incenter: Point2<T>,
    pub is_convex: bool,
    /// The union as a single polygon when it is convex.
    pub hull: Option<ConvexPoly<T>>,
    /// Boundary segments of the union.
    pub boundary: Vec<(Point2<T>, Point2<T>)>,
}

impl<T: Real> Component<T> {
    /// Builds a component from cells assumed edge-connected.
    pub fn from_cells(cells: CellSet<T>, tol: &Tol<T>) -> Self {
        let area = cells.area();
        let boundary = boundary_segments(&cells, tol);
        let perimeter = neumaier_sum(boundary.iter().map(|(a, b)| a.distance(*b)));
        let all: Vec<_> = cells.cells.iter().flat_map(|c| c.vertices().iter().copied()).collect();
        let hv = hull_points(&all, tol.geom);
        let hull = if hv.len() >= 3 {
            let h = ConvexPoly::from_raw(hv);
            let slack = tol.area * T::lit((cells.len() + 1) as f64);
            ((h.area() - area).abs() <= slack).then_some(h)
        } else {
            None
        };
        let mut c = Self {
            cells,
            area,
            perimeter,
            inradius: T::zero(),
            incenter: Point2::origin(),
            is_convex: hull.is_some(),
            hull,
            boundary,
        };
        let (r, x) = match &c.hull {
            Some(h) => h.inradius(),
            None => sampled_inradius(&c, tol.geom),
        };
        c.inradius = r;
        c.incenter = x;
        c
    }

    pub fn contains(&self, p: Point2<T>, slack: T) -> bool {
        self.cells.contains(p, slack)
    }

    /// Distance from an interior point to the complement of the union.
    pub fn distance_to_boundary(&self, p: Point2<T>) -> T {
        if let Some(h) = &self.hull {
            return h.boundary_margin(p).max(T::zero());
        }
        self.boundary
            .iter()
            .map(|&(a, b)| point_segment_distance(p, a, b))
            .fold(T::infinity(), T::min)
    }

    /// Area of `{x in component : dist(x, complement) < eps}` for convex
    /// components; `None` when the union is not convex.
    pub fn exact_inner_tube_area(&self, eps: T, tol: &Tol<T>) -> Option<T> {
        self.hull.as_ref().map(|h| h.inner_tube_area(eps, tol))
    }
}

/// Inradius of a component accurate to `tol`: delegates to the Chebyshev
/// center when convex, otherwise maximizes the distance to the complement by
/// grid sampling plus pattern-search refinement.
pub fn inradius_component<T: Real>(c: &Component<T>, tol: T) -> T {
    match &c.hull {
        Some(h) => h.inradius().0,
        None => sampled_inradius(c, tol).0,
    }
}

fn sampled_inradius<T: Real>(c: &Component<T>, tol: T) -> (T, Point2<T>) {
    let all: Vec<_> = c.cells.cells.iter().flat_map(|p| p.vertices().iter().copied()).collect();
    let (lo, hi) = bbox_of(&all);
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let depth = |p: Point2<T>| {
        if c.contains(p, T::zero()) {
            c.distance_to_boundary(p)
        } else {
            -T::one()
        }
    };
    const GRID: usize = 64;
    let mut seeds: Vec<(T, Point2<T>)> = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let fx = T::lit((i as f64 + 0.5) / GRID as f64);
            let fy = T::lit((j as f64 + 0.5) / GRID as f64);
            let p = Point2::new(lo.x + (hi.x - lo.x) * fx, lo.y + (hi.y - lo.y) * fy);
            let d = depth(p);
            if d > T::zero() {
                seeds.push((d, p));
            }
        }
    }
    seeds.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal).then(a.1.lex_cmp(&b.1)));
    seeds.truncate(8);
    let dirs: Vec<Point2<T>> = (0..16)
        .map(|k| {
            let a = T::lit(std::f64::consts::PI * k as f64 / 8.0);
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    let mut best = (T::zero(), c.cells.cells[0].centroid());
    for (mut d, mut p) in seeds {
        let mut step = span / T::lit(GRID as f64);
        let floor = tol.max(span * T::epsilon() * T::lit(16.0)) / T::lit(4.0);
        while step > floor {
            let mut moved = false;
            for &u in &dirs {
                let q = p + u * step;
                let dq = depth(q);
                if dq > d {
                    d = dq;
                    p = q;
                    moved = true;
                }
            }
            if !moved {
                step = step / T::lit(2.0);
            }
        }
        if d > best.0 {
            best = (d, p);
        }
    }
    best
}

/// Splits a cell set into edge-connected components (shared segment longer
/// than `tol.geom`), sorted by area descending, then incenter
/// lexicographically. The order defines generator indices.
pub fn components<T: Real>(cells: &CellSet<T>, tol: &Tol<T>) -> Vec<Component<T>> {
    let n = cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let boxes: Vec<_> = cells.cells.iter().map(|c| c.bbox()).collect();
    for i in 0..n {
        for j in i + 1..n {
            if bbox_overlap(boxes[i], boxes[j], tol.geom * T::lit(4.0))
                && shared_edge_length(&cells.cells[i], &cells.cells[j], tol) > tol.geom
            {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<ConvexPoly<T>>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(cells.cells[i].clone());
    }
    let mut comps: Vec<Component<T>> =
        groups.into_iter().map(|g| Component::from_cells(CellSet::new(g), tol)).collect();
    let area_slack = tol.area * T::lit(4.0 * (n + 1) as f64);
    comps.sort_by(|a, b| {
        if (a.area - b.area).abs() > area_slack {
            return b.area.partial_cmp(&a.area).unwrap_or(Ordering::Equal);
        }
        let (p, q) = (a.incenter, b.incenter);
        if (p.x - q.x).abs() > tol.geom {
            p.x.partial_cmp(&q.x).unwrap_or(Ordering::Equal)
        } else {
            p.y.partial_cmp(&q.y).unwrap_or(Ordering::Equal)
        }
    });
    comps
}

/// Overlap between two directed segments lying on a common line with
/// opposite directions, as a parameter interval on `(a, b)`.
fn collinear_overlap<T: Real>(
    a: Point2<T>,
    b: Point2<T>,
    c: Point2<T>,
    d: Point2<T>,
    tol: T,
) -> Option<(T, T)> {
    let e = b - a;
    let len = e.norm();
    if !(len > T::zero()) || e.dot(d - c) >= T::zero() {
        return None;
    }
    let off_c = e.cross(c - a).abs() / len;
    let off_d = e.cross(d - a).abs() / len;
    if off_c > tol || off_d > tol {
        return None;
    }
    let tc = (c - a).dot(e) / (len * len);
    let td = (d - a).dot(e) / (len * len);
    let lo = tc.min(td).max(T::zero());
    let hi = tc.max(td).min(T::one());
    (hi > lo).then_some((lo, hi))
}

fn shared_edge_length<T: Real>(p: &ConvexPoly<T>, q: &ConvexPoly<T>, tol: &Tol<T>) -> T {
    let mut best = T::zero();
    for (a, b) in p.edges() {
        for (c, d) in q.edges() {
            if let Some((lo, hi)) = collinear_overlap(a, b, c, d, tol.geom * T::lit(8.0)) {
                best = best.max((hi - lo) * a.distance(b));
            }
        }
    }
    best
}

/// Outer boundary of a union of interior-disjoint convex cells: every cell
/// edge minus the portions shared with another cell.
fn boundary_segments<T: Real>(cells: &CellSet<T>, tol: &Tol<T>) -> Vec<(Point2<T>, Point2<T>)> {
    let mut out = Vec::new();
    for (i, p) in cells.cells.iter().enumerate() {
        for (a, b) in p.edges() {
            let mut covered: Vec<(T, T)> = Vec::new();
            for (j, q) in cells.cells.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (c, d) in q.edges() {
                    if let Some(iv) = collinear_overlap(a, b, c, d, tol.geom * T::lit(8.0)) {
                        covered.push(iv);
                    }
                }
            }
            covered.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
            let len = a.distance(b);
            let mut t = T::zero();
            for (lo, hi) in covered {
                if (lo - t) * len > tol.geom {
                    out.push((a.lerp(b, t), a.lerp(b, lo)));
                }
                t = t.max(hi);
            }
            if (T::one() - t) * len > tol.geom {
                out.push((a.lerp(b, t), b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol<f64> {
        Tol::unit()
    }

    fn square(x: f64, y: f64, s: f64) -> ConvexPoly<f64> {
        ConvexPoly::axis_rect(x, y, x + s, y + s)
    }

    #[test]
    fn square_minus_itself_is_empty() {
        let s = square(0.0, 0.0, 1.0);
        assert!(subtract(&CellSet::single(s.clone()), &s, &tol()).is_empty());
    }

    #[test]
    fn subtract_disjoint_is_identity() {
        let s = square(0.0, 0.0, 1.0);
        let t = ConvexPoly::new(
            vec![Point2::new(2.0, 2.0), Point2::new(3.0, 2.0), Point2::new(2.0, 3.0)],
            &tol(),
        )
        .unwrap();
        let r = subtract(&CellSet::single(s), &t, &tol());
        assert_eq!(r.len(), 1);
        assert!((r.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subtract_center_leaves_frame() {
        let r = subtract(&CellSet::single(square(0.0, 0.0, 3.0)), &square(1.0, 1.0, 1.0), &tol());
        assert!((r.area() - 8.0).abs() < 1e-12);
        assert!(r.max_self_overlap(&tol()) <= 1e-12);
        let comps = components(&r, &tol());
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].is_convex);
        // outer boundary 12 plus the hole 4
        assert!((comps[0].perimeter - 16.0).abs() < 1e-12);
    }

    #[test]
    fn far_apart_squares_are_two_components() {
        let cs = CellSet::new(vec![square(0.0, 0.0, 1.0), square(5.0, 0.0, 2.0)]);
        let comps = components(&cs, &tol());
        assert_eq!(comps.len(), 2);
        assert!((comps[0].area - 4.0).abs() < 1e-15);
        assert!(comps[0].is_convex && comps[1].is_convex);
    }

    #[test]
    fn corner_touching_squares_stay_separate() {
        let cs = CellSet::new(vec![square(0.0, 0.0, 1.0), square(1.0, 1.0, 1.0)]);
        assert_eq!(components(&cs, &tol()).len(), 2);
    }

    #[test]
    fn split_square_is_one_convex_component() {
        let cs = CellSet::new(vec![
            ConvexPoly::axis_rect(0.0, 0.0, 0.5, 1.0),
            ConvexPoly::axis_rect(0.5, 0.0, 1.0, 0.3),
            ConvexPoly::axis_rect(0.5, 0.3, 1.0, 1.0),
        ]);
        let comps = components(&cs, &tol());
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert!(c.is_convex);
        assert!((c.perimeter - 4.0).abs() < 1e-14);
        assert!((c.inradius - 0.5).abs() < 1e-14);
        assert!((inradius_component(c, 1e-9) - 0.5).abs() < 1e-14);
    }
}
