use super::point::{Mat2, Point2};
use super::poly::ConvexPoly;
use super::GeomError;
use crate::scalar::Real;

/// Structure of the linear part of an [`AffineMap2`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapKind<T> {
    /// `linear = ratio * orthogonal` with `orthogonal` in O(2).
    Similarity { ratio: T, orthogonal: Mat2<T> },
    GeneralAffine,
}

/// Planar affine map `x -> linear * x + translation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap2<T> {
    linear: Mat2<T>,
    translation: Point2<T>,
    kind: MapKind<T>,
    spectral_bound: T,
}

impl<T: Real> AffineMap2<T> {
    /// General affine map. The kind is `GeneralAffine` even when the matrix
    /// happens to be a similarity; use [`AffineMap2::try_similarity`] to
    /// classify.
    pub fn new(linear: Mat2<T>, translation: Point2<T>) -> Self {
        Self {
            linear,
            translation,
            kind: MapKind::GeneralAffine,
            spectral_bound: linear.singular_values().0,
        }
    }

    pub fn identity() -> Self {
        Self::similarity(T::one(), T::zero(), false, Point2::origin())
    }

    /// `x -> ratio * R(rotation) * F * x + translation`, where `F` is the
    /// reflection across the x-axis when `reflect` is set. Angles in radians.
    pub fn similarity(ratio: T, rotation: T, reflect: bool, translation: Point2<T>) -> Self {
        let mut orthogonal = Mat2::rotation(rotation);
        if reflect {
            orthogonal = orthogonal.mul(&Mat2::reflection_x());
        }
        Self {
            linear: orthogonal.scale(ratio),
            translation,
            kind: MapKind::Similarity { ratio, orthogonal },
            spectral_bound: ratio.abs(),
        }
    }

    /// Homothety with positive ratio fixing `center`.
    pub fn homothety(ratio: T, center: Point2<T>) -> Self {
        Self::similarity(ratio, T::zero(), false, center * (T::one() - ratio))
    }

    /// Classifies `linear` as `ratio * orthogonal`, accepting it when the
    /// orthogonality defect is at most `tol` (absolute, on the normalized
    /// matrix). Returns `None` for genuinely affine matrices.
    pub fn try_similarity(linear: Mat2<T>, translation: Point2<T>, tol: T) -> Option<Self> {
        let (s1, s2) = linear.singular_values();
        if s1 <= T::zero() || (s1 - s2).abs() > tol * s1 {
            return None;
        }
        let ratio = (linear.det().abs()).sqrt();
        let orthogonal = linear.scale(T::one() / ratio);
        let gram = orthogonal.transpose().mul(&orthogonal);
        if gram.max_abs_diff(&Mat2::identity()) > tol {
            return None;
        }
        Some(Self {
            linear,
            translation,
            kind: MapKind::Similarity { ratio, orthogonal },
            spectral_bound: ratio,
        })
    }

    #[inline]
    pub fn linear(&self) -> &Mat2<T> {
        &self.linear
    }

    #[inline]
    pub fn translation(&self) -> Point2<T> {
        self.translation
    }

    #[inline]
    pub fn kind(&self) -> &MapKind<T> {
        &self.kind
    }

    /// Largest singular value of the linear part.
    #[inline]
    pub fn spectral_bound(&self) -> T {
        self.spectral_bound
    }

    #[inline]
    pub fn is_similarity(&self) -> bool {
        matches!(self.kind, MapKind::Similarity { .. })
    }

    /// Similarity ratio, if this map is a similarity.
    pub fn ratio(&self) -> Option<T> {
        match self.kind {
            MapKind::Similarity { ratio, .. } => Some(ratio),
            MapKind::GeneralAffine => None,
        }
    }

    #[inline]
    pub fn det(&self) -> T {
        self.linear.det()
    }

    #[inline]
    pub fn is_contraction(&self) -> bool {
        self.spectral_bound < T::one()
    }

    #[inline]
    pub fn apply(&self, p: Point2<T>) -> Point2<T> {
        self.linear.apply(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let linear = self.linear.mul(&other.linear);
        let translation = self.linear.apply(other.translation) + self.translation;
        match (self.kind, other.kind) {
            (
                MapKind::Similarity { ratio: r1, orthogonal: a1 },
                MapKind::Similarity { ratio: r2, orthogonal: a2 },
            ) => {
                let ratio = r1 * r2;
                Self {
                    linear,
                    translation,
                    kind: MapKind::Similarity { ratio, orthogonal: a1.mul(&a2) },
                    spectral_bound: ratio,
                }
            }
            _ => Self {
                linear,
                translation,
                kind: MapKind::GeneralAffine,
                spectral_bound: linear.singular_values().0,
            },
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.linear.inverse()?;
        let translation = -inv.apply(self.translation);
        Some(match self.kind {
            MapKind::Similarity { ratio, orthogonal } => {
                let ratio = T::one() / ratio;
                Self {
                    linear: inv,
                    translation,
                    kind: MapKind::Similarity { ratio, orthogonal: orthogonal.transpose() },
                    spectral_bound: ratio,
                }
            }
            MapKind::GeneralAffine => Self::new(inv, translation),
        })
    }

    /// Unique fixed point, solving `(I - linear) x = translation`.
    pub fn fixed_point(&self) -> Option<Point2<T>> {
        let m = Mat2::<T>::identity();
        let lhs = Mat2::new(
            m.a - self.linear.a,
            m.b - self.linear.b,
            m.c - self.linear.c,
            m.d - self.linear.d,
        );
        Some(lhs.inverse()?.apply(self.translation))
    }

    /// Conjugation by the dilation `x -> t x`: returns `x -> t * f(x / t)`.
    pub fn conjugate_by_scale(&self, t: T) -> Self {
        Self { translation: self.translation * t, ..*self }
    }

    /// Largest absolute difference between matrix and translation entries.
    pub fn max_coefficient_diff(&self, other: &Self) -> T {
        self.linear
            .max_abs_diff(&other.linear)
            .max((self.translation.x - other.translation.x).abs())
            .max((self.translation.y - other.translation.y).abs())
    }

    /// Image of a convex polygon, re-oriented counterclockwise.
    pub fn apply_poly(&self, p: &ConvexPoly<T>) -> Result<ConvexPoly<T>, GeomError> {
        let det = self.det();
        if !(det.abs() > T::zero()) || !det.is_finite() {
            return Err(GeomError::DegenerateImage);
        }
        let mut vertices: Vec<_> = p.vertices().iter().map(|&v| self.apply(v)).collect();
        if det < T::zero() {
            vertices.reverse();
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::DegenerateImage);
        }
        let image = ConvexPoly::from_raw(vertices);
        if !(image.area() > T::zero()) {
            return Err(GeomError::DegenerateImage);
        }
        Ok(image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halves_compose_to_quarter() {
        let h = AffineMap2::<f64>::homothety(0.5, Point2::origin());
        let q = h.compose(&h);
        assert_eq!(q.ratio(), Some(0.25));
        assert!(q.is_similarity());
    }

    #[test]
    fn similarity_detection() {
        let f = AffineMap2::<f64>::similarity(0.4, 0.7, true, Point2::new(1.0, 2.0));
        let g = AffineMap2::try_similarity(*f.linear(), f.translation(), 1e-12).unwrap();
        assert!((g.ratio().unwrap() - 0.4).abs() < 1e-15);
        let a = Mat2::new(0.6, 0.0, 0.0, 0.2);
        assert!(AffineMap2::try_similarity(a, Point2::origin(), 1e-12).is_none());
    }

    #[test]
    fn inverse_and_fixed_point() {
        let f = AffineMap2::<f64>::similarity(0.5, 1.0, false, Point2::new(0.3, -0.2));
        let g = f.compose(&f.inverse().unwrap());
        assert!(g.max_coefficient_diff(&AffineMap2::identity()) < 1e-15);
        let x = f.fixed_point().unwrap();
        assert!(f.apply(x).distance(x) < 1e-15);
    }

    #[test]
    fn reflection_reverses_orientation_of_image() {
        let sq = ConvexPoly::<f64>::axis_rect(0.0, 0.0, 1.0, 1.0);
        let f = AffineMap2::similarity(0.5, 0.0, true, Point2::origin());
        let img = f.apply_poly(&sq).unwrap();
        assert!((img.area() - 0.25).abs() < 1e-15);
        assert!(img.signed_area() > 0.0);
    }
}
