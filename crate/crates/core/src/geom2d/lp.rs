//! Chebyshev center of a convex polygon as a three-variable linear program:
//! maximize `rho` subject to `n_e · x + rho <= c_e` for every edge.
//!
//! Solved with a dense tableau simplex (Bland's rule). The free center is
//! split as `x = origin + x⁺ - x⁻`; with `origin` strictly inside, the
//! all-zero point is feasible and no phase one is needed.

use super::point::Point2;
use super::poly::HalfPlane;
use crate::scalar::Real;

const VARS: usize = 5; // x⁺, y⁺, x⁻, y⁻, rho

pub(crate) fn chebyshev_center<T: Real>(planes: &[HalfPlane<T>], origin: Point2<T>) -> (T, Point2<T>) {
    let m = planes.len();
    let cols = VARS + m + 1;
    let rhs = cols - 1;
    let mut tab = vec![vec![T::zero(); cols]; m + 1];
    for (i, h) in planes.iter().enumerate() {
        let row = &mut tab[i];
        row[0] = h.normal.x;
        row[1] = h.normal.y;
        row[2] = -h.normal.x;
        row[3] = -h.normal.y;
        row[4] = T::one();
        row[VARS + i] = T::one();
        // clamp: an origin on the boundary still gives a feasible start
        row[rhs] = (h.offset - h.normal.dot(origin)).max(T::zero());
    }
    tab[m][4] = -T::one();
    let mut basis: Vec<usize> = (VARS..VARS + m).collect();
    let eps = T::epsilon() * T::lit(64.0);

    for _ in 0..(50 * (m + VARS)) {
        let Some(enter) = (0..rhs).find(|&j| tab[m][j] < -eps) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let a = tab[i][enter];
            if a > eps {
                let ratio = tab[i][rhs] / a;
                let better = match leave {
                    None => true,
                    Some((l, best)) => ratio < best || (ratio == best && basis[i] < basis[l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // bounded polygon: an entering column always has a positive entry
        let Some((row, _)) = leave else { break };
        pivot(&mut tab, row, enter);
        basis[row] = enter;
    }

    let mut sol = [T::zero(); VARS];
    for (i, &b) in basis.iter().enumerate() {
        if b < VARS {
            sol[b] = tab[i][rhs];
        }
    }
    let center = Point2::new(origin.x + sol[0] - sol[2], origin.y + sol[1] - sol[3]);
    // report the certified radius at the returned center
    let radius = planes
        .iter()
        .map(|h| -h.signed_distance(center))
        .fold(T::infinity(), T::min);
    (radius.max(T::zero()), center)
}

fn pivot<T: Real>(tab: &mut [Vec<T>], row: usize, col: usize) {
    let p = tab[row][col];
    for v in tab[row].iter_mut() {
        *v = *v / p;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != T::zero() {
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v = *v - f * *pv;
            }
        }
    }
}
