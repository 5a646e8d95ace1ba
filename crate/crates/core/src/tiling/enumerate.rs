use super::{TileHandle, TilingError, TilingSpec};
use crate::geom2d::subtract_all;
use crate::ifs::{Limits, Word};
use crate::{AffineMap2, CellSet, ConvexPoly};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

fn power(j: usize, k: usize) -> u128 {
    (j as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Maps `φ_w` for all `|w| = k` in lexicographic word order.
fn level_maps(spec: &TilingSpec, k: usize) -> Vec<AffineMap2> {
    let mut maps = vec![AffineMap2::identity()];
    for _ in 0..k {
        maps = maps
            .iter()
            .flat_map(|m| spec.sys.maps().iter().map(move |f| m.compose(f)))
            .collect();
    }
    maps
}

/// `C_k = {φ_w(C) : |w| = k}` in lexicographic word order.
pub fn hull_iterate(spec: &TilingSpec, k: usize, limits: &Limits) -> Result<CellSet, TilingError> {
    limits.check(power(spec.sys.len(), k))?;
    let cells = level_maps(spec, k)
        .iter()
        .map(|m| m.apply_poly(&spec.hull))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CellSet::new(cells))
}

/// `C_0, …, C_k`.
pub fn hull_iterates(spec: &TilingSpec, k: usize, limits: &Limits) -> Result<Vec<CellSet>, TilingError> {
    let total = (0..=k).map(|i| power(spec.sys.len(), i)).fold(0u128, u128::saturating_add);
    limits.check(total)?;
    (0..=k).map(|i| hull_iterate(spec, i, limits)).collect()
}

/// `T_k = cl(C_{k−1} ∖ C_k)` as convex cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Tileset {
    pub k: usize,
    pub cells: CellSet,
    pub area: f64,
}

/// The `k`-th tileset, computed by subtracting `C_k` from `C_{k−1}`.
pub fn tileset(spec: &TilingSpec, k: usize, limits: &Limits) -> Result<Tileset, TilingError> {
    assert!(k >= 1, "tilesets are indexed from 1");
    limits.check(power(spec.sys.len(), k - 1).saturating_add(power(spec.sys.len(), k)))?;
    let outer = hull_iterate(spec, k - 1, limits)?;
    let inner = hull_iterate(spec, k, limits)?;
    let cells = subtract_all(&outer, &inner.cells, &spec.tol);
    let area = cells.area();
    Ok(Tileset { k, cells, area })
}

/// Tile polygons: `φ_w` applied to the cells of `G_q`.
pub fn tile_cells(spec: &TilingSpec, tile: &TileHandle) -> Result<Vec<ConvexPoly>, TilingError> {
    spec.generators[tile.q]
        .cells
        .cells
        .iter()
        .map(|c| tile.map.apply_poly(c).map_err(Into::into))
        .collect()
}

/// All tiles of levels `1..=depth` (words of length `< depth`), ordered by
/// level, then word, then generator. Works for affine systems.
pub fn tiles_by_level(spec: &TilingSpec, depth: usize, limits: &Limits) -> Result<Vec<TileHandle>, TilingError> {
    let q = spec.generators.len() as u128;
    let total = (0..depth).map(|i| power(spec.sys.len(), i)).fold(0u128, u128::saturating_add);
    limits.check(total.saturating_mul(q))?;
    let ratios = spec.sys.ratios();
    let g = spec.generator_inradii();
    let mut out = Vec::with_capacity(total as usize * q as usize);
    for k in 0..depth {
        let maps = level_maps(spec, k);
        for (w, map) in crate::ifs::words(&spec.sys, k).zip(maps) {
            let scale = ratios.as_ref().map(|r| canonical_scale(r, &w));
            for (qi, gq) in g.iter().enumerate() {
                out.push(TileHandle {
                    word: w.clone(),
                    q: qi,
                    map,
                    scale,
                    inradius: scale.map(|s| gq * s),
                });
            }
        }
    }
    Ok(out)
}

/// `ρ_w = Π_j r_j^{n_j}` with `n_j` the letter counts, so that words with the
/// same letters get bitwise-equal scales.
fn canonical_scale(ratios: &[f64], w: &Word) -> f64 {
    let mut counts = vec![0i32; ratios.len()];
    for &l in w.letters() {
        counts[l as usize] += 1;
    }
    scale_from_counts(ratios, &counts)
}

fn scale_from_counts(ratios: &[f64], counts: &[i32]) -> f64 {
    ratios.iter().zip(counts).map(|(r, &n)| r.powi(n)).product()
}

struct Frontier {
    inradius: f64,
    word: Word,
    q: usize,
    counts: Vec<i32>,
    map: AffineMap2,
}

impl PartialEq for Frontier {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frontier {}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frontier {
    /// Max-heap order: larger inradius first, then smaller word, then smaller q.
    fn cmp(&self, other: &Self) -> Ordering {
        self.inradius
            .total_cmp(&other.inradius)
            .then_with(|| other.word.cmp(&self.word))
            .then_with(|| other.q.cmp(&self.q))
    }
}

/// Best-first iterator over tiles with inradius `≥ r_min`.
///
/// Stops early once `budget` tiles have been produced; check
/// [`TileIter::truncated`] afterwards.
pub struct TileIter<'a> {
    spec: &'a TilingSpec,
    ratios: Vec<f64>,
    generator_inradii: Vec<f64>,
    r_min: f64,
    heap: BinaryHeap<Frontier>,
    emitted: usize,
    budget: usize,
    truncated: bool,
}

impl TileIter<'_> {
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Drains the iterator, failing if the budget cut it short.
    pub fn collect_all(mut self) -> Result<Vec<TileHandle>, TilingError> {
        let out: Vec<TileHandle> = self.by_ref().collect();
        if self.truncated {
            return Err(crate::ifs::IfsError::BudgetExceeded {
                requested: self.budget as u128 + 1,
                cap: self.budget,
            }
            .into());
        }
        Ok(out)
    }
}

impl Iterator for TileIter<'_> {
    type Item = TileHandle;

    fn next(&mut self) -> Option<TileHandle> {
        if self.emitted >= self.budget {
            self.truncated |= !self.heap.is_empty();
            return None;
        }
        let top = self.heap.pop()?;
        for (j, f) in self.spec.sys.maps().iter().enumerate() {
            let mut counts = top.counts.clone();
            counts[j] += 1;
            let inradius = self.generator_inradii[top.q] * scale_from_counts(&self.ratios, &counts);
            if inradius >= self.r_min {
                self.heap.push(Frontier {
                    inradius,
                    word: top.word.extended(j as u16),
                    q: top.q,
                    counts,
                    map: top.map.compose(f),
                });
            }
        }
        self.emitted += 1;
        let scale = scale_from_counts(&self.ratios, &top.counts);
        Some(TileHandle {
            word: top.word,
            q: top.q,
            map: top.map,
            scale: Some(scale),
            inradius: Some(top.inradius),
        })
    }
}

/// Tiles `φ_w(G_q)` with `g_q·ρ_w ≥ r_min` in nonincreasing inradius order,
/// ties broken by word then generator index.
pub fn tiles_down_to<'a>(spec: &'a TilingSpec, r_min: f64, limits: &Limits) -> Result<TileIter<'a>, TilingError> {
    let ratios = spec.ratios()?;
    assert!(r_min > 0.0, "r_min must be positive");
    let generator_inradii = spec.generator_inradii();
    let mut heap = BinaryHeap::new();
    for (q, &g) in generator_inradii.iter().enumerate() {
        if g >= r_min {
            heap.push(Frontier {
                inradius: g,
                word: Word::empty(),
                q,
                counts: vec![0; ratios.len()],
                map: AffineMap2::identity(),
            });
        }
    }
    Ok(TileIter {
        spec,
        ratios,
        generator_inradii,
        r_min,
        heap,
        emitted: 0,
        budget: limits.budget,
        truncated: false,
    })
}
