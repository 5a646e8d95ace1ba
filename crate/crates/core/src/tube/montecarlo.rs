use super::TubeError;
use crate::tiling::TilingSpec;
use crate::{AffineMap2, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5EED;
/// Fixed shard count: results do not depend on the thread count.
const SHARDS: u64 = 256;
const MAX_DEPTH: usize = 64;
const MIN_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    pub hits: u64,
    /// Fraction of samples whose tile could not be located within the depth cap.
    pub unresolved_fraction: f64,
}

enum Outcome {
    Hit,
    Miss,
    Unresolved,
}

struct Classifier<'a> {
    spec: &'a TilingSpec,
    inverses: Vec<AffineMap2>,
    ratios: Vec<f64>,
    g_max: f64,
    eps: f64,
    slack: f64,
}

impl Classifier<'_> {
    /// Descends the word tree: `y` is the sample pulled back by `φ_w`, `rho`
    /// the ratio of `φ_w`.
    fn classify(&self, p: Point2) -> Outcome {
        let mut y = p;
        let mut rho = 1.0;
        for _ in 0..=MAX_DEPTH {
            // every tile below has inradius < ε, hence lies in its own tube
            if rho * self.g_max < self.eps {
                return Outcome::Hit;
            }
            for g in self.spec.generators() {
                if g.contains(y, self.slack) {
                    let d = rho * g.distance_to_boundary(y);
                    return if d < self.eps { Outcome::Hit } else { Outcome::Miss };
                }
            }
            let hull = self.spec.hull();
            let child = self
                .spec
                .system()
                .maps()
                .iter()
                .zip(&self.inverses)
                .position(|(_, inv)| hull.contains(inv.apply(y), self.slack));
            match child {
                Some(j) => {
                    y = self.inverses[j].apply(y);
                    rho *= self.ratios[j];
                }
                None => return Outcome::Miss,
            }
        }
        Outcome::Unresolved
    }
}

/// Uniform samples in the hull classified as inside or outside the tube;
/// `estimate = area(C)·hits/n` with the binomial standard error.
pub fn monte_carlo_tube(spec: &TilingSpec, eps: f64, n: usize, seed: u64) -> Result<McEstimate, TubeError> {
    let ratios = spec.system().ratios().ok_or(TubeError::NotSelfSimilar)?;
    if n < MIN_SAMPLES {
        return Err(TubeError::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    if !(eps > 0.0) {
        return Err(TubeError::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let inverses: Vec<AffineMap2> = spec
        .system()
        .maps()
        .iter()
        .map(|f| f.inverse().expect("contractions are invertible"))
        .collect();
    let classifier = Classifier {
        spec,
        inverses,
        ratios,
        g_max: spec.generator_inradii().into_iter().fold(0.0, f64::max),
        eps,
        slack: 0.0,
    };
    let hull = spec.hull();
    let (lo, hi) = hull.bbox();
    let counts: Vec<(u64, u64)> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let quota = n as u64 / SHARDS + u64::from(shard < n as u64 % SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let (mut done, mut hits, mut unresolved) = (0u64, 0u64, 0u64);
            while done < quota {
                let p = Point2::new(
                    lo.x + (hi.x - lo.x) * rng.random::<f64>(),
                    lo.y + (hi.y - lo.y) * rng.random::<f64>(),
                );
                if !hull.contains(p, 0.0) {
                    continue;
                }
                done += 1;
                match classifier.classify(p) {
                    Outcome::Hit => hits += 1,
                    Outcome::Miss => {}
                    Outcome::Unresolved => unresolved += 1,
                }
            }
            (hits, unresolved)
        })
        .collect();
    let hits: u64 = counts.iter().map(|c| c.0).sum();
    let unresolved: u64 = counts.iter().map(|c| c.1).sum();
    let frac = hits as f64 / n as f64;
    let area = hull.area();
    Ok(McEstimate {
        estimate: area * frac,
        std_error: area * (frac * (1.0 - frac) / n as f64).sqrt(),
        samples: n,
        hits,
        unresolved_fraction: unresolved as f64 / n as f64,
    })
}
