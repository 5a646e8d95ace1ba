use fractile::geom2d::neumaier_sum;
use fractile::ifs::{bundled, load_system, map_of_word, Limits, Word};
use fractile::tiling::{
    build_tiling, render_svg, tile_cells, tiles_by_level, tiles_down_to, tileset, verify_structure, RenderDepth,
    TilingError, TilingSpec,
};
use fractile::CellSet;

fn spec(name: &str) -> TilingSpec {
    build_tiling(&load_system(bundled(name).unwrap()).unwrap(), &Limits::default()).unwrap()
}

const ADMISSIBLE: [&str; 6] = ["gasket", "koch_standard", "koch_nonlattice", "pentagasket", "carpet", "harmonic_gasket"];

#[test]
fn generator_census() {
    let s3 = 3f64.sqrt();
    let g = spec("gasket");
    assert_eq!(g.generator_count(), 1);
    assert!((g.generators()[0].area - s3 / 16.0).abs() < 1e-9);

    let k = spec("koch_standard");
    assert_eq!(k.generator_count(), 1);
    // equilateral triangle of side a has area √3a²/4
    let side = (4.0 * k.generators()[0].area / s3).sqrt();
    assert!((side - 1.0 / 3.0).abs() < 1e-6);

    let p = spec("pentagasket");
    assert_eq!(p.generator_count(), 6);
    let mut areas = p.generator_areas();
    areas.sort_by(f64::total_cmp);
    let (small, big) = areas.split_at(5);
    assert!(small.iter().all(|a| (a - small[0]).abs() < 1e-9));
    assert!(big[0] > small[0] * 1.5);

    let c = spec("carpet");
    assert_eq!(c.generator_count(), 1);
    assert!((c.generators()[0].area - 1.0 / 9.0).abs() < 1e-12);
    // the affine images meet pairwise at interior points, leaving the central
    // hole and three regions along the sides
    let h = spec("harmonic_gasket");
    assert_eq!(h.generator_count(), 4);
}

#[test]
fn area_identity() {
    for name in ADMISSIBLE {
        let s = spec(name);
        let lhs = neumaier_sum(s.generator_areas().into_iter());
        let rhs = s.hull().area() * (1.0 - s.system().area_factor());
        assert!((lhs - rhs).abs() <= 1e-8 * s.hull().area(), "{name}: {lhs} vs {rhs}");
    }
}

#[test]
fn counterexample_is_rejected() {
    let sys = load_system(bundled("tileset_counterexample").unwrap()).unwrap();
    assert!(matches!(
        build_tiling(&sys, &Limits::default()),
        Err(TilingError::NotAdmissible { tileset_ok: false, .. })
    ));
}

#[test]
fn structure_theorems_up_to_level_four() {
    for name in ADMISSIBLE {
        let s = spec(name);
        let r = verify_structure(&s, 4, &Limits::default()).unwrap();
        assert!(r.ok(1e-8), "{name}: {}", r.max_relative_discrepancy);
        for l in &r.levels {
            assert!((l.area - l.expected_area).abs() <= 1e-8 * l.expected_area.max(1e-300), "{name} k={}", l.k);
            if let Some(d) = l.propagation_discrepancy {
                assert!(d <= 1e-7 * r.hull_area, "{name} k={}", l.k);
            }
        }
    }
}

#[test]
fn tilesets_are_the_enumerated_tiles() {
    // T_k by region subtraction against the union of level-k tiles
    for name in ["gasket", "pentagasket", "koch_nonlattice", "harmonic_gasket"] {
        let s = spec(name);
        let tiles = tiles_by_level(&s, 3, &Limits::default()).unwrap();
        for k in 1..=3 {
            let t = tileset(&s, k, &Limits::default()).unwrap();
            let cells: Vec<_> = tiles
                .iter()
                .filter(|h| h.level() == k)
                .flat_map(|h| tile_cells(&s, h).unwrap())
                .collect();
            let union = CellSet::new(cells);
            assert!((union.area() - t.area).abs() <= 1e-9 * s.hull().area(), "{name} k={k}");
            let common = union.overlap_area(&t.cells, s.tol());
            assert!((common - t.area).abs() <= 1e-9 * s.hull().area(), "{name} k={k}");
        }
    }
}

#[test]
fn tiles_do_not_overlap() {
    let s = spec("pentagasket");
    let tiles = tiles_by_level(&s, 2, &Limits::default()).unwrap();
    assert_eq!(tiles.len(), 36);
    let sets: Vec<CellSet> = tiles.iter().map(|t| CellSet::new(tile_cells(&s, t).unwrap())).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            assert!(sets[i].overlap_area(&sets[j], s.tol()) <= s.tol().area);
        }
    }
}

/// All `(w, q)` with `g_q·r_w >= r_min`, by exhausting word lengths.
fn brute_force(s: &TilingSpec, r_min: f64) -> Vec<(Word, usize)> {
    let ratios = s.ratios().unwrap();
    let g = s.generator_inradii();
    let mut out = Vec::new();
    let mut frontier = vec![(Word::empty(), 1.0)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, rho) in frontier {
            let mut any = false;
            for (q, gq) in g.iter().enumerate() {
                if gq * rho >= r_min {
                    out.push((w.clone(), q));
                    any = true;
                }
            }
            if any {
                for (j, r) in ratios.iter().enumerate() {
                    next.push((w.extended(j as u16), rho * r));
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

#[test]
fn tiles_down_to_matches_brute_force() {
    for (name, r_min) in [("koch_nonlattice", 2e-3), ("pentagasket", 1e-3), ("carpet", 1e-3), ("gasket", 0.01)] {
        let s = spec(name);
        let tiles = tiles_down_to(&s, r_min, &Limits::default()).unwrap().collect_all().unwrap();
        // best first: inradii never increase
        assert!(tiles.windows(2).all(|p| p[0].inradius.unwrap() >= p[1].inradius.unwrap()));
        let mut got: Vec<(Word, usize)> = tiles.iter().map(|t| (t.word.clone(), t.q)).collect();
        got.sort();
        assert_eq!(got, brute_force(&s, r_min), "{name}");
        for t in tiles.iter().take(50) {
            assert!(t.map.max_coefficient_diff(&map_of_word(s.system(), &t.word)) < 1e-12);
        }
    }
}

#[test]
fn enumeration_respects_budget() {
    let s = spec("carpet");
    let it = tiles_down_to(&s, 1e-4, &Limits::with_budget(500)).unwrap();
    assert!(it.collect_all().is_err());
    assert!(tiles_by_level(&s, 6, &Limits::with_budget(500)).is_err());
}

#[test]
fn svg_tile_counts() {
    let s = spec("gasket");
    let svg = render_svg(&s, RenderDepth::Levels(4), &Limits::default()).unwrap();
    assert_eq!(svg.matches("<g class=\"tile\"").count(), 40);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let k = spec("koch_standard");
    let one = render_svg(&k, RenderDepth::Levels(1), &Limits::default()).unwrap();
    assert_eq!(one.matches("<g class=\"tile\"").count(), 1);
    assert_eq!(one.matches("class=\"hull\"").count(), 1);
}
