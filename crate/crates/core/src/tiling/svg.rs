use super::enumerate::{tile_cells, tiles_by_level, tiles_down_to};
use super::{TileHandle, TilingError, TilingSpec};
use crate::ifs::Limits;
use crate::{ConvexPoly, Point2};
use std::fmt::Write;

/// Which tiles to draw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RenderDepth {
    /// Levels `1..=n`; `0` draws the hull only.
    Levels(usize),
    /// Tiles with inradius at least this value (self-similar systems).
    MinInradius(f64),
}

const PALETTE: [&str; 8] = [
    "#1b6ca8", "#d1495b", "#edae49", "#66a182", "#8d5a97", "#00798c", "#e76f51", "#6d6875",
];

fn fmt_point(out: &mut String, p: Point2) {
    // y axis points up in the model, down in SVG
    let y = if p.y == 0.0 { 0.0 } else { -p.y };
    let _ = write!(out, "{:.6},{:.6}", p.x, y);
}

fn polygon(out: &mut String, poly: &ConvexPoly, attrs: &str) {
    out.push_str("<polygon points=\"");
    for (i, &v) in poly.vertices().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        fmt_point(out, v);
    }
    let _ = writeln!(out, "\" {attrs}/>");
}

/// Deterministic SVG drawing of the hull and the selected tiles.
pub fn render_svg(spec: &TilingSpec, depth: RenderDepth, limits: &Limits) -> Result<String, TilingError> {
    let tiles: Vec<TileHandle> = match depth {
        RenderDepth::Levels(n) => tiles_by_level(spec, n, limits)?,
        RenderDepth::MinInradius(r) => tiles_down_to(spec, r, limits)?.collect_all()?,
    };
    let (lo, hi) = spec.hull().bbox();
    let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y);
    let (x0, y0) = (lo.x - pad, -hi.y - pad);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = 0.002 * w.max(h);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{x0:.6} {y0:.6} {w:.6} {h:.6}\">"
    );
    let _ = writeln!(out, "<title>{}</title>", escape(spec.system().name()));
    polygon(
        &mut out,
        spec.hull(),
        &format!("class=\"hull\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke:.6}\""),
    );
    for t in &tiles {
        let color = PALETTE[(t.level() - 1) % PALETTE.len()];
        let _ = writeln!(
            out,
            "<g class=\"tile\" data-level=\"{}\" data-word=\"{}\" data-q=\"{}\" fill=\"{color}\" stroke=\"{color}\" stroke-width=\"{:.6}\">",
            t.level(),
            t.word,
            t.q + 1,
            stroke / 4.0
        );
        for c in tile_cells(spec, t)? {
            polygon(&mut out, &c, "");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
