//! Command-line front end. `run` does all the work and returns what to print
//! plus an exit code, so the binary stays a thin shell and tests can call it
//! directly.

use crate::ifs::{bundled, estimate_hull, load_system, validate, IfsError, IfsSystem, Limits, DEFAULT_BUDGET};
use crate::spectra::{
    complex_dimensions, detect_lattice, real_dimension, zeta_g, zeta_s, SpectraError, Window, ZetaModel,
};
use crate::tiling::{
    build_tiling, render_svg, tile_cells, tiles_by_level, tiles_down_to, RenderDepth, TileHandle, TilingError,
    TilingSpec,
};
use crate::tube::{asymptotic_slope, monte_carlo_tube, tube_curve, TubeError, TubeModel, DEFAULT_SEED};
use crate::{CellSet, Component, Tol};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const DEFAULT_TOL_GEOM: f64 = 1e-9;
/// `tol_area / tol_geom`, matching the library defaults (1e-12 vs 1e-9).
const AREA_PER_GEOM: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "fractile", version, about = "Self-affine tilings, zeta functions and tube volumes of IFS attractors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Enumeration cap (words, tiles, atoms).
    #[arg(long, global = true, env = "FRACTILE_BUDGET")]
    pub budget: Option<usize>,
    /// Relative geometric tolerance; the area tolerance is 1e-3 of it.
    #[arg(long, global = true)]
    pub tol_geom: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check contraction, the tileset condition and nontriviality.
    Validate(SystemArgs),
    /// Estimate the convex hull of the attractor.
    Hull(SystemArgs),
    /// Tile manifest (JSON) and optional SVG.
    Tiles(TilesArgs),
    /// Real and complex dimensions.
    Dims(DimsArgs),
    /// Evaluate the zeta functions at one point.
    ZetaEval(ZetaArgs),
    /// Inner tube volume curve as CSV.
    Tube(TubeArgs),
    /// SVG of the tiling.
    Render(TilesArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Config file, or the name of a bundled example.
    pub system: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TilesArgs {
    pub system: String,
    /// Levels 1..=depth.
    #[arg(long, conflicts_with = "r_min")]
    pub depth: Option<usize>,
    /// All tiles with inradius at least this value.
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    pub system: String,
    /// Real-part range `lo,hi`.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,3")]
    pub window_re: String,
    /// Imaginary half-height T.
    #[arg(long, default_value_t = 40.0)]
    pub window_im: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    pub system: String,
    /// Point `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TubeArgs {
    pub system: String,
    #[arg(long, default_value_t = 1e-3)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eps_max: f64,
    /// Grid points per decade.
    #[arg(long, default_value_t = 16)]
    pub ppd: usize,
    /// Add Monte Carlo columns.
    #[arg(long)]
    pub mc: bool,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// CSV path; the slope summary goes to `<out>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<IfsError> for CliError {
    fn from(e: IfsError) -> Self {
        let msg = e.to_string();
        match e {
            IfsError::BudgetExceeded { .. } => CliError::Budget(msg),
            IfsError::GeometryUnsupported(_) | IfsError::Geometry(_) => CliError::Domain(msg),
            IfsError::Parse(_)
            | IfsError::NotContractive { .. }
            | IfsError::TooFewMaps(_)
            | IfsError::InadmissibleParameter(_) => CliError::Input(msg),
        }
    }
}

impl From<TilingError> for CliError {
    fn from(e: TilingError) -> Self {
        match e {
            TilingError::Ifs(e) => e.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        let msg = e.to_string();
        match e {
            SpectraError::Ifs(e) => e.into(),
            SpectraError::WindowTooLarge { .. } | SpectraError::InvalidWindow(_) | SpectraError::InvalidModel(_) => {
                CliError::Input(msg)
            }
            _ => CliError::Domain(msg),
        }
    }
}

impl From<TubeError> for CliError {
    fn from(e: TubeError) -> Self {
        let msg = e.to_string();
        match e {
            TubeError::Tiling(e) => e.into(),
            TubeError::InvalidArgument(_) => CliError::Input(msg),
            _ => CliError::Domain(msg),
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit_code: 0 }
    }
}

struct Ctx {
    limits: Limits,
    tol_geom: f64,
}

impl Ctx {
    fn metadata(&self, seed: Option<u64>) -> Value {
        json!({
            "tool": "fractile",
            "version": env!("CARGO_PKG_VERSION"),
            "tolerances": {
                "geom_relative": self.tol_geom,
                "area_relative": self.tol_geom * AREA_PER_GEOM,
            },
            "budget": self.limits.budget,
            "seed": seed,
        })
    }

    fn tol(&self, diam: f64) -> Tol {
        Tol::with_relative(self.tol_geom, self.tol_geom * AREA_PER_GEOM, diam)
    }
}

/// Reads `arg` as a file path, falling back to the bundled examples
/// (`gasket`, `gasket.json`, `configs/gasket.json` all resolve).
pub fn load_config(arg: &str) -> Result<IfsSystem, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return Ok(load_system(&text)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    match bundled(stem) {
        Some(text) => Ok(load_system(text)?),
        None => Err(CliError::Input(format!("{arg}: no such file or bundled system"))),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// JSON goes to `out` when given, to stdout otherwise.
fn emit(out: &Option<PathBuf>, body: String) -> Result<String, CliError> {
    match out {
        Some(p) => {
            write_file(p, &body)?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Input(format!("{what}: expected two comma-separated numbers, got '{s}'"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let tol_geom = cli.tol_geom.unwrap_or(DEFAULT_TOL_GEOM);
    if !(tol_geom > 0.0 && tol_geom < 1.0) {
        return Err(CliError::Input(format!("--tol-geom must lie in (0, 1), got {tol_geom}")));
    }
    let ctx = Ctx { limits: Limits::with_budget(cli.budget.unwrap_or(DEFAULT_BUDGET)), tol_geom };
    match cli.command {
        Command::Validate(a) => cmd_validate(&ctx, &a),
        Command::Hull(a) => cmd_hull(&ctx, &a),
        Command::Tiles(a) => cmd_tiles(&ctx, &a),
        Command::Dims(a) => cmd_dims(&ctx, &a),
        Command::ZetaEval(a) => cmd_zeta(&ctx, &a),
        Command::Tube(a) => cmd_tube(&ctx, &a),
        Command::Render(a) => cmd_render(&ctx, &a),
    }
}

fn cmd_validate(ctx: &Ctx, a: &SystemArgs) -> Result<Outcome, CliError> {
    let sys = load_config(&a.system)?;
    let est = estimate_hull(&sys, ctx.tol_geom)?;
    let report = validate(&sys, &est.hull, &ctx.tol(est.hull.diameter()))?;
    let body = to_json(&json!({
        "metadata": ctx.metadata(None),
        "system": sys.name(),
        "admissible": report.admissible(),
        "report": report,
    }));
    let stdout = emit(&a.out, body)?;
    Ok(Outcome { stdout, exit_code: if report.admissible() { 0 } else { 1 } })
}

fn cmd_hull(ctx: &Ctx, a: &SystemArgs) -> Result<Outcome, CliError> {
    let sys = load_config(&a.system)?;
    let est = estimate_hull(&sys, ctx.tol_geom)?;
    let body = to_json(&json!({
        "metadata": ctx.metadata(None),
        "system": sys.name(),
        "area": est.hull.area(),
        "diameter": est.hull.diameter(),
        "hull": est,
    }));
    Ok(Outcome::ok(emit(&a.out, body)?))
}

fn depth_of(a: &TilesArgs) -> Result<RenderDepth, CliError> {
    match (a.depth, a.r_min) {
        (Some(d), None) => Ok(RenderDepth::Levels(d)),
        (None, Some(r)) if r > 0.0 && r.is_finite() => Ok(RenderDepth::MinInradius(r)),
        (None, Some(r)) => Err(CliError::Input(format!("--r-min must be positive, got {r}"))),
        _ => Err(CliError::Input("give exactly one of --depth or --r-min".into())),
    }
}

fn tiles_for(spec: &TilingSpec, depth: RenderDepth, limits: &Limits) -> Result<Vec<TileHandle>, CliError> {
    Ok(match depth {
        RenderDepth::Levels(n) => tiles_by_level(spec, n, limits)?,
        RenderDepth::MinInradius(r) => {
            if spec.system().ratios().is_none() {
                return Err(TilingError::NotSelfSimilar.into());
            }
            tiles_down_to(spec, r, limits)?.collect_all()?
        }
    })
}

/// Inradius of a tile; affine tiles have no scale, so their cells are
/// measured directly.
fn tile_inradius(spec: &TilingSpec, t: &TileHandle) -> Result<f64, CliError> {
    if let Some(r) = t.inradius {
        return Ok(r);
    }
    let cells = tile_cells(spec, t)?;
    Ok(Component::from_cells(CellSet::new(cells), spec.tol()).inradius)
}

fn svg_with_metadata(ctx: &Ctx, svg: String) -> String {
    let meta = serde_json::to_string(&ctx.metadata(None)).expect("metadata serializes");
    match svg.split_once('\n') {
        Some((head, rest)) => format!("{head}\n<!-- {meta} -->\n{rest}"),
        None => svg,
    }
}

fn cmd_tiles(ctx: &Ctx, a: &TilesArgs) -> Result<Outcome, CliError> {
    let depth = depth_of(a)?;
    let sys = load_config(&a.system)?;
    let spec = build_tiling(&sys, &ctx.limits)?;
    let tiles = tiles_for(&spec, depth, &ctx.limits)?;
    let mut entries = Vec::with_capacity(tiles.len());
    for t in &tiles {
        entries.push(json!({
            "word": t.word.one_based(),
            "q": t.q + 1,
            "level": t.level(),
            "inradius": tile_inradius(&spec, t)?,
        }));
    }
    if let Some(p) = &a.svg {
        let svg = render_svg(&spec, depth, &ctx.limits)?;
        write_file(p, &svg_with_metadata(ctx, svg))?;
    }
    let body = to_json(&json!({
        "metadata": ctx.metadata(None),
        "system": sys.name(),
        "generators": spec.generator_count(),
        "tile_count": tiles.len(),
        "tiles": entries,
    }));
    Ok(Outcome::ok(emit(&a.out, body)?))
}

fn cmd_render(ctx: &Ctx, a: &TilesArgs) -> Result<Outcome, CliError> {
    let depth = depth_of(a)?;
    let sys = load_config(&a.system)?;
    let spec = build_tiling(&sys, &ctx.limits)?;
    if let RenderDepth::MinInradius(_) = depth {
        tiles_for(&spec, depth, &ctx.limits)?;
    }
    let svg = svg_with_metadata(ctx, render_svg(&spec, depth, &ctx.limits)?);
    let target = a.svg.as_ref().or(a.out.as_ref());
    match target {
        Some(p) => {
            write_file(p, &svg)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(svg)),
    }
}

/// The geometric model when the system has planar geometry, else the
/// scaling model.
fn zeta_model(ctx: &Ctx, sys: &IfsSystem) -> Result<(ZetaModel, &'static str), CliError> {
    if sys.ratios().is_none() {
        return Err(SpectraError::NotSelfSimilar.into());
    }
    if sys.geometry_supported() {
        let spec = build_tiling(sys, &ctx.limits)?;
        Ok((ZetaModel::from_tiling(&spec)?, "geometric"))
    } else {
        Ok((ZetaModel::from_system(sys)?, "scaling"))
    }
}

fn cmd_dims(ctx: &Ctx, a: &DimsArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = parse_pair(&a.window_re, "--window-re")?;
    let sys = load_config(&a.system)?;
    let (model, kind) = zeta_model(ctx, &sys)?;
    let scan = complex_dimensions(&model, Window::new(lo, hi, a.window_im))?;
    let body = to_json(&json!({
        "metadata": ctx.metadata(None),
        "system": sys.name(),
        "zeta": kind,
        "ratios": model.ratios,
        "generator_inradii": model.generator_inradii,
        "scan": scan,
    }));
    Ok(Outcome::ok(emit(&a.out, body)?))
}

fn cmd_zeta(ctx: &Ctx, a: &ZetaArgs) -> Result<Outcome, CliError> {
    let (re, im) = parse_pair(&a.s, "--s")?;
    let s = Complex64::new(re, im);
    let sys = load_config(&a.system)?;
    let (model, _) = zeta_model(ctx, &sys)?;
    let pair = |z: Complex64| [z.re, z.im];
    let zs = zeta_s(&model, s)?;
    let zg = if model.is_geometric() { Some(pair(zeta_g(&model, s)?)) } else { None };
    let body = to_json(&json!({
        "metadata": ctx.metadata(None),
        "system": sys.name(),
        "s": [re, im],
        "dimension": real_dimension(&model),
        "zeta_s": pair(zs),
        "zeta_g": zg,
    }));
    Ok(Outcome::ok(emit(&a.out, body)?))
}

fn cmd_tube(ctx: &Ctx, a: &TubeArgs) -> Result<Outcome, CliError> {
    if a.mc && a.samples < 10_000 {
        return Err(CliError::Input(format!("--samples must be at least 10000, got {}", a.samples)));
    }
    let sys = load_config(&a.system)?;
    let ratios = sys.ratios().ok_or(TubeError::NotSelfSimilar)?;
    let spec = build_tiling(&sys, &ctx.limits)?;
    let model = TubeModel::new(&spec, &ctx.limits)?;
    let curve = tube_curve(&model, a.eps_max, a.eps_min, a.ppd)?;
    let mut csv = String::from("eps,V_exact,V_mc,mc_stderr,head_tiles,tail_mass\n");
    for i in 0..curve.eps.len() {
        let eps = curve.eps[i];
        let (mc, se) = if a.mc {
            let m = monte_carlo_tube(&spec, eps, a.samples, a.seed)?;
            (format!("{:.16e}", m.estimate), format!("{:.16e}", m.std_error))
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(
            csv,
            "{:.16e},{:.16e},{mc},{se},{},{:.16e}",
            eps, curve.values[i], curve.head_tiles[i], curve.tail_mass[i]
        );
    }
    let zm = ZetaModel::scaling(sys.name(), ratios)?;
    let d = real_dimension(&zm);
    let lattice = detect_lattice(&zm);
    let osc = lattice.base.filter(|_| lattice.is_lattice).map(|r| (d, r));
    let (slope, slope_error) = match asymptotic_slope(&curve, osc) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let Some(out) = &a.out else {
        return Ok(Outcome::ok(csv));
    };
    write_file(out, &csv)?;
    let mut side = out.clone().into_os_string();
    side.push(".json");
    let summary = to_json(&json!({
        "metadata": ctx.metadata(a.mc.then_some(a.seed)),
        "system": sys.name(),
        "points": curve.eps.len(),
        "total_area": curve.total_area,
        "exact": curve.exact,
        "dimension": d,
        "expected_slope": 2.0 - d,
        "slope": slope,
        "slope_error": slope_error,
        "monte_carlo": a.mc.then(|| json!({ "samples": a.samples, "seed": a.seed })),
    }));
    write_file(Path::new(&side), &summary)?;
    Ok(Outcome::ok(String::new()))
}
