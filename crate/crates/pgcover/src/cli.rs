//! Command line interface.
//!
//! Exit status: 0 on success or a passing check, 1 when a check finds
//! violations, 2 for bad input, bad parameters, or parameters outside a
//! statement's hypothesis.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgcover_core::constructions::{self, Kind, Recipe};
use pgcover_core::covers;
use pgcover_core::verify::{self, HoleScan, Mode, Sampler, Theorem};
use pgcover_core::{FieldSpec, Geometry, PartialCover, PointSet};
use serde_json::json;

use crate::files::{self, Format, RecipeJson, SetFile, SetKind};
use crate::report::{self, Parameters, VerifyReport};
use crate::{driver, read_file, write_file, Error, Result};

#[derive(Debug, Parser)]
#[command(name = "pgcover", version, about = "Partial covers and blocking sets in PG(n,q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a pencil, pencil minus one, remark9 or example16 configuration.
    Construct(ConstructArgs),
    /// Rebuild the cover described by a recipe file.
    Replay(ReplayArgs),
    /// List the holes of a hyperplane set.
    Holes(HolesArgs),
    /// Reduce a cover to a minimal cover.
    Reduce(ReduceArgs),
    /// Swap points and hyperplanes in a cover or point-set file.
    Dualize(DualizeArgs),
    /// Check a theorem by enumeration.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Projective dimension.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Field characteristic.
    #[arg(long)]
    pub p: u32,
    /// Field degree, q = p^h.
    #[arg(long, default_value_t = 1)]
    pub h: u32,
    /// Monic modulus coefficients c_0,..,c_h (default: smallest irreducible).
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

impl SpaceArgs {
    fn field(&self) -> Result<FieldSpec> {
        Ok(FieldSpec::new(self.p, self.h, self.modulus.as_deref())?)
    }

    fn geometry(&self) -> Result<Geometry> {
        Ok(Geometry::new(self.n, self.field()?)?)
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// pencil, pencil_minus_one, remark9 or example16.
    #[arg(value_parser = parse_kind)]
    pub kind: Kind,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Extra hyperplanes beyond q (example16 defaults to (q-2)/3).
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cover file; `.txt` selects the text format.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the dual blocking set.
    #[arg(long)]
    pub dual: bool,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub recipe: PathBuf,
    /// Cover file (default: stdout, JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HolesArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub input: PathBuf,
    /// Reduced cover file (default: stdout, in the input's format).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct DualizeArgs {
    pub input: PathBuf,
    /// Output file (default: stdout, in the input's format).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Partial (q+a)-covers have at least q^(n-1) - a q^(n-2) holes, all in
    /// one hyperplane.
    Holes(ScanArgs),
    /// Prime q: partial (q+a)-covers are q concurrent hyperplanes plus a.
    Structure(ScanArgs),
    /// Tangent hyperplanes through essential points of a blocking set.
    Tangents(TangentArgs),
    /// Minimal subcovers of small covers do not depend on removal order.
    Reduction(ReductionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Uniform,
    NearPencil,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report file (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 0)]
    pub a: usize,
    /// Default: sampled when --samples is given, else exhaustive.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, value_enum, default_value_t = SamplerArg::Uniform)]
    pub sampler: SamplerArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest exhaustive enumeration allowed.
    #[arg(long, env = "PGCOVER_BUDGET", default_value_t = verify::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Directory for one cover file per stored violation.
    #[arg(long)]
    pub counterexamples: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct TangentArgs {
    /// Point-set file of the blocking set.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct ReductionArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    /// Random removal orders per trial.
    #[arg(long, default_value_t = verify::DEFAULT_REMOVAL_ORDERS)]
    pub orders: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub counterexamples: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

const DEFAULT_SAMPLES: u64 = 100_000;

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    Kind::from_name(s).ok_or_else(|| format!("unknown construction `{s}` (pencil, pencil_minus_one, remark9, example16)"))
}

fn wants_json(format: Option<OutputFormat>) -> bool {
    match format {
        Some(f) => f == OutputFormat::Json,
        None => !std::io::stdout().is_terminal(),
    }
}

fn in_file(path: &Path, e: Error) -> Error {
    Error::InFile { path: path.to_path_buf(), source: Box::new(e) }
}

fn load_set(path: &Path) -> Result<(SetFile, Format, Geometry)> {
    let text = read_file(path)?;
    let (file, format) = files::parse_set(&text).map_err(|e| in_file(path, e))?;
    let geo = file.geometry().map_err(|e| in_file(path, e))?;
    Ok((file, format, geo))
}

fn load_cover(path: &Path) -> Result<(Geometry, PartialCover, Format)> {
    let (file, format, geo) = load_set(path)?;
    let c = file.to_cover(&geo).map_err(|e| in_file(path, e))?;
    Ok((geo, c, format))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, contents),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(contents.as_bytes())
                .map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

/// Where the holes of a set sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    None,
    OneHyperplane,
    TwoLines,
    Spread,
}

impl Placement {
    pub fn name(self) -> &'static str {
        match self {
            Placement::None => "none",
            Placement::OneHyperplane => "one_hyperplane",
            Placement::TwoLines => "two_lines",
            Placement::Spread => "spread",
        }
    }

    pub fn describe(self, n: usize) -> &'static str {
        match (self, n) {
            (Placement::None, _) => "(cover)",
            (Placement::OneHyperplane, 2) => "in one line",
            (Placement::OneHyperplane, 3) => "in one plane",
            (Placement::OneHyperplane, _) => "in one hyperplane",
            (Placement::TwoLines, _) => "on two lines",
            (Placement::Spread, _) => "not in one hyperplane",
        }
    }
}

pub fn placement(geo: &Geometry, holes: &PointSet) -> Result<Placement> {
    if holes.is_empty() {
        return Ok(Placement::None);
    }
    if covers::holes_in_common_hyperplane(geo, holes)?.is_some() {
        return Ok(Placement::OneHyperplane);
    }
    let pts: Vec<usize> = holes.iter().collect();
    let collinear = |v: &[usize]| geo.span_indices(v.iter().copied()).dim() <= 1;
    if collinear(&pts[1..]) {
        return Ok(Placement::TwoLines);
    }
    for &other in &pts[1..] {
        let line = geo.line_indices(pts[0], other)?;
        let rest: Vec<usize> = pts.iter().copied().filter(|p| !line.contains(p)).collect();
        if collinear(&rest) {
            return Ok(Placement::TwoLines);
        }
    }
    Ok(Placement::Spread)
}

fn summary_line(geo: &Geometry, holes: &PointSet) -> Result<String> {
    let place = placement(geo, holes)?;
    Ok(match place {
        Placement::None => "holes=0 (cover)".to_string(),
        _ => format!("holes={}, {}", holes.len(), place.describe(geo.n())),
    })
}

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Replay(a) => replay(a),
        Command::Holes(a) => holes(a),
        Command::Reduce(a) => reduce(a),
        Command::Dualize(a) => dualize(a),
        Command::Verify(v) => match v {
            VerifyCommand::Holes(a) => verify_scan(Theorem::Holes, a),
            VerifyCommand::Structure(a) => verify_scan(Theorem::Structure, a),
            VerifyCommand::Tangents(a) => verify_tangents(a),
            VerifyCommand::Reduction(a) => verify_reduction(a),
        },
    }
}

fn sibling(path: &Path, name: String) -> PathBuf {
    path.with_file_name(name)
}

fn construct(args: ConstructArgs) -> Result<i32> {
    let geo = args.space.geometry()?;
    let q = geo.q();
    let a = match (args.a, args.kind) {
        (Some(a), _) => a,
        (None, Kind::TwoLineHoles) => constructions::boundary_excess(q)?,
        (None, _) => 0,
    };
    let recipe = Recipe::new(args.kind, geo.n(), geo.field().clone(), a, args.seed);
    let c = recipe.build(&geo)?;
    let cover_path = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}_q{}_n{}.json", args.kind.name(), q, geo.n())));
    let format = Format::from_path(&cover_path);
    let file_name = cover_path.file_name().and_then(|s| s.to_str()).unwrap_or("cover.json").to_string();
    let stem = file_name.rsplit_once('.').map_or(file_name.as_str(), |x| x.0).to_string();
    let recipe_path = sibling(&cover_path, format!("{stem}.recipe.json"));
    write_file(&cover_path, &SetFile::from_cover(&geo, &c.cover).render(format))?;
    write_file(&recipe_path, &RecipeJson::from_recipe(&recipe).render())?;
    let dual_path = if args.dual {
        let b = constructions::dual_construction(&geo, &c)?;
        let p = sibling(&cover_path, format!("dual_{file_name}"));
        write_file(&p, &SetFile::from_points(&geo, &b).render(format))?;
        Some(p)
    } else {
        None
    };

    let holes = covers::holes(&geo, &c.cover)?;
    let place = placement(&geo, &holes)?;
    if wants_json(args.format) {
        let v = json!({
            "kind": args.kind.name(),
            "n": geo.n(),
            "q": q,
            "a": a,
            "seed": args.seed,
            "hyperplanes": c.cover.len(),
            "holes": holes.len(),
            "placement": place.name(),
            "cover_file": cover_path,
            "recipe_file": recipe_path,
            "dual_file": dual_path,
        });
        println!("{v}");
    } else {
        println!("wrote {} ({} hyperplanes) and {}", cover_path.display(), c.cover.len(), recipe_path.display());
        if let Some(p) = &dual_path {
            println!("wrote {}", p.display());
        }
        println!("{}", summary_line(&geo, &holes)?);
    }
    Ok(0)
}

fn replay(args: ReplayArgs) -> Result<i32> {
    let text = read_file(&args.recipe)?;
    let r = RecipeJson::parse(&text).map_err(|e| in_file(&args.recipe, e))?;
    let recipe = r.to_recipe().map_err(|e| in_file(&args.recipe, e))?;
    let (geo, c) = recipe.replay()?;
    let format = args.out.as_deref().map_or(Format::Json, Format::from_path);
    emit(args.out.as_deref(), &SetFile::from_cover(&geo, &c.cover).render(format))?;
    Ok(0)
}

fn holes(args: HolesArgs) -> Result<i32> {
    let (geo, c, _) = load_cover(&args.input)?;
    let h = covers::holes(&geo, &c)?;
    let place = placement(&geo, &h)?;
    let points: Vec<Vec<u32>> = h.iter().map(|i| geo.point(i).reps()).collect();
    if wants_json(args.format) {
        println!("{}", json!({ "holes": h.len(), "placement": place.name(), "points": points }));
    } else {
        println!("{}", summary_line(&geo, &h)?);
        for p in points {
            let s: Vec<String> = p.iter().map(u32::to_string).collect();
            println!("{}", s.join(" "));
        }
    }
    Ok(0)
}

fn reduce(args: ReduceArgs) -> Result<i32> {
    let (geo, c, format) = load_cover(&args.input)?;
    let r = covers::minimal_reduce(&geo, &c).map_err(|e| in_file(&args.input, e.into()))?;
    let format = args.out.as_deref().map_or(format, Format::from_path);
    emit(args.out.as_deref(), &SetFile::from_cover(&geo, &r.cover).render(format))?;
    let summary = if wants_json(args.format) {
        json!({
            "input_size": c.len(),
            "size": r.cover.len(),
            "removed": r.removed.iter().map(|&i| geo.hyperplane(i).reps()).collect::<Vec<_>>(),
            "uniqueness_guaranteed": r.uniqueness_guaranteed,
        })
        .to_string()
    } else {
        format!(
            "reduced {} -> {} hyperplanes\nuniqueness_guaranteed: {}",
            c.len(),
            r.cover.len(),
            r.uniqueness_guaranteed
        )
    };
    // keep stdout clean when it carries the cover
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

fn dualize(args: DualizeArgs) -> Result<i32> {
    let (file, format, geo) = load_set(&args.input)?;
    let out = match file.kind {
        SetKind::Hyperplanes => {
            let c = file.to_cover(&geo).map_err(|e| in_file(&args.input, e))?;
            SetFile::from_points(&geo, &covers::dualize_cover(&c))
        }
        SetKind::Points => {
            let b = file.to_points(&geo).map_err(|e| in_file(&args.input, e))?;
            SetFile::from_cover(&geo, &covers::dualize_points(&b))
        }
    };
    let format = args.out.as_deref().map_or(format, Format::from_path);
    emit(args.out.as_deref(), &out.render(format))?;
    Ok(0)
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn threads(r: &ReportArgs) -> Option<usize> {
    r.threads.filter(|&t| t > 0)
}

fn finish(report: VerifyReport, args: &ReportArgs, counterexamples: Option<&Path>) -> Result<i32> {
    if let Some(p) = &args.out {
        write_file(p, &report.to_json())?;
    }
    if let Some(dir) = counterexamples {
        report.write_counterexamples(dir)?;
    }
    if wants_json(args.format) {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.verdict.exit_code())
}

fn verify_scan(theorem: Theorem, args: ScanArgs) -> Result<i32> {
    let geo = args.space.geometry()?;
    let scan = HoleScan::new(&geo, theorem, args.a)?;
    let sampled = match args.mode {
        Some(m) => m == ModeArg::Sampled,
        None => args.samples.is_some(),
    };
    let mode = if sampled {
        let sampler = match args.sampler {
            SamplerArg::Uniform => Sampler::Uniform,
            SamplerArg::NearPencil => Sampler::NearPencil,
        };
        Mode::Sampled { samples: args.samples.unwrap_or(DEFAULT_SAMPLES), sampler }
    } else {
        Mode::Exhaustive
    };
    let start = Instant::now();
    let outcome = driver::with_threads(threads(&args.report), || driver::scan(&scan, mode, args.seed, args.budget))??;
    let params = Parameters::new(&geo, Some(args.a as i64), mode, args.seed);
    let report = VerifyReport::new(theorem, params, &geo, scan.hypothesis_met(), &outcome, elapsed_ms(start));
    finish(report, &args.report, args.counterexamples.as_deref())
}

fn verify_tangents(args: TangentArgs) -> Result<i32> {
    let (file, _, geo) = load_set(&args.input)?;
    let b = file.to_points(&geo).map_err(|e| in_file(&args.input, e))?;
    let start = Instant::now();
    let outcome = verify::verify_tangent_bound(&geo, &b)?;
    let a = b.len() as i64 - geo.q() as i64 - 1;
    let mut params = Parameters::new(&geo, Some(a), Mode::Exhaustive, 0);
    params.input = Some(report::point_set_value(&geo, &b));
    let report = VerifyReport::new(Theorem::Tangents, params, &geo, true, &outcome, elapsed_ms(start));
    finish(report, &args.report, None)
}

fn verify_reduction(args: ReductionArgs) -> Result<i32> {
    let geo = args.space.geometry()?;
    if geo.n() < 2 {
        return Err(Error::Invalid(format!("n = {} must be at least 2", geo.n())));
    }
    let start = Instant::now();
    let outcome =
        driver::with_threads(threads(&args.report), || driver::reduction(&geo, args.trials, args.seed, args.orders))?;
    let mut params = Parameters::new(&geo, None, Mode::Sampled { samples: args.trials, sampler: Sampler::Uniform }, args.seed);
    params.sampler = None;
    params.orders = Some(args.orders);
    let report = VerifyReport::new(Theorem::Reduction, params, &geo, true, &outcome, elapsed_ms(start));
    finish(report, &args.report, args.counterexamples.as_deref())
}
