//! `sapath`: polygon decisions, shortest self-approaching paths,
//! verification, instance generation and rendering.
//!
//! Exit codes: 0 success / yes / pass, 1 no / verification failure,
//! 2 input error, 3 no self-approaching path, 4 solver failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use selfapproach::gen::{generate, GenKind};
use selfapproach::geom::{Point, Polygon};
use selfapproach::io::{
    parse_point, read_instance, read_path, resolve_tolerance, write_text, Instance, IoError, TOL_ENV,
};
use selfapproach::path::{verify_normal_property, verify_triples, SAPath, DEFAULT_SAMPLES, DEFAULT_TOL};
use selfapproach::polygon_sa::{is_self_approaching_polygon, Verdict};
use selfapproach::shortest::{shortest_sa_path, SAPathResult, ShortestError, Witness};
use selfapproach::svg::{render, RenderSpec};

#[derive(Parser)]
#[command(name = "sapath", version, about = "Self-approaching paths and polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the instance polygon is self-approaching.
    CheckPolygon { instance: PathBuf },
    /// Shortest self-approaching path from s to t.
    ShortestPath {
        instance: PathBuf,
        /// Source point "x,y" (overrides the instance).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        s: Option<Point>,
        /// Target point "x,y" (overrides the instance).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        t: Option<Point>,
        /// Write the path (or the unreachability witness) here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also write an SVG figure.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a path file for the self-approaching property and containment.
    VerifyPath {
        instance: PathBuf,
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Tolerance; falls back to SA_GEOM_TOL, then the built-in default.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the polygon with an optional path or witness file.
    Render {
        instance: PathBuf,
        /// A path file, or the not-reachable output of shortest-path.
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = RenderSpec::default().samples_per_piece)]
        samples: usize,
    },
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<IoError> for Fail {
    fn from(e: IoError) -> Self {
        Fail(2, e.to_string())
    }
}

fn load(path: &Path) -> Result<(Instance, Polygon), Fail> {
    let inst = read_instance(path)?;
    let poly = inst.polygon()?;
    Ok((inst, poly))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => Ok(write_text(p, text)?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn check_polygon(instance: &Path) -> Result<u8, Fail> {
    let (_, poly) = load(instance)?;
    let report = is_self_approaching_polygon(&poly);
    println!("{}", pretty(&report));
    Ok(if report.verdict == Verdict::Yes { 0 } else { 1 })
}

fn shortest(
    instance: &Path,
    s: Option<Point>,
    t: Option<Point>,
    json_out: Option<&PathBuf>,
    svg_out: Option<&PathBuf>,
) -> Result<u8, Fail> {
    let (inst, poly) = load(instance)?;
    let s = s.or(inst.s).ok_or_else(|| Fail(2, "no source point: pass --s or set \"s\" in the instance".into()))?;
    let t = t.or(inst.t).ok_or_else(|| Fail(2, "no target point: pass --t or set \"t\" in the instance".into()))?;
    let result = match shortest_sa_path(&poly, s, t) {
        Ok(r) => r,
        Err(ShortestError::EndpointOutside(p)) => return Err(Fail(2, format!("point {p} lies outside the polygon"))),
        Err(ShortestError::Solver(f)) => return Err(Fail(4, f.to_string())),
    };
    let (text, path, witness, code) = match &result {
        SAPathResult::Path { path } => (pretty(path), Some(path), None, 0),
        SAPathResult::NotReachable { witness } => (pretty(&result), None, Some(witness), 3),
    };
    emit(json_out, &text)?;
    if let Some(svg) = svg_out {
        let fig = render(&poly, path, witness, &RenderSpec::default()).map_err(|e| Fail(2, e.to_string()))?;
        write_text(svg, &fig.svg)?;
    }
    if code == 3 {
        eprintln!("no self-approaching path from {s} to {t}");
    }
    Ok(code)
}

fn verify(instance: &Path, path: &Path, samples: usize, tol: Option<f64>) -> Result<u8, Fail> {
    let env = std::env::var(TOL_ENV).ok();
    let tol = resolve_tolerance(tol, env.as_deref(), DEFAULT_TOL).map_err(|e| Fail(2, e))?;
    let (_, poly) = load(instance)?;
    let path = read_path(path)?;
    let normal = verify_normal_property(&path, Some(&poly), samples, tol);
    let triples = verify_triples(&path, samples, tol);
    let passed = normal.passed && triples.passed;
    println!("{}", pretty(&json!({ "passed": passed, "tol": tol, "normal": normal, "triples": triples })));
    Ok(if passed { 0 } else { 1 })
}

fn gen(kind: &str, n: usize, seed: u64, out: Option<&PathBuf>) -> Result<u8, Fail> {
    let kind: GenKind = kind.parse().map_err(|e: selfapproach::gen::GenError| Fail(2, e.to_string()))?;
    let inst = generate(kind, n, seed).map_err(|e| Fail(2, e.to_string()))?;
    emit(out, &inst.to_json())?;
    Ok(0)
}

/// A drawable overlay file: a path, or shortest-path's not-reachable output.
fn read_overlay(p: &PathBuf) -> Result<(Option<SAPath>, Option<Witness>), Fail> {
    let text = std::fs::read_to_string(p).map_err(|e| Fail(2, format!("cannot read {}: {e}", p.display())))?;
    if let Ok(SAPathResult::NotReachable { witness }) = serde_json::from_str::<SAPathResult>(&text) {
        return Ok((None, Some(witness)));
    }
    Ok((Some(read_path(p)?), None))
}

fn render_cmd(instance: &Path, overlay: Option<&PathBuf>, out: &Path, samples: usize) -> Result<u8, Fail> {
    let (_, poly) = load(instance)?;
    let (path, witness) = match overlay {
        Some(p) => read_overlay(p)?,
        None => (None, None),
    };
    let spec = RenderSpec { samples_per_piece: samples, ..RenderSpec::default() };
    let fig = render(&poly, path.as_ref(), witness.as_ref(), &spec).map_err(|e| Fail(2, e.to_string()))?;
    write_text(out, &fig.svg)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::CheckPolygon { instance } => check_polygon(instance),
        Cmd::ShortestPath { instance, s, t, json, svg } => shortest(instance, *s, *t, json.as_ref(), svg.as_ref()),
        Cmd::VerifyPath { instance, path, samples, tol } => verify(instance, path, *samples, *tol),
        Cmd::Gen { kind, n, seed, out } => gen(kind, *n, *seed, out.as_ref()),
        Cmd::Render { instance, path, out, samples } => render_cmd(instance, path.as_ref(), out, *samples),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("sapath: {msg}");
            ExitCode::from(code)
        }
    }
}
