//! Instance and path files.

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

use crate::geom::{validate_polygon, GeomError, Location, Point, Polygon};
use crate::path::{PathError, SAPath};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid polygon: {0}")]
    Polygon(#[from] GeomError),
    #[error("invalid path: {0}")]
    Path(#[from] PathError),
    #[error("point {0} lies outside the polygon")]
    Outside(Point),
}

/// Instance file: `{"name", "vertices", "s"?, "t"?, "seed"?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Instance {
    /// Validated polygon; `s` and `t`, when present, must be inside or on it.
    pub fn polygon(&self) -> Result<Polygon, IoError> {
        let poly = validate_polygon(&self.vertices)?;
        for p in [self.s, self.t].into_iter().flatten() {
            if !p.is_finite() || poly.locate(p) == Location::Outside {
                return Err(IoError::Outside(p));
            }
        }
        Ok(poly)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Instance, IoError> {
        serde_json::from_str(text).map_err(|source| IoError::Json { path: origin.to_string(), source })
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.display().to_string(), source })
}

pub fn read_instance(path: &Path) -> Result<Instance, IoError> {
    Instance::from_json(&read(path)?, &path.display().to_string())
}

/// Reads a path file; G0 continuity and piece validity are checked.
pub fn read_path(path: &Path) -> Result<SAPath, IoError> {
    let text = read(path)?;
    let p: SAPath =
        serde_json::from_str(&text).map_err(|source| IoError::Json { path: path.display().to_string(), source })?;
    p.validate()?;
    Ok(p)
}

/// Name of the environment variable overriding the verification tolerance.
pub const TOL_ENV: &str = "SA_GEOM_TOL";

/// Tolerance by precedence: explicit flag, then `SA_GEOM_TOL`, then
/// `default`. A malformed or non-positive value is an input error.
pub fn resolve_tolerance(flag: Option<f64>, env: Option<&str>, default: f64) -> Result<f64, String> {
    let check = |v: f64, origin: &str| {
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(format!("{origin} tolerance must be finite and non-negative (got {v})"))
        }
    };
    if let Some(v) = flag {
        return check(v, "--tol");
    }
    match env {
        Some(s) => {
            let v: f64 = s.trim().parse().map_err(|_| format!("{TOL_ENV}={s:?} is not a number"))?;
            check(v, TOL_ENV)
        }
        None => Ok(default),
    }
}

/// Parses `"x,y"`.
pub fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let p = Point::new(
        x.trim().parse().map_err(|_| format!("bad x coordinate in {s:?}"))?,
        y.trim().parse().map_err(|_| format!("bad y coordinate in {s:?}"))?,
    );
    if p.is_finite() {
        Ok(p)
    } else {
        Err(format!("non-finite point {s:?}"))
    }
}
