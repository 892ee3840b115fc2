//! Experiment configuration: JSON schema, CLI overrides, and resolution into
//! live objects (feature map, manifold, grid, frame strategy, job list).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use qfmgeom::error::Error;
use qfmgeom::feature_map::{FeatureMapSpec, MAX_ORDER};
use qfmgeom::geometry::{frame_builder, frame_builders, FrameBuilder};
use qfmgeom::manifold::{build_manifold, grid_points, BaseManifold, Grid, ManifoldSpec};
use qfmgeom::pauli::{PauliString, SkewHermitianOp};

use crate::jobs::{self, Job};

/// A job failure classified for the exit-status contract.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> &'static str {
        match self {
            Failure::Validation(_) => "VALIDATION",
            Failure::Numerical(_) => "NUMERICAL",
            Failure::Io(_) => "IO",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Numerical(_) | Failure::Io(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. }
            | Error::InvalidSpec(_)
            | Error::InvalidManifold(_)
            | Error::PointDim { .. }
            | Error::QubitMismatch { .. }
            | Error::DimMismatch { .. } => Failure::Validation(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e.to_string())
    }
}

/// Flag-level overrides applied on top of the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub order: Option<usize>,
    pub frame: Option<String>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

fn default_order() -> usize {
    qfmgeom::feature_map::DEFAULT_ORDER
}

fn default_frame() -> String {
    "coordinate".into()
}

fn default_out_dir() -> String {
    "out".into()
}

fn default_segments() -> usize {
    64
}

fn default_samples() -> usize {
    33
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    feature_map: Option<serde_json::Value>,
    feature_map_path: Option<String>,
    manifold: ManifoldSpec,
    #[serde(default = "default_order")]
    order: usize,
    #[serde(default = "default_frame")]
    frame: String,
    #[serde(default = "default_out_dir")]
    out_dir: String,
    jobs: Vec<String>,
    workers: Option<usize>,
    #[serde(default = "default_segments")]
    segments: usize,
    expected_closure: Option<Vec<String>>,
    nearest: Option<NearestConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NearestConfig {
    targets: Vec<Vec<PauliTermEntry>>,
    path: PathEndpoints,
    #[serde(default = "default_samples")]
    samples: usize,
}

#[derive(Debug, Deserialize)]
struct PauliTermEntry {
    c: f64,
    p: String,
}

#[derive(Debug, Deserialize)]
struct PathEndpoints {
    from: Vec<f64>,
    to: Vec<f64>,
}

/// Nearest-operator query resolved from the config.
pub struct NearestQuery {
    pub targets: Vec<SkewHermitianOp>,
    pub from: Vec<f64>,
    pub to: Vec<f64>,
    pub samples: usize,
}

/// Fully resolved experiment.
pub struct Experiment {
    pub spec: FeatureMapSpec,
    pub manifold: Box<dyn BaseManifold>,
    pub grid: Grid,
    pub order: usize,
    pub frame: &'static dyn FrameBuilder,
    pub out_dir: PathBuf,
    pub segments: usize,
    pub workers: Option<usize>,
    pub expected_closure: Option<BTreeSet<PauliString>>,
    pub nearest: Option<NearestQuery>,
    pub jobs: Vec<&'static dyn Job>,
}

impl Experiment {
    pub fn out_path(&self, file: &str) -> PathBuf {
        self.out_dir.join(file)
    }
}

/// Read, validate, and resolve a config file plus CLI overrides.
pub fn load(path: &Path, overrides: Overrides) -> Result<Experiment, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let file: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Validation(format!("malformed config: {e}")))?;

    let spec = match (&file.feature_map, &file.feature_map_path) {
        (Some(inline), None) => FeatureMapSpec::from_json(&inline.to_string())?,
        (None, Some(rel)) => {
            // relative spec paths resolve against the config file location
            let spec_path = if Path::new(rel).is_absolute() {
                PathBuf::from(rel)
            } else {
                path.parent().unwrap_or_else(|| Path::new(".")).join(rel)
            };
            let spec_text = std::fs::read_to_string(&spec_path).map_err(|e| {
                Failure::Validation(format!(
                    "cannot read feature map {}: {e}",
                    spec_path.display()
                ))
            })?;
            FeatureMapSpec::from_json(&spec_text)?
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Validation(
                "give either feature_map or feature_map_path, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Validation("missing feature_map / feature_map_path".into()))
        }
    };

    let manifold = build_manifold(&file.manifold)?;
    if manifold.dim() != spec.input_dim() {
        return Err(Failure::Validation(format!(
            "manifold dimension {} does not match the feature map's {} coordinates",
            manifold.dim(),
            spec.input_dim()
        )));
    }
    let grid = grid_points(&file.manifold)?;

    let order = overrides.order.unwrap_or(file.order);
    if order > MAX_ORDER {
        return Err(Failure::Validation(format!(
            "truncation order {order} outside 0..={MAX_ORDER}"
        )));
    }

    let frame_name = overrides.frame.unwrap_or(file.frame);
    let frame = frame_builder(&frame_name).ok_or_else(|| {
        let known: Vec<&str> = frame_builders().iter().map(|b| b.name()).collect();
        Failure::Validation(format!(
            "unknown frame '{frame_name}' (known: {})",
            known.join(", ")
        ))
    })?;

    if file.jobs.is_empty() {
        return Err(Failure::Validation("job list is empty".into()));
    }
    let mut resolved_jobs = Vec::with_capacity(file.jobs.len());
    for name in &file.jobs {
        let job = jobs::find(name).ok_or_else(|| {
            let known: Vec<&str> = jobs::registry().iter().map(|j| j.name()).collect();
            Failure::Validation(format!("unknown job '{name}' (known: {})", known.join(", ")))
        })?;
        resolved_jobs.push(job);
    }

    let expected_closure = match file.expected_closure {
        None => None,
        Some(strings) => {
            let mut set = BTreeSet::new();
            for s in strings {
                set.insert(s.parse::<PauliString>()?);
            }
            Some(set)
        }
    };

    let nearest = match file.nearest {
        None => None,
        Some(cfg) => {
            if cfg.targets.is_empty() {
                return Err(Failure::Validation("nearest.targets is empty".into()));
            }
            let mut targets = Vec::with_capacity(cfg.targets.len());
            for entries in cfg.targets {
                let mut terms = Vec::with_capacity(entries.len());
                for e in entries {
                    terms.push((e.p.parse::<PauliString>()?, e.c));
                }
                targets.push(SkewHermitianOp::from_terms(spec.qubits(), terms)?);
            }
            if cfg.path.from.len() != spec.input_dim() || cfg.path.to.len() != spec.input_dim() {
                return Err(Failure::Validation(
                    "nearest.path endpoints must match the coordinate count".into(),
                ));
            }
            // surface bad endpoints (coincident, outside the manifold) now
            manifold.geodesic(&cfg.path.from, &cfg.path.to, 0.5)?;
            NearestQuery { targets, from: cfg.path.from, to: cfg.path.to, samples: cfg.samples }
                .into()
        }
    };

    if file.segments < 2 {
        return Err(Failure::Validation(format!(
            "segments must be at least 2, got {}",
            file.segments
        )));
    }

    Ok(Experiment {
        spec,
        manifold,
        grid,
        order,
        frame,
        out_dir: overrides.out.unwrap_or_else(|| PathBuf::from(file.out_dir)),
        segments: file.segments,
        workers: overrides.workers.or(file.workers),
        expected_closure,
        nearest,
        jobs: resolved_jobs,
    })
}
