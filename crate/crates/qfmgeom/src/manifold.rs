//! Base data manifolds and pulled-back path lengths.
//!
//! Each manifold kind sits behind the [`BaseManifold`] trait and is looked up
//! by name from the registry, so configurations select the geometry at
//! runtime. Two kinds are provided: the Poincare half-plane patch the
//! experiments run on, and a Euclidean box fallback.
//!
//! The half-plane distance follows the branch formula used in the
//! experiments: `|y1 - y2|` on a vertical line, otherwise
//! `2 log((||p2-p1|| + ||p2 - conj(p1)||) / (2 sqrt(y1 y2)))` with
//! `conj(p1) = (x1, -y1)`. The vertical geodesic is parameterized linearly in
//! `y` for consistency with that vertical branch.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::FeatureMapSpec;
use crate::geometry::metric;

/// Tolerance below which two x-coordinates count as a vertical pair.
const VERTICAL_TOL: f64 = 1e-12;

/// Declarative description of a base manifold patch: kind name, per-coordinate
/// bounds, and the grid step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifoldSpec {
    pub kind: String,
    pub bounds: Vec<(f64, f64)>,
    pub step: f64,
}

impl ManifoldSpec {
    pub fn poincare_patch() -> ManifoldSpec {
        ManifoldSpec {
            kind: "poincare_half_plane".into(),
            bounds: vec![(-1.0, 1.0), (0.1, 1.1)],
            step: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_empty() {
            return Err(Error::InvalidManifold("no coordinate bounds given".into()));
        }
        for (lo, hi) in &self.bounds {
            if lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidManifold(format!("invalid bounds [{lo}, {hi}]")));
            }
        }
        if self.step.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::InvalidManifold(format!("step must be positive, got {}", self.step)));
        }
        Ok(())
    }
}

/// A base manifold: distance between points and geodesic interpolation.
pub trait BaseManifold: Send + Sync {
    fn name(&self) -> &'static str;
    fn dim(&self) -> usize;
    fn distance(&self, p1: &[f64], p2: &[f64]) -> Result<f64>;
    /// Point at parameter `t` on the geodesic from `p1` (`t = 0`) to `p2`
    /// (`t = 1`); endpoints are exact.
    fn geodesic(&self, p1: &[f64], p2: &[f64], t: f64) -> Result<Vec<f64>>;
}

/// The upper half-plane patch with the experiment's branch distance.
pub struct PoincareHalfPlane;

/// Flat box with the Euclidean distance and straight-line geodesics.
pub struct EuclideanBox {
    dim: usize,
}

type ManifoldCtor = fn(&ManifoldSpec) -> Result<Box<dyn BaseManifold>>;

/// Manifold kinds registered by name.
pub const MANIFOLD_REGISTRY: &[(&str, ManifoldCtor)] = &[
    ("poincare_half_plane", |spec| {
        if spec.bounds.len() != 2 {
            return Err(Error::InvalidManifold(
                "poincare_half_plane needs exactly 2 coordinates".into(),
            ));
        }
        if spec.bounds[1].0 <= 0.0 {
            return Err(Error::InvalidManifold(
                "poincare_half_plane needs a positive lower y bound".into(),
            ));
        }
        Ok(Box::new(PoincareHalfPlane))
    }),
    ("euclidean_box", |spec| Ok(Box::new(EuclideanBox { dim: spec.bounds.len() }))),
];

pub fn manifold_kinds() -> Vec<&'static str> {
    MANIFOLD_REGISTRY.iter().map(|(name, _)| *name).collect()
}

/// Resolve a spec to its manifold implementation.
pub fn build_manifold(spec: &ManifoldSpec) -> Result<Box<dyn BaseManifold>> {
    spec.validate()?;
    for (name, ctor) in MANIFOLD_REGISTRY {
        if *name == spec.kind {
            return ctor(spec);
        }
    }
    Err(Error::InvalidManifold(format!(
        "unknown manifold kind '{}' (known: {})",
        spec.kind,
        manifold_kinds().join(", ")
    )))
}

fn check_dim(expected: usize, p: &[f64]) -> Result<()> {
    if p.len() != expected {
        return Err(Error::PointDim { expected, got: p.len() });
    }
    Ok(())
}

/// Half-plane distance: `|y1 - y2|` on a vertical line, else the arc branch.
pub fn poincare_distance(p1: &[f64], p2: &[f64]) -> Result<f64> {
    check_dim(2, p1)?;
    check_dim(2, p2)?;
    let (x1, y1) = (p1[0], p1[1]);
    let (x2, y2) = (p2[0], p2[1]);
    if y1 <= 0.0 {
        return Err(Error::Domain { node: "poincare_distance", value: y1 });
    }
    if y2 <= 0.0 {
        return Err(Error::Domain { node: "poincare_distance", value: y2 });
    }
    if (x1 - x2).abs() < VERTICAL_TOL {
        return Ok((y1 - y2).abs());
    }
    let direct = f64::hypot(x2 - x1, y2 - y1);
    let mirrored = f64::hypot(x2 - x1, y2 + y1);
    Ok(2.0 * ((direct + mirrored) / (2.0 * (y1 * y2).sqrt())).ln())
}

/// Geodesic interpolation on the half-plane.
///
/// Vertical pairs move linearly in `y`; otherwise the geodesic is the circular
/// arc centered on the x-axis through both points, parameterized linearly in
/// the angle.
pub fn poincare_geodesic(p1: &[f64], p2: &[f64], t: f64) -> Result<Vec<f64>> {
    check_dim(2, p1)?;
    check_dim(2, p2)?;
    let (x1, y1) = (p1[0], p1[1]);
    let (x2, y2) = (p2[0], p2[1]);
    if y1 <= 0.0 || y2 <= 0.0 {
        return Err(Error::Domain { node: "poincare_geodesic", value: y1.min(y2) });
    }
    if (x1 - x2).abs() < VERTICAL_TOL && (y1 - y2).abs() < VERTICAL_TOL {
        return Err(Error::InvalidManifold("geodesic endpoints coincide".into()));
    }
    if t == 0.0 {
        return Ok(p1.to_vec());
    }
    if t == 1.0 {
        return Ok(p2.to_vec());
    }
    if (x1 - x2).abs() < VERTICAL_TOL {
        return Ok(vec![x1, y1 + t * (y2 - y1)]);
    }
    let center = (x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1) / (2.0 * (x2 - x1));
    let r1 = f64::hypot(x1 - center, y1);
    let r2 = f64::hypot(x2 - center, y2);
    let theta1 = f64::atan2(y1, x1 - center);
    let theta2 = f64::atan2(y2, x2 - center);
    let theta = theta1 + t * (theta2 - theta1);
    // both radii agree analytically; interpolating suppresses rounding drift
    let r = r1 + t * (r2 - r1);
    Ok(vec![center + r * theta.cos(), r * theta.sin()])
}

impl BaseManifold for PoincareHalfPlane {
    fn name(&self) -> &'static str {
        "poincare_half_plane"
    }

    fn dim(&self) -> usize {
        2
    }

    fn distance(&self, p1: &[f64], p2: &[f64]) -> Result<f64> {
        poincare_distance(p1, p2)
    }

    fn geodesic(&self, p1: &[f64], p2: &[f64], t: f64) -> Result<Vec<f64>> {
        poincare_geodesic(p1, p2, t)
    }
}

impl BaseManifold for EuclideanBox {
    fn name(&self) -> &'static str {
        "euclidean_box"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn distance(&self, p1: &[f64], p2: &[f64]) -> Result<f64> {
        check_dim(self.dim, p1)?;
        check_dim(self.dim, p2)?;
        Ok(p1.iter().zip(p2).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
    }

    fn geodesic(&self, p1: &[f64], p2: &[f64], t: f64) -> Result<Vec<f64>> {
        check_dim(self.dim, p1)?;
        check_dim(self.dim, p2)?;
        if p1 == p2 {
            return Err(Error::InvalidManifold("geodesic endpoints coincide".into()));
        }
        Ok(p1.iter().zip(p2).map(|(a, b)| a + t * (b - a)).collect())
    }
}

/// Inclusive rectangular grid over a manifold patch, row-major over the
/// coordinates (last coordinate fastest).
#[derive(Debug, Clone)]
pub struct Grid {
    points: Vec<Vec<f64>>,
    shape: Vec<usize>,
    bounds: Vec<(f64, f64)>,
    step: f64,
}

impl Grid {
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Row index of a grid point, resolved arithmetically from the bounds.
    pub fn index_of(&self, p: &[f64]) -> Option<usize> {
        if p.len() != self.shape.len() {
            return None;
        }
        let mut index = 0usize;
        for (k, value) in p.iter().enumerate() {
            let offset = (value - self.bounds[k].0) / self.step;
            let i = offset.round();
            if (offset - i).abs() > 1e-6 || i < 0.0 || i as usize >= self.shape[k] {
                return None;
            }
            index = index * self.shape[k] + i as usize;
        }
        Some(index)
    }

    /// Label `x:y:...` used in CSV headers.
    pub fn label(&self, index: usize) -> String {
        self.points[index]
            .iter()
            .map(|v| {
                let rounded = (v * 1e9).round() / 1e9;
                format!("{rounded}")
            })
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// Inclusive grid over the patch: per coordinate
/// `floor((hi - lo)/step + 1 + 1e-9)` points starting at `lo`.
pub fn grid_points(spec: &ManifoldSpec) -> Result<Grid> {
    spec.validate()?;
    let shape: Vec<usize> = spec
        .bounds
        .iter()
        .map(|(lo, hi)| ((hi - lo) / spec.step + 1.0 + 1e-9).floor().max(1.0) as usize)
        .collect();
    let total: usize = shape.iter().product();
    let mut points = Vec::with_capacity(total);
    let mut counter = vec![0usize; shape.len()];
    for _ in 0..total {
        points.push(
            counter
                .iter()
                .enumerate()
                .map(|(k, i)| spec.bounds[k].0 + *i as f64 * spec.step)
                .collect(),
        );
        for k in (0..shape.len()).rev() {
            counter[k] += 1;
            if counter[k] < shape[k] {
                break;
            }
            counter[k] = 0;
        }
    }
    Ok(Grid { points, shape, bounds: spec.bounds.clone(), step: spec.step })
}

/// Step for the central-difference path velocity.
const VELOCITY_STEP: f64 = 1e-6;

/// Length of the image of a path under the feature map:
/// composite-trapezoid integral of `sqrt(g(bar(t), bar(t)))` over `[0, 1]`.
///
/// The path velocity is taken by central difference, so the path closure must
/// be defined slightly beyond the endpoints.
pub fn pulled_path_length(
    spec: &FeatureMapSpec,
    path: impl Fn(f64) -> Vec<f64>,
    segments: usize,
    order: usize,
) -> Result<f64> {
    if segments < 2 {
        return Err(Error::InvalidSpec(format!("need at least 2 segments, got {segments}")));
    }
    let speed = |t: f64| -> Result<f64> {
        let plus = path(t + VELOCITY_STEP);
        let minus = path(t - VELOCITY_STEP);
        let velocity: Vec<f64> =
            plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * VELOCITY_STEP)).collect();
        let bar = spec.tangent(&path(t), &velocity, order)?.into_bar();
        Ok(metric(&bar, &bar)?.max(0.0).sqrt())
    };
    let h = 1.0 / segments as f64;
    let mut sum = 0.5 * (speed(0.0)? + speed(1.0)?);
    for i in 1..segments {
        sum += speed(i as f64 * h)?;
    }
    Ok(sum * h)
}
