//! Orthonormal frames and the strategies that build them.
//!
//! Two frame constructions are exposed behind a common trait and selected by
//! name at runtime: the coordinate frame (Gram-Schmidt over the coordinate
//! tangents) and the Lie-basis frame (the closure strings themselves, which
//! are already orthonormal under the trace metric).

use crate::error::{Error, Result};
use crate::feature_map::{FeatureMapSpec, TangentVector};
use crate::geometry::metric;
use crate::pauli::{lie_closure, SkewHermitianOp};

/// Vectors whose post-projection residual is below this fraction of the
/// largest input norm are dropped.
const DROP_TOL: f64 = 1e-10;

/// An orthonormal set of bar parts at a common base point, together with the
/// Gram matrix of the original inputs for diagnostics.
#[derive(Debug, Clone)]
pub struct Frame {
    base: Vec<f64>,
    vectors: Vec<SkewHermitianOp>,
    gram: Vec<Vec<f64>>,
    dropped: Vec<usize>,
}

impl Frame {
    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn vectors(&self) -> &[SkewHermitianOp] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Gram matrix of the inputs handed to Gram-Schmidt.
    pub fn input_gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    /// Indices of inputs dropped as linearly dependent.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }
}

/// Classical Gram-Schmidt under the trace metric.
///
/// Inputs must share a base point; vectors whose residual after projection is
/// below `1e-10` times the largest input norm are dropped and reported in the
/// frame.
pub fn gram_schmidt(inputs: &[TangentVector]) -> Result<Frame> {
    let first = inputs.first().ok_or(Error::EmptyFrame)?;
    let base = first.base().to_vec();
    for t in inputs {
        if t.base() != base.as_slice() {
            return Err(Error::MixedBasePoints);
        }
    }

    let n = inputs.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = metric(inputs[i].bar(), inputs[j].bar())?;
        }
    }
    let largest_norm = (0..n).map(|i| gram[i][i].sqrt()).fold(0.0, f64::max);
    if largest_norm == 0.0 {
        return Err(Error::EmptyFrame);
    }

    let mut vectors: Vec<SkewHermitianOp> = Vec::with_capacity(n);
    let mut dropped = Vec::new();
    for (index, input) in inputs.iter().enumerate() {
        let mut residual = input.bar().clone();
        for e in &vectors {
            let overlap = metric(&residual, e)?;
            residual = residual.add_scaled(e, -overlap)?;
        }
        let norm = metric(&residual, &residual)?.sqrt();
        if norm < DROP_TOL * largest_norm {
            dropped.push(index);
        } else {
            vectors.push(residual.scaled(1.0 / norm));
        }
    }
    if vectors.is_empty() {
        return Err(Error::EmptyFrame);
    }
    Ok(Frame { base, vectors, gram, dropped })
}

/// A named strategy producing an orthonormal frame at a point.
pub trait FrameBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, spec: &FeatureMapSpec, p: &[f64], order: usize) -> Result<Frame>;
}

/// Gram-Schmidt over the coordinate tangents of the map.
pub struct CoordinateFrame;

impl FrameBuilder for CoordinateFrame {
    fn name(&self) -> &'static str {
        "coordinate"
    }

    fn build(&self, spec: &FeatureMapSpec, p: &[f64], order: usize) -> Result<Frame> {
        gram_schmidt(&spec.coordinate_tangents(p, order)?)
    }
}

/// The Lie-closure strings of the generators as unit frame vectors.
///
/// Closure strings are orthonormal under the metric already; Gram-Schmidt is
/// still applied so accidental duplicates behave like any other dependent
/// input.
pub struct LieBasisFrame;

impl FrameBuilder for LieBasisFrame {
    fn name(&self) -> &'static str {
        "lie-basis"
    }

    fn build(&self, spec: &FeatureMapSpec, p: &[f64], _order: usize) -> Result<Frame> {
        let closure = lie_closure(&spec.generators())?;
        let tangents: Vec<TangentVector> = closure
            .into_iter()
            .map(|string| {
                TangentVector::synthetic(p.to_vec(), SkewHermitianOp::single(string, 1.0))
            })
            .collect();
        gram_schmidt(&tangents)
    }
}

static COORDINATE: CoordinateFrame = CoordinateFrame;
static LIE_BASIS: LieBasisFrame = LieBasisFrame;
static BUILDERS: [&dyn FrameBuilder; 2] = [&COORDINATE, &LIE_BASIS];

/// All registered frame strategies.
pub fn frame_builders() -> &'static [&'static dyn FrameBuilder] {
    &BUILDERS
}

/// Look a strategy up by its registered name.
pub fn frame_builder(name: &str) -> Option<&'static dyn FrameBuilder> {
    frame_builders().iter().copied().find(|b| b.name() == name)
}
