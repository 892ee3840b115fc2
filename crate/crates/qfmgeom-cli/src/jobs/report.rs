//! Plain-text summary: flatness verdict for commutative encodings and, for
//! two-coordinate non-commutative encodings, the computed sectional
//! curvature at reference points across truncation orders, next to the
//! closed forms it is compared against.

use std::io::Write;

use qfmgeom::geometry::{sectional, CoordinateFrame, FrameBuilder};
use qfmgeom::pauli::lie_closure;

use crate::config::{Experiment, Failure};
use crate::jobs::Job;
use crate::output::fmt_float;

/// Reference closed form the computed XY-Hamiltonian curvature is tabulated
/// against: `4(p1^2 p2^2 + p1^2 + p2^4 + p2^2) / (p1^2 + p2^2 + 1)`.
pub fn reference_kappa(p1: f64, p2: f64) -> f64 {
    4.0 * (p1 * p1 * p2 * p2 + p1 * p1 + p2 * p2 * p2 * p2 + p2 * p2)
        / (p1 * p1 + p2 * p2 + 1.0)
}

/// Leading-order (Q = 0) closed form derived from the coordinate tangents:
/// `(p1^2 + p2^2) / (1 + p1^2 + p2^2)`.
pub fn leading_order_kappa(p1: f64, p2: f64) -> f64 {
    (p1 * p1 + p2 * p2) / (1.0 + p1 * p1 + p2 * p2)
}

/// Reference points the curvature comparison is tabulated at.
pub const REFERENCE_POINTS: [(f64, f64); 3] = [(0.5, 0.5), (1.0, 0.1), (-1.0, 1.1)];

pub struct ReportJob;

impl Job for ReportJob {
    fn name(&self) -> &'static str {
        "report"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let spec = &experiment.spec;
        let mut lines = Vec::new();
        lines.push(format!(
            "encoding: qubits={} coords={} terms={}",
            spec.qubits(),
            spec.coords().join(","),
            spec.terms().len()
        ));
        lines.push(format!(
            "commutative: {} / dequantizable: {}",
            spec.is_commutative(),
            spec.is_dequantizable()
        ));
        let closure = lie_closure(&spec.generators())?;
        lines.push(format!(
            "lie closure ({} strings): {}",
            closure.len(),
            closure.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
        ));

        if spec.is_commutative() {
            // commuting generators force every bracket, hence every
            // sectional curvature, to vanish; report the measured maximum
            let mut max_abs = 0.0f64;
            for p in experiment.grid.points() {
                let frame = experiment.frame.build(spec, p, experiment.order)?;
                let vectors = frame.vectors();
                for i in 0..vectors.len() {
                    for j in (i + 1)..vectors.len() {
                        max_abs = max_abs.max(sectional(&vectors[i], &vectors[j])?.abs());
                    }
                }
            }
            lines.push(format!(
                "flatness verdict: kappa = 0 expected on every section; measured max |kappa| = {} over {} grid points",
                fmt_float(max_abs),
                experiment.grid.len()
            ));
        } else if spec.input_dim() == 2 {
            lines.push(
                "coordinate-plane sectional curvature at reference points \
                 (computed vs closed forms):"
                    .into(),
            );
            lines.push(
                "point | Q | kappa_computed | kappa_leading_order | kappa_reference"
                    .into(),
            );
            for (p1, p2) in REFERENCE_POINTS {
                for order in 0..=3usize {
                    let frame = CoordinateFrame.build(spec, &[p1, p2], order)?;
                    let vectors = frame.vectors();
                    if vectors.len() < 2 {
                        return Err(Failure::Numerical(format!(
                            "coordinate frame degenerate at ({p1},{p2})"
                        )));
                    }
                    let kappa = sectional(&vectors[0], &vectors[1])?;
                    lines.push(format!(
                        "({p1},{p2}) | {order} | {} | {} | {}",
                        fmt_float(kappa),
                        fmt_float(leading_order_kappa(p1, p2)),
                        fmt_float(reference_kappa(p1, p2))
                    ));
                }
            }
            lines.push(
                "note: the reference closed form differs from the leading-order \
                 computation by the factor 4(p2^2+1); both are shown side by side."
                    .into(),
            );
        }

        let path = experiment.out_path("report.txt");
        let mut file = std::fs::File::create(path)?;
        for line in &lines {
            writeln!(file, "{line}")?;
        }
        lines.push("report.txt written".into());
        Ok(lines)
    }
}
