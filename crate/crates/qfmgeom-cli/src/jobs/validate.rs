//! Validation report: generator/coverage checks, commutativity verdict,
//! classical-representability flag, and the advisory codomain sweep.

use std::io::Write;

use crate::config::{Experiment, Failure};
use crate::jobs::Job;

/// Pre-processing values are conventionally rotation angles; anything
/// outside `[-pi, 2*pi]` is flagged (warning only, never an error).
const CODOMAIN_LO: f64 = -std::f64::consts::PI;
const CODOMAIN_HI: f64 = 2.0 * std::f64::consts::PI;

pub struct ValidateJob;

impl Job for ValidateJob {
    fn name(&self) -> &'static str {
        "validate"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let spec = &experiment.spec;
        let mut lines = Vec::new();
        lines.push(format!(
            "feature map: qubits={} coords={} terms={}",
            spec.qubits(),
            spec.coords().join(","),
            spec.terms().len()
        ));
        // construction already enforced both non-degeneracy conditions;
        // restate them with the evidence
        lines.push(format!("generators nonzero: ok ({} terms)", spec.terms().len()));
        for (j, name) in spec.coords().iter().enumerate() {
            let users: Vec<String> = spec
                .terms()
                .iter()
                .enumerate()
                .filter(|(_, t)| t.depends_on(j))
                .map(|(k, _)| (k + 1).to_string())
                .collect();
            lines.push(format!("coordinate {name}: fed by terms {}", users.join(",")));
        }
        lines.push(format!("commutative: {}", spec.is_commutative()));
        lines.push(format!("dequantizable: {}", spec.is_dequantizable()));

        // advisory codomain sweep over the configured grid
        let mut outside = 0usize;
        let mut total = 0usize;
        for point in experiment.grid.points() {
            for term in spec.terms() {
                total += 1;
                let value = term.function().eval(point).map_err(Failure::from)?;
                if !(CODOMAIN_LO..=CODOMAIN_HI).contains(&value) {
                    outside += 1;
                }
            }
        }
        let verdict = if outside == 0 { "ok" } else { "warning" };
        lines.push(format!(
            "codomain sweep: {verdict} ({outside} of {total} sampled values outside [-pi, 2*pi])"
        ));

        let path = experiment.out_path("validate.txt");
        let mut file = std::fs::File::create(path)?;
        for line in &lines {
            writeln!(file, "{line}")?;
        }
        Ok(lines)
    }
}
