//! Lie closure of the generator strings, with an optional diff against an
//! expected set from the config.

use std::io::Write;

use qfmgeom::pauli::lie_closure;

use crate::config::{Experiment, Failure};
use crate::jobs::Job;

pub struct ClosureJob;

impl Job for ClosureJob {
    fn name(&self) -> &'static str {
        "closure"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let derived = lie_closure(&experiment.spec.generators())?;

        let path = experiment.out_path("closure.txt");
        let mut file = std::fs::File::create(path)?;
        for string in &derived {
            writeln!(file, "{string}")?;
        }

        let mut lines = vec![format!("closure size: {}", derived.len())];
        if let Some(expected) = &experiment.expected_closure {
            let size_verdict = if derived.len() == expected.len() { "PASS" } else { "FAIL" };
            lines.push(format!(
                "size check: {size_verdict} (derived {} vs expected {})",
                derived.len(),
                expected.len()
            ));
            let extra: Vec<String> =
                derived.difference(expected).map(|s| s.to_string()).collect();
            let missing: Vec<String> =
                expected.difference(&derived).map(|s| s.to_string()).collect();
            if extra.is_empty() && missing.is_empty() {
                lines.push("set check: PASS (exact match)".into());
            } else {
                if !extra.is_empty() {
                    lines.push(format!("DIFF derived-only: {}", extra.join(" ")));
                }
                if !missing.is_empty() {
                    lines.push(format!("DIFF expected-only: {}", missing.join(" ")));
                }
            }
        }
        Ok(lines)
    }
}
