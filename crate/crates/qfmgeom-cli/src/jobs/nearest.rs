//! Nearest-operator queries: for each configured target, minimize the
//! operator distance along the pulled-back base geodesic.

use qfmgeom::linalg::expm_skew;
use qfmgeom::geometry::nearest_on_geodesic;

use crate::config::{Experiment, Failure};
use crate::jobs::Job;
use crate::output::{fmt_float, write_csv};

pub struct NearestJob;

impl Job for NearestJob {
    fn name(&self) -> &'static str {
        "nearest"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let query = experiment.nearest.as_ref().ok_or_else(|| {
            Failure::Validation("nearest job listed but config has no 'nearest' section".into())
        })?;
        let manifold = experiment.manifold.as_ref();
        let (from, to) = (&query.from, &query.to);

        let mut rows = Vec::with_capacity(query.targets.len());
        let mut lines = Vec::with_capacity(query.targets.len() + 1);
        for (index, generator) in query.targets.iter().enumerate() {
            let target = expm_skew(generator)?;
            let result = nearest_on_geodesic(
                &experiment.spec,
                |t| manifold.geodesic(from, to, t).expect("geodesic on validated endpoints"),
                (0.0, 1.0),
                &target,
                query.samples,
            )?;
            lines.push(format!(
                "target {}: t*={} d*={} skipped={}",
                index + 1,
                fmt_float(result.t_star),
                fmt_float(result.d_star),
                result.skipped.len()
            ));
            rows.push(vec![
                (index + 1).to_string(),
                fmt_float(result.t_star),
                fmt_float(result.d_star),
                result.skipped.len().to_string(),
            ]);
        }
        write_csv(
            &experiment.out_path("nearest.csv"),
            &["target", "t_star", "d_star", "skipped_samples"],
            &rows,
        )?;
        lines.push(format!("nearest.csv written: {} targets", rows.len()));
        Ok(lines)
    }
}
