//! Per-point curvature sweep: sectional curvatures of every frame plane,
//! the Ricci matrix, and the scalar curvature, one CSV row per grid point.

use rayon::prelude::*;

use qfmgeom::error::Error;
use qfmgeom::geometry::{curvature_report, CurvatureReport};

use crate::config::{Experiment, Failure};
use crate::jobs::Job;
use crate::output::{fmt_float, write_csv};

pub struct CurvatureJob;

impl Job for CurvatureJob {
    fn name(&self) -> &'static str {
        "curvature"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let reports: Result<Vec<CurvatureReport>, Error> = experiment
            .grid
            .points()
            .par_iter()
            .map(|p| curvature_report(&experiment.spec, experiment.frame, p, experiment.order))
            .collect();
        let reports = reports?;

        let rank = reports[0].rank;
        if let Some(bad) = reports.iter().find(|r| r.rank != rank) {
            return Err(Failure::Numerical(format!(
                "frame rank varies over the grid ({rank} vs {} at {:?})",
                bad.rank, bad.base
            )));
        }

        let mut header: Vec<String> = experiment.spec.coords().to_vec();
        for i in 0..rank {
            for j in (i + 1)..rank {
                header.push(format!("kappa_{}_{}", i + 1, j + 1));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                header.push(format!("ric_{}_{}", i + 1, j + 1));
            }
        }
        header.push("scal".into());
        let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();

        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                let mut row: Vec<String> = r.base.iter().map(|v| fmt_float(*v)).collect();
                row.extend(r.sectional.iter().map(|(_, k)| fmt_float(*k)));
                row.extend(r.ricci.iter().flatten().map(|v| fmt_float(*v)));
                row.push(fmt_float(r.scalar));
                row
            })
            .collect();
        write_csv(&experiment.out_path("curvature.csv"), &header_refs, &rows)?;

        let max_abs_kappa = reports
            .iter()
            .flat_map(|r| r.sectional.iter().map(|(_, k)| k.abs()))
            .fold(0.0f64, f64::max);
        Ok(vec![
            format!(
                "curvature.csv written: {} points, frame={} rank={rank}",
                reports.len(),
                experiment.frame.name()
            ),
            format!("max |kappa| over grid: {}", fmt_float(max_abs_kappa)),
        ])
    }
}
