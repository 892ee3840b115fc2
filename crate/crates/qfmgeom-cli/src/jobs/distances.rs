//! All-pairs distance matrices over the grid: base-manifold distance,
//! pulled-back path length along the base geodesic, and the operator
//! distance between endpoint unitaries. Each matrix is written as CSV and as
//! a PGM heatmap.

use rayon::prelude::*;

use qfmgeom::error::Error;
use qfmgeom::linalg::{dist_su, UnitaryMatrix};
use qfmgeom::manifold::pulled_path_length;

use crate::config::{Experiment, Failure};
use crate::jobs::Job;
use crate::output::{write_matrix_csv, write_pgm};

pub struct DistancesJob;

impl Job for DistancesJob {
    fn name(&self) -> &'static str {
        "distances"
    }

    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure> {
        let grid = &experiment.grid;
        let n = grid.len();
        let labels: Vec<String> = (0..n).map(|i| grid.label(i)).collect();
        let points = grid.points();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();

        // base distances
        let base_entries: Result<Vec<f64>, Error> = pairs
            .par_iter()
            .map(|(i, j)| experiment.manifold.distance(&points[*i], &points[*j]))
            .collect();
        let base = symmetric(n, &pairs, base_entries?);

        // pulled-back lengths along the base geodesic
        let pulled_entries: Result<Vec<f64>, Error> = pairs
            .par_iter()
            .map(|(i, j)| {
                let a = &points[*i];
                let b = &points[*j];
                let manifold = experiment.manifold.as_ref();
                pulled_path_length(
                    &experiment.spec,
                    |t| manifold.geodesic(a, b, t).expect("geodesic on valid grid points"),
                    experiment.segments,
                    experiment.order,
                )
            })
            .collect();
        let pulled = symmetric(n, &pairs, pulled_entries?);

        // operator distances between endpoint unitaries
        let unitaries: Result<Vec<UnitaryMatrix>, Error> =
            points.par_iter().map(|p| experiment.spec.eval_u(p)).collect();
        let unitaries = unitaries?;
        let su_entries: Result<Vec<f64>, Error> = pairs
            .par_iter()
            .map(|(i, j)| match dist_su(&unitaries[*i], &unitaries[*j]) {
                Ok(d) => Ok(d),
                // branch-cut pairs are recorded, not fatal
                Err(Error::BranchAmbiguity { .. }) => Ok(f64::NAN),
                Err(e) => Err(e),
            })
            .collect();
        let su_entries = su_entries?;
        let skipped = su_entries.iter().filter(|d| d.is_nan()).count();
        let su = symmetric(n, &pairs, su_entries);

        for (stem, matrix) in
            [("distance_base", &base), ("distance_pulled", &pulled), ("distance_su", &su)]
        {
            write_matrix_csv(&experiment.out_path(&format!("{stem}.csv")), &labels, matrix)?;
            write_pgm(&experiment.out_path(&format!("{stem}.pgm")), matrix)?;
        }

        let mut lines = vec![format!(
            "{n} x {n} matrices written: distance_base, distance_pulled, distance_su (csv + pgm)"
        )];
        if skipped > 0 {
            lines.push(format!(
                "warning: {skipped} operator-distance pairs hit the logarithm branch cut (nan cells)"
            ));
        }
        Ok(lines)
    }
}

fn symmetric(n: usize, pairs: &[(usize, usize)], entries: Vec<f64>) -> Vec<Vec<f64>> {
    let mut matrix = vec![vec![0.0; n]; n];
    for ((i, j), value) in pairs.iter().zip(entries) {
        matrix[*i][*j] = value;
        matrix[*j][*i] = value;
    }
    matrix
}
