//! Experiment jobs behind a common trait, registered by name and selected at
//! runtime from the config's job list.

mod closure;
mod curvature;
mod distances;
mod nearest;
mod report;
mod validate;

use crate::config::{Experiment, Failure};

/// A named unit of work over a resolved experiment. Jobs write their output
/// files under the experiment's output directory and return summary lines
/// for the console.
pub trait Job: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, experiment: &Experiment) -> Result<Vec<String>, Failure>;
}

static VALIDATE: validate::ValidateJob = validate::ValidateJob;
static CLOSURE: closure::ClosureJob = closure::ClosureJob;
static DISTANCES: distances::DistancesJob = distances::DistancesJob;
static CURVATURE: curvature::CurvatureJob = curvature::CurvatureJob;
static NEAREST: nearest::NearestJob = nearest::NearestJob;
static REPORT: report::ReportJob = report::ReportJob;

static REGISTRY: [&dyn Job; 6] =
    [&VALIDATE, &CLOSURE, &DISTANCES, &CURVATURE, &NEAREST, &REPORT];

/// All registered jobs, in canonical execution order.
pub fn registry() -> &'static [&'static dyn Job] {
    &REGISTRY
}

/// Look a job up by its registered name.
pub fn find(name: &str) -> Option<&'static dyn Job> {
    registry().iter().copied().find(|j| j.name() == name)
}
