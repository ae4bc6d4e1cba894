//! Monte-Carlo comparison of the SE(2) and planar constant-velocity trackers
//! and the three summary measures: track probability of detection (TPD),
//! average Euclidean error (AEE) and average confirmation time (ACT).
//!
//! Per run, at every scan:
//! - the target counts as tracked when some confirmed track is within the
//!   TPD threshold of the true position; TPD is the tracked fraction of scans;
//! - AEE averages the distance from the truth to the nearest confirmed track
//!   over every scan at which at least one track is confirmed, so a confirmed
//!   track that has drifted off the target still counts against it;
//! - ACT is the time of the first confirmation of any track.
//!
//! Aggregates are plain means of the per-run values; runs without a value
//! (never tracked, never confirmed) are left out of the AEE and ACT means.

use crate::error::{Error, Result};
use crate::filter::{FilterParams, Ipdaf};
use crate::lie::{LieGroup, Mat, Planar, Rn, Se2};
use crate::motion::ConstantVelocity;
use crate::scenario::{Scenario, Simulation, TrajectoryKind};
use crate::track::{ManagerConfig, TrackManager};
use nalgebra::{DMatrix, DVector, Vector2, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

/// Default TPD distance threshold in metres.
pub const TPD_THRESHOLD: f64 = 1.0;

/// The filter's clutter density never drops below this, so that clutter-free
/// scenarios still give finite association likelihoods.
pub const MIN_FILTER_LAMBDA: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Se2Cv,
    LtiCv,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [Self::Se2Cv, Self::LtiCv];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Se2Cv => "se2cv",
            Self::LtiCv => "lticv",
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown model `{s}` (expected se2cv or lticv)")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMetrics {
    pub tpd: f64,
    pub aee: Option<f64>,
    pub act: Option<f64>,
    pub wall_time: f64,
    pub track_count_max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub runs: usize,
    pub tpd: f64,
    pub aee: Option<f64>,
    pub act: Option<f64>,
    pub wall_time: f64,
}

#[derive(Clone, Debug)]
pub struct MonteCarlo {
    pub runs: Vec<RunMetrics>,
    pub aggregate: Aggregate,
}

/// Confirmed-track positions after each scan of one run.
pub type History = Vec<Vec<[f64; 2]>>;

fn nearest(truth: [f64; 2], tracks: &[[f64; 2]]) -> Option<f64> {
    tracks
        .iter()
        .map(|p| (p[0] - truth[0]).hypot(p[1] - truth[1]))
        .min_by(f64::total_cmp)
}

/// Fraction of scans at which some confirmed track lies within `threshold`
/// of the truth.
pub fn compute_tpd(truth: &[[f64; 2]], confirmed: &History, threshold: f64) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let tracked = truth
        .iter()
        .zip(confirmed)
        .filter(|(t, c)| nearest(**t, c).is_some_and(|d| d <= threshold))
        .count();
    tracked as f64 / truth.len() as f64
}

/// Mean distance to the nearest confirmed track over the scans that have a
/// confirmed track; `None` if no track was ever confirmed.
pub fn compute_aee(truth: &[[f64; 2]], confirmed: &History) -> Option<f64> {
    let errors: Vec<f64> = truth
        .iter()
        .zip(confirmed)
        .filter_map(|(t, c)| nearest(*t, c))
        .collect();
    mean(&errors)
}

/// Like [`compute_aee`], restricted to the scans counted as tracked by
/// [`compute_tpd`]. Bounded by `threshold`, so it cannot separate a lost
/// track from a good one; kept for comparison.
pub fn compute_aee_tracked(truth: &[[f64; 2]], confirmed: &History, threshold: f64) -> Option<f64> {
    let errors: Vec<f64> = truth
        .iter()
        .zip(confirmed)
        .filter_map(|(t, c)| nearest(*t, c).filter(|d| *d <= threshold))
        .collect();
    mean(&errors)
}

/// Time of the first confirmation, given the scan index at which it happened.
pub fn compute_act(first_confirmation: Option<usize>, dt: f64) -> Option<f64> {
    first_confirmation.map(|k| k as f64 * dt)
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn mean_present(xs: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    mean(&xs.flatten().collect::<Vec<_>>())
}

pub fn aggregate(runs: &[RunMetrics]) -> Aggregate {
    Aggregate {
        runs: runs.len(),
        tpd: mean(&runs.iter().map(|r| r.tpd).collect::<Vec<_>>()).unwrap_or(0.0),
        aee: mean_present(runs.iter().map(|r| r.aee)),
        act: mean_present(runs.iter().map(|r| r.act)),
        wall_time: runs.iter().map(|r| r.wall_time).sum(),
    }
}

fn filter_params(s: &Scenario) -> FilterParams {
    FilterParams {
        p_d: s.p_d,
        p_g: s.tracker.p_g,
        lambda: s.lambda.max(MIN_FILTER_LAMBDA),
        tau_ct: s.tracker.tau_ct,
        tau_rt: s.tracker.tau_rt,
    }
}

fn manager_config(s: &Scenario) -> ManagerConfig {
    ManagerConfig {
        init_cov_scale: s.tracker.init_cov_scale,
        init_eps: s.tracker.init_eps,
        v_max: s.tracker.v_max,
        meas_sigma: s.r_diag[0].max(s.r_diag[1]).sqrt(),
    }
}

/// SE(2) constant velocity with `Q_rate = diag(1, 1, 0.1, 1, 1, 0.1)` and the
/// scenario's measurement noise.
pub fn se2_tracker(s: &Scenario) -> Result<TrackManager<Se2, 3>> {
    let q = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 0.1, 1.0, 1.0, 0.1]));
    let r = Mat::<3>::from_diagonal(&Vector3::from(s.r_diag));
    let filter = Ipdaf::new(ConstantVelocity::new(q, r, 1.0)?, filter_params(s))?;
    Ok(TrackManager::new(filter, manager_config(s)))
}

/// Planar constant velocity on positions with `Q_rate = I₄`.
pub fn lti_tracker(s: &Scenario) -> Result<TrackManager<Rn<2>, 2>> {
    let q = DMatrix::identity(4, 4);
    let r = Mat::<2>::from_diagonal(&Vector2::new(s.r_diag[0], s.r_diag[1]));
    let filter = Ipdaf::new(ConstantVelocity::new(q, r, 1.0)?, filter_params(s))?;
    Ok(TrackManager::new(filter, manager_config(s)))
}

struct Trace {
    history: History,
    first_confirmation: Option<usize>,
    track_count_max: usize,
}

fn track<G: LieGroup<N> + Planar, const N: usize>(
    mut manager: TrackManager<G, N>,
    sim: &Simulation,
    convert: impl Fn(&Se2) -> G,
) -> Result<Trace> {
    let mut history = Vec::with_capacity(sim.scans.len());
    let mut first_confirmation = None;
    let mut track_count_max = 0;
    for (k, scan) in sim.scans.iter().enumerate() {
        let zs: Vec<G> = scan.measurements.iter().map(&convert).collect();
        let report = manager.process(scan.time, &zs)?;
        if first_confirmation.is_none() && !report.confirmed.is_empty() {
            first_confirmation = Some(k);
        }
        track_count_max = track_count_max.max(manager.tracks.len());
        history.push(manager.confirmed().map(|t| t.state().pose.position()).collect());
    }
    Ok(Trace {
        history,
        first_confirmation,
        track_count_max,
    })
}

/// Simulates one run seeded with `seed` and tracks it with `model`.
pub fn run_once(scenario: &Scenario, model: ModelKind, seed: u64, tpd_threshold: f64) -> Result<RunMetrics> {
    let start = Instant::now();
    let sim = scenario.simulate(seed);
    let trace = match model {
        ModelKind::Se2Cv => track(se2_tracker(scenario)?, &sim, |z| *z)?,
        ModelKind::LtiCv => track(lti_tracker(scenario)?, &sim, |z| Rn::new(z.translation()))?,
    };
    let truth: Vec<[f64; 2]> = sim.truth.iter().map(|x| x.pose.position()).collect();
    Ok(RunMetrics {
        tpd: compute_tpd(&truth, &trace.history, tpd_threshold),
        aee: compute_aee(&truth, &trace.history),
        act: compute_act(trace.first_confirmation, scenario.dt_s),
        wall_time: start.elapsed().as_secs_f64(),
        track_count_max: trace.track_count_max,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub runs: usize,
    pub seed: u64,
    pub tpd_threshold: f64,
    /// Worker threads; `None` uses all available cores.
    pub workers: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            runs: 100,
            seed: 0,
            tpd_threshold: TPD_THRESHOLD,
            workers: None,
        }
    }
}

/// Runs `opts.runs` independent runs seeded `seed + i`. Results do not depend
/// on the worker count.
pub fn run_monte_carlo(scenario: &Scenario, model: ModelKind, opts: &RunOptions) -> Result<MonteCarlo> {
    if opts.runs == 0 {
        return Err(Error::Config("at least one run is required".into()));
    }
    scenario.validate()?;
    let job = || {
        (0..opts.runs as u64)
            .into_par_iter()
            .map(|i| run_once(scenario, model, opts.seed.wrapping_add(i), opts.tpd_threshold))
            .collect::<Result<Vec<_>>>()
    };
    let runs = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(job)?,
        None => job()?,
    };
    let aggregate = aggregate(&runs);
    Ok(MonteCarlo { runs, aggregate })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub scenario: String,
    pub model: ModelKind,
    pub aggregate: Aggregate,
}

/// The four trajectories × two models at the benchmark settings.
pub fn run_table(opts: &RunOptions) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for kind in TrajectoryKind::ALL {
        let scenario = Scenario {
            seed: opts.seed,
            ..Scenario::benchmark(kind)
        };
        for model in ModelKind::ALL {
            let mc = run_monte_carlo(&scenario, model, opts)?;
            rows.push(Row {
                scenario: kind.name().to_string(),
                model,
                aggregate: mc.aggregate,
            });
        }
    }
    Ok(rows)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

/// CSV with columns `scenario,model,runs,tpd,aee_m,act_s,wall_s`. Missing
/// metrics are empty fields; `wall_s` is filled only when `with_timing` is
/// set, since wall times would make otherwise identical runs differ.
pub fn to_csv(rows: &[Row], with_timing: bool) -> String {
    let mut out = String::from("scenario,model,runs,tpd,aee_m,act_s,wall_s\n");
    for r in rows {
        let a = &r.aggregate;
        let _ = write!(
            out,
            "{},{},{},{:.6},{},{}",
            r.scenario,
            r.model.name(),
            a.runs,
            a.tpd,
            fmt_opt(a.aee),
            fmt_opt(a.act)
        );
        out.push(',');
        if with_timing {
            let _ = write!(out, "{:.3}", a.wall_time);
        }
        out.push('\n');
    }
    out
}
