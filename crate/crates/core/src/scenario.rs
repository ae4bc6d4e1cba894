//! Simulated car on SE(2): ground-truth trajectories, a pose sensor with
//! missed detections, and uniform Poisson clutter over a rectangular region.

use crate::error::{Error, Result};
use crate::lie::{LieGroup, Se2, State};
use nalgebra::Vector3;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryKind {
    Circular,
    Zamboni,
    Spiral,
    Straight,
}

impl TrajectoryKind {
    pub const ALL: [TrajectoryKind; 4] = [Self::Circular, Self::Zamboni, Self::Spiral, Self::Straight];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Circular => "circular",
            Self::Zamboni => "zamboni",
            Self::Spiral => "spiral",
            Self::Straight => "straight",
        }
    }

    /// Start pose `(x, y, heading)` used when a scenario does not give one.
    pub fn default_start(&self) -> StartPose {
        let (x, y, heading) = match self {
            Self::Circular => (0.0, -10.0, 0.0),
            Self::Zamboni => (-20.0, -7.0, 0.0),
            Self::Spiral => (0.0, 0.0, 0.0),
            Self::Straight => (-70.0, -70.0, PI / 4.0),
        };
        StartPose { x, y, heading }
    }

    /// Body twist `[v, 0, ω]` at time `t`.
    ///
    /// The Zamboni schedule repeats 4 s straight at 10 m/s followed by a
    /// 1.5 rad/s left turn through π radians, giving a racetrack of U-turns.
    /// The spiral ramps its speed linearly from 2 to 10 m/s over 30 s at
    /// 1 rad/s.
    pub fn twist(&self, t: f64) -> Vector3<f64> {
        match self {
            Self::Circular => Vector3::new(10.0, 0.0, 1.0),
            Self::Zamboni => {
                const STRAIGHT: f64 = 4.0;
                const RATE: f64 = 1.5;
                let turn = PI / RATE;
                let phase = t.rem_euclid(STRAIGHT + turn);
                let w = if phase < STRAIGHT { 0.0 } else { RATE };
                Vector3::new(10.0, 0.0, w)
            }
            Self::Spiral => Vector3::new(2.0 + 8.0 * t / 30.0, 0.0, 1.0),
            Self::Straight => Vector3::new(7.0, 0.0, 0.0),
        }
    }
}

impl FromStr for TrajectoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown trajectory kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StartPose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl StartPose {
    pub fn pose(&self) -> Se2 {
        Se2::new(self.heading, self.x, self.y)
    }
}

/// Tracker settings carried alongside a scenario. Detection probability and
/// clutter density are taken from the scenario itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerConfig {
    pub p_g: f64,
    pub tau_ct: f64,
    pub tau_rt: f64,
    pub init_eps: f64,
    pub init_cov_scale: f64,
    pub v_max: f64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self {
            p_g: 0.9,
            tau_ct: 0.7,
            tau_rt: 0.1,
            init_eps: 0.2,
            init_cov_scale: 5.0,
            v_max: 15.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: TrajectoryKind,
    pub duration_s: f64,
    pub dt_s: f64,
    /// Surveillance region `[x_min, y_min, x_max, y_max]` in metres.
    pub region_m: [f64; 4],
    /// Clutter density per square metre of the region.
    pub lambda: f64,
    pub p_d: f64,
    /// Diagonal of the pose measurement noise covariance `[x, y, θ]`.
    pub r_diag: [f64; 3],
    pub seed: u64,
    #[serde(default)]
    pub start: Option<StartPose>,
    #[serde(default)]
    pub tracker: TrackerConfig,
}

/// One sensor sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub time: f64,
    pub measurements: Vec<Se2>,
    /// Position of the target-originated measurement, if the target was
    /// detected.
    pub truth_index: Option<usize>,
}

/// Truth and scans for one Monte-Carlo run; `truth[k]` is the state at
/// `scans[k].time`.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub truth: Vec<State<Se2, 3>>,
    pub scans: Vec<Scan>,
}

impl Scenario {
    /// The benchmark setup: 30 s at 10 Hz over a 140 m square with 196 expected
    /// false measurements per scan.
    pub fn benchmark(kind: TrajectoryKind) -> Self {
        Self {
            kind,
            duration_s: 30.0,
            dt_s: 0.1,
            region_m: [-70.0, -70.0, 70.0, 70.0],
            lambda: 0.01,
            p_d: 0.9,
            r_diag: [0.1, 0.1, 0.01],
            seed: 0,
            start: None,
            tracker: TrackerConfig::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt_s > 0.0) || !(self.duration_s > 0.0) {
            return Err(Error::Config("duration and time step must be positive".into()));
        }
        let steps = self.duration_s / self.dt_s;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::Config(format!(
                "duration {} s is not a whole number of {} s steps",
                self.duration_s, self.dt_s
            )));
        }
        if !(self.area() > 0.0) {
            return Err(Error::Config("surveillance region has no area".into()));
        }
        if !(0.0..=1.0).contains(&self.p_d) {
            return Err(Error::InvalidProbability(self.p_d));
        }
        if !(self.lambda >= 0.0) || self.r_diag.iter().any(|r| !(*r >= 0.0)) {
            return Err(Error::Config(
                "clutter density and noise variances must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.duration_s / self.dt_s).round() as usize
    }

    pub fn area(&self) -> f64 {
        let [x0, y0, x1, y1] = self.region_m;
        (x1 - x0) * (y1 - y0)
    }

    pub fn start_pose(&self) -> Se2 {
        self.start.unwrap_or_else(|| self.kind.default_start()).pose()
    }

    /// Ground-truth state at time `t`, integrated with one constant-twist
    /// exponential step per `dt` (and a partial final step).
    pub fn trajectory(&self, t: f64) -> State<Se2, 3> {
        let mut pose = self.start_pose();
        let mut s = 0.0;
        while s + self.dt_s <= t + 1e-12 {
            pose = pose.oplus(&(self.kind.twist(s) * self.dt_s));
            s += self.dt_s;
        }
        if t > s {
            pose = pose.oplus(&(self.kind.twist(s) * (t - s)));
        }
        State::new(pose, self.kind.twist(t))
    }

    /// Truth states at `k·dt` for `k = 0 … steps−1`.
    pub fn truth(&self) -> Vec<State<Se2, 3>> {
        let mut pose = self.start_pose();
        (0..self.steps())
            .map(|k| {
                let t = k as f64 * self.dt_s;
                let v = self.kind.twist(t);
                let x = State::new(pose, v);
                pose = pose.oplus(&(v * self.dt_s));
                x
            })
            .collect()
    }

    /// False measurements for one scan.
    pub fn sample_clutter<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Se2> {
        let mean = self.lambda * self.area();
        if mean <= 0.0 {
            return Vec::new();
        }
        let count = Poisson::new(mean).expect("positive mean").sample(rng) as usize;
        let [x0, y0, x1, y1] = self.region_m;
        (0..count)
            .map(|_| {
                let x = rng.random_range(x0..x1);
                let y = rng.random_range(y0..y1);
                let heading = rng.random_range(-PI..PI);
                Se2::new(heading, x, y)
            })
            .collect()
    }

    /// One scan of the target at `x`.
    pub fn sense<R: Rng + ?Sized>(&self, x: &State<Se2, 3>, time: f64, rng: &mut R) -> Scan {
        let mut measurements = Vec::new();
        let detected = rng.random_bool(self.p_d);
        if detected {
            let r = Vector3::from_iterator(self.r_diag.iter().map(|v| {
                let n: f64 = rng.sample(StandardNormal);
                n * v.sqrt()
            }));
            measurements.push(x.pose.oplus(&r));
        }
        measurements.extend(self.sample_clutter(rng));
        let mut order: Vec<usize> = (0..measurements.len()).collect();
        order.shuffle(rng);
        let truth_index = detected.then(|| order.iter().position(|&i| i == 0).expect("present"));
        let measurements = order.iter().map(|&i| measurements[i]).collect();
        Scan {
            time,
            measurements,
            truth_index,
        }
    }

    /// Truth and scans for one run seeded with `seed`.
    pub fn simulate(&self, seed: u64) -> Simulation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let truth = self.truth();
        let scans = truth
            .iter()
            .enumerate()
            .map(|(k, x)| self.sense(x, k as f64 * self.dt_s, &mut rng))
            .collect();
        Simulation { truth, scans }
    }
}
