//! Track lifecycle: initialisation from pairs of unassociated measurements,
//! routing scans to gates, confirmation, rejection and labelling.

use crate::error::{Error, Result};
use crate::filter::{FilterParams, Gate, Ipdaf};
use crate::gaussian::ConcentratedGaussian;
use crate::lie::{LieGroup, Planar, State};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Tentative,
    Confirmed,
    Rejected,
}

#[derive(Clone, Debug)]
pub struct Track<G, const N: usize> {
    pub belief: ConcentratedGaussian<State<G, N>>,
    /// Track likelihood: probability that the track represents the target.
    pub eps: f64,
    /// Every validated measurement with its scan time.
    pub consensus: Vec<(f64, G)>,
    pub label: Option<u64>,
    pub status: Status,
}

impl<G: LieGroup<N>, const N: usize> Track<G, N> {
    pub fn new(state: State<G, N>, cov: DMatrix<f64>, eps: f64) -> Self {
        Self {
            belief: ConcentratedGaussian::new_unchecked(state, cov),
            eps,
            consensus: Vec::new(),
            label: None,
            status: Status::Tentative,
        }
    }

    pub fn state(&self) -> &State<G, N> {
        &self.belief.mean
    }

    pub fn is_confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }
}

/// A tentative track at `z_new` whose velocity carries `z_old` to `z_new`
/// over the elapsed time: `v = Log(z_old⁻¹ z_new) / (t_new − t_old)`.
pub fn init_track<G: LieGroup<N>, const N: usize>(
    z_new: G,
    z_old: G,
    t_new: f64,
    t_old: f64,
    init_cov: DMatrix<f64>,
    init_eps: f64,
) -> Result<Track<G, N>> {
    if !(t_new > t_old) {
        return Err(Error::NonIncreasingTimes { t_new, t_old });
    }
    let belief = ConcentratedGaussian::new(State::new(z_new, z_new.ominus(&z_old) / (t_new - t_old)), init_cov)?;
    let mut track = Track {
        belief,
        eps: init_eps,
        consensus: vec![(t_old, z_old), (t_new, z_new)],
        label: None,
        status: Status::Tentative,
    };
    track.eps = track.eps.clamp(0.0, 1.0);
    Ok(track)
}

/// Outcome of routing one scan: the validated measurement indices of each
/// gate (in scan order) and the indices that fell in no gate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Routing {
    pub validated: Vec<Vec<usize>>,
    pub pool: Vec<usize>,
}

/// Measurement positions sorted along x for window queries.
struct SweepIndex {
    xs: Vec<f64>,
    order: Vec<usize>,
}

impl SweepIndex {
    fn new(points: &[[f64; 2]]) -> Self {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));
        let xs = order.iter().map(|&i| points[i][0]).collect();
        Self { xs, order }
    }

    /// Indices whose x coordinate lies within `[x − r, x + r]`.
    fn window(&self, x: f64, r: f64) -> impl Iterator<Item = usize> + '_ {
        let lo = self.xs.partition_point(|&v| v < x - r);
        let hi = self.xs.partition_point(|&v| v <= x + r);
        self.order[lo..hi].iter().copied()
    }
}

fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Copies every measurement into each gate that contains it; the rest form
/// the unassociated pool.
pub fn route_scan<G: LieGroup<N> + Planar, const N: usize>(gates: &[Gate<G, N>], scan: &[G]) -> Routing {
    let points: Vec<[f64; 2]> = scan.iter().map(|z| z.position()).collect();
    let index = SweepIndex::new(&points);
    let mut used = vec![false; scan.len()];
    let validated = gates
        .iter()
        .map(|gate| {
            let c = gate.z_hat.position();
            let r = gate.bounding_radius();
            let mut hits: Vec<usize> = index
                .window(c[0], r)
                .filter(|&i| distance(points[i], c) <= r && gate.contains(&scan[i]))
                .collect();
            hits.sort_unstable();
            for &i in &hits {
                used[i] = true;
            }
            hits
        })
        .collect();
    let pool = (0..scan.len()).filter(|&i| !used[i]).collect();
    Routing { validated, pool }
}

/// Rejects and removes tracks whose likelihood fell below `τ_RT`, and
/// confirms and labels tentative tracks above `τ_CT`. Returns the number of
/// tracks removed.
pub fn lifecycle_step<G: LieGroup<N>, const N: usize>(
    tracks: &mut Vec<Track<G, N>>,
    params: &FilterParams,
    next_label: &mut u64,
) -> usize {
    for t in tracks.iter_mut() {
        if t.eps < params.tau_rt {
            t.status = Status::Rejected;
        } else if t.eps > params.tau_ct && t.status == Status::Tentative {
            t.status = Status::Confirmed;
            t.label = Some(*next_label);
            *next_label += 1;
        }
    }
    let before = tracks.len();
    tracks.retain(|t| t.status != Status::Rejected);
    before - tracks.len()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManagerConfig {
    /// Initial error covariance is `init_cov_scale · I`.
    pub init_cov_scale: f64,
    pub init_eps: f64,
    /// Largest target speed expected, used to decide which measurements are
    /// close enough to seed a track.
    pub v_max: f64,
    /// Standard deviation of the position measurement noise.
    pub meas_sigma: f64,
}

impl Default for ManagerConfig {
    fn default() -> Self {
        Self {
            init_cov_scale: 5.0,
            init_eps: 0.2,
            v_max: 15.0,
            meas_sigma: 0.1f64.sqrt(),
        }
    }
}

impl ManagerConfig {
    /// Largest distance between paired measurements `Δt` apart.
    pub fn neighbor_threshold(&self, dt: f64) -> f64 {
        (self.v_max + 3.0 * self.meas_sigma) * dt
    }
}

/// Per-scan summary returned by [`TrackManager::process`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepReport {
    pub created: usize,
    pub rejected: usize,
    pub confirmed: Vec<u64>,
}

/// Runs the filter over a sequence of scans for any number of tracks.
#[derive(Clone, Debug)]
pub struct TrackManager<G, const N: usize> {
    pub filter: Ipdaf<G, N>,
    pub config: ManagerConfig,
    pub tracks: Vec<Track<G, N>>,
    pool: Vec<G>,
    last_time: Option<f64>,
    next_label: u64,
}

impl<G: LieGroup<N> + Planar, const N: usize> TrackManager<G, N> {
    pub fn new(filter: Ipdaf<G, N>, config: ManagerConfig) -> Self {
        Self {
            filter,
            config,
            tracks: Vec::new(),
            pool: Vec::new(),
            last_time: None,
            next_label: 0,
        }
    }

    /// Unassociated measurements of the previous scan still available for
    /// initialisation.
    pub fn pool(&self) -> &[G] {
        &self.pool
    }

    pub fn confirmed(&self) -> impl Iterator<Item = &Track<G, N>> {
        self.tracks.iter().filter(|t| t.is_confirmed())
    }

    /// Processes one scan taken at `time`.
    pub fn process(&mut self, time: f64, scan: &[G]) -> Result<StepReport> {
        let dt = match self.last_time {
            Some(t) if time <= t => {
                return Err(Error::NonIncreasingTimes { t_new: time, t_old: t });
            }
            Some(t) => Some(time - t),
            None => None,
        };
        let mut report = StepReport::default();

        let mut tracks = std::mem::take(&mut self.tracks);
        if let Some(dt) = dt {
            tracks = tracks
                .into_iter()
                .map(|t| self.filter.predict(t, dt))
                .collect::<Result<_>>()?;
        }
        let gates = tracks
            .iter()
            .map(|t| self.filter.make_gate(t))
            .collect::<Result<Vec<_>>>()?;
        let routing = route_scan(&gates, scan);

        let mut updated = Vec::with_capacity(tracks.len());
        for ((mut track, gate), idx) in tracks.into_iter().zip(&gates).zip(&routing.validated) {
            let zs: Vec<G> = idx.iter().map(|&i| scan[i]).collect();
            let assoc = self.filter.association_probabilities(gate, &zs);
            track.consensus.extend(zs.iter().map(|z| (time, *z)));
            updated.push(self.filter.fuse_and_update(track, gate, &assoc)?);
        }

        let labels_before = self.next_label;
        report.rejected = lifecycle_step(&mut updated, &self.filter.params, &mut self.next_label);
        report.confirmed = (labels_before..self.next_label).collect();

        let fresh: Vec<G> = routing.pool.iter().map(|&i| scan[i]).collect();
        let (created, leftover) = match dt {
            Some(dt) => self.initialise(&fresh, time, dt)?,
            None => (Vec::new(), fresh),
        };
        report.created = created.len();
        updated.extend(created);

        self.tracks = updated;
        self.pool = leftover;
        self.last_time = Some(time);
        Ok(report)
    }

    /// Pairs each fresh measurement with the nearest unused pool measurement
    /// from the previous scan within the neighbour threshold. Returns the new
    /// tracks and the fresh measurements left unpaired.
    fn initialise(&self, fresh: &[G], time: f64, dt: f64) -> Result<(Vec<Track<G, N>>, Vec<G>)> {
        let radius = self.config.neighbor_threshold(dt);
        let old_points: Vec<[f64; 2]> = self.pool.iter().map(|z| z.position()).collect();
        let index = SweepIndex::new(&old_points);
        let mut taken = vec![false; self.pool.len()];
        let mut created = Vec::new();
        let mut leftover = Vec::new();
        let init_cov = DMatrix::identity(2 * N, 2 * N) * self.config.init_cov_scale;
        for z in fresh {
            let p = z.position();
            let best = index
                .window(p[0], radius)
                .filter(|&i| !taken[i])
                .map(|i| (i, distance(old_points[i], p)))
                .filter(|&(_, d)| d <= radius)
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            match best {
                Some((i, _)) => {
                    taken[i] = true;
                    created.push(init_track(
                        *z,
                        self.pool[i],
                        time,
                        time - dt,
                        init_cov.clone(),
                        self.config.init_eps,
                    )?);
                }
                None => leftover.push(*z),
            }
        }
        Ok((created, leftover))
    }
}
