use lgipdaf::filter::chi2_inv_cdf;
use lgipdaf::scenario::{Scenario, TrajectoryKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SCANS: usize = 10_000;

#[test]
fn clutter_count_is_poisson_196() {
    let s = Scenario::benchmark(TrajectoryKind::Circular);
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let counts: Vec<f64> = (0..SCANS).map(|_| s.sample_clutter(&mut rng).len() as f64).collect();
    let mean = counts.iter().sum::<f64>() / SCANS as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (SCANS - 1) as f64;
    assert!((mean - 196.0).abs() <= 3.0 * 196f64.sqrt() / 100.0, "mean {mean}");
    let ratio = var / mean;
    assert!((0.9..=1.1).contains(&ratio), "variance/mean {ratio}");
}

#[test]
fn clutter_is_uniform_over_the_region() {
    let s = Scenario::benchmark(TrajectoryKind::Circular);
    let [x0, y0, x1, y1] = s.region_m;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut cells = [0usize; 49];
    let mut headings = [0usize; 8];
    let mut total = 0;
    for _ in 0..1000 {
        for z in s.sample_clutter(&mut rng) {
            let [x, y] = [z.translation()[0], z.translation()[1]];
            assert!((x0..x1).contains(&x) && (y0..y1).contains(&y));
            let i = (((x - x0) / (x1 - x0) * 7.0) as usize).min(6);
            let j = (((y - y0) / (y1 - y0) * 7.0) as usize).min(6);
            cells[7 * j + i] += 1;
            let h = z.angle();
            assert!(h > -std::f64::consts::PI && h <= std::f64::consts::PI);
            let b = (((h + std::f64::consts::PI) / std::f64::consts::TAU * 8.0) as usize).min(7);
            headings[b] += 1;
            total += 1;
        }
    }
    let stat = |bins: &[usize]| {
        let expected = total as f64 / bins.len() as f64;
        bins.iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum::<f64>()
    };
    let spatial = stat(&cells);
    assert!(spatial < chi2_inv_cdf(0.99, 48).unwrap(), "χ² {spatial}");
    let angular = stat(&headings);
    assert!(angular < chi2_inv_cdf(0.99, 7).unwrap(), "χ² {angular}");
}

#[test]
fn detection_frequency_matches_p_d() {
    let s = Scenario::benchmark(TrajectoryKind::Straight);
    let x = s.trajectory(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let hits = (0..SCANS)
        .filter(|_| s.sense(&x, 0.0, &mut rng).truth_index.is_some())
        .count();
    let freq = hits as f64 / SCANS as f64;
    assert!((freq - 0.9).abs() <= 0.01, "{freq}");
}

#[test]
fn undetectable_target_has_no_truth_index() {
    let mut s = Scenario::benchmark(TrajectoryKind::Spiral);
    s.p_d = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for k in 0..50 {
        assert_eq!(
            s.sense(&s.trajectory(0.1 * k as f64), 0.1 * k as f64, &mut rng)
                .truth_index,
            None
        );
    }
}

#[test]
fn simulation_is_deterministic_per_seed() {
    for kind in TrajectoryKind::ALL {
        let s = Scenario::benchmark(kind);
        let a = s.simulate(9);
        let b = s.simulate(9);
        assert_eq!(a.scans, b.scans);
        assert_eq!(a.truth, b.truth);
        assert_ne!(a.scans, s.simulate(10).scans);
    }
}

#[test]
fn scans_are_at_every_step_with_valid_truth_index() {
    let s = Scenario::benchmark(TrajectoryKind::Zamboni);
    let sim = s.simulate(5);
    assert_eq!(sim.scans.len(), s.steps());
    assert_eq!(sim.truth.len(), s.steps());
    for (k, scan) in sim.scans.iter().enumerate() {
        assert!((scan.time - k as f64 * s.dt_s).abs() < 1e-12);
        if let Some(i) = scan.truth_index {
            assert!(i < scan.measurements.len());
        }
    }
}

#[test]
fn speed_follows_the_schedule() {
    for kind in TrajectoryKind::ALL {
        let s = Scenario::benchmark(kind);
        for (k, x) in s.truth().iter().enumerate() {
            let expected = kind.twist(k as f64 * s.dt_s);
            assert!((x.vel - expected).amax() <= 1e-12);
            let speed = x.vel.fixed_rows::<2>(0).norm();
            assert!((speed - expected.fixed_rows::<2>(0).norm()).abs() <= 1e-12);
        }
    }
}
