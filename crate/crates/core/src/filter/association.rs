use super::{clamp_eps, Gate, Ipdaf};
use crate::lie::{LieGroup, Tangent};
use statrs::function::gamma::ln_gamma;

/// Probabilities of the association events for one track and one scan.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociationResult<const N: usize> {
    /// `β₀` (all validated measurements are clutter) followed by `β₁ … βₘ`.
    pub betas: Vec<f64>,
    /// `L_j = (P_D / λ) N(ν_j; 0, S)`.
    pub likelihoods: Vec<f64>,
    /// `ν_j = Log(ẑ⁻¹ z_j)`.
    pub innovations: Vec<Tangent<N>>,
}

impl<const N: usize> AssociationResult<N> {
    pub fn len(&self) -> usize {
        self.innovations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.innovations.is_empty()
    }

    /// `α = P_D P_G − Σ L_j`.
    pub fn alpha(&self, p_d: f64, p_g: f64) -> f64 {
        p_d * p_g - self.likelihoods.iter().sum::<f64>()
    }
}

impl<G: LieGroup<N>, const N: usize> Ipdaf<G, N> {
    pub fn association_probabilities(&self, gate: &Gate<G, N>, validated: &[G]) -> AssociationResult<N> {
        let (p_d, p_g, lambda) = (self.params.p_d, self.params.p_g, self.params.lambda);
        let innovations: Vec<Tangent<N>> = validated.iter().map(|z| gate.innovation(z)).collect();
        let likelihoods: Vec<f64> = innovations
            .iter()
            .map(|nu| p_d / lambda * gate.innovation_density(nu))
            .collect();
        let miss = 1.0 - p_d * p_g;
        let denom = miss + likelihoods.iter().sum::<f64>();
        let mut betas = Vec::with_capacity(validated.len() + 1);
        betas.push(miss / denom);
        betas.extend(likelihoods.iter().map(|l| l / denom));
        AssociationResult {
            betas,
            likelihoods,
            innovations,
        }
    }

    /// `ε' = (1 − α) ε / (1 − α ε)`, clamped away from the absorbing states.
    pub fn track_likelihood_update(&self, eps: f64, assoc: &AssociationResult<N>) -> f64 {
        let alpha = assoc.alpha(self.params.p_d, self.params.p_g);
        clamp_eps((1.0 - alpha) * eps / (1.0 - alpha * eps))
    }
}

/// Poisson probability mass `e^{-μ} μᵏ / k!`.
pub fn poisson_pmf(k: usize, mean: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * mean.ln() - mean - ln_gamma(k as f64 + 1.0)).exp()
}

/// Prior probabilities of the association events given `m` validated
/// measurements, before looking at where they fall, when the number of false
/// measurements in the gate is Poisson with mean `expected_false`:
///
/// `p(θ_j | m) ∝ P_D P_G μ_F(m − 1) / m` for `j ≥ 1` and
/// `p(θ₀ | m) ∝ (1 − P_D P_G) μ_F(m)`.
pub fn event_priors(m: usize, expected_false: f64, p_d: f64, p_g: f64) -> Vec<f64> {
    if m == 0 {
        return vec![1.0];
    }
    let hit = p_d * p_g * poisson_pmf(m - 1, expected_false);
    let miss = (1.0 - p_d * p_g) * poisson_pmf(m, expected_false);
    let total = hit + miss;
    let mut out = vec![miss / total];
    out.extend(std::iter::repeat_n(hit / (m as f64 * total), m));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::FilterParams;
    use crate::lie::{Rn, Se2};
    use crate::motion::{lti_cv, se2_cv};
    use crate::track::Track;
    use nalgebra::{DMatrix, Vector2, Vector3};

    fn se2_filter(params: FilterParams) -> Ipdaf<Se2, 3> {
        Ipdaf::new(se2_cv(), params).unwrap()
    }

    fn se2_track(eps: f64) -> Track<Se2, 3> {
        Track::new(
            crate::lie::State::new(Se2::new(0.2, 3.0, 4.0), Vector3::new(10.0, 0.0, 1.0)),
            DMatrix::identity(6, 6),
            eps,
        )
    }

    #[test]
    fn empty_scan_gives_certain_miss() {
        let f = se2_filter(FilterParams::default());
        let t = se2_track(0.5);
        let gate = f.make_gate(&t).unwrap();
        let a = f.association_probabilities(&gate, &[]);
        assert_eq!(a.betas, vec![1.0]);
    }

    #[test]
    fn undetectable_target_gives_certain_miss() {
        let f = se2_filter(FilterParams {
            p_d: 0.0,
            ..FilterParams::default()
        });
        let t = se2_track(0.5);
        let gate = f.make_gate(&t).unwrap();
        let zs = [gate.z_hat, gate.z_hat.oplus(&Vector3::new(0.1, 0.2, 0.0))];
        let a = f.association_probabilities(&gate, &zs);
        assert_eq!(a.betas, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn even_split_when_likelihood_matches_miss_mass() {
        // Place one measurement on the planar gate axis so that
        // L₁ = 1 − P_D P_G exactly: solve N(ν; 0, S) = (1 − P_D P_G) λ / P_D.
        let params = FilterParams::default();
        let f = Ipdaf::new(lti_cv(), params).unwrap();
        let t = Track::new(
            crate::lie::State::new(Rn::<2>::from_slice(&[0.0, 0.0]), Vector2::zeros()),
            DMatrix::identity(4, 4),
            0.5,
        );
        let gate = f.make_gate(&t).unwrap();
        let target = (1.0 - params.p_d * params.p_g) * params.lambda / params.p_d;
        let peak = gate.innovation_density(&Vector2::zeros());
        let d = -2.0 * (target / peak).ln();
        let sxx = gate.s[(0, 0)];
        let z = Rn::new(Vector2::new((d * sxx).sqrt(), 0.0));
        let a = f.association_probabilities(&gate, &[z]);
        assert!((a.likelihoods[0] - target * params.p_d / params.lambda).abs() < 1e-12);
        assert!((a.betas[0] - 0.5).abs() < 1e-12);
        assert!((a.betas[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn likelihood_update_examples() {
        let f = se2_filter(FilterParams::default());
        let none = AssociationResult::<3> {
            betas: vec![1.0],
            likelihoods: vec![],
            innovations: vec![],
        };
        let e = f.track_likelihood_update(0.5, &none);
        assert!((e - 0.19 * 0.5 / 0.595).abs() < 1e-12);
        assert!((e - 0.159664).abs() < 1e-6);
        assert!((f.track_likelihood_update(1.0, &none) - 1.0).abs() <= 1e-12);

        // α = 0 leaves ε alone.
        let balanced = AssociationResult::<3> {
            betas: vec![0.5, 0.5],
            likelihoods: vec![0.81],
            innovations: vec![Vector3::zeros()],
        };
        assert_eq!(f.track_likelihood_update(0.37, &balanced), 0.37);
    }

    #[test]
    fn event_priors_sum_to_one() {
        for m in 0..12 {
            for mu in [0.0, 0.3, 1.0, 4.0, 20.0] {
                if mu == 0.0 && m > 1 {
                    continue;
                }
                let p = event_priors(m, mu, 0.9, 0.9);
                assert_eq!(p.len(), m + 1);
                assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn poisson_pmf_values() {
        assert!((poisson_pmf(0, 2.0) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((poisson_pmf(3, 2.0) - 8.0 / 6.0 * (-2.0f64).exp()).abs() < 1e-15);
        let total: f64 = (0..100).map(|k| poisson_pmf(k, 7.5)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
