//! Monte Carlo phase estimation from sampled parity outcomes.
//!
//! Each shot yields `+1` with probability `(1 + S)/2`, where `S` is the
//! parity signal at the true phase. A trial averages its shots and inverts
//! the mean through the signal on the monotone branch around `φ = 0`.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`). Trial `t` of a
//! run with master seed `s` draws from `ChaCha8Rng::seed_from_u64(s)` with
//! its stream set to `t`, so trials are independent, reproducible on any
//! platform, and unaffected by how they are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::metrology::{delta_phi_parity, signal_closed};

/// Bisection stops once the bracket is this narrow.
pub const INVERSION_TOLERANCE: f64 = 1e-13;

/// Below this many shots per trial the linearized error model is suspect.
pub const MIN_LINEAR_SHOTS: u64 = 100;

/// `(p₊, p₋)` for a parity expectation `S`.
pub fn outcome_probabilities(s: f64) -> Result<(f64, f64)> {
    if s.is_nan() || s.abs() > 1.0 + 1e-12 {
        return Err(domain("S", s, "|S| <= 1"));
    }
    let s = s.clamp(-1.0, 1.0);
    Ok((0.5 * (1.0 + s), 0.5 * (1.0 - s)))
}

/// Half-width of the monotone branch `(-w, w)` around `φ = 0`: the first
/// maximum of `S(r, ·)`, at `sin φ = 1/(√2 sinh 2r)`, or `π/2` when that
/// exceeds one.
pub fn branch_half_width(r: f64) -> f64 {
    let x = 1.0 / (std::f64::consts::SQRT_2 * (2.0 * r).sinh());
    if x >= 1.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        x.asin()
    }
}

fn mean_parity<R: Rng>(p_plus: f64, shots: u64, rng: &mut R) -> f64 {
    let plus = (0..shots).filter(|_| rng.random::<f64>() < p_plus).count() as f64;
    (2.0 * plus - shots as f64) / shots as f64
}

/// Mean of `shots` sampled parity outcomes at phase `phi`.
pub fn sample_parities(r: f64, phi: f64, shots: u64, seed: u64) -> Result<f64> {
    if shots == 0 {
        return Err(domain("shots", 0.0, ">= 1"));
    }
    let (p_plus, _) = outcome_probabilities(signal_closed(r, phi))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(mean_parity(p_plus, shots, &mut rng))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub phi: f64,
    /// The input fell outside the branch's signal range and was clamped.
    pub clamped: bool,
}

/// Phase on the central branch whose signal equals `mean_parity`.
pub fn invert_estimate(mean_parity: f64, r: f64) -> Inversion {
    let w = branch_half_width(r);
    let (s_lo, s_hi) = (signal_closed(r, -w), signal_closed(r, w));
    if mean_parity <= s_lo {
        return Inversion {
            phi: -w,
            clamped: mean_parity < s_lo,
        };
    }
    if mean_parity >= s_hi {
        return Inversion {
            phi: w,
            clamped: mean_parity > s_hi,
        };
    }
    let (mut lo, mut hi) = (-w, w);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let s = signal_closed(r, mid);
        if s == mean_parity {
            return Inversion {
                phi: mid,
                clamped: false,
            };
        }
        if s < mean_parity {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= INVERSION_TOLERANCE {
            break;
        }
    }
    Inversion {
        phi: 0.5 * (lo + hi),
        clamped: false,
    }
}

/// One Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationRun {
    pub r: f64,
    pub phi_true: f64,
    pub shots_per_trial: u64,
    pub trials: usize,
    pub seed: u64,
    pub estimates: Vec<f64>,
    pub empirical_rmse: f64,
    /// `Δφ(r, φ_true)/sqrt(shots)`.
    pub predicted_rmse: f64,
    /// Trials whose mean parity fell outside the branch and was clamped.
    pub clamped: usize,
    /// Fewer than two trials; the RMSE is a single deviation.
    pub rmse_degenerate: bool,
    /// Fewer than [`MIN_LINEAR_SHOTS`] shots per trial.
    pub low_shot_count: bool,
}

impl EstimationRun {
    /// `empirical_rmse / predicted_rmse`.
    pub fn ratio(&self) -> f64 {
        self.empirical_rmse / self.predicted_rmse
    }
}

pub fn run_experiment(
    r: f64,
    phi_true: f64,
    shots: u64,
    trials: usize,
    seed: u64,
) -> Result<EstimationRun> {
    if shots == 0 {
        return Err(domain("shots", 0.0, ">= 1"));
    }
    if trials == 0 {
        return Err(domain("trials", 0.0, ">= 1"));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(domain("r", r, "finite and >= 0"));
    }
    let w = branch_half_width(r);
    if phi_true.is_nan() || phi_true.abs() >= w {
        return Err(Error::OutOfBranch {
            phi: phi_true,
            half_width: w,
        });
    }
    let predicted_rmse = delta_phi_parity(r, phi_true)? / (shots as f64).sqrt();
    let (p_plus, _) = outcome_probabilities(signal_closed(r, phi_true))?;

    let trial = |t: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        invert_estimate(mean_parity(p_plus, shots, &mut rng), r)
    };
    let inversions: Vec<Inversion> = run_trials(trials, trial);

    let estimates: Vec<f64> = inversions.iter().map(|i| i.phi).collect();
    let clamped = inversions.iter().filter(|i| i.clamped).count();
    let mse = estimates
        .iter()
        .map(|e| (e - phi_true).powi(2))
        .sum::<f64>()
        / trials as f64;
    Ok(EstimationRun {
        r,
        phi_true,
        shots_per_trial: shots,
        trials,
        seed,
        estimates,
        empirical_rmse: mse.sqrt(),
        predicted_rmse,
        clamped,
        rmse_degenerate: trials < 2,
        low_shot_count: shots < MIN_LINEAR_SHOTS,
    })
}

#[cfg(feature = "parallel")]
fn run_trials(trials: usize, f: impl Fn(usize) -> Inversion + Sync + Send) -> Vec<Inversion> {
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials(trials: usize, f: impl Fn(usize) -> Inversion) -> Vec<Inversion> {
    (0..trials).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn probabilities() {
        assert_eq!(outcome_probabilities(0.0).unwrap(), (0.5, 0.5));
        assert_eq!(outcome_probabilities(1.0).unwrap(), (1.0, 0.0));
        let (p, q) = outcome_probabilities(-0.6).unwrap();
        assert!((p - 0.2).abs() < 1e-15 && (q - 0.8).abs() < 1e-15);
        assert!(outcome_probabilities(1.0 + 1e-13).is_ok());
        assert!(outcome_probabilities(1.01).is_err());
    }

    #[test]
    fn certain_outcome_when_signal_is_one() {
        assert_eq!(sample_parities(0.0, FRAC_PI_2, 1000, 3).unwrap(), 1.0);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_parities(0.5, 0.2, 5000, 11).unwrap();
        let b = sample_parities(0.5, 0.2, 5000, 11).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert!(sample_parities(0.5, 0.2, 0, 1).is_err());
    }

    #[test]
    fn sample_mean_within_binomial_error() {
        let shots = 1_000_000;
        let s = signal_closed(0.5, 0.2);
        let se = ((1.0 - s * s) / shots as f64).sqrt();
        let mean = sample_parities(0.5, 0.2, shots, 42).unwrap();
        assert!((mean - s).abs() < 5.0 * se, "{mean} vs {s}");
    }

    #[test]
    fn branch_width_matches_signal_peak() {
        assert_eq!(branch_half_width(0.0), FRAC_PI_2);
        for &r in &[0.4, 0.8, 1.5, 3.0] {
            let w = branch_half_width(r);
            let slope = crate::metrology::signal_slope_closed(r, w);
            assert!(slope.abs() < 1e-9 * (2.0 * r).cosh(), "r={r}");
            // increasing just inside, decreasing just outside
            assert!(signal_closed(r, 0.99 * w) < signal_closed(r, w));
            assert!(signal_closed(r, 1.01 * w) < signal_closed(r, w));
        }
    }

    #[test]
    fn inversion_cases() {
        assert_eq!(invert_estimate(0.0, 0.7).phi, 0.0);
        assert!((invert_estimate(0.5, 0.0).phi - 0.5f64.asin()).abs() < 1e-12);
        let phi = invert_estimate(signal_closed(0.5, 0.17), 0.5);
        assert!((phi.phi - 0.17).abs() < 1e-10);
        assert!(!phi.clamped);
        let top = invert_estimate(0.99, 1.0);
        assert!(top.clamped);
        assert_eq!(top.phi, branch_half_width(1.0));
    }

    #[test]
    fn inversion_is_monotone() {
        let r = 0.9;
        let w = branch_half_width(r);
        let smax = signal_closed(r, w);
        let mut last = f64::NEG_INFINITY;
        for i in 0..=100 {
            let s = -smax + 2.0 * smax * i as f64 / 100.0;
            let phi = invert_estimate(s, r).phi;
            assert!(phi >= last);
            last = phi;
        }
    }

    #[test]
    fn experiment_rejects_bad_input() {
        assert!(matches!(
            run_experiment(1.0, 1.0, 100, 10, 1),
            Err(Error::OutOfBranch { .. })
        ));
        assert!(run_experiment(0.0, 0.0, 0, 10, 1).is_err());
        assert!(run_experiment(0.0, 0.0, 10, 0, 1).is_err());
    }

    #[test]
    fn single_trial_is_flagged() {
        let run = run_experiment(0.2, 0.0, 50, 1, 9).unwrap();
        assert_eq!(run.estimates.len(), 1);
        assert!(run.rmse_degenerate);
        assert!(run.low_shot_count);
        assert_eq!(run.empirical_rmse, (run.estimates[0] - 0.0).abs());
    }

    #[test]
    fn experiment_is_deterministic() {
        let a = run_experiment(0.6, 0.05, 2000, 40, 123).unwrap();
        let b = run_experiment(0.6, 0.05, 2000, 40, 123).unwrap();
        assert_eq!(a, b);
        let c = run_experiment(0.6, 0.05, 2000, 40, 124).unwrap();
        assert_ne!(a.estimates, c.estimates);
    }
}
