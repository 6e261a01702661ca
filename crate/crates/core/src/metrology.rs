//! Probe preparation and phase-sensitivity figures of merit, each in closed
//! form and, where the physics allows, by brute-force state evolution.
//!
//! The probe is the single-photon path-entangled state
//! `(|1,0> + i|0,1>)/√2` with both modes squeezed at strength `r`:
//!
//! ```text
//! |Ψ> = (|Φ1>|Φ0> + i|Φ0>|Φ1>)/√2,      n̄ = 1 + 4 sinh²r
//! ```
//!
//! # Phase convention
//!
//! The parity signal `S(r, φ)` is defined with an extra quarter-wave offset:
//! the brute-force pipeline applies a differential phase of `φ + π/2`
//! before the second beam splitter and reads the parity of mode b. With that
//! offset the single-photon signal is `sin φ` and the steep, super-resolving
//! region sits at `φ = kπ`. Every `phi` argument in this module is on that
//! shifted axis.
//!
//! # Error propagation
//!
//! Parity is an involution (`Π² = 1`), so `Δ²Π = 1 - <Π>²` and
//! `Δφ = sqrt(1 - S²) / |∂S/∂φ|`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::fock::{inner, make_fock, product_state, ModeCutoff, TailMass, TwoModeState};
use crate::optics::{
    j_moments, parity_expectation, phase_shift, squeeze_each_mode, squeezed_one_photon,
    squeezed_vacuum, BeamSplitter, Mode, SqueezeParams,
};

pub const DEFAULT_EPSILON_TAIL: f64 = 1e-10;
pub const MAX_EPSILON_TAIL: f64 = 1e-4;

/// Initial cutoff and growth factor of the adaptive cutoff search.
pub const INITIAL_CUTOFF: usize = 8;
pub const CUTOFF_GROWTH: f64 = 1.5;
/// Largest cutoff the adaptive search will try (a grid of ~4M amplitudes).
pub const MAX_CUTOFF: usize = 2048;

/// Slopes below this make error propagation meaningless.
pub const DEGENERATE_SLOPE: f64 = 1e-12;

/// Squeezing for both probe modes plus the resolved truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSpec {
    squeeze_a: SqueezeParams,
    squeeze_b: SqueezeParams,
    epsilon_tail: f64,
    cutoff: ModeCutoff,
}

impl ProbeSpec {
    /// Equal real squeezing `r` on both modes, with the cutoff chosen
    /// adaptively for `epsilon_tail`.
    pub fn new(r: f64, epsilon_tail: f64) -> Result<Self> {
        let p = SqueezeParams::real(r)?;
        Self::with_squeezing(p, p, epsilon_tail)
    }

    /// Independent squeezing per mode.
    ///
    /// The cutoff grows geometrically from [`INITIAL_CUTOFF`] until the
    /// probe weight outside the triangle `n + m <= n_max` drops below
    /// `epsilon_tail`. That bound is stricter than the plain tail mass: it
    /// also caps what the beam splitter can lose from sectors the grid only
    /// holds partially.
    pub fn with_squeezing(
        squeeze_a: SqueezeParams,
        squeeze_b: SqueezeParams,
        epsilon_tail: f64,
    ) -> Result<Self> {
        if !(epsilon_tail > 0.0 && epsilon_tail <= MAX_EPSILON_TAIL) {
            return Err(domain("epsilon_tail", epsilon_tail, "in (0, 1e-4]"));
        }
        let mut n_max = INITIAL_CUTOFF;
        loop {
            let spec = Self {
                squeeze_a,
                squeeze_b,
                epsilon_tail,
                cutoff: ModeCutoff::new(n_max)?,
            };
            let tail = spec.prepare().open_sector_mass();
            if tail < epsilon_tail {
                return Ok(spec);
            }
            if n_max >= MAX_CUTOFF {
                return Err(Error::CutoffExhausted {
                    tail,
                    epsilon: epsilon_tail,
                    n_max,
                });
            }
            n_max = ((n_max as f64 * CUTOFF_GROWTH).ceil() as usize).min(MAX_CUTOFF);
        }
    }

    pub fn squeeze_a(&self) -> SqueezeParams {
        self.squeeze_a
    }

    pub fn squeeze_b(&self) -> SqueezeParams {
        self.squeeze_b
    }

    /// Squeezing strength of mode a; equal to mode b for symmetric probes.
    pub fn r(&self) -> f64 {
        self.squeeze_a.r()
    }

    pub fn epsilon_tail(&self) -> f64 {
        self.epsilon_tail
    }

    pub fn cutoff(&self) -> ModeCutoff {
        self.cutoff
    }

    /// `(|Φ1>|Φ0> + i|Φ0>|Φ1>)/√2` from the tabulated squeezed states.
    pub fn prepare(&self) -> TwoModeState {
        let c = self.cutoff;
        let one_a = squeezed_one_photon(&self.squeeze_a, c);
        let vac_a = squeezed_vacuum(&self.squeeze_a, c);
        let one_b = squeezed_one_photon(&self.squeeze_b, c);
        let vac_b = squeezed_vacuum(&self.squeeze_b, c);
        let left = product_state(&one_a, &vac_b).expect("shared cutoff");
        let right = product_state(&vac_a, &one_b).expect("shared cutoff");
        left.add(&right.scale(Complex64::new(0.0, 1.0)))
            .expect("shared cutoff")
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
    }

    /// Same state built the long way: the first beam splitter acting on
    /// `|1,0>`, then each mode squeezed.
    pub fn prepare_via_beam_splitter(&self, bs: &BeamSplitter) -> Result<TwoModeState> {
        let bell = bs.apply(&make_fock(1, 0, self.cutoff)?);
        squeeze_each_mode(&bell, &self.squeeze_a, &self.squeeze_b)
    }
}

/// Probe for squeezing `r` on both modes.
pub fn prepare_probe(spec: &ProbeSpec) -> TwoModeState {
    spec.prepare()
}

pub fn nbar_closed(r: f64) -> f64 {
    let s = r.sinh();
    1.0 + 4.0 * s * s
}

pub fn r_from_nbar(nbar: f64) -> Result<f64> {
    if !(nbar >= 1.0 && nbar.is_finite()) {
        return Err(domain("nbar", nbar, "finite and >= 1"));
    }
    Ok(((nbar - 1.0) / 4.0).sqrt().asinh())
}

/// Quantum Fisher information for a differential phase, `4 Δ²J3`.
pub fn qfi_variance(probe: &TwoModeState) -> f64 {
    4.0 * j_moments(probe).j3_variance()
}

/// QFI from its definition `F = 4(<Ψ'|Ψ'> - |<Ψ'|Ψ>|²)` at `φ = 0`, with
/// `|Ψ'>` a central difference of step `h`.
pub fn qfi_finite_difference(probe: &TwoModeState, h: f64) -> Result<f64> {
    qfi_finite_difference_at(probe, 0.0, h)
}

pub fn qfi_finite_difference_at(probe: &TwoModeState, phi: f64, h: f64) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(domain("h", h, "in [1e-6, 1e-2]"));
    }
    let shifted = |p: f64| phase_shift(probe, 0.5 * p, -0.5 * p);
    let centre = shifted(phi);
    let plus = shifted(phi + 0.5 * h);
    let minus = shifted(phi - 0.5 * h);
    let deriv = plus
        .add(&minus.scale(Complex64::new(-1.0, 0.0)))?
        .scale(Complex64::new(1.0 / h, 0.0));
    let dd = inner(&deriv, &deriv)?.re;
    let dc = inner(&deriv, &centre)?.norm_sqr();
    Ok(4.0 * (dd - dc))
}

/// `(3n̄² + 6n̄ - 5)/4`, the probe's QFI as a function of `n̄`.
pub fn qfi_closed(nbar: f64) -> Result<f64> {
    check_nbar(nbar)?;
    Ok((3.0 * nbar * nbar + 6.0 * nbar - 5.0) / 4.0)
}

/// Cramér–Rao bound on `Δφ`: `2 / sqrt(3n̄² + 6n̄ - 5)`.
pub fn crb_closed(nbar: f64) -> Result<f64> {
    Ok(1.0 / qfi_closed(nbar)?.sqrt())
}

/// Parity signal `S(r, φ)`.
///
/// Written as `sin φ cosh 2r / (1 + sinh²2r sin²φ)^{3/2}`, which equals
/// `sin φ cosh 2r sech⁶r / (1 - 2 cos 2φ tanh²r + tanh⁴r)^{3/2}` but stays
/// finite for large `r`.
pub fn signal_closed(r: f64, phi: f64) -> f64 {
    let s = phi.sin();
    let b = (2.0 * r).sinh();
    s * (2.0 * r).cosh() / (1.0 + b * b * s * s).powf(1.5)
}

/// `∂S/∂φ = cosh 2r cos φ (1 - 2 sinh²2r sin²φ) / (1 + sinh²2r sin²φ)^{5/2}`.
pub fn signal_slope_closed(r: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let b2 = (2.0 * r).sinh().powi(2);
    let q = b2 * s * s;
    (2.0 * r).cosh() * c * (1.0 - 2.0 * q) / (1.0 + q).powf(2.5)
}

/// `(n̄ + 1)/2 = cosh 2r`.
pub fn slope_at_origin_closed(r: f64) -> f64 {
    0.5 * (nbar_closed(r) + 1.0)
}

/// First-order expansion of `S` around `φ = kπ`. The slope alternates in
/// sign between even and odd `k` because `S(r, φ + π) = -S(r, φ)`.
pub fn linear_approx(r: f64, phi: f64, k: i64) -> f64 {
    let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * slope_at_origin_closed(r) * (phi - k as f64 * PI)
}

/// `sqrt(1 - S²)/|∂S/∂φ|` at any phase on the shifted axis.
pub fn delta_phi_parity(r: f64, phi: f64) -> Result<f64> {
    let slope = signal_slope_closed(r, phi);
    if slope.abs() < DEGENERATE_SLOPE {
        return Err(Error::DegeneratePoint { phi, slope });
    }
    let s = signal_closed(r, phi);
    Ok((1.0 - s * s).max(0.0).sqrt() / slope.abs())
}

/// `2/(n̄ + 1)`, the parity sensitivity at the optimal points `φ = kπ`.
pub fn delta_phi_parity_closed(nbar: f64) -> Result<f64> {
    check_nbar(nbar)?;
    Ok(2.0 / (nbar + 1.0))
}

pub fn shot_noise_limit(nbar: f64) -> Result<f64> {
    if !(nbar > 0.0 && nbar.is_finite()) {
        return Err(domain("nbar", nbar, "finite and > 0"));
    }
    Ok(1.0 / nbar.sqrt())
}

pub fn heisenberg_limit(n: f64) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(domain("n", n, "finite and > 0"));
    }
    Ok(1.0 / n)
}

fn check_nbar(nbar: f64) -> Result<()> {
    if nbar >= 1.0 && nbar.is_finite() {
        Ok(())
    } else {
        Err(domain("nbar", nbar, "finite and >= 1"))
    }
}

/// One brute-force evaluation of the parity signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalPoint {
    pub phi: f64,
    pub value: f64,
    /// Norm deficit of the state just before detection.
    pub tail_mass: f64,
}

/// Probe, differential phase `φ + π/2`, beam splitter, parity of mode b.
pub fn signal_bruteforce(spec: &ProbeSpec, phi: f64) -> SignalPoint {
    signal_bruteforce_with(spec, &BeamSplitter::balanced(), &[phi], 0.0)
        .expect("one cutoff")
        .pop()
        .expect("one point")
}

/// Brute-force signal on many phases, sharing the probe and the sector
/// matrices. `sum_phase` is `φ_a + φ_b`, which must not affect the result.
pub fn signal_bruteforce_with(
    spec: &ProbeSpec,
    bs: &BeamSplitter,
    phis: &[f64],
    sum_phase: f64,
) -> Result<Vec<SignalPoint>> {
    let probe = spec.prepare();
    let shifted: Vec<TwoModeState> = phis
        .iter()
        .map(|&phi| {
            let diff = phi + FRAC_PI_2;
            phase_shift(&probe, 0.5 * (sum_phase + diff), 0.5 * (sum_phase - diff))
        })
        .collect();
    let finals = bs.apply_many(&shifted)?;
    Ok(phis
        .iter()
        .zip(&finals)
        .map(|(&phi, f)| SignalPoint {
            phi,
            value: parity_expectation(f, Mode::B),
            tail_mass: f.tail_mass(),
        })
        .collect())
}

pub fn signal_bruteforce_sweep(spec: &ProbeSpec, phis: &[f64]) -> Vec<SignalPoint> {
    signal_bruteforce_with(spec, &BeamSplitter::balanced(), phis, 0.0).expect("one cutoff")
}

/// Figures of merit for one probe.
#[derive(Debug, Clone, PartialEq)]
pub struct MetrologyReport {
    pub r: f64,
    pub cutoff: ModeCutoff,
    pub epsilon_tail: f64,
    pub tail_mass: f64,
    pub nbar: f64,
    pub nbar_numeric: f64,
    pub qfi: f64,
    pub qfi_finite_difference: f64,
    pub qfi_closed: f64,
    /// `1/sqrt(qfi)`.
    pub crb_delta_phi: f64,
    pub slope_at_origin: f64,
    pub delta_phi_parity: f64,
    pub shot_noise: f64,
}

/// Step used for the finite-difference QFI in reports.
pub const REPORT_FD_STEP: f64 = 1e-4;

impl MetrologyReport {
    pub fn compute(spec: &ProbeSpec) -> Result<Self> {
        let r = spec.r();
        let probe = spec.prepare();
        let nbar = nbar_closed(r);
        let qfi = qfi_variance(&probe);
        Ok(Self {
            r,
            cutoff: spec.cutoff(),
            epsilon_tail: spec.epsilon_tail(),
            tail_mass: probe.tail_mass(),
            nbar,
            nbar_numeric: probe.mean_photon_number(),
            qfi,
            qfi_finite_difference: qfi_finite_difference(&probe, REPORT_FD_STEP)?,
            qfi_closed: qfi_closed(nbar)?,
            crb_delta_phi: 1.0 / qfi.sqrt(),
            slope_at_origin: slope_at_origin_closed(r),
            delta_phi_parity: delta_phi_parity(r, 0.0)?,
            shot_noise: shot_noise_limit(nbar)?,
        })
    }
}

/// One row of the sensitivity-versus-`n̄` comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityRow {
    pub nbar: f64,
    pub crb: f64,
    pub parity_delta_phi: f64,
    pub shot_noise: f64,
    pub heisenberg: f64,
}

pub fn sensitivity_row(nbar: f64) -> Result<SensitivityRow> {
    Ok(SensitivityRow {
        nbar,
        crb: crb_closed(nbar)?,
        parity_delta_phi: delta_phi_parity_closed(nbar)?,
        shot_noise: shot_noise_limit(nbar)?,
        heisenberg: heisenberg_limit(nbar)?,
    })
}

/// `points` values from `min` to `max` inclusive, log- or linearly spaced.
pub fn grid(min: f64, max: f64, points: usize, log: bool) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|i| {
                    let t = i as f64 / last;
                    if i + 1 == points {
                        max
                    } else if log {
                        (min.ln() + t * (max.ln() - min.ln())).exp()
                    } else {
                        min + t * (max - min)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// The signal exactly as printed, in terms of tanh and sech.
    fn signal_literal(r: f64, phi: f64) -> f64 {
        let t2 = r.tanh().powi(2);
        let sech = 1.0 / r.cosh();
        phi.sin() * (2.0 * r).cosh() * sech.powi(6)
            / (1.0 - 2.0 * (2.0 * phi).cos() * t2 + t2 * t2).powf(1.5)
    }

    #[test]
    fn nbar_and_inverse() {
        assert_eq!(nbar_closed(0.0), 1.0);
        assert_relative_eq!(nbar_closed(1f64.asinh()), 5.0, max_relative = 1e-15);
        assert_eq!(r_from_nbar(1.0).unwrap(), 0.0);
        assert_relative_eq!(
            r_from_nbar(5.0).unwrap(),
            1f64.asinh(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            nbar_closed(r_from_nbar(60.0).unwrap()),
            60.0,
            max_relative = 1e-12
        );
        assert!(matches!(r_from_nbar(0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn crb_values() {
        assert_eq!(crb_closed(1.0).unwrap(), 1.0);
        assert_relative_eq!(
            crb_closed(60.0).unwrap(),
            2.0 / 11155f64.sqrt(),
            max_relative = 1e-15
        );
        assert!(crb_closed(0.9).is_err());
    }

    #[test]
    fn rewritten_signal_matches_printed_form() {
        for &r in &[0.0, 0.1, 0.5, 1.0, 1.5, 2.0] {
            for i in 0..50 {
                let phi = -3.0 + 0.12 * i as f64;
                let a = signal_closed(r, phi);
                let b = signal_literal(r, phi);
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "r={r} phi={phi}");
            }
        }
    }

    #[test]
    fn signal_reduces_to_sine_without_squeezing() {
        for i in 0..20 {
            let phi = 0.3 * i as f64 - 3.0;
            assert_eq!(signal_closed(0.0, phi), phi.sin());
        }
        assert_eq!(signal_closed(1.3, 0.0), 0.0);
    }

    #[test]
    fn analytic_slope_matches_central_difference() {
        let h = 1e-6;
        for &r in &[0.0, 0.3, 0.9, 1.4] {
            for &phi in &[0.0, 0.05, 0.4, 1.2, -2.0] {
                let fd = (signal_closed(r, phi + h) - signal_closed(r, phi - h)) / (2.0 * h);
                let an = signal_slope_closed(r, phi);
                assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "r={r} phi={phi}");
            }
        }
    }

    #[test]
    fn slope_and_linear_approximation() {
        assert_eq!(slope_at_origin_closed(0.0), 1.0);
        let r60 = r_from_nbar(60.0).unwrap();
        assert_relative_eq!(slope_at_origin_closed(r60), 30.5, max_relative = 1e-12);
        assert_relative_eq!(signal_slope_closed(r60, 0.0), 30.5, max_relative = 1e-12);
        let r = 0.7;
        for k in -2..=2 {
            let phi = k as f64 * PI + 1e-4;
            let lin = linear_approx(r, phi, k);
            assert!((signal_closed(r, phi) - lin).abs() < 1e-9, "k={k}");
        }
    }

    #[test]
    fn parity_sensitivity() {
        assert_eq!(delta_phi_parity_closed(1.0).unwrap(), 1.0);
        assert_eq!(delta_phi_parity_closed(60.0).unwrap(), 2.0 / 61.0);
        let r = 0.8;
        assert_relative_eq!(
            delta_phi_parity(r, 0.0).unwrap(),
            delta_phi_parity_closed(nbar_closed(r)).unwrap(),
            max_relative = 1e-12
        );
        // peak of sin φ at r = 0
        assert!(matches!(
            delta_phi_parity(0.0, FRAC_PI_2),
            Err(Error::DegeneratePoint { .. })
        ));
    }

    #[test]
    fn degenerate_at_signal_extremum() {
        let r: f64 = 0.5;
        let b = (2.0 * r).sinh();
        let peak = (1.0 / (2f64.sqrt() * b)).asin();
        assert!(matches!(
            delta_phi_parity(r, peak),
            Err(Error::DegeneratePoint { .. })
        ));
        // π/2 is the symmetric turning point between the two peaks
        assert!(delta_phi_parity(r, FRAC_PI_2).is_err());
    }

    #[test]
    fn baselines() {
        assert_eq!(shot_noise_limit(1.0).unwrap(), 1.0);
        assert_eq!(shot_noise_limit(100.0).unwrap(), 0.1);
        assert_eq!(heisenberg_limit(4.0).unwrap(), 0.25);
        assert!(shot_noise_limit(0.0).is_err());
        assert!(heisenberg_limit(-1.0).is_err());
    }

    #[test]
    fn grids() {
        let g = grid(1.0, 1e4, 5, true);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], 1e4);
        assert_relative_eq!(g[2], 100.0, max_relative = 1e-12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grid(0.0, 1.0, 3, false), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn probe_spec_rejects_bad_tolerance() {
        assert!(ProbeSpec::new(0.5, 0.0).is_err());
        assert!(ProbeSpec::new(0.5, 1e-3).is_err());
        assert!(ProbeSpec::new(-0.5, 1e-10).is_err());
    }

    #[test]
    fn adaptive_cutoff_meets_tolerance() {
        for &r in &[0.0, 0.5, 1.0] {
            let spec = ProbeSpec::new(r, 1e-10).unwrap();
            let probe = spec.prepare();
            assert!(probe.tail_mass() < 1e-10);
            assert!(probe.open_sector_mass() < 1e-10);
        }
        assert_eq!(
            ProbeSpec::new(0.0, 1e-10).unwrap().cutoff().n_max(),
            INITIAL_CUTOFF
        );
    }

    #[test]
    fn adaptive_cutoff_gives_up_eventually() {
        let err = ProbeSpec::new(4.0, 1e-10).unwrap_err();
        assert!(matches!(
            err,
            Error::CutoffExhausted {
                n_max: MAX_CUTOFF,
                ..
            }
        ));
    }

    #[test]
    fn report_is_consistent() {
        let spec = ProbeSpec::new(0.6, 1e-10).unwrap();
        let rep = MetrologyReport::compute(&spec).unwrap();
        assert!(rep.crb_delta_phi <= rep.delta_phi_parity);
        assert!(rep.nbar >= 1.0);
        assert_relative_eq!(rep.nbar, rep.nbar_numeric, max_relative = 1e-8);
        assert_relative_eq!(rep.qfi, rep.qfi_closed, max_relative = 1e-7);
    }
}
