//! Single-mode squeezing of the vacuum and of one photon, from explicit
//! photon-number coefficients.
//!
//! For `S(r, θ) = exp[(r/2)(e^{-iθ} c² - e^{iθ} c†²)]`:
//!
//! ```text
//! S|0> = Σ_n C_n |2n>,           C_n = sqrt(sech r) sqrt((2n)!) (-e^{iθ} tanh r)^n / (2^n n!)
//! S|1> = sech r Σ_m sqrt(2m+1) C_m |2m+1>
//! ```
//!
//! Magnitudes come from the ratio `|C_{n+1}| / |C_n| = tanh r sqrt(2n+1) / sqrt(2n+2)`,
//! accumulated in the log domain once `r` exceeds [`LOG_DOMAIN_THRESHOLD`].

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::fock::{ModeCutoff, SingleModeState, TwoModeState};

pub const LOG_DOMAIN_THRESHOLD: f64 = 3.0;

/// Squeezing strength `r >= 0` and phase `theta ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(domain("r", r, "finite and >= 0"));
        }
        if !theta.is_finite() {
            return Err(domain("theta", theta, "finite"));
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Ok(Self { r, theta })
    }

    /// Real squeezing (`theta = 0`).
    pub fn real(r: f64) -> Result<Self> {
        Self::new(r, 0.0)
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.r
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ln sech r`, finite for any `r`.
    fn ln_sech(&self) -> f64 {
        let r = self.r;
        -r + std::f64::consts::LN_2 - (-2.0 * r).exp().ln_1p()
    }

    /// Phase of the n-th coefficient, `(-e^{iθ})^n`.
    fn phase(&self, n: usize) -> Complex64 {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        if self.theta == 0.0 {
            Complex64::new(sign, 0.0)
        } else {
            Complex64::from_polar(sign, self.theta * n as f64)
        }
    }
}

/// `|C_n|` for `n = 0..count`, optionally scaled by `sech r sqrt(2n+1)`.
fn magnitudes(p: &SqueezeParams, count: usize, odd: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let ratio = |n: usize| {
        let n = n as f64;
        if odd {
            // sqrt(2n+1) C_n -> sqrt(2n+3) C_{n+1}
            (2.0 * n + 3.0) / (2.0 * n + 2.0)
        } else {
            (2.0 * n + 1.0) / (2.0 * n + 2.0)
        }
    };
    let prefactor_power = if odd { 1.5 } else { 0.5 };
    if p.r <= LOG_DOMAIN_THRESHOLD {
        let t = p.r.tanh();
        let mut mag = (prefactor_power * p.ln_sech()).exp();
        out.push(mag);
        for n in 0..count - 1 {
            mag *= t * ratio(n).sqrt();
            out.push(mag);
        }
    } else {
        let ln_t = p.r.tanh().ln();
        let mut ln_mag = prefactor_power * p.ln_sech();
        out.push(ln_mag.exp());
        for n in 0..count - 1 {
            ln_mag += ln_t + 0.5 * ratio(n).ln();
            out.push(ln_mag.exp());
        }
    }
    out
}

/// `S(r, θ)|0>` truncated at `cutoff`; only even photon numbers are populated.
pub fn squeezed_vacuum(p: &SqueezeParams, cutoff: ModeCutoff) -> SingleModeState {
    let count = cutoff.n_max() / 2 + 1;
    let mut amps = vec![Complex64::new(0.0, 0.0); cutoff.dim()];
    for (n, mag) in magnitudes(p, count, false).into_iter().enumerate() {
        amps[2 * n] = p.phase(n) * mag;
    }
    SingleModeState::from_amplitudes(cutoff, amps).expect("grid sized from cutoff")
}

/// `S(r, θ)|1>` truncated at `cutoff`; only odd photon numbers are populated.
pub fn squeezed_one_photon(p: &SqueezeParams, cutoff: ModeCutoff) -> SingleModeState {
    let count = cutoff.n_max().div_ceil(2);
    let mut amps = vec![Complex64::new(0.0, 0.0); cutoff.dim()];
    for (m, mag) in magnitudes(p, count, true).into_iter().enumerate() {
        amps[2 * m + 1] = p.phase(m) * mag;
    }
    SingleModeState::from_amplitudes(cutoff, amps).expect("grid sized from cutoff")
}

/// Apply `S_a ⊗ S_b` to a two-mode state whose support has at most one
/// photon per mode.
pub fn squeeze_each_mode(
    s: &TwoModeState,
    pa: &SqueezeParams,
    pb: &SqueezeParams,
) -> Result<TwoModeState> {
    let cutoff = s.cutoff();
    let images = |p: &SqueezeParams| [squeezed_vacuum(p, cutoff), squeezed_one_photon(p, cutoff)];
    let (ia, ib) = (images(pa), images(pb));
    let mut out = TwoModeState::zeros(cutoff);
    for (n, m, c) in s.iter() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        if n > 1 || m > 1 {
            return Err(Error::Unsupported(
                "squeezing is tabulated only for inputs with at most one photon per mode",
            ));
        }
        let (fa, fb) = (ia[n].amps(), ib[m].amps());
        let d = cutoff.dim();
        let dst = out.amps_mut();
        for (i, x) in fa.iter().enumerate() {
            if x.norm_sqr() == 0.0 {
                continue;
            }
            let cx = c * x;
            for (j, y) in fb.iter().enumerate() {
                dst[i * d + j] += cx * y;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::TailMass;

    fn cut(n: usize) -> ModeCutoff {
        ModeCutoff::new(n).unwrap()
    }

    /// Direct evaluation of the coefficient formula with factorials.
    fn c_direct(r: f64, n: usize) -> f64 {
        let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
        (1.0 / r.cosh()).sqrt() * fact(2 * n).sqrt() * (-r.tanh()).powi(n as i32)
            / (2f64.powi(n as i32) * fact(n))
    }

    #[test]
    fn params_validate_and_normalize() {
        assert!(SqueezeParams::new(-0.1, 0.0).is_err());
        assert!(SqueezeParams::new(f64::NAN, 0.0).is_err());
        let p = SqueezeParams::new(0.3, -0.5).unwrap();
        assert!((p.theta() - (TAU - 0.5)).abs() < 1e-15);
        assert!(SqueezeParams::new(0.3, 3.0 * TAU).unwrap().theta() < 1e-12);
    }

    #[test]
    fn zero_squeezing_is_identity() {
        let p = SqueezeParams::real(0.0).unwrap();
        let v = squeezed_vacuum(&p, cut(6));
        let o = squeezed_one_photon(&p, cut(6));
        for n in 0..7 {
            assert_eq!(v.amps()[n].re, if n == 0 { 1.0 } else { 0.0 });
            assert_eq!(o.amps()[n].re, if n == 1 { 1.0 } else { 0.0 });
        }
        assert_eq!(v.tail_mass(), 0.0);
    }

    #[test]
    fn vacuum_amplitude_matches_sech() {
        let p = SqueezeParams::real(0.5).unwrap();
        let v = squeezed_vacuum(&p, cut(8));
        assert!((v.amps()[0].norm_sqr() - 1.0 / 0.5f64.cosh()).abs() < 1e-12);
    }

    #[test]
    fn recurrence_matches_factorial_formula() {
        let p = SqueezeParams::real(0.9).unwrap();
        let v = squeezed_vacuum(&p, cut(40));
        let o = squeezed_one_photon(&p, cut(41));
        for n in 0..=20 {
            let c = c_direct(0.9, n);
            assert!((v.amps()[2 * n].re - c).abs() < 1e-14, "n = {n}");
            let d = c * (2.0 * n as f64 + 1.0).sqrt() / 0.9f64.cosh();
            assert!((o.amps()[2 * n + 1].re - d).abs() < 1e-14, "m = {n}");
            if 2 * n + 1 < v.amps().len() {
                assert_eq!(v.amps()[2 * n + 1].norm_sqr(), 0.0);
            }
            assert_eq!(o.amps()[2 * n].norm_sqr(), 0.0);
        }
    }

    #[test]
    fn log_domain_branch_is_continuous() {
        // same magnitudes on either side of the switch
        let lo = SqueezeParams::real(LOG_DOMAIN_THRESHOLD).unwrap();
        let hi = SqueezeParams::real(LOG_DOMAIN_THRESHOLD + 1e-12).unwrap();
        let a = squeezed_vacuum(&lo, cut(200));
        let b = squeezed_vacuum(&hi, cut(200));
        let diff = a
            .amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10);
    }

    #[test]
    fn strong_squeezing_stays_finite() {
        let p = SqueezeParams::real(8.0).unwrap();
        let v = squeezed_vacuum(&p, cut(2000));
        assert!(v
            .amps()
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite()));
        assert!(v.squared_norm() > 0.0 && v.squared_norm() <= 1.0);
    }

    #[test]
    fn squeezing_phase_rotates_coefficients() {
        let theta = 0.7;
        let p = SqueezeParams::new(0.6, theta).unwrap();
        let q = SqueezeParams::real(0.6).unwrap();
        let v = squeezed_vacuum(&p, cut(12));
        let w = squeezed_vacuum(&q, cut(12));
        for n in 0..=6 {
            let want = w.amps()[2 * n] * Complex64::from_polar(1.0, theta * n as f64);
            assert!((v.amps()[2 * n] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn squeeze_each_mode_rejects_multi_photon_inputs() {
        let p = SqueezeParams::real(0.2).unwrap();
        let s = crate::fock::make_fock(2, 0, cut(4)).unwrap();
        assert!(squeeze_each_mode(&s, &p, &p).is_err());
    }

    #[test]
    fn squeeze_each_mode_on_product_input() {
        let pa = SqueezeParams::real(0.4).unwrap();
        let pb = SqueezeParams::real(0.1).unwrap();
        let c = cut(10);
        let s = crate::fock::make_fock(1, 0, c).unwrap();
        let got = squeeze_each_mode(&s, &pa, &pb).unwrap();
        let want =
            crate::fock::product_state(&squeezed_one_photon(&pa, c), &squeezed_vacuum(&pb, c))
                .unwrap();
        assert!(got.max_abs_diff(&want).unwrap() < 1e-16);
    }
}
