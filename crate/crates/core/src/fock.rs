//! Truncated Fock-space states for one and two optical modes.
//!
//! Amplitudes are stored densely. Truncation is never hidden: the squared
//! norm of a state built from an infinite series falls short of one by the
//! probability weight above the cutoff, and [`TailMass::tail_mass`] reports
//! that deficit. Nothing in this crate renormalizes a truncated state.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the squared norm exceeding one.
pub const NORM_SLACK: f64 = 1e-12;

/// Largest photon number kept per mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeCutoff(usize);

impl ModeCutoff {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidCutoff(n_max));
        }
        Ok(Self(n_max))
    }

    #[inline]
    pub fn n_max(self) -> usize {
        self.0
    }

    /// Number of amplitudes per mode.
    #[inline]
    pub fn dim(self) -> usize {
        self.0 + 1
    }

    fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::CutoffViolation {
                requested: n,
                n_max: self.0,
            })
        } else {
            Ok(())
        }
    }

    fn same_as(self, other: Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl std::fmt::Display for ModeCutoff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Anything carrying a squared norm that may fall short of one through
/// truncation.
pub trait TailMass {
    fn squared_norm(&self) -> f64;

    /// `1 - squared_norm`, clamped at zero.
    fn tail_mass(&self) -> f64 {
        (1.0 - self.squared_norm()).max(0.0)
    }
}

/// Amplitudes `c_n` for photon numbers `0..=n_max` of a single mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    cutoff: ModeCutoff,
    amps: Vec<Complex64>,
}

impl SingleModeState {
    pub fn from_amplitudes(cutoff: ModeCutoff, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != cutoff.dim() {
            return Err(Error::DimensionMismatch {
                left: cutoff.n_max(),
                right: amps.len().saturating_sub(1),
            });
        }
        Ok(Self { cutoff, amps })
    }

    pub fn fock(n: usize, cutoff: ModeCutoff) -> Result<Self> {
        cutoff.check(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); cutoff.dim()];
        amps[n] = Complex64::new(1.0, 0.0);
        Ok(Self { cutoff, amps })
    }

    #[inline]
    pub fn cutoff(&self) -> ModeCutoff {
        self.cutoff
    }

    #[inline]
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// `<n>` over the retained amplitudes.
    pub fn mean_photon_number(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }
}

impl TailMass for SingleModeState {
    fn squared_norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Amplitudes `c_{n,m}` with `n` photons in mode a and `m` in mode b,
/// both bounded by a shared cutoff. Storage is row-major in `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff: ModeCutoff,
    amps: Vec<Complex64>,
}

impl TwoModeState {
    pub fn zeros(cutoff: ModeCutoff) -> Self {
        Self {
            cutoff,
            amps: vec![Complex64::new(0.0, 0.0); cutoff.dim() * cutoff.dim()],
        }
    }

    pub fn from_amplitudes(cutoff: ModeCutoff, amps: Vec<Complex64>) -> Result<Self> {
        let d = cutoff.dim();
        if amps.len() != d * d {
            return Err(Error::DimensionMismatch {
                left: cutoff.n_max(),
                right: (amps.len() as f64).sqrt() as usize - 1,
            });
        }
        Ok(Self { cutoff, amps })
    }

    /// Build a state by evaluating `f(n, m)` on every grid point.
    pub fn from_fn(cutoff: ModeCutoff, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let d = cutoff.dim();
        let mut amps = Vec::with_capacity(d * d);
        for n in 0..d {
            for m in 0..d {
                amps.push(f(n, m));
            }
        }
        Self { cutoff, amps }
    }

    #[inline]
    pub fn cutoff(&self) -> ModeCutoff {
        self.cutoff
    }

    #[inline]
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    #[inline]
    pub(crate) fn index(&self, n: usize, m: usize) -> usize {
        n * self.cutoff.dim() + m
    }

    /// Amplitude of `|n, m>`; zero outside the grid.
    pub fn amp(&self, n: usize, m: usize) -> Complex64 {
        if n > self.cutoff.n_max() || m > self.cutoff.n_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.amps[self.index(n, m)]
        }
    }

    /// Iterate `(n, m, amplitude)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let d = self.cutoff.dim();
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i / d, i % d, c))
    }

    /// Mean total photon number `<a†a + b†b>` over the retained amplitudes.
    pub fn mean_photon_number(&self) -> f64 {
        self.iter()
            .map(|(n, m, c)| (n + m) as f64 * c.norm_sqr())
            .sum()
    }

    /// Weight outside the triangle `n + m <= n_max`, i.e. in total-photon
    /// sectors that the grid holds only partially.
    pub fn open_sector_mass(&self) -> f64 {
        let n_max = self.cutoff.n_max();
        let inside: f64 = self
            .iter()
            .filter(|&(n, m, _)| n + m <= n_max)
            .map(|(_, _, c)| c.norm_sqr())
            .sum();
        (1.0 - inside).max(0.0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            cutoff: self.cutoff,
            amps: self.amps.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.cutoff.same_as(other.cutoff)?;
        Ok(Self {
            cutoff: self.cutoff,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    /// Largest elementwise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.cutoff.same_as(other.cutoff)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

impl TailMass for TwoModeState {
    fn squared_norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Two-mode Fock state `|n, m>`.
pub fn make_fock(n: usize, m: usize, cutoff: ModeCutoff) -> Result<TwoModeState> {
    cutoff.check(n)?;
    cutoff.check(m)?;
    let mut s = TwoModeState::zeros(cutoff);
    let i = s.index(n, m);
    s.amps[i] = Complex64::new(1.0, 0.0);
    Ok(s)
}

/// Tensor product `|sa> ⊗ |sb>`.
pub fn product_state(sa: &SingleModeState, sb: &SingleModeState) -> Result<TwoModeState> {
    sa.cutoff.same_as(sb.cutoff)?;
    let mut amps = Vec::with_capacity(sa.amps.len() * sb.amps.len());
    for a in &sa.amps {
        for b in &sb.amps {
            amps.push(a * b);
        }
    }
    Ok(TwoModeState {
        cutoff: sa.cutoff,
        amps,
    })
}

/// `<x|y>`, conjugate-linear in the first argument.
pub fn inner(x: &TwoModeState, y: &TwoModeState) -> Result<Complex64> {
    x.cutoff.same_as(y.cutoff)?;
    Ok(x.amps.iter().zip(&y.amps).map(|(a, b)| a.conj() * b).sum())
}
