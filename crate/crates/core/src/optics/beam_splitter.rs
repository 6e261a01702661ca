//! The balanced beam splitter `B = exp[i(π/4)(a†b + b†a)]`.
//!
//! `B` conserves the total photon number `N = n + m`, so it acts as an
//! independent `(N+1)×(N+1)` rotation on each sector. Sector matrices are
//! generated one after another from the mode transformation
//!
//! ```text
//! B a† B† = u00 a† + u10 b†,    B b† B† = u01 a† + u11 b†,
//! ```
//!
//! averaged over both ways of removing one photon:
//!
//! ```text
//! B|n,m> = [sqrt(n) (u00 a† + u10 b†) B|n-1,m> + sqrt(m) (u01 a† + u11 b†) B|n,m-1>] / N
//! ```
//!
//! Either term alone is exact, but stepping along a single mode amplifies
//! rounding exponentially with `N` (unitarity is lost near `N ≈ 300`). The
//! weighted average is the symmetrizer applied to `B_{N-1} ⊗ u`, a
//! contraction, so errors stay at the level of rounding.
//!
//! A truncated grid holds sectors `N > n_max` only partially. Those are
//! rotated on the retained band and anything leaving the grid is dropped;
//! the loss shows up in the output's tail mass.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::TwoModeState;

type ModeMatrix = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    u: ModeMatrix,
}

impl Default for BeamSplitter {
    fn default() -> Self {
        Self::balanced()
    }
}

impl BeamSplitter {
    /// The 50:50 splitter `exp[i(π/4)(a†b + b†a)]`, sending
    /// `|1,0> -> (|1,0> + i|0,1>)/√2`.
    pub fn balanced() -> Self {
        let t = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let s = Complex64::new(0.0, FRAC_1_SQRT_2);
        Self {
            u: [[t, s], [s, t]],
        }
    }

    /// Splitter defined by an arbitrary single-photon unitary `u`, where
    /// column `j` is the image of the creation operator of mode `j`.
    /// Used to build deliberately mis-phased fixtures.
    #[doc(hidden)]
    pub fn from_mode_matrix(u: ModeMatrix) -> Self {
        Self { u }
    }

    pub fn apply(&self, s: &TwoModeState) -> TwoModeState {
        self.apply_many(std::slice::from_ref(s))
            .expect("single state")
            .pop()
            .expect("one output")
    }

    /// Apply to several states sharing a cutoff, generating each sector
    /// matrix once.
    pub fn apply_many(&self, states: &[TwoModeState]) -> Result<Vec<TwoModeState>> {
        let Some(first) = states.first() else {
            return Ok(Vec::new());
        };
        let cutoff = first.cutoff();
        if let Some(bad) = states.iter().find(|s| s.cutoff() != cutoff) {
            return Err(Error::DimensionMismatch {
                left: cutoff.n_max(),
                right: bad.cutoff().n_max(),
            });
        }
        let n_max = cutoff.n_max();
        let mut outputs: Vec<TwoModeState> =
            states.iter().map(|_| TwoModeState::zeros(cutoff)).collect();
        let mut sectors = SectorRecursion::new(self.u, n_max);
        for total in 0..=2 * n_max {
            if total > 0 {
                sectors.advance();
            }
            apply_sector(&sectors, states, &mut outputs);
        }
        Ok(outputs)
    }

    /// Full `(N+1)×(N+1)` matrix of sector `N`, indexed by the mode-a
    /// occupancy of the output (row) and input (column).
    pub fn sector_matrix(&self, total: usize) -> Vec<Vec<Complex64>> {
        let mut sectors = SectorRecursion::new(self.u, total.max(1));
        for _ in 0..total {
            sectors.advance();
        }
        let len = total + 1;
        (0..len)
            .map(|k| (0..len).map(|n| sectors.get(k, n)).collect())
            .collect()
    }
}

/// `beam_splitter(s)` with the balanced convention.
pub fn beam_splitter(s: &TwoModeState) -> TwoModeState {
    BeamSplitter::balanced().apply(s)
}

/// Banded sector matrix of the current total photon number, stored
/// column-major over the retained occupancies `lo..=hi`.
struct SectorRecursion {
    u: ModeMatrix,
    n_max: usize,
    total: usize,
    lo: usize,
    len: usize,
    cols: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl SectorRecursion {
    fn new(u: ModeMatrix, n_max: usize) -> Self {
        Self {
            u,
            n_max,
            total: 0,
            lo: 0,
            len: 1,
            cols: vec![Complex64::new(1.0, 0.0)],
            scratch: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> Complex64 {
        if row < self.lo || col < self.lo || row >= self.lo + self.len || col >= self.lo + self.len
        {
            return ZERO;
        }
        self.cols[(col - self.lo) * self.len + (row - self.lo)]
    }

    fn advance(&mut self) {
        let total = self.total + 1;
        let lo = total.saturating_sub(self.n_max);
        let hi = total.min(self.n_max);
        let len = hi - lo + 1;
        let (prev_lo, prev_len) = (self.lo, self.len);
        let prev = &self.cols;
        let prev_at = |row: usize, col: usize| -> Complex64 {
            if row < prev_lo || row >= prev_lo + prev_len {
                ZERO
            } else {
                prev[(col - prev_lo) * prev_len + (row - prev_lo)]
            }
        };

        let out = &mut self.scratch;
        out.clear();
        out.resize(len * len, ZERO);
        let inv_total = 1.0 / total as f64;
        let [[a_a, a_b], [b_a, b_b]] = self.u;
        for n in lo..=hi {
            let m = total - n;
            let col = &mut out[(n - lo) * len..(n - lo + 1) * len];
            // sqrt(n)/N (u00 a† + u10 b†) B|n-1,m>  +  sqrt(m)/N (u01 a† + u11 b†) B|n,m-1>
            let routes = [
                (n > 0).then(|| (n - 1, a_a, b_a, n)),
                (m > 0).then_some((n, a_b, b_b, m)),
            ];
            for (src, ca, cb, occ) in routes.into_iter().flatten() {
                let w = (occ as f64).sqrt() * inv_total;
                let (ca, cb) = (ca * w, cb * w);
                for k in lo..=hi {
                    // a† lifts row k-1 of the previous sector, b† keeps row k
                    let mut acc = ZERO;
                    if k > 0 {
                        acc += ca * (k as f64).sqrt() * prev_at(k - 1, src);
                    }
                    if k < total {
                        acc += cb * ((total - k) as f64).sqrt() * prev_at(k, src);
                    }
                    col[k - lo] += acc;
                }
            }
        }
        std::mem::swap(&mut self.cols, &mut self.scratch);
        self.total = total;
        self.lo = lo;
        self.len = len;
    }
}

fn rotate_sector(sectors: &SectorRecursion, input: &TwoModeState, output: &mut TwoModeState) {
    let (total, lo, len) = (sectors.total, sectors.lo, sectors.len);
    let d = input.cutoff().dim();
    let src = input.amps();
    let dst = output.amps_mut();
    for (j, col) in sectors.cols.chunks_exact(len).enumerate() {
        let n = lo + j;
        let x = src[n * d + (total - n)];
        if x == ZERO {
            continue;
        }
        for (i, u) in col.iter().enumerate() {
            let k = lo + i;
            dst[k * d + (total - k)] += u * x;
        }
    }
}

#[cfg(feature = "parallel")]
fn apply_sector(sectors: &SectorRecursion, inputs: &[TwoModeState], outputs: &mut [TwoModeState]) {
    use rayon::prelude::*;
    if inputs.len() > 1 && sectors.len >= 32 {
        outputs
            .par_iter_mut()
            .zip(inputs.par_iter())
            .for_each(|(o, i)| rotate_sector(sectors, i, o));
    } else {
        for (o, i) in outputs.iter_mut().zip(inputs) {
            rotate_sector(sectors, i, o);
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn apply_sector(sectors: &SectorRecursion, inputs: &[TwoModeState], outputs: &mut [TwoModeState]) {
    for (o, i) in outputs.iter_mut().zip(inputs) {
        rotate_sector(sectors, i, o);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock, ModeCutoff, TailMass};

    fn cut(n: usize) -> ModeCutoff {
        ModeCutoff::new(n).unwrap()
    }

    #[test]
    fn single_photon_becomes_bell_state() {
        let out = beam_splitter(&make_fock(1, 0, cut(4)).unwrap());
        let h = FRAC_1_SQRT_2;
        assert!((out.amp(1, 0) - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((out.amp(0, 1) - Complex64::new(0.0, h)).norm() < 1e-15);
        assert!((out.squared_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_is_invariant() {
        let vac = make_fock(0, 0, cut(3)).unwrap();
        assert_eq!(beam_splitter(&vac), vac);
    }

    #[test]
    fn two_photons_bunch() {
        let out = beam_splitter(&make_fock(1, 1, cut(4)).unwrap());
        let h = FRAC_1_SQRT_2;
        assert!((out.amp(2, 0) - Complex64::new(0.0, h)).norm() < 1e-15);
        assert!((out.amp(0, 2) - Complex64::new(0.0, h)).norm() < 1e-15);
        assert!(out.amp(1, 1).norm() < 1e-15);
    }

    #[test]
    fn sector_matrices_are_unitary_for_large_sectors() {
        let bs = BeamSplitter::balanced();
        for total in [1, 7, 64, 301, 600] {
            let u = bs.sector_matrix(total);
            let len = total + 1;
            let mut worst: f64 = 0.0;
            for a in 0..len {
                for b in 0..len {
                    let dot: Complex64 = (0..len).map(|k| u[k][a].conj() * u[k][b]).sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    worst = worst.max((dot - want).norm());
                }
            }
            assert!(worst < 1e-11, "sector {total}: {worst:e}");
        }
    }

    #[test]
    fn banded_sectors_match_full_matrices() {
        let bs = BeamSplitter::balanced();
        let n_max = 5;
        let c = cut(n_max);
        for total in n_max + 1..=2 * n_max {
            let full = bs.sector_matrix(total);
            let band = total - n_max..=n_max;
            for n in band.clone() {
                let out = bs.apply(&make_fock(n, total - n, c).unwrap());
                for (k, row) in full.iter().enumerate().filter(|(k, _)| band.contains(k)) {
                    assert!((out.amp(k, total - k) - row[n]).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn apply_many_matches_apply() {
        let c = cut(6);
        let states: Vec<_> = (0..4).map(|i| make_fock(i, 6 - i, c).unwrap()).collect();
        let bs = BeamSplitter::balanced();
        let many = bs.apply_many(&states).unwrap();
        for (s, o) in states.iter().zip(&many) {
            assert_eq!(&bs.apply(s), o);
        }
        let mixed = vec![
            make_fock(0, 0, c).unwrap(),
            make_fock(0, 0, cut(2)).unwrap(),
        ];
        assert!(bs.apply_many(&mixed).is_err());
    }
}
