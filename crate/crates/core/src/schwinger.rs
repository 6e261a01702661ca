//! Dense Schwinger operators on a single total-photon sector.
//!
//! Sector `N` is spanned by `|k, N-k>` for `k = 0..=N`, indexed by the mode-a
//! occupancy `k`. These matrices and their exponentials are an independent
//! reference for the sector recurrences in [`crate::optics`]; they are used
//! by the verification suite and tests, not by the simulation pipeline.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type SectorMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone)]
pub struct SectorOperators {
    pub total: usize,
    pub j0: SectorMatrix,
    pub j1: SectorMatrix,
    pub j2: SectorMatrix,
    pub j3: SectorMatrix,
}

impl SectorOperators {
    pub fn new(total: usize) -> Self {
        let len = total + 1;
        // a†b |k, N-k> = sqrt((k+1)(N-k)) |k+1, N-k-1>
        let mut raise = SectorMatrix::zeros(len, len);
        for k in 0..total {
            raise[(k + 1, k)] = Complex64::new((((k + 1) * (total - k)) as f64).sqrt(), 0.0);
        }
        let lower = raise.adjoint();
        let half = Complex64::new(0.5, 0.0);
        let j1 = (&raise + &lower) * half;
        let j2 = (&raise - &lower) * Complex64::new(0.0, -0.5);
        let j3 = SectorMatrix::from_diagonal(&nalgebra::DVector::from_fn(len, |k, _| {
            Complex64::new(k as f64 - 0.5 * total as f64, 0.0)
        }));
        let j0 = SectorMatrix::identity(len, len) * Complex64::new(0.5 * total as f64, 0.0);
        Self {
            total,
            j0,
            j1,
            j2,
            j3,
        }
    }
}

/// `exp(i angle G)` for a Hermitian generator `G`.
pub fn exp_i(generator: &SectorMatrix, angle: f64) -> SectorMatrix {
    (generator * Complex64::new(0.0, angle)).exp()
}

/// `AB - BA`.
pub fn commutator(a: &SectorMatrix, b: &SectorMatrix) -> SectorMatrix {
    a * b - b * a
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &SectorMatrix, b: &SectorMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_photon_sector_is_pauli() {
        let ops = SectorOperators::new(1);
        // basis (|0,1>, |1,0>): J1 = σx/2, J3 = σz-like diag(-1/2, 1/2)
        assert_eq!(ops.j1[(0, 1)], Complex64::new(0.5, 0.0));
        assert_eq!(ops.j2[(1, 0)], Complex64::new(0.0, -0.5));
        assert_eq!(ops.j3[(1, 1)], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let ops = SectorOperators::new(3);
        let e = exp_i(&ops.j1, 0.0);
        assert!(max_abs_diff(&e, &SectorMatrix::identity(4, 4)) < 1e-15);
    }
}
