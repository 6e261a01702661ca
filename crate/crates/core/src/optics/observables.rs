use crate::fock::TwoModeState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// `<(-1)^{n̂}>` on one mode, over the retained amplitudes. The true value
/// differs by at most the state's tail mass.
pub fn parity_expectation(s: &TwoModeState, mode: Mode) -> f64 {
    s.iter()
        .map(|(n, m, c)| {
            let k = match mode {
                Mode::A => n,
                Mode::B => m,
            };
            if k % 2 == 0 {
                c.norm_sqr()
            } else {
                -c.norm_sqr()
            }
        })
        .sum()
}

/// Diagonal Schwinger moments `<J3>`, `<J3²>`, `<J0>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JMoments {
    pub j3: f64,
    pub j3_sq: f64,
    pub j0: f64,
}

impl JMoments {
    /// `Δ²J3 = <J3²> - <J3>²`.
    pub fn j3_variance(&self) -> f64 {
        self.j3_sq - self.j3 * self.j3
    }
}

pub fn j_moments(s: &TwoModeState) -> JMoments {
    let mut j = JMoments {
        j3: 0.0,
        j3_sq: 0.0,
        j0: 0.0,
    };
    for (n, m, c) in s.iter() {
        let p = c.norm_sqr();
        let diff = 0.5 * (n as f64 - m as f64);
        j.j3 += diff * p;
        j.j3_sq += diff * diff * p;
        j.j0 += 0.5 * (n + m) as f64 * p;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_fock, ModeCutoff};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell(c: ModeCutoff) -> TwoModeState {
        make_fock(1, 0, c)
            .unwrap()
            .add(&make_fock(0, 1, c).unwrap().scale(Complex64::new(0.0, 1.0)))
            .unwrap()
            .scale(Complex64::new(FRAC_1_SQRT_2, 0.0))
    }

    #[test]
    fn parity_of_basis_states() {
        let c = ModeCutoff::new(2).unwrap();
        assert_eq!(
            parity_expectation(&make_fock(0, 0, c).unwrap(), Mode::B),
            1.0
        );
        assert_eq!(
            parity_expectation(&make_fock(0, 1, c).unwrap(), Mode::B),
            -1.0
        );
        assert_eq!(
            parity_expectation(&make_fock(0, 1, c).unwrap(), Mode::A),
            1.0
        );
        assert!(parity_expectation(&bell(c), Mode::B).abs() < 1e-15);
    }

    #[test]
    fn moments_of_single_photon_states() {
        let c = ModeCutoff::new(2).unwrap();
        let j = j_moments(&make_fock(1, 0, c).unwrap());
        assert_eq!((j.j3, j.j3_sq, j.j0), (0.5, 0.25, 0.5));
        let j = j_moments(&bell(c));
        assert!(j.j3.abs() < 1e-16);
        assert!((j.j3_sq - 0.25).abs() < 1e-15);
        assert!((j.j0 - 0.5).abs() < 1e-15);
        assert!((j.j3_variance() - 0.25).abs() < 1e-15);
    }
}
