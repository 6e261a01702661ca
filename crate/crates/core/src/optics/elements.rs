use num_complex::Complex64;

use crate::fock::TwoModeState;

/// `exp(i φ_a a†a + i φ_b b†b)`. Only `φ_a - φ_b` is observable after the
/// second beam splitter.
pub fn phase_shift(s: &TwoModeState, phi_a: f64, phi_b: f64) -> TwoModeState {
    let d = s.cutoff().dim();
    let pa: Vec<Complex64> = (0..d)
        .map(|n| Complex64::from_polar(1.0, phi_a * n as f64))
        .collect();
    let pb: Vec<Complex64> = (0..d)
        .map(|m| Complex64::from_polar(1.0, phi_b * m as f64))
        .collect();
    let mut out = s.clone();
    for (i, c) in out.amps_mut().iter_mut().enumerate() {
        *c *= pa[i / d] * pb[i % d];
    }
    out
}

/// Phase shift parameterized by the differential phase `phi = φ_a - φ_b`,
/// split symmetrically so that `U = exp(i phi J3)`.
pub fn differential_phase_shift(s: &TwoModeState, phi: f64) -> TwoModeState {
    phase_shift(s, 0.5 * phi, -0.5 * phi)
}

/// `exp(iπ J2)`: `|n>_a |m>_b -> (-1)^n |m>_a |n>_b`.
pub fn mode_swap_with_sign(s: &TwoModeState) -> TwoModeState {
    TwoModeState::from_fn(s.cutoff(), |n, m| {
        let c = s.amp(m, n);
        if m % 2 == 0 {
            c
        } else {
            -c
        }
    })
}
