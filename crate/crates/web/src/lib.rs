//! WebAssembly entry points for the demo page in `www/`.
//!
//! Every export returns a flat `Float64Array` of row-major records so the page
//! can plot without any glue. The plain Rust functions in [`demo`] do the work
//! and are what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo {
    use bellamp::estimation::run_experiment;
    use bellamp::metrology::{
        grid, r_from_nbar, sensitivity_row, signal_bruteforce_sweep, signal_closed, ProbeSpec,
        DEFAULT_EPSILON_TAIL,
    };

    /// Largest mean photon number simulated in the browser.
    pub const BRUTEFORCE_CEILING: f64 = 20.0;
    pub const MAX_STEPS: usize = 4096;

    fn check_nbar(nbar: f64) -> Result<f64, String> {
        r_from_nbar(nbar).map_err(|e| e.to_string())
    }

    /// Rows `(phi, closed)` or `(phi, closed, brute_force)`.
    pub fn signal_curve(
        nbar: f64,
        phi_min: f64,
        phi_max: f64,
        steps: usize,
        bruteforce: bool,
    ) -> Result<Vec<f64>, String> {
        let r = check_nbar(nbar)?;
        if !(phi_min.is_finite() && phi_max > phi_min && phi_max.is_finite()) {
            return Err("phi range must be finite and increasing".into());
        }
        if !(2..=MAX_STEPS).contains(&steps) {
            return Err(format!("steps must be in 2..={MAX_STEPS}"));
        }
        if bruteforce && nbar > BRUTEFORCE_CEILING {
            return Err(format!(
                "brute force is limited to nbar <= {BRUTEFORCE_CEILING} in the browser"
            ));
        }
        let phis = grid(phi_min, phi_max, steps, false);
        let brute = if bruteforce {
            let spec = ProbeSpec::new(r, DEFAULT_EPSILON_TAIL).map_err(|e| e.to_string())?;
            Some(signal_bruteforce_sweep(&spec, &phis))
        } else {
            None
        };
        let mut out = Vec::with_capacity(phis.len() * 3);
        for (i, &phi) in phis.iter().enumerate() {
            out.push(phi);
            out.push(signal_closed(r, phi));
            if let Some(b) = &brute {
                out.push(b[i].value);
            }
        }
        Ok(out)
    }

    /// Rows `(nbar, crb, parity, shot_noise, heisenberg)` on a log grid.
    pub fn sensitivity_curve(
        nbar_min: f64,
        nbar_max: f64,
        points: usize,
    ) -> Result<Vec<f64>, String> {
        check_nbar(nbar_min)?;
        if !(nbar_max > nbar_min && nbar_max.is_finite()) || !(2..=MAX_STEPS).contains(&points) {
            return Err("need nbar_max > nbar_min and 2 or more points".into());
        }
        let mut out = Vec::with_capacity(points * 5);
        for nbar in grid(nbar_min, nbar_max, points, true) {
            let row = sensitivity_row(nbar).map_err(|e| e.to_string())?;
            out.extend([
                row.nbar,
                row.crb,
                row.parity_delta_phi,
                row.shot_noise,
                row.heisenberg,
            ]);
        }
        Ok(out)
    }

    /// `[empirical_rmse, predicted_rmse, ratio, clamped, estimates...]`.
    pub fn estimate(
        nbar: f64,
        phi: f64,
        shots: u32,
        trials: u32,
        seed: u32,
    ) -> Result<Vec<f64>, String> {
        let r = check_nbar(nbar)?;
        let run = run_experiment(r, phi, shots as u64, trials as usize, seed as u64)
            .map_err(|e| e.to_string())?;
        let mut out = vec![
            run.empirical_rmse,
            run.predicted_rmse,
            run.ratio(),
            run.clamped as f64,
        ];
        out.extend(&run.estimates);
        Ok(out)
    }
}

#[wasm_bindgen(js_name = signalCurve)]
pub fn signal_curve(
    nbar: f64,
    phi_min: f64,
    phi_max: f64,
    steps: usize,
    bruteforce: bool,
) -> Result<Vec<f64>, JsError> {
    demo::signal_curve(nbar, phi_min, phi_max, steps, bruteforce).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sensitivityCurve)]
pub fn sensitivity_curve(nbar_min: f64, nbar_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    demo::sensitivity_curve(nbar_min, nbar_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn estimate(
    nbar: f64,
    phi: f64,
    shots: u32,
    trials: u32,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    demo::estimate(nbar, phi, shots, trials, seed).map_err(|e| JsError::new(&e))
}
