use bellamp::estimation::{branch_half_width, run_experiment};
use bellamp::metrology::{
    grid, nbar_closed, r_from_nbar, sensitivity_row, signal_bruteforce_sweep, signal_closed,
    MetrologyReport, ProbeSpec,
};
use bellamp::verify::{Level, Verifier};

use crate::output::{num, Sink};
use crate::{Cli, CliError, Command, SignalMode, Squeezing, VerifyLevel};

type CmdResult = Result<(), CliError>;

pub fn run(cli: Cli) -> CmdResult {
    let Cli {
        epsilon_tail,
        output,
        allow_long,
        command,
    } = cli;
    let sink = || Sink::open(output.as_deref());
    match command {
        Command::SignalSweep {
            squeezing,
            phi_min,
            phi_max,
            steps,
            mode,
            bruteforce_ceiling,
        } => {
            let r = resolve_r(squeezing)?;
            if !(phi_min.is_finite() && phi_max.is_finite() && phi_max > phi_min) {
                return Err(usage(format!(
                    "phase range [{phi_min}, {phi_max}] must be finite with phi-max > phi-min"
                )));
            }
            if steps < 2 {
                return Err(usage(format!("--steps must be at least 2, got {steps}")));
            }
            let nbar = nbar_closed(r);
            if mode != SignalMode::Closed && nbar > bruteforce_ceiling && !allow_long {
                return Err(usage(format!(
                    "brute force at nbar = {nbar} exceeds the ceiling nbar <= {bruteforce_ceiling}; \
                     pass --allow-long to run it anyway"
                )));
            }
            signal_sweep(
                sink()?,
                r,
                nbar,
                phi_min,
                phi_max,
                steps,
                mode,
                epsilon_tail,
            )
        }
        Command::SensitivityCurve {
            nbar_min,
            nbar_max,
            points,
            linear,
        } => {
            if !(nbar_min >= 1.0 && nbar_max.is_finite()) {
                return Err(usage(format!("--nbar-min must be >= 1, got {nbar_min}")));
            }
            if nbar_max <= nbar_min || points < 2 {
                return Err(usage(format!(
                    "need nbar-max > nbar-min and at least 2 points (got {nbar_min}..{nbar_max}, {points} points)"
                )));
            }
            sensitivity_curve(sink()?, nbar_min, nbar_max, points, !linear)
        }
        Command::Verify { level } => {
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
                VerifyLevel::Long => Level::Long,
            };
            let report = Verifier::new(level).with_epsilon_tail(epsilon_tail).run()?;
            let mut out = sink()?;
            out.write_text(&format!("{report}\n"))?;
            out.finish()?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "verification failed in: {}",
                    report.failing_groups().join(", ")
                )))
            }
        }
        Command::Estimate {
            squeezing,
            phi,
            shots,
            trials,
            seed,
        } => {
            let r = resolve_r(squeezing)?;
            estimate(sink()?, r, phi, shots, trials, seed)
        }
        Command::ProbeInfo { squeezing } => {
            let r = resolve_r(squeezing)?;
            let report = MetrologyReport::compute(&ProbeSpec::new(r, epsilon_tail)?)?;
            let mut out = sink()?;
            out.write_text(&probe_text(&report))?;
            out.finish()?;
            Ok(())
        }
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn resolve_r(s: Squeezing) -> Result<f64, CliError> {
    match (s.r, s.nbar) {
        (Some(r), None) if r >= 0.0 && r.is_finite() => Ok(r),
        (Some(r), None) => Err(usage(format!("--r must be finite and >= 0, got {r}"))),
        (None, Some(nbar)) => r_from_nbar(nbar)
            .map_err(|_| usage(format!("--nbar must be finite and >= 1, got {nbar}"))),
        _ => Err(usage("give exactly one of --r and --nbar".into())),
    }
}

#[allow(clippy::too_many_arguments)]
fn signal_sweep(
    mut out: Sink,
    r: f64,
    nbar: f64,
    phi_min: f64,
    phi_max: f64,
    steps: usize,
    mode: SignalMode,
    epsilon_tail: f64,
) -> CmdResult {
    let phis = grid(phi_min, phi_max, steps, false);
    let closed: Vec<f64> = phis.iter().map(|&p| signal_closed(r, p)).collect();
    let brute = if mode == SignalMode::Closed {
        None
    } else {
        let spec = ProbeSpec::new(r, epsilon_tail)?;
        Some((spec.cutoff().n_max(), signal_bruteforce_sweep(&spec, &phis)))
    };

    out.comment(&format!("signal sweep r={} nbar={}", num(r), num(nbar)))?;
    out.comment("phi in radians; signals are dimensionless parity expectations in [-1, 1]")?;
    if let Some((n_max, _)) = &brute {
        out.comment(&format!(
            "brute force cutoff n_max={n_max} epsilon_tail={}",
            num(epsilon_tail)
        ))?;
    }
    let mut max_diff: f64 = 0.0;
    {
        let mut w = out.csv();
        match mode {
            SignalMode::Closed => w.write_record(["phi", "signal_closed"])?,
            SignalMode::Bruteforce => w.write_record(["phi", "signal_bruteforce"])?,
            SignalMode::Both => {
                w.write_record(["phi", "signal_closed", "signal_bruteforce", "abs_diff"])?
            }
        }
        for (i, &phi) in phis.iter().enumerate() {
            let b = brute.as_ref().map(|(_, pts)| pts[i].value);
            match (mode, b) {
                (SignalMode::Closed, _) => w.write_record([num(phi), num(closed[i])])?,
                (SignalMode::Bruteforce, Some(b)) => w.write_record([num(phi), num(b)])?,
                (SignalMode::Both, Some(b)) => {
                    let d = (closed[i] - b).abs();
                    max_diff = max_diff.max(d);
                    w.write_record([num(phi), num(closed[i]), num(b), num(d)])?
                }
                _ => unreachable!("brute force computed for non-closed modes"),
            }
        }
        w.flush()?;
    }
    if mode == SignalMode::Both {
        out.summary(&format!("max_abs_diff={}", num(max_diff)))?;
    }
    out.finish()?;
    Ok(())
}

fn sensitivity_curve(mut out: Sink, min: f64, max: f64, points: usize, log: bool) -> CmdResult {
    out.comment(&format!(
        "sensitivity curve nbar in [{}, {}], {points} points, {} spacing",
        num(min),
        num(max),
        if log { "log" } else { "linear" }
    ))?;
    out.comment("nbar in photons; all other columns are phase uncertainties in radians")?;
    {
        let mut w = out.csv();
        w.write_record([
            "nbar",
            "crb",
            "parity_delta_phi",
            "shot_noise",
            "heisenberg",
        ])?;
        for nbar in grid(min, max, points, log) {
            let row = sensitivity_row(nbar)?;
            w.write_record([
                num(row.nbar),
                num(row.crb),
                num(row.parity_delta_phi),
                num(row.shot_noise),
                num(row.heisenberg),
            ])?;
        }
        w.flush()?;
    }
    out.finish()?;
    Ok(())
}

fn estimate(mut out: Sink, r: f64, phi: f64, shots: u64, trials: usize, seed: u64) -> CmdResult {
    if !phi.is_finite() {
        return Err(usage(format!("--phi must be finite, got {phi}")));
    }
    let w = branch_half_width(r);
    if phi.abs() >= w {
        return Err(usage(format!(
            "phi = {phi} lies outside the invertible branch (-{w}, {w}) for r = {r}"
        )));
    }
    let run = run_experiment(r, phi, shots, trials, seed)?;

    out.comment(&format!(
        "estimate r={} nbar={} phi_true={} shots={shots} trials={trials} seed={seed}",
        num(r),
        num(nbar_closed(r)),
        num(phi)
    ))?;
    out.comment("estimates and errors in radians")?;
    out.comment(
        "predicted_rmse is the single-shot sensitivity at phi_true divided by sqrt(shots)",
    )?;
    out.summary(&format!("empirical_rmse={}", num(run.empirical_rmse)))?;
    out.summary(&format!("predicted_rmse={}", num(run.predicted_rmse)))?;
    out.summary(&format!("ratio={}", num(run.ratio())))?;
    out.summary(&format!("clamped_trials={}", run.clamped))?;
    if run.rmse_degenerate {
        out.summary("warning: a single trial; the RMSE is one absolute deviation")?;
    }
    if run.low_shot_count {
        out.summary("warning: few shots per trial; the linear error model may not hold")?;
    }
    {
        let mut csv = out.csv();
        csv.write_record(["trial", "estimate", "error"])?;
        for (t, e) in run.estimates.iter().enumerate() {
            csv.write_record([t.to_string(), num(*e), num(e - phi)])?;
        }
        csv.flush()?;
    }
    out.finish()?;
    Ok(())
}

fn probe_text(r: &MetrologyReport) -> String {
    let rows: [(&str, String); 14] = [
        ("r", num(r.r)),
        ("nbar_closed", num(r.nbar)),
        ("nbar_numeric", num(r.nbar_numeric)),
        ("cutoff_n_max", r.cutoff.n_max().to_string()),
        ("epsilon_tail", num(r.epsilon_tail)),
        ("tail_mass", num(r.tail_mass)),
        ("qfi_variance", num(r.qfi)),
        ("qfi_finite_difference", num(r.qfi_finite_difference)),
        ("qfi_closed", num(r.qfi_closed)),
        ("crb_delta_phi", num(r.crb_delta_phi)),
        ("slope_at_origin", num(r.slope_at_origin)),
        ("delta_phi_parity", num(r.delta_phi_parity)),
        ("shot_noise", num(r.shot_noise)),
        ("units", "phases and uncertainties in radians".to_string()),
    ];
    rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}
