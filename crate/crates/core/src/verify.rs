//! Invariant suite: every closed form against its brute-force counterpart,
//! the Schwinger algebra against dense matrix exponentials, and the unitary
//! elements against norm conservation.
//!
//! Checks are grouped; a group passes when all of its checks do. Reports
//! contain measured errors only, never timings, so two runs print identical
//! bytes.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::estimation::{branch_half_width, invert_estimate};
use crate::fock::{make_fock, ModeCutoff, TailMass, TwoModeState};
use crate::metrology::{
    crb_closed, delta_phi_parity_closed, grid, nbar_closed, qfi_closed, qfi_finite_difference,
    qfi_variance, r_from_nbar, shot_noise_limit, signal_bruteforce_with, signal_closed,
    slope_at_origin_closed, ProbeSpec, DEFAULT_EPSILON_TAIL,
};
use crate::optics::{
    differential_phase_shift, j_moments, mode_swap_with_sign, parity_expectation, phase_shift,
    squeezed_one_photon, squeezed_vacuum, BeamSplitter, Mode, SqueezeParams,
};
use crate::schwinger::{commutator, exp_i, max_abs_diff, SectorMatrix, SectorOperators};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// `r <= 0.5`, sectors up to 6.
    Fast,
    /// `r <= 1.5`, sectors up to 10 (algebra) and 20 (beam-splitter oracle).
    Full,
    /// `Full` plus brute force at `n̄ = 60`.
    Long,
}

impl Level {
    fn algebra_sectors(self) -> usize {
        match self {
            Level::Fast => 6,
            _ => 10,
        }
    }

    fn oracle_sectors(self) -> usize {
        match self {
            Level::Fast => 6,
            _ => 20,
        }
    }

    fn squeezings(self) -> Vec<f64> {
        match self {
            Level::Fast => vec![0.0, 0.25, 0.5],
            _ => vec![0.0, 0.25, 0.5, 1.0, 1.5],
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
            Level::Long => "long",
        })
    }
}

/// Tolerances, one per kind of comparison.
pub mod tol {
    pub const BELL_STATE: f64 = 1e-12;
    pub const SECTOR_ORACLE: f64 = 1e-10;
    pub const COMMUTATOR: f64 = 1e-12;
    pub const CONJUGATION: f64 = 1e-10;
    pub const NORM_RELATIVE: f64 = 1e-12;
    pub const SQUEEZER_N0: f64 = 1e-12;
    pub const SQUEEZER_MEAN: f64 = 1e-8;
    pub const PROBE_ROUTES: f64 = 1e-10;
    pub const NBAR_RELATIVE: f64 = 1e-8;
    pub const J3_VARIANCE_RELATIVE: f64 = 1e-8;
    pub const QFI_CLOSED_RELATIVE: f64 = 1e-6;
    pub const QFI_FD_RELATIVE: f64 = 1e-4;
    pub const SINGLE_PHOTON_SIGNAL: f64 = 1e-10;
    pub const SIGNAL: f64 = 1e-7;
    pub const SUM_PHASE: f64 = 1e-12;
    pub const SLOPE_RELATIVE: f64 = 1e-6;
    pub const SYMMETRY: f64 = 1e-13;
    pub const INVERSION: f64 = 1e-10;
}

/// Phase points for closed-versus-brute-force comparisons.
pub const SIGNAL_POINTS: usize = 64;
/// Fewer points at `n̄ = 60`, where each beam-splitter pass is expensive.
pub const LONG_SIGNAL_POINTS: usize = 16;
pub const FD_STEP: f64 = 1e-4;
pub const SLOPE_STEP: f64 = 1e-5;

/// `SIGNAL_POINTS` phases evenly spaced on `[-π, π)`.
pub fn phase_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| -PI + 2.0 * PI * i as f64 / points as f64)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    /// Worst error observed, or a violation margin for ordering checks.
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{} measured={:.3e} tol={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.group,
            self.name,
            self.measured,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub level: Level,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Names of groups with at least one failing check, in run order.
    pub fn failing_groups(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for c in self.checks.iter().filter(|c| !c.passed()) {
            if !out.contains(&c.group) {
                out.push(c.group);
            }
        }
        out
    }

    pub fn check(&self, group: &str, name: &str) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.group == group && c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify level={}", self.level)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failing = self.failing_groups();
        if failing.is_empty() {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "FAILED groups: {}", failing.join(", "))
        }
    }
}

pub struct Verifier {
    level: Level,
    beam_splitter: BeamSplitter,
    epsilon_tail: f64,
}

impl Verifier {
    pub fn new(level: Level) -> Self {
        Self {
            level,
            beam_splitter: BeamSplitter::balanced(),
            epsilon_tail: DEFAULT_EPSILON_TAIL,
        }
    }

    /// Swap in a different beam splitter, e.g. a deliberately mis-phased one.
    pub fn with_beam_splitter(mut self, bs: BeamSplitter) -> Self {
        self.beam_splitter = bs;
        self
    }

    pub fn with_epsilon_tail(mut self, epsilon_tail: f64) -> Self {
        self.epsilon_tail = epsilon_tail;
        self
    }

    pub fn run(&self) -> crate::Result<Report> {
        let mut checks = Vec::new();
        self.bell_state(&mut checks)?;
        self.sector_oracle(&mut checks);
        self.algebra(&mut checks);
        self.unitarity(&mut checks)?;
        self.squeezer(&mut checks)?;
        self.probe(&mut checks)?;
        self.qfi(&mut checks)?;
        self.signal(&mut checks)?;
        self.closed_forms(&mut checks)?;
        self.estimation(&mut checks);
        Ok(Report {
            level: self.level,
            checks,
        })
    }

    fn bell_state(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let c = ModeCutoff::new(2)?;
        let got = self.beam_splitter.apply(&make_fock(1, 0, c)?);
        let want = bell_state(c)?;
        out.push(Check {
            group: "bell-state",
            name: "beam splitter on |1,0>".into(),
            measured: got.max_abs_diff(&want)?,
            tolerance: tol::BELL_STATE,
        });
        let probe = ProbeSpec::new(0.0, self.epsilon_tail)?.prepare();
        let want = bell_state(probe.cutoff())?;
        out.push(Check {
            group: "bell-state",
            name: "probe at r=0".into(),
            measured: probe.max_abs_diff(&want)?,
            tolerance: tol::BELL_STATE,
        });
        Ok(())
    }

    fn sector_oracle(&self, out: &mut Vec<Check>) {
        let mut worst: f64 = 0.0;
        for total in 0..=self.level.oracle_sectors() {
            let ops = SectorOperators::new(total);
            let dense = exp_i(&ops.j1, FRAC_PI_2);
            let rec = self.beam_splitter.sector_matrix(total);
            let rec = SectorMatrix::from_fn(total + 1, total + 1, |i, j| rec[i][j]);
            worst = worst.max(max_abs_diff(&dense, &rec));
        }
        out.push(Check {
            group: "beam-splitter-oracle",
            name: format!(
                "recurrence vs exp(i pi/2 J1), N<={}",
                self.level.oracle_sectors()
            ),
            measured: worst,
            tolerance: tol::SECTOR_ORACLE,
        });
    }

    fn algebra(&self, out: &mut Vec<Check>) {
        let n = self.level.algebra_sectors();
        let mut comm: f64 = 0.0;
        let mut j0: f64 = 0.0;
        let mut conj_j3: f64 = 0.0;
        let mut conj_exp: f64 = 0.0;
        let mut swap: f64 = 0.0;
        let i = Complex64::new(0.0, 1.0);
        for total in 0..=n {
            let o = SectorOperators::new(total);
            for (a, b, c) in [
                (&o.j1, &o.j2, &o.j3),
                (&o.j2, &o.j3, &o.j1),
                (&o.j3, &o.j1, &o.j2),
            ] {
                comm = comm.max(max_abs_diff(&commutator(a, b), &(c * i)));
            }
            let zero = SectorMatrix::zeros(total + 1, total + 1);
            for g in [&o.j1, &o.j2, &o.j3] {
                j0 = j0.max(max_abs_diff(&commutator(&o.j0, g), &zero));
            }
            let fwd = exp_i(&o.j1, FRAC_PI_2);
            let back = exp_i(&o.j1, -FRAC_PI_2);
            conj_j3 = conj_j3.max(max_abs_diff(&(&back * &o.j3 * &fwd), &(-&o.j2)));
            let lhs = &back * exp_i(&o.j3, -PI) * &fwd;
            conj_exp = conj_exp.max(max_abs_diff(&lhs, &exp_i(&o.j2, PI)));
            swap = swap.max(swap_vs_dense(&o));
        }
        let label = |s: &str| format!("{s}, N<={n}");
        out.extend([
            Check {
                group: "algebra",
                name: label("[Ji,Jj] = i eps_ijk Jk"),
                measured: comm,
                tolerance: tol::COMMUTATOR,
            },
            Check {
                group: "algebra",
                name: label("[J0,Ji] = 0"),
                measured: j0,
                tolerance: tol::COMMUTATOR,
            },
            Check {
                group: "algebra",
                name: label("exp(-i pi/2 J1) J3 exp(i pi/2 J1) = -J2"),
                measured: conj_j3,
                tolerance: tol::CONJUGATION,
            },
            Check {
                group: "algebra",
                name: label("exp(-i pi/2 J1) exp(-i pi J3) exp(i pi/2 J1) = exp(i pi J2)"),
                measured: conj_exp,
                tolerance: tol::CONJUGATION,
            },
            Check {
                group: "algebra",
                name: label("mode swap with sign = exp(i pi J2)"),
                measured: swap,
                tolerance: tol::CONJUGATION,
            },
        ]);
    }

    fn unitarity(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let n_max = match self.level {
            Level::Fast => 6,
            _ => 12,
        };
        let c = ModeCutoff::new(n_max)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut worst: [f64; 3] = [0.0; 3];
        for _ in 0..8 {
            let s = random_closed_state(c, &mut rng);
            let norm = s.squared_norm();
            let images = [
                self.beam_splitter.apply(&s),
                phase_shift(
                    &s,
                    rng.random::<f64>() * 6.0 - 3.0,
                    rng.random::<f64>() * 6.0 - 3.0,
                ),
                mode_swap_with_sign(&s),
            ];
            for (w, img) in worst.iter_mut().zip(&images) {
                *w = w.max((img.squared_norm() - norm).abs() / norm);
            }
        }
        for (name, w) in ["beam splitter", "phase shift", "mode swap"]
            .iter()
            .zip(worst)
        {
            out.push(Check {
                group: "unitarity",
                name: format!("{name} norm, n_max={n_max}"),
                measured: w,
                tolerance: tol::NORM_RELATIVE,
            });
        }
        Ok(())
    }

    fn squeezer(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let p = SqueezeParams::real(0.5)?;
        let v = squeezed_vacuum(&p, ModeCutoff::new(8)?);
        out.push(Check {
            group: "squeezer",
            name: "|C_0|^2 = sech r at r=0.5".into(),
            measured: (v.amps()[0].norm_sqr() - 1.0 / 0.5f64.cosh()).abs(),
            tolerance: tol::SQUEEZER_N0,
        });
        let p = SqueezeParams::real(1.0)?;
        let c = single_mode_cutoff(|c| squeezed_vacuum(&p, c).tail_mass(), self.epsilon_tail)?;
        let v = squeezed_vacuum(&p, c);
        out.push(Check {
            group: "squeezer",
            name: "vacuum <n> = sinh^2 r at r=1".into(),
            measured: (v.mean_photon_number() - 1f64.sinh().powi(2)).abs(),
            tolerance: tol::SQUEEZER_MEAN,
        });
        let p = SqueezeParams::real(0.8)?;
        let c = single_mode_cutoff(
            |c| squeezed_one_photon(&p, c).tail_mass(),
            self.epsilon_tail,
        )?;
        let o = squeezed_one_photon(&p, c);
        out.push(Check {
            group: "squeezer",
            name: "one-photon <n> = 1 + 3 sinh^2 r at r=0.8".into(),
            measured: (o.mean_photon_number() - (1.0 + 3.0 * 0.8f64.sinh().powi(2))).abs(),
            tolerance: tol::SQUEEZER_MEAN,
        });
        Ok(())
    }

    fn probe(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let mut routes: f64 = 0.0;
        let mut nbar: f64 = 0.0;
        let mut support: f64 = 0.0;
        for r in self.level.squeezings() {
            let spec = ProbeSpec::new(r, self.epsilon_tail)?;
            let probe = spec.prepare();
            routes = routes
                .max(probe.max_abs_diff(&spec.prepare_via_beam_splitter(&self.beam_splitter)?)?);
            let closed = nbar_closed(r);
            nbar = nbar.max((probe.mean_photon_number() - closed).abs() / closed);
            let off: f64 = probe
                .iter()
                .filter(|&(n, m, _)| (n + m) % 2 == 0)
                .map(|(_, _, c)| c.norm_sqr())
                .sum();
            support = support.max(off);
        }
        out.extend([
            Check {
                group: "probe",
                name: "product route = beam splitter then squeezers".into(),
                measured: routes,
                tolerance: tol::PROBE_ROUTES,
            },
            Check {
                group: "probe",
                name: "n̄ numeric vs 1 + 4 sinh^2 r (relative)".into(),
                measured: nbar,
                tolerance: tol::NBAR_RELATIVE,
            },
            Check {
                group: "probe",
                name: "weight on (even,even)/(odd,odd) pairs".into(),
                measured: support,
                tolerance: 0.0,
            },
        ]);
        Ok(())
    }

    fn qfi(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let mut var: f64 = 0.0;
        let mut closed: f64 = 0.0;
        let mut fd: f64 = 0.0;
        for r in self.level.squeezings() {
            let probe = ProbeSpec::new(r, self.epsilon_tail)?.prepare();
            let nbar = nbar_closed(r);
            let f_closed = qfi_closed(nbar)?;
            let dj3 = j_moments(&probe).j3_variance();
            var = var.max((dj3 - f_closed / 4.0).abs() / (f_closed / 4.0));
            let f = qfi_variance(&probe);
            closed = closed.max((f - f_closed).abs() / f_closed);
            let f_fd = qfi_finite_difference(&probe, FD_STEP)?;
            fd = fd.max((f_fd - f).abs() / f);
        }
        out.extend([
            Check {
                group: "qfi",
                name: "Var J3 vs (3n̄²+6n̄-5)/16 (relative)".into(),
                measured: var,
                tolerance: tol::J3_VARIANCE_RELATIVE,
            },
            Check {
                group: "qfi",
                name: "4 Var J3 vs (3n̄²+6n̄-5)/4 (relative)".into(),
                measured: closed,
                tolerance: tol::QFI_CLOSED_RELATIVE,
            },
            Check {
                group: "qfi",
                name: "finite-difference QFI vs 4 Var J3 (relative)".into(),
                measured: fd,
                tolerance: tol::QFI_FD_RELATIVE,
            },
        ]);
        Ok(())
    }

    fn signal(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let phis = phase_grid(SIGNAL_POINTS);
        let bs = &self.beam_splitter;

        let spec = ProbeSpec::new(0.0, self.epsilon_tail)?;
        let single = signal_bruteforce_with(&spec, bs, &phis, 0.0)?;
        out.push(Check {
            group: "signal",
            name: format!("r=0 brute force vs sin(phi), {SIGNAL_POINTS} points"),
            measured: single
                .iter()
                .map(|p| (p.value - p.phi.sin()).abs())
                .fold(0.0, f64::max),
            tolerance: tol::SINGLE_PHOTON_SIGNAL,
        });

        for r in self.level.squeezings().into_iter().filter(|&r| r > 0.0) {
            let spec = ProbeSpec::new(r, self.epsilon_tail)?;
            out.push(Check {
                group: "signal",
                name: format!("r={r} closed vs brute force, {SIGNAL_POINTS} points"),
                measured: max_signal_error(&spec, bs, &phis)?,
                tolerance: tol::SIGNAL,
            });
        }

        if self.level == Level::Long {
            let spec = ProbeSpec::new(r_from_nbar(60.0)?, self.epsilon_tail)?;
            out.push(Check {
                group: "signal",
                name: format!("n̄=60 closed vs brute force, {LONG_SIGNAL_POINTS} points"),
                measured: max_signal_error(&spec, bs, &phase_grid(LONG_SIGNAL_POINTS))?,
                tolerance: tol::SIGNAL,
            });
        }

        let spec = ProbeSpec::new(0.5, self.epsilon_tail)?;
        let phis = [0.3, -1.1];
        let a = signal_bruteforce_with(&spec, bs, &phis, 0.0)?;
        let b = signal_bruteforce_with(&spec, bs, &phis, 1.7)?;
        out.push(Check {
            group: "signal",
            name: "sum-phase invariance at r=0.5".into(),
            measured: a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x.value - y.value).abs())
                .fold(0.0, f64::max),
            tolerance: tol::SUM_PHASE,
        });
        Ok(())
    }

    fn closed_forms(&self, out: &mut Vec<Check>) -> crate::Result<()> {
        let mut slope: f64 = 0.0;
        for nbar in [1.0, 6.0, 60.0] {
            let r = r_from_nbar(nbar)?;
            let fd =
                (signal_closed(r, SLOPE_STEP) - signal_closed(r, -SLOPE_STEP)) / (2.0 * SLOPE_STEP);
            let want = 0.5 * (nbar + 1.0);
            slope = slope.max((fd - want).abs() / want);
            slope = slope.max((slope_at_origin_closed(r) - want).abs() / want);
        }
        out.push(Check {
            group: "closed-forms",
            name: "central-difference slope at 0 vs (n̄+1)/2, n̄ in {1,6,60}".into(),
            measured: slope,
            tolerance: tol::SLOPE_RELATIVE,
        });

        let mut sym: f64 = 0.0;
        for r in [0.0, 0.5, 1.5] {
            for phi in phase_grid(SIGNAL_POINTS) {
                let s = signal_closed(r, phi);
                sym = sym.max((signal_closed(r, -phi) + s).abs());
                sym = sym.max((signal_closed(r, phi + 2.0 * PI) - s).abs());
            }
        }
        out.push(Check {
            group: "closed-forms",
            name: "S odd and 2pi-periodic".into(),
            measured: sym,
            tolerance: tol::SYMMETRY,
        });

        // positive values are violations
        let mut order: f64 = f64::NEG_INFINITY;
        let mut growth: f64 = f64::NEG_INFINITY;
        let mut gain: f64 = 0.0;
        let mut last_ratio = f64::INFINITY;
        for nbar in grid(3.0, 1e4, 200, true) {
            let crb = crb_closed(nbar)?;
            let parity = delta_phi_parity_closed(nbar)?;
            let sn = shot_noise_limit(nbar)?;
            order = order.max(crb - parity).max(parity - sn);
            let ratio = parity / sn;
            growth = growth.max(ratio - last_ratio);
            last_ratio = ratio;
            // beating shot noise by more than sqrt(n̄)/2 means ratio * sqrt(n̄)/2 < 1
            gain = gain.max(ratio * nbar.sqrt() / 2.0);
        }
        out.push(Check {
            group: "closed-forms",
            name: "crb <= parity <= shot noise on n̄ in [3, 1e4]".into(),
            measured: order.max(0.0),
            tolerance: 0.0,
        });
        out.push(Check {
            group: "closed-forms",
            name: "parity/shot-noise strictly decreasing on n̄ in [3, 1e4]".into(),
            measured: if growth < 0.0 { 0.0 } else { growth },
            tolerance: 0.0,
        });
        out.push(Check {
            group: "closed-forms",
            name: "parity/shot-noise * sqrt(n̄)/2 below 1 on n̄ in [3, 1e4]".into(),
            measured: gain,
            tolerance: 1.0,
        });
        Ok(())
    }

    fn estimation(&self, out: &mut Vec<Check>) {
        let mut worst: f64 = 0.0;
        for r in self.level.squeezings() {
            let w = branch_half_width(r);
            for i in 1..20 {
                let phi = w * (i as f64 / 10.0 - 1.0) * 0.999;
                let back = invert_estimate(signal_closed(r, phi), r).phi;
                worst = worst.max((back - phi).abs());
            }
        }
        out.push(Check {
            group: "estimation",
            name: "signal inversion round trip on the central branch".into(),
            measured: worst,
            tolerance: tol::INVERSION,
        });
    }
}

fn bell_state(c: ModeCutoff) -> crate::Result<TwoModeState> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    make_fock(1, 0, c)?
        .scale(h)
        .add(&make_fock(0, 1, c)?.scale(h * Complex64::new(0.0, 1.0)))
}

/// Elementwise gap between `mode_swap_with_sign` and `exp(iπ J2)` on one sector.
fn swap_vs_dense(o: &SectorOperators) -> f64 {
    let total = o.total;
    let dense = exp_i(&o.j2, PI);
    let c = ModeCutoff::new(total.max(1)).expect("positive");
    let mut worst: f64 = 0.0;
    for n in 0..=total {
        let img = mode_swap_with_sign(&make_fock(n, total - n, c).expect("in range"));
        for k in 0..=total {
            worst = worst.max((img.amp(k, total - k) - dense[(k, n)]).norm());
        }
    }
    worst
}

fn max_signal_error(spec: &ProbeSpec, bs: &BeamSplitter, phis: &[f64]) -> crate::Result<f64> {
    let r = spec.r();
    Ok(signal_bruteforce_with(spec, bs, phis, 0.0)?
        .iter()
        .map(|p| (p.value - signal_closed(r, p.phi)).abs())
        .fold(0.0, f64::max))
}

/// Random state supported on `n + m <= n_max`, where every element is
/// exactly unitary.
fn random_closed_state(c: ModeCutoff, rng: &mut impl Rng) -> TwoModeState {
    let n_max = c.n_max();
    TwoModeState::from_fn(c, |n, m| {
        if n + m <= n_max {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn single_mode_cutoff(tail: impl Fn(ModeCutoff) -> f64, eps: f64) -> crate::Result<ModeCutoff> {
    let mut n = crate::metrology::INITIAL_CUTOFF;
    loop {
        let c = ModeCutoff::new(n)?;
        if tail(c) < eps || n >= crate::metrology::MAX_CUTOFF {
            return Ok(c);
        }
        n = (n as f64 * crate::metrology::CUTOFF_GROWTH).ceil() as usize;
    }
}

/// Sanity helper: parity expectation of mode b after the full pipeline for
/// an arbitrary state; exposed for tests that feed hand-built states.
pub fn pipeline_parity(s: &TwoModeState, phi: f64, bs: &BeamSplitter) -> f64 {
    parity_expectation(
        &bs.apply(&differential_phase_shift(s, phi + FRAC_PI_2)),
        Mode::B,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_passes() {
        let report = Verifier::new(Level::Fast).run().unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn misphased_beam_splitter_fails_bell_check() {
        let h = FRAC_1_SQRT_2;
        let t = Complex64::new(h, 0.0);
        let s = Complex64::new(0.0, -h);
        let bad = BeamSplitter::from_mode_matrix([[t, s], [s, t]]);
        let report = Verifier::new(Level::Fast)
            .with_beam_splitter(bad)
            .run()
            .unwrap();
        assert!(!report.passed());
        assert_eq!(report.failing_groups()[0], "bell-state");
    }

    #[test]
    fn report_text_is_reproducible() {
        let a = Verifier::new(Level::Fast).run().unwrap().to_string();
        let b = Verifier::new(Level::Fast).run().unwrap().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn pipeline_parity_of_bell_state_is_sine() {
        let c = ModeCutoff::new(2).unwrap();
        let bell = bell_state(c).unwrap();
        let bs = BeamSplitter::balanced();
        for phi in [-2.0, -0.4, 0.0, 0.9, 2.5] {
            assert!((pipeline_parity(&bell, phi, &bs) - f64::sin(phi)).abs() < 1e-14);
        }
    }
}
