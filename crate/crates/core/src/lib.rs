//! Simulation of a Mach–Zehnder interferometer probed by a single-photon
//! Bell state whose two arms are squeezed independently, read out by photon
//! parity.
//!
//! The crate carries every figure of merit in closed form alongside a
//! brute-force route through the truncated two-mode Fock space, so each can
//! be checked against the other:
//!
//! - [`fock`]: truncated one- and two-mode states with tail-mass accounting.
//! - [`optics`]: squeezers, the 50:50 beam splitter, phase shifts, parity and
//!   Schwinger moments.
//! - [`metrology`]: probe preparation, mean photon number, quantum Fisher
//!   information, the parity signal and its sensitivity.
//! - [`estimation`]: seeded Monte Carlo estimation from sampled parities.
//! - [`verify`]: the invariant suite run by `bellamp verify`.

pub mod error;
pub mod estimation;
pub mod fock;
pub mod metrology;
pub mod optics;
pub mod schwinger;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{
    inner, make_fock, product_state, ModeCutoff, SingleModeState, TailMass, TwoModeState,
};
