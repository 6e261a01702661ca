//! Interferometer elements and observables.

mod beam_splitter;
mod elements;
mod observables;
mod squeezer;

pub use beam_splitter::{beam_splitter, BeamSplitter};
pub use elements::{differential_phase_shift, mode_swap_with_sign, phase_shift};
pub use observables::{j_moments, parity_expectation, JMoments, Mode};
pub use squeezer::{
    squeeze_each_mode, squeezed_one_photon, squeezed_vacuum, SqueezeParams, LOG_DOMAIN_THRESHOLD,
};
