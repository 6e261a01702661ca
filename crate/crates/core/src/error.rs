use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cutoff must retain at least one photon per mode (got n_max = {0})")]
    InvalidCutoff(usize),

    #[error("photon number {requested} exceeds cutoff n_max = {n_max}")]
    CutoffViolation { requested: usize, n_max: usize },

    #[error("cutoff mismatch: n_max = {left} vs n_max = {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("signal slope {slope:e} vanishes at phi = {phi}; error propagation diverges at a signal extremum")]
    DegeneratePoint { phi: f64, slope: f64 },

    #[error("phase {phi} lies outside the monotone branch (-{half_width}, {half_width})")]
    OutOfBranch { phi: f64, half_width: f64 },

    #[error("tail mass {tail:e} still above tolerance {epsilon:e} at the largest allowed cutoff n_max = {n_max}")]
    CutoffExhausted {
        tail: f64,
        epsilon: f64,
        n_max: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
