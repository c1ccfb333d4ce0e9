use crate::algebra::LatticeElement;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid truncation radius {0}; it must be positive")]
    InvalidTruncation(i64),
    #[error("tabulated cocycle does not cover the pair ({0}, {1})")]
    CocycleOutOfTable(LatticeElement, LatticeElement),
    #[error("cocycle is not normalized: c(e,e) = {0}")]
    UnnormalizedCocycle(f64),
    #[error("cocycle identity fails with residual {0:e}")]
    CocycleIdentity(f64),
    #[error("A - γ*A is not closed for γ = {0}")]
    ExactnessViolation(LatticeElement),
    #[error("cocycle combination is not constant (spread {0:e})")]
    CocycleInconsistency(f64),
    #[error("polynomial degree {0} exceeds the supported maximum of 4")]
    DegreeTooHigh(usize),
    #[error("phase function for γ = {0} is not affine")]
    UnsupportedGauge(LatticeElement),
    #[error("sections must be nonempty and share one width")]
    InvalidSection,
    #[error("grid too coarse: M = {m} but at least {required} is needed for N = {n}")]
    Resolution { n: usize, m: usize, required: usize },
    #[error("link phases do not carry a uniform flux ({0})")]
    NonUniformFlux(&'static str),
    #[error("indeterminate kernel: singular value {sigma:e} lies within a factor 10 of the threshold {threshold:e}")]
    IndeterminateKernel { sigma: f64, threshold: f64 },
    #[error("index violation: kernel dimension {kernel} but the index formula gives {formula}")]
    IndexViolation { kernel: usize, formula: f64 },
    #[error("trace {trace} differs from the index {index}")]
    TraceMismatch { trace: f64, index: f64 },
    #[error("Toeplitz matrix is singular; no polar factor")]
    DegenerateToeplitz,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
