use core::fmt;

/// Errors raised by constructors and solvers in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A NaN or infinite value was passed to a constructor.
    NotFinite { what: &'static str },
    /// `max(|ρ01 − conj(ρ10)|, |Im ρ00|, |Im ρ11|)` exceeded the tolerance.
    NotHermitian { deviation: f64 },
    /// The trace differs from one by more than the tolerance.
    TraceNotOne { trace: f64 },
    /// The smaller eigenvalue is below `-tolerance`.
    NotPositive { min_eigenvalue: f64 },
    /// The eigenvalue radicand `¼ + |ρ01|² − ρ00ρ11` is negative.
    DiscriminantNegative { radicand: f64 },
    /// State vector amplitudes do not have unit norm.
    NotNormalized { norm_squared: f64 },
    /// Ω = 0: zero coupling together with zero detuning.
    DegenerateDrive,
    /// The invariant coefficient γ₁ divides by the coupling.
    ZeroCoupling,
    /// A physical parameter is outside its admissible range.
    BadParam { name: &'static str, value: f64 },
    /// A time grid with `t_end <= t_start` or zero steps.
    BadGrid { t_start: f64, t_end: f64, steps: usize },
    /// Sampled drive queried outside its sample range.
    OutOfRange { t: f64, first: f64, last: f64 },
    /// Sampled drive times are not strictly increasing, or the list is empty.
    UnorderedSamples { index: usize },
    /// A square-pulse switching time lies strictly inside an integration step.
    StepSpansDiscontinuity { switch_time: f64, step_start: f64, step_end: f64 },
    /// A propagated sample violated trace, Hermiticity or positivity bounds.
    InvariantDrift { t: f64, trace_drift: f64, hermiticity_drift: f64, min_eigenvalue: f64 },
    /// Time-series samples must have strictly increasing times.
    NonMonotonicTime { previous: f64, t: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotFinite { what } => write!(f, "{what} is not finite"),
            Error::NotHermitian { deviation } => write!(f, "matrix is not Hermitian (deviation {deviation:e})"),
            Error::TraceNotOne { trace } => write!(f, "trace is not one (got {trace})"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::DiscriminantNegative { radicand } => {
                write!(f, "eigenvalue discriminant is negative ({radicand:e})")
            }
            Error::NotNormalized { norm_squared } => {
                write!(f, "state vector is not normalized (|c0|²+|c1|² = {norm_squared})")
            }
            Error::DegenerateDrive => write!(f, "degenerate drive: Rabi frequency is zero"),
            Error::ZeroCoupling => write!(f, "invariant operator requires a non-zero coupling"),
            Error::BadParam { name, value } => write!(f, "invalid parameter {name} = {value}"),
            Error::BadGrid { t_start, t_end, steps } => {
                write!(f, "invalid time grid [{t_start}, {t_end}] with {steps} steps")
            }
            Error::OutOfRange { t, first, last } => {
                write!(f, "time {t} is outside the sampled drive range [{first}, {last}]")
            }
            Error::UnorderedSamples { index } => {
                write!(f, "sampled drive times must be strictly increasing (at sample {index})")
            }
            Error::StepSpansDiscontinuity { switch_time, step_start, step_end } => write!(
                f,
                "pulse switching time {switch_time} falls inside step [{step_start}, {step_end}]"
            ),
            Error::InvariantDrift { t, trace_drift, hermiticity_drift, min_eigenvalue } => write!(
                f,
                "density-matrix invariants drifted at t = {t}: trace {trace_drift:e}, \
                 hermiticity {hermiticity_drift:e}, min eigenvalue {min_eigenvalue:e}"
            ),
            Error::NonMonotonicTime { previous, t } => {
                write!(f, "sample time {t} does not follow {previous}")
            }
        }
    }
}

impl core::error::Error for Error {}
