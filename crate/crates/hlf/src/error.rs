//! Error type shared across the crate.

use std::fmt;

use crate::index::MultiIndex;

/// Errors surfaced by operations in this crate.
///
/// Mathematical "false" answers (a net failing a classification, an element
/// lying outside a lattice) are *return values*, never errors. Errors mark
/// inputs that make the requested computation meaningless.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two objects of different ambient dimension were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// Two elements over different primes were combined.
    PrimeMismatch,
    /// (+inf) + (-inf) arose. For net operations the offending piece pair is
    /// reported.
    IndeterminateSum { pieces: Option<(usize, usize)> },
    /// A net carried an infinity forbidden by the operation
    /// (e.g. +inf values in a seminorm net).
    InvalidNetValues { piece: usize, found: &'static str },
    /// A schedule of indices was not strictly increasing.
    ScheduleNotMonotone { position: usize },
    /// The component list of a product seminorm was empty.
    EmptyProduct,
    /// No scalar admits lattice membership in the gauge search. Reported
    /// defensively; unreachable for nets with a finite value on the support.
    GaugeInfinite,
    /// A scaling net for the archimedean seminorm had a value <= 0.
    NonpositiveRho { at: MultiIndex },
    /// A field shape violated 2 <= n, 0 <= r <= n-1.
    InvalidShape { n: usize, r: usize },
    /// A series generator's exponent net is not a basic bounded net, so the
    /// generated series would not define an element of the field.
    SupportNotBounded,
    /// A canonical file failed to parse or violated its format invariants.
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::PrimeMismatch => write!(f, "elements use different primes"),
            Error::IndeterminateSum { pieces: None } => {
                write!(f, "indeterminate sum (+inf) + (-inf)")
            }
            Error::IndeterminateSum {
                pieces: Some((a, b)),
            } => {
                write!(
                    f,
                    "indeterminate sum (+inf) + (-inf) between pieces {a} and {b}"
                )
            }
            Error::InvalidNetValues { piece, found } => {
                write!(f, "piece {piece} takes the value {found}, not allowed here")
            }
            Error::ScheduleNotMonotone { position } => {
                write!(
                    f,
                    "schedule is not strictly increasing at position {position}"
                )
            }
            Error::EmptyProduct => write!(f, "product seminorm of zero components"),
            Error::GaugeInfinite => write!(f, "no scalar admits lattice membership"),
            Error::NonpositiveRho { at } => {
                write!(f, "scaling net is not positive at {at}")
            }
            Error::InvalidShape { n, r } => {
                write!(f, "invalid field shape: n = {n}, r = {r}")
            }
            Error::SupportNotBounded => {
                write!(f, "generator support is not a basic bounded net")
            }
            Error::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
