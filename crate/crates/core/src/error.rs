use alloc::string::String;
use core::fmt;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum QError {
    /// A denominator factor came within `pole_eps` of zero.
    Pole(String),
    /// An infinite product did not meet its tail bound within `max_terms` factors.
    Truncation { terms: usize },
    /// An adaptive sum did not settle within `max_terms` indices.
    NonConvergence { terms: usize },
    /// The series is outside its domain of convergence.
    Divergent(String),
    UnknownIdentity(String),
    UnknownEntry(String),
    /// Inversion of a formal series with no invertible leading term.
    NonUnit,
    /// A formal product that never stabilises.
    Instability(String),
    /// A formal sum whose term valuations never exceeded the target order.
    RangeOverflow,
    InvalidContext(String),
}

impl fmt::Display for QError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QError::Pole(s) => write!(f, "pole: {s}"),
            QError::Truncation { terms } => {
                write!(f, "truncation: tail bound not met after {terms} factors")
            }
            QError::NonConvergence { terms } => {
                write!(f, "non-convergence: window reached {terms} terms")
            }
            QError::Divergent(s) => write!(f, "divergent: {s}"),
            QError::UnknownIdentity(s) => write!(f, "unknown identity: {s}"),
            QError::UnknownEntry(s) => write!(f, "unknown catalog entry: {s}"),
            QError::NonUnit => write!(f, "non-unit: series has no invertible leading term"),
            QError::Instability(s) => write!(f, "instability: {s}"),
            QError::RangeOverflow => write!(f, "range overflow: term valuations never exceed the order"),
            QError::InvalidContext(s) => write!(f, "invalid context: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, QError>;
