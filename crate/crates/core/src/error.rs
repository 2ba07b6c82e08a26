use alloc::string::String;
use core::fmt;

/// Syntax error in a proposition expression. `position` is a 0-based
/// character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    FrameSize(usize),
    InvalidAtomName(String),
    DuplicateAtom(String),
    UnknownAtom(String),
    /// Two propositions built over frames with different atom counts.
    FrameMismatch {
        left: usize,
        right: usize,
    },
    ModelMismatch,
    Parse(ParseError),
    EmptyProposition,
    NegativeMass(f64),
    MassSum(f64),
    /// An input focal element is empty under the model; holds its DNF text.
    EmptyFocal(String),
    /// Conjunctive mass drifted away from 1 by more than the tolerance.
    Drift(f64),
    /// Dempster's normalization is undefined when all mass is conflicting.
    TotalConflict,
    NoSources,
    UnknownRule(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FrameSize(n) => write!(
                f,
                "frame must have between {} and {} atoms, got {n}",
                crate::MIN_ATOMS,
                crate::MAX_ATOMS
            ),
            Error::InvalidAtomName(name) => write!(f, "invalid atom name {name:?}"),
            Error::DuplicateAtom(name) => write!(f, "duplicate atom {name:?}"),
            Error::UnknownAtom(name) => write!(f, "unknown atom {name:?}"),
            Error::FrameMismatch { left, right } => {
                write!(f, "frame mismatch: {left} atoms vs {right} atoms")
            }
            Error::ModelMismatch => f.write_str("operands belong to different models"),
            Error::Parse(e) => e.fmt(f),
            Error::EmptyProposition => f.write_str("operation undefined on the empty proposition"),
            Error::NegativeMass(m) => write!(f, "negative mass {m}"),
            Error::MassSum(s) => write!(f, "masses sum to {s}, expected 1"),
            Error::EmptyFocal(p) => write!(f, "focal element {p} is empty under the model"),
            Error::Drift(d) => write!(f, "mass total drifted from 1 by {d:e}"),
            Error::TotalConflict => {
                f.write_str("total conflict (k = 1): Dempster normalization undefined")
            }
            Error::NoSources => f.write_str("at least one source is required"),
            Error::UnknownRule(r) => write!(f, "unknown rule {r:?}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
