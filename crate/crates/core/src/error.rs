use std::fmt;

use thiserror::Error;

use crate::diagrams::ChordId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    ExpectedLabel,
    ZeroLabel,
    LabelOverflow,
    MissingSign,
    SignInFlatCode,
    UnexpectedSeparator,
    ComponentCount(usize),
    Occurrences { label: u32, count: usize },
    RepeatedRole { label: u32 },
    ConflictingSigns { label: u32 },
}

/// A Gauss-code parse failure. `pos` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        write!(f, "at byte {}: ", self.pos)?;
        match &self.kind {
            UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ExpectedLabel => write!(f, "expected a chord label"),
            ZeroLabel => write!(f, "chord labels must be positive"),
            LabelOverflow => write!(f, "chord label too large"),
            MissingSign => write!(f, "missing crossing sign (+ or -)"),
            SignInFlatCode => write!(f, "signs are not allowed in flat codes"),
            UnexpectedSeparator => write!(f, "component separator '|' not allowed here"),
            ComponentCount(n) => write!(f, "expected 2 components, found {n}"),
            Occurrences { label, count } => {
                write!(f, "label {label} occurs {count} times (expected 2)")
            }
            RepeatedRole { label } => write!(f, "label {label} has the same role at both ends"),
            ConflictingSigns { label } => write!(f, "label {label} carries conflicting signs"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("chord {0} already exists")]
    ChordExists(ChordId),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("gap {gap} out of range (diagram has {gaps} gaps)")]
    GapOutOfRange { gap: usize, gaps: usize },
    #[error("move not applicable: {0}")]
    InapplicableMove(String),
    #[error("malformed move record: {0}")]
    BadMoveRecord(String),
    #[error("lattice parameters must be positive (got p={p}, q={q})")]
    BadLattice { p: usize, q: usize },
    #[error("index argument must be nonzero")]
    ZeroIndex,
    #[error("chord {chord} has nonzero index {index}")]
    NonzeroIndex { chord: ChordId, index: i64 },
    #[error("duplicate chord {0}")]
    DuplicateChord(ChordId),
    #[error("expected 1 or 2 chords, got {0}")]
    ChordListLength(usize),
    #[error("module mismatch: {0}")]
    ModuleMismatch(String),
    #[error("census limited to {cap} chords (asked for {max})")]
    CensusCap { max: usize, cap: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
