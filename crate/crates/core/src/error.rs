use core::fmt;

/// A malformed word or sequence literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending character.
    pub position: usize,
    pub message: &'static str,
}

impl ParseError {
    pub const fn new(position: usize, message: &'static str) -> Self {
        ParseError { position, message }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

/// Prefix generation would exceed the configured letter cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthCapExceeded {
    pub cap: usize,
    /// Length the next prefix would have reached (saturating).
    pub attempted: usize,
}

impl fmt::Display for GrowthCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "prefix growth cap of {} letters exceeded (next prefix needs {})",
            self.cap, self.attempted
        )
    }
}

impl core::error::Error for GrowthCapExceeded {}

/// Invalid construction of a bidirective sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceError {
    EmptyDeltaPeriod,
    EmptyThetaPeriod,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::EmptyDeltaPeriod => f.write_str("letter period must be nonempty"),
            SequenceError::EmptyThetaPeriod => f.write_str("antimorphism period must be nonempty"),
        }
    }
}

impl core::error::Error for SequenceError {}
