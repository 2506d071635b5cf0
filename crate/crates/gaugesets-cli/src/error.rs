use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// I/O failure or a numerical failure inside the engine
    pub const RUNTIME: i32 = 1;
    /// bad command line, including a malformed gauge spec
    pub const USAGE: i32 = 2;
    /// input file violates its schema or the operation's preconditions
    pub const INPUT: i32 = 3;
    /// plotting asked for on a model that is not planar
    pub const PLOT_DIM: i32 = 4;
    /// the result has no finite representation to write out
    pub const UNREPRESENTABLE: i32 = 5;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(exit::USAGE, message)
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(exit::INPUT, message)
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self::new(exit::RUNTIME, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<gaugesets::Error> for CliError {
    fn from(e: gaugesets::Error) -> Self {
        use gaugesets::Error::*;
        let code = match e {
            InvalidGauge(_) => exit::USAGE,
            Format(_) | InvalidSample(_) | Precondition(_) | DimensionMismatch { .. } | UnknownAtom(_) | Unsupported(_) => {
                exit::INPUT
            }
            MissingHRep(_) => exit::UNREPRESENTABLE,
            Domain(_) | Degenerate(_) | SingularMatrix | NotPositiveDefinite | SizeLimit(_) => exit::RUNTIME,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(e.to_string())
    }
}
