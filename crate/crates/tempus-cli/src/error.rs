//! Error categories with machine-readable names and fixed exit codes.
//!
//! Every failure leaving the binary is one line on stderr of the form
//! `error[<category>]: <message>` plus a matching exit code, so scripts can
//! branch on either without parsing prose.

use std::fmt;

/// What went wrong, coarsely: bad input, bad numbers, or bad plumbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// The requested run is invalid before any computation starts
    /// (unknown flag values, contradictory options, malformed grids or
    /// config files).  All problems found are aggregated into one message.
    Config(String),
    /// The computation itself failed or an internal invariant check
    /// tripped.
    Numeric(String),
    /// Reading or writing an artifact failed.
    Io(String),
}

impl CliError {
    /// Stable category token used in the stderr line.
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }

    /// Process exit code for this category (0 is success).
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    /// Wraps a core error that surfaced while *validating user input*, so
    /// it carries the config category rather than the numeric one.
    pub fn config_from(err: tempus_core::Error) -> Self {
        CliError::Config(err.to_string())
    }

    /// Joins collected validation problems into the single aggregated
    /// message the config category promises.  Must not be called empty.
    pub fn aggregate(problems: Vec<String>) -> Self {
        debug_assert!(!problems.is_empty());
        CliError::Config(problems.join("; "))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Config(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        };
        write!(f, "error[{}]: {}", self.category(), msg)
    }
}

impl std::error::Error for CliError {}

impl From<tempus_core::Error> for CliError {
    /// Core errors escaping a running computation are numeric by default;
    /// use [`CliError::config_from`] at input-validation sites instead.
    fn from(err: tempus_core::Error) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_map_to_codes_and_lines() {
        let c = CliError::Config("bad dim".into());
        assert_eq!(c.exit_code(), 2);
        assert_eq!(c.to_string(), "error[config]: bad dim");

        let n = CliError::Numeric("did not converge".into());
        assert_eq!(n.exit_code(), 3);
        assert_eq!(n.to_string(), "error[numeric]: did not converge");

        let i = CliError::Io("disk full".into());
        assert_eq!(i.exit_code(), 4);
        assert_eq!(i.to_string(), "error[io]: disk full");
    }

    #[test]
    fn core_errors_default_to_numeric() {
        let err: CliError = tempus_core::Error::ZeroWidth.into();
        assert_eq!(err.category(), "numeric");
        let err = CliError::config_from(tempus_core::Error::ZeroWidth);
        assert_eq!(err.category(), "config");
    }

    #[test]
    fn aggregation_joins_in_order() {
        let err = CliError::aggregate(vec!["a".into(), "b".into()]);
        assert_eq!(err.to_string(), "error[config]: a; b");
    }
}
