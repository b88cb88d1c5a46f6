use std::path::PathBuf;

use simplexkit::io::ParseError;
use simplexkit::GeomError;

/// Failures that end a command, each mapped to a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Geometry(#[from] GeomError),
    #[error("unknown function {name:?}; known: {known}")]
    UnknownFunction { name: String, known: String },
    #[error("no convergence after {iterations} iterations (error estimate {epsilon:e})")]
    MaxIter { iterations: usize, epsilon: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } => 2,
            CliError::Parse { source, .. } => match source {
                ParseError::Geometry(e) => geometry_code(e),
                ParseError::Json(_) => 2,
            },
            CliError::Geometry(e) => geometry_code(e),
            CliError::UnknownFunction { .. } => 7,
            CliError::MaxIter { .. } => 5,
        }
    }
}

fn geometry_code(e: &GeomError) -> u8 {
    match e {
        GeomError::Degenerate { .. } | GeomError::AllDegenerate { .. } => 3,
        GeomError::CapExceeded { .. } => 4,
        GeomError::NoSignCriterion { .. } => 6,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        let degenerate = GeomError::Degenerate {
            smallest: 0.0,
            threshold: 1e-9,
        };
        assert_eq!(CliError::from(degenerate.clone()).exit_code(), 3);
        let parse = CliError::Parse {
            path: "x".into(),
            source: ParseError::Geometry(degenerate),
        };
        assert_eq!(parse.exit_code(), 3);
        assert_eq!(
            CliError::from(GeomError::CapExceeded { count: 20, cap: 15 }).exit_code(),
            4
        );
        assert_eq!(
            CliError::from(GeomError::NoSignCriterion { depth: 0 }).exit_code(),
            6
        );
        assert_eq!(CliError::from(GeomError::EmptyInput).exit_code(), 2);
    }
}
