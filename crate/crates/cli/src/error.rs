//! Error-to-exit-code mapping. The contract is stable:
//! 0 success, 2 parse error, 3 hypothesis violation, 4 numeric
//! certification failure, 1 anything else.

use septool_core::blowup::BlowupError;
use septool_core::divergence::DivergenceError;
use septool_core::field::FieldError;
use septool_core::index::IndexError;
use septool_core::separatrix::SeparatrixError;
use septool_core::series::SeriesError;

use crate::dsl::DslError;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Hypothesis(String),
    Certification(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Certification(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Hypothesis(m)
            | CliError::Certification(m)
            | CliError::Other(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self {
            CliError::Parse(_) => "parse error",
            CliError::Hypothesis(_) => "hypothesis violation",
            CliError::Certification(_) => "certification failure",
            CliError::Other(_) => "error",
        };
        write!(f, "{kind}: {}", self.message())
    }
}

impl std::error::Error for CliError {}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::HypothesisViolated(_) | FieldError::NotSingular => {
                CliError::Hypothesis(e.to_string())
            }
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        match e {
            BlowupError::NotSingular | BlowupError::RamificationHypothesis(_) => {
                CliError::Hypothesis(e.to_string())
            }
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<SeparatrixError> for CliError {
    fn from(e: SeparatrixError) -> Self {
        match e {
            SeparatrixError::NotSingular
            | SeparatrixError::NotPrepared(_)
            | SeparatrixError::HypothesisViolated(_) => CliError::Hypothesis(e.to_string()),
            SeparatrixError::Resonance { .. } => CliError::Certification(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        match e {
            IndexError::ZeroOnCircle { .. }
            | IndexError::NoStabilization(_)
            | IndexError::TruncationTooCoarse => CliError::Certification(e.to_string()),
            IndexError::ParityError(_) => CliError::Hypothesis(e.to_string()),
        }
    }
}

impl From<DivergenceError> for CliError {
    fn from(e: DivergenceError) -> Self {
        match e {
            DivergenceError::HypothesisViolated(_) => CliError::Hypothesis(e.to_string()),
            DivergenceError::InsufficientData(_) => CliError::Certification(e.to_string()),
            DivergenceError::Separatrix(inner) => (*inner).into(),
            DivergenceError::Series(inner) => CliError::Other(inner.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Other(e.to_string())
    }
}
