use bmy_core::group::GroupError;
use bmy_core::plane::PlaneError;
use bmy_core::CoverError;
use serde_json::json;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    CertificateFailed = 1,
    InvalidParameters = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub status: ExitStatus,
}

impl CliError {
    pub fn invalid(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            status: ExitStatus::InvalidParameters,
        }
    }

    pub fn failed(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            status: ExitStatus::CertificateFailed,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        let message = e.to_string();
        match e {
            GroupError::BadParameters { .. } => CliError::invalid("BadParameters", message),
            GroupError::ParameterMismatch { .. } => CliError::invalid("ParameterMismatch", message),
            GroupError::InvalidFSet(_) => CliError::invalid("InvalidFSet", message),
            GroupError::SolverPostconditionFailed { .. } => {
                CliError::failed("SolverPostconditionFailed", message)
            }
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        let message = e.to_string();
        match e {
            CoverError::Group(g) => g.into(),
            CoverError::InadmissibleP { .. } => CliError::invalid("InadmissibleP", message),
            CoverError::BadFSet(_) => CliError::invalid("InvalidFSet", message),
            CoverError::EmptyRange { .. } => CliError::invalid("EmptyRange", message),
            CoverError::CoverConditionViolated { .. } => {
                CliError::failed("CoverConditionViolated", message)
            }
            CoverError::OracleMismatch { .. } => CliError::failed("OracleMismatch", message),
            CoverError::ParityViolation { .. } => CliError::failed("ParityViolation", message),
            CoverError::ZeroChi => CliError::failed("ZeroChi", message),
            CoverError::EstimateFailed { .. } => CliError::failed("EstimateFailed", message),
            CoverError::Picard(_) => CliError::failed("PicardError", message),
            CoverError::Algebra(_) => CliError::failed("AlgebraError", message),
        }
    }
}

impl From<PlaneError> for CliError {
    fn from(e: PlaneError) -> Self {
        let message = e.to_string();
        match e {
            PlaneError::NotPrime(_) => CliError::invalid("NotPrime", message),
            PlaneError::AboveVerificationCap { .. } => {
                CliError::invalid("AboveVerificationCap", message)
            }
            PlaneError::NonUniformIncidence { .. } => {
                CliError::failed("NonUniformIncidence", message)
            }
        }
    }
}
