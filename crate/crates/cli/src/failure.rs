use bethecount::Error;

/// Every way a job can end other than success, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not hold. The report still goes to stdout.
    CheckFailed(String),
    /// A multiplicity came out negative or peeling left a residual.
    Inconsistent(String),
    BadInput(String),
    Guard(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::CheckFailed(_) | Failure::Inconsistent(_) => 1,
            Failure::BadInput(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    pub fn stdout(&self) -> Option<&str> {
        match self {
            Failure::CheckFailed(out) => Some(out),
            _ => None,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            Failure::CheckFailed(_) => None,
            Failure::Inconsistent(m) | Failure::BadInput(m) | Failure::Guard(m) => Some(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } => Failure::Guard(e.to_string()),
            Error::NegativeMultiplicity { .. } | Error::PeelingResidual { .. } => {
                Failure::Inconsistent(e.to_string())
            }
            _ => Failure::BadInput(e.to_string()),
        }
    }
}
