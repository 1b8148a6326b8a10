use classdiv_core::classgroup::ClassGroupError;
use classdiv_core::family::FamilyError;
use classdiv_core::ArithError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("input: {0}")]
    Input(String),
    #[error("{0} verification failure(s)")]
    Verification(usize),
    #[error("arithmetic: {0}")]
    Arith(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 config or input error, 2 verification failure, 3 internal arithmetic error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Arith(_) => 3,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Invariant(_) | FamilyError::Arith(_) => CliError::Arith(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Arith(e.to_string())
    }
}

impl From<ClassGroupError> for CliError {
    fn from(e: ClassGroupError) -> Self {
        CliError::Arith(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e.to_string()))
    }
}
