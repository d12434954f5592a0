use std::fmt;
use std::process::ExitCode;

use gbh_core::blowup::BlowupError;
use gbh_core::complex::ComplexError;
use gbh_core::family::FamilyError;
use gbh_core::module::ModuleError;
use gbh_core::oracle::OracleError;
use gbh_core::GraphError;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Input,
    Computation,
    Config,
    Mismatch,
}

impl Kind {
    pub fn code(self) -> u8 {
        match self {
            Kind::Input => 2,
            Kind::Computation => 3,
            Kind::Config => 4,
            Kind::Mismatch => 5,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { kind: Kind::Input, message: message.into() }
    }

    pub fn computation(message: impl Into<String>) -> Self {
        CliError { kind: Kind::Computation, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        CliError { kind: Kind::Config, message: message.into() }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        CliError { kind: Kind::Mismatch, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            Kind::Input => "input error",
            Kind::Computation => "computation error",
            Kind::Config => "configuration error",
            Kind::Mismatch => "verification mismatch",
        };
        write!(f, "{label}: {}", self.message)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::computation(e.to_string())
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        let name = match e {
            ModuleError::TruncationTooSmall { .. } => "TruncationTooSmall: ",
            _ => "",
        };
        CliError::computation(format!("{name}{e}"))
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Graph(g) => g.into(),
            other => CliError::computation(other.to_string()),
        }
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        match e {
            BlowupError::Graph(g) => g.into(),
            BlowupError::Complex(c) => c.into(),
            other => CliError::mismatch(other.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::WindowTooSmall { .. } => CliError::config(format!("WindowTooSmall: {e}")),
            FamilyError::Module(m) => m.into(),
            FamilyError::NBelowTail { .. } => CliError::config(e.to_string()),
            FamilyError::Graph(g) => g.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}
