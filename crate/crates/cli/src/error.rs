use std::process::ExitCode;

use lzkit::LzError;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Guardrail(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Input(_) => ExitCode::from(2),
            Self::Guardrail(_) => ExitCode::from(3),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Input(m) | Self::Guardrail(m) => f.write_str(m),
        }
    }
}

impl From<LzError> for CliError {
    fn from(e: LzError) -> Self {
        if e.is_guardrail() {
            Self::Guardrail(e.to_string())
        } else {
            Self::Input(e.to_string())
        }
    }
}
