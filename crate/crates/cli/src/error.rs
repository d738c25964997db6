use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE: u8 = 1;
    pub const UNCONTROLLABLE: u8 = 2;
    pub const VERIFICATION: u8 = 3;
    pub const SCOPE: u8 = 4;
    pub const DIVERGENCE: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] quatplace::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use quatplace::Error as E;
        match self {
            CliError::Parse(_) | CliError::Io { .. } => exit::PARSE,
            CliError::Core(e) => match e {
                E::Uncontrollable { .. } => exit::UNCONTROLLABLE,
                E::NonRealTarget => exit::SCOPE,
                E::Divergence { .. } => exit::DIVERGENCE,
                E::NoConvergence { .. } | E::UnpairedEigenvalue { .. } | E::Singular { .. } => exit::VERIFICATION,
                _ => exit::PARSE,
            },
        }
    }
}
