use std::fmt;
use std::path::Path;

use tsol_client::ClientError;

/// Anything that ends a command early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Core(tsol_core::Error),
    Remote(ClientError),
}

impl Failure {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }

    /// Domain errors exit with 2, the rest with 1.
    pub fn is_domain(&self) -> bool {
        match self {
            Failure::Core(e) => !matches!(e, tsol_core::Error::Parse { .. }),
            Failure::Remote(ClientError::Api { status, .. }) => *status == 404 || *status == 422,
            _ => false,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Remote(e) => write!(f, "{e}"),
        }
    }
}

impl From<tsol_core::Error> for Failure {
    fn from(e: tsol_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        Failure::Remote(e)
    }
}
