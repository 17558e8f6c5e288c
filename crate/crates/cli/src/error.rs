use serde_json::{json, Value};
use thiserror::Error;
use triplekit::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::InvalidFactor(_)
                | CoreError::InvalidTolerance(_)
                | CoreError::InvalidElement(_)
                | CoreError::InvalidSpec(_)
                | CoreError::DimensionMismatch(_) => 2,
                CoreError::PeirceCluster { .. }
                | CoreError::DecompositionFailed { .. }
                | CoreError::AtomMismatch { .. }
                | CoreError::BasisConstructionFailed(_)
                | CoreError::FactorizationInconsistent(_) => 4,
                _ => 3,
            },
        }
    }

    fn kind(&self) -> String {
        match self {
            CliError::Parse(_) => "Parse".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
        }
    }

    pub fn body(&self) -> Value {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            },
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use triplekit::Error;

    #[test]
    fn codes_by_class() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::from(Error::InvalidSpec("x".into())).exit_code(),
            2
        );
        assert_eq!(CliError::from(Error::ZeroTripotent).exit_code(), 3);
        assert_eq!(
            CliError::from(Error::AtomMismatch { gap: 1.0 }).exit_code(),
            4
        );
        let body = CliError::from(Error::ZeroTripotent).body();
        assert_eq!(body["error"]["kind"], "ZeroTripotent");
    }
}
