use std::path::PathBuf;

use thiserror::Error;

use crate::config::Task;

#[derive(Debug, Error)]
pub enum CliError {
    /// A configuration field is missing, malformed or out of range.
    #[error("field={field} {reason}")]
    Config { field: String, reason: String },

    #[error("task={task} {source}")]
    Numerical {
        task: Task,
        #[source]
        source: rankone::Error,
    },

    #[error("path={} {reason}", path.display())]
    Io { path: PathBuf, reason: String },
}

impl CliError {
    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        Self::Io {
            path: path.into(),
            reason: err.to_string(),
        }
    }

    /// Argument errors raised by the library during validation name the
    /// offending field; keep it.
    pub fn from_validation(err: rankone::Error, task: Task) -> Self {
        match err {
            rankone::Error::InvalidArgument { field, reason } => Self::config(field, reason),
            other => Self::Numerical { task, source: other },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config { .. } => "config",
            Self::Numerical { .. } => "numerical",
            Self::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 2,
            Self::Numerical { .. } => 3,
            Self::Io { .. } => 4,
        }
    }

    /// `error[<kind>] <detail>` on one line.
    pub fn diagnostic(&self) -> String {
        let detail = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}] {detail}", self.kind())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_and_codes() {
        let e = CliError::from_validation(rankone::Error::Domain("pole".into()), Task::NcCratio);
        assert_eq!((e.kind(), e.exit_code()), ("numerical", 3));
        assert_eq!(e.diagnostic(), "error[numerical] task=nc-cratio domain error: pole");
        let e = CliError::from_validation(
            rankone::Error::InvalidArgument {
                field: "alpha",
                reason: "alpha out of range".into(),
            },
            Task::NcCratio,
        );
        assert_eq!(e.exit_code(), 2);
        assert_eq!(e.diagnostic(), "error[config] field=alpha alpha out of range");
        assert_eq!(
            CliError::io("/x", "gone\nreally").diagnostic(),
            "error[io] path=/x gone really"
        );
    }
}
