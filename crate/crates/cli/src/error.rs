use std::path::PathBuf;

/// Everything that can stop a run, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Argument parsing failure or `--help`/`--version`; clap renders it.
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Compute {
        context: String,
        #[source]
        source: vacuumprobe::Error,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn compute(context: impl Into<String>) -> impl FnOnce(vacuumprobe::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Compute { context, source }
    }

    /// 0 for help/version, 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage(_) => 2,
            CliError::Compute { .. } | CliError::Io { .. } => 1,
        }
    }
}
