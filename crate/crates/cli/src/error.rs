use thiserror::Error;
use transgress_core::{Error as CoreError, ErrorClass};

#[derive(Debug, Error)]
pub enum CliError {
  #[error("{file}:{line}: {message} (token `{token}`)")]
  Parse { file: String, line: usize, token: String, message: String },
  #[error("{file}: {source}")]
  Io { file: String, source: std::io::Error },
  #[error("{0}")]
  Usage(String),
  #[error(transparent)]
  Core(#[from] CoreError),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
  pub fn exit_code(&self) -> i32 {
    match self {
      CliError::Parse { .. } | CliError::Io { .. } | CliError::Usage(_) => 2,
      CliError::Core(e) => match e.class() {
        ErrorClass::Input => 2,
        ErrorClass::Infeasible => 3,
        ErrorClass::Invariant => 4,
      },
    }
  }

  pub fn class(&self) -> &'static str {
    match self.exit_code() {
      2 => "input",
      3 => "infeasible",
      _ => "invariant",
    }
  }

  /// Machine-readable reason: `parse_error`, `io_error`, `usage_error` or the
  /// snake-cased core variant, e.g. `no_good_cover`.
  pub fn reason(&self) -> String {
    match self {
      CliError::Parse { .. } => "parse_error".into(),
      CliError::Io { .. } => "io_error".into(),
      CliError::Usage(_) => "usage_error".into(),
      CliError::Core(e) => {
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        let mut out = String::new();
        for (i, c) in name.chars().enumerate() {
          if c.is_uppercase() {
            if i > 0 {
              out.push('_');
            }
            out.extend(c.to_lowercase());
          } else {
            out.push(c);
          }
        }
        out
      },
    }
  }
}
