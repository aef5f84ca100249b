mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use transgress_core::euler::LiftMode;

use crate::error::{CliError, CliResult};

/// Exact transgressions under subdivision and order cohomology of finite posets.
#[derive(Parser, Debug)]
#[command(name = "transgress", version)]
struct Cli {
  /// Print a `key: value` summary instead of the canonical JSON document.
  #[arg(long, global = true)]
  pretty: bool,
  /// Write the document here instead of stdout.
  #[arg(long, short, global = true)]
  output: Option<PathBuf>,
  #[command(subcommand)]
  command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
  TreeAverage,
  MinNorm,
}

#[derive(Subcommand, Debug)]
enum Command {
  /// Betti numbers over Q.
  Homology { complex: PathBuf },
  /// Euler cycle coefficients.
  Euler { complex: PathBuf },
  /// Apply a subdivision script.
  Subdivide { complex: PathBuf, script: PathBuf },
  /// Party-local transgression of the Euler cycle.
  TransgressEuler {
    complex: PathBuf,
    script: PathBuf,
    #[arg(long, value_enum, default_value = "tree-average")]
    mode: Mode,
  },
  /// Order cohomology of a coefficient system.
  OrderCohomology {
    poset: PathBuf,
    system: PathBuf,
    /// Selector file; adds the long exact sequence of the pair.
    #[arg(long)]
    relative: Option<PathBuf>,
  },
  /// Limit of a coefficient system.
  Limit { poset: PathBuf, system: PathBuf },
  /// Decide whether a path-independent transgression exists.
  PathIndependence { bundle: PathBuf, assignment: PathBuf },
  /// Canonical transgression over a poset with a least element.
  CanonicalTransgression {
    bundle: PathBuf,
    assignment: PathBuf,
    #[arg(long)]
    base_cycle: Option<PathBuf>,
  },
  /// Compare order cohomology with the Čech cohomology of the upper-ideal cover.
  SheafCompare { poset: PathBuf, system: PathBuf },
}

impl Command {
  fn name(&self) -> &'static str {
    match self {
      Command::Homology { .. } => "homology",
      Command::Euler { .. } => "euler",
      Command::Subdivide { .. } => "subdivide",
      Command::TransgressEuler { .. } => "transgress-euler",
      Command::OrderCohomology { .. } => "order-cohomology",
      Command::Limit { .. } => "limit",
      Command::PathIndependence { .. } => "path-independence",
      Command::CanonicalTransgression { .. } => "canonical-transgression",
      Command::SheafCompare { .. } => "sheaf-compare",
    }
  }

  fn run(&self) -> CliResult<serde_json::Value> {
    match self {
      Command::Homology { complex } => commands::homology(complex),
      Command::Euler { complex } => commands::euler(complex),
      Command::Subdivide { complex, script } => commands::subdivide(complex, script),
      Command::TransgressEuler { complex, script, mode } => {
        let lift = match mode {
          Mode::TreeAverage => LiftMode::TreeAverage,
          Mode::MinNorm => LiftMode::MinNorm,
        };
        commands::transgress_euler_cmd(complex, script, lift)
      },
      Command::OrderCohomology { poset, system, relative } => commands::order_cohomology_cmd(poset, system, relative.as_deref()),
      Command::Limit { poset, system } => commands::limit_cmd(poset, system),
      Command::PathIndependence { bundle, assignment } => commands::path_independence(bundle, assignment),
      Command::CanonicalTransgression { bundle, assignment, base_cycle } => commands::canonical_transgression(bundle, assignment, base_cycle.as_deref()),
      Command::SheafCompare { poset, system } => commands::sheaf_compare(poset, system),
    }
  }
}

fn emit(cli: &Cli, doc: &serde_json::Value) -> CliResult<()> {
  let text = if cli.pretty { output::summary(doc) } else { format!("{doc}\n") };
  match &cli.output {
    Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { file: path.display().to_string(), source }),
    None => std::io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io { file: "<stdout>".into(), source }),
  }
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  let result = cli.command.run().and_then(|body| emit(&cli, &output::document(cli.command.name(), body)));
  match result {
    Ok(()) => ExitCode::SUCCESS,
    Err(e) => {
      let doc = json!({
        "schema_version": output::SCHEMA_VERSION,
        "command": cli.command.name(),
        "error": { "class": e.class(), "reason": e.reason(), "message": e.to_string() },
      });
      eprintln!("{doc}");
      ExitCode::from(e.exit_code() as u8)
    },
  }
}
