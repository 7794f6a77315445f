// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Library side of the `abcage` binary: configuration, presets, command
//! bodies and deterministic CSV/SVG output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod svg;

use std::path::{Path, PathBuf};

pub use commands::{execute, RunOutput};
pub use config::{Command, ParamOverrides, RunConfig};
pub use error::CliError;

/// Resolves `config_text`, runs `command` and writes its artifacts into `out_dir`.
pub fn run(
    command: Command,
    config_text: &str,
    flags: &ParamOverrides,
    out_dir: &Path,
    svg: bool,
) -> Result<(Vec<PathBuf>, Vec<String>), CliError> {
    let cfg = RunConfig::from_json(config_text, command, flags)?;
    let out = execute(&cfg, svg)?;
    let paths = output::write_all(out_dir, &out.files)?;
    Ok((paths, out.warnings))
}
