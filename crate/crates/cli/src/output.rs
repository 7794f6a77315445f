// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! CSV formatting and atomic file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::CliError;

/// Shortest representation that parses back to the same `f64`.
pub fn float(x: f64) -> String {
    format!("{x:e}")
}

/// A named artifact produced by a command, not yet on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: Vec<u8>,
}

/// Builds an in-memory CSV document.
pub struct CsvDoc {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvDoc {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header).expect("write to memory");
        Self { writer }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("write to memory");
    }

    pub fn finish(self, name: &str) -> OutputFile {
        OutputFile {
            name: name.to_string(),
            contents: self.writer.into_inner().expect("flush to memory"),
        }
    }
}

/// Writes each file through a temporary in `dir` renamed into place.
pub fn write_all(dir: &Path, files: &[OutputFile]) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::with_capacity(files.len());
    for f in files {
        let target = dir.join(&f.name);
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| {
            CliError::Io(format!(
                "cannot create temporary file in {}: {e}",
                dir.display()
            ))
        })?;
        tmp.write_all(&f.contents)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&target)
            .map_err(|e| CliError::Io(format!("cannot write {}: {}", target.display(), e.error)))?;
        written.push(target);
    }
    Ok(written)
}
