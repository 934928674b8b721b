//! Subcommand implementations.

pub mod generate;
pub mod plot;
pub mod select;
pub mod sweep;
pub mod validate;

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Write `content` to `dir/name`, creating the directory first.
pub(crate) fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
