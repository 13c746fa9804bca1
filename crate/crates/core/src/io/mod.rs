//! File formats and the synthetic data generator.

mod generator;
mod model_file;
mod panel_csv;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use generator::{generate, GenSpec};
pub use model_file::{read_model, write_model, ModelFile, Provenance, FORMAT_VERSION};
pub use panel_csv::{
    format_value, parse_panel_csv, parse_prediction_csv, read_panel_csv, read_prediction_csv,
    render_panel_csv, render_prediction_csv, write_panel_csv, write_prediction_csv, PanelData,
};

use crate::error::{Error, Result};

/// Writes `bytes` to a sibling temp file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}
