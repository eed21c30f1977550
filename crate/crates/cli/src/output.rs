//! Deterministic formatting, data sinks and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// Fixed-point decimal with 15 significant digits; independent of locale.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.14}", 0.0);
    }
    let sci = format!("{:.14e}", x);
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let decimals = (14 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Grid coordinate, rounded to 12 decimals so that `from + i·step` prints
/// without binary noise.
pub fn grid_value(x: f64) -> String {
    let r = (x * 1e12).round() / 1e12;
    // avoid "-0"
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

/// Run metadata written next to every output file.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub versions: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: String, config: BTreeMap<String, String>) -> Self {
        Self {
            command,
            config,
            versions: format!("equibasis {}", env!("CARGO_PKG_VERSION")),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

/// Write `data` to `output` plus its manifest, or to stdout when no path is
/// given.
pub fn emit(output: Option<&Path>, data: &str, manifest: &RunManifest) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, data).map_err(io_err(path))?;
            let mpath = manifest_path(path);
            let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            text.push('\n');
            fs::write(&mpath, text).map_err(io_err(&mpath))?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(data.as_bytes()).and_then(|_| lock.flush()).map_err(io_err(Path::new("<stdout>")))
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}
