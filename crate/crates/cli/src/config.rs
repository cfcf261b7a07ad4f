use std::path::{Path, PathBuf};

use hecke_signs::verify::VerifyConfig;
use serde::Deserialize;

use crate::CliError;

/// Values read from `--config`. Every field is optional and any flag given
/// on the command line wins over it.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub out_dir: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub no_build: Option<bool>,
    pub form: Option<String>,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub s1: Option<String>,
    pub s2: Option<String>,
    pub limit: Option<u64>,
    pub p: Option<u64>,
    pub x: Option<u64>,
    pub nu: Option<Vec<u32>>,
    pub class: Option<String>,
    pub class2: Option<String>,
    pub epsilon: Option<Vec<f64>>,
    pub bins: Option<usize>,
    pub height: Option<u32>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub synthetic: Option<usize>,
    pub boxes: Option<Vec<[f64; 4]>>,
    pub band: Option<(f64, f64)>,
    pub zero_max: Option<f64>,
    pub max_deviation: Option<f64>,
    pub ks_max: Option<f64>,
    pub verify: Option<VerifyConfig>,
}

impl FileConfig {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Flag, else file value, else default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Flag, else file value, else a usage error naming the flag.
pub fn require<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(file).ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

/// Non-empty list flag, else file value, else default.
pub fn pick_list<T>(flag: Vec<T>, file: Option<Vec<T>>, default: Vec<T>) -> Vec<T> {
    if !flag.is_empty() {
        flag
    } else {
        file.unwrap_or(default)
    }
}
