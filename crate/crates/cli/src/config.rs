//! JSON run configuration.
//!
//! ```json
//! {
//!   "physical_model": { "earth_radius_km": 6371.0, "fiber_index": 1.4 },
//!   "link_budget": { "tx_power_dbm": 33, "carrier_frequency_ghz": 100, ... },
//!   "mcc": { "bw_cores": 32, "spatial_cores": 8, "per_core_pa_power_w": 2 },
//!   "output_format": "table",
//!   "output_path": "report.txt"
//! }
//! ```
//!
//! Every section is optional. Physical-model fields default individually;
//! link-budget fields other than `atmospheric_loss_db`, `other_path_loss_db`,
//! `noise_psd_dbm_hz` (-174) and `max_se` are required. Unknown keys are
//! rejected at every level.

use std::fs;
use std::path::{Path, PathBuf};

use leoplan_core::{LinkBudgetSpec, MccConfig, PhysicalModel};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical_model: Option<PhysicalModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link_budget: Option<LinkBudgetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcc: Option<MccConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::input(format!("invalid config {}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn from_value(value: Value) -> serde_json::Result<Self> {
        serde_json::from_value(value)
    }

    pub fn physical_model(&self) -> PhysicalModel {
        self.physical_model.unwrap_or_default()
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// Returns a copy with the number at dotted `path` replaced by `value`.
    pub fn with_parameter(&self, path: &str, value: f64) -> Result<Self> {
        let mut root = self.to_value();
        set_path(&mut root, path, value)?;
        Self::from_value(root).map_err(|e| CliError::input(format!("cannot set {path}: {e}")))
    }
}

fn json_number(value: f64) -> Value {
    // Integral values go in as integers so count fields deserialize.
    if value.fract() == 0.0 && value.abs() < 9.007_199_254_740_992e15 {
        Value::from(value as i64)
    } else {
        Value::from(value)
    }
}

fn set_path(root: &mut Value, path: &str, value: f64) -> Result<()> {
    let mut parts = path.split('.').peekable();
    let mut node = root;
    while let Some(key) = parts.next() {
        if key.is_empty() {
            return Err(CliError::input(format!("invalid parameter path {path:?}")));
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::input(format!("parameter path {path:?} does not name a config field")))?;
        if parts.peek().is_none() {
            match obj.get(key) {
                Some(Value::Number(_)) | Some(Value::Null) | None => {
                    obj.insert(key.to_string(), json_number(value));
                    return Ok(());
                }
                Some(_) => {
                    return Err(CliError::input(format!("parameter {path:?} is not numeric")));
                }
            }
        }
        node = obj
            .get_mut(key)
            .ok_or_else(|| CliError::input(format!("config has no section {key:?} (needed by {path:?})")))?;
    }
    Err(CliError::input(format!("invalid parameter path {path:?}")))
}
