//! Constellation capacity arithmetic.
//!
//! Data volumes use decimal units: 1 ZB = 10²¹ bytes, 1 EB = 10¹⁸ bytes,
//! 1 GB = 10⁹ bytes.

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};

pub const BYTES_PER_ZB: f64 = 1e21;
pub const BYTES_PER_EB: f64 = 1e18;
pub const BYTES_PER_GB: f64 = 1e9;
pub const DEFAULT_MONTH_DAYS: f64 = 30.0;
/// One order of magnitude every five years.
pub const DEFAULT_GROWTH_PER_5Y: f64 = 10.0;

const SECONDS_PER_DAY: f64 = 86_400.0;

/// Relative slack within which a satellite count is taken to be integral.
const COUNT_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstellationPlan {
    pub capacity_zb_per_month: f64,
    pub per_satellite_rate_tbps: f64,
    pub utilization: f64,
    pub month_days: f64,
    pub sustained_rate_tbps: f64,
    pub satellites: u64,
}

/// Average rate (Tb/s) that moves `capacity_zb` in a month of `month_days`.
pub fn sustained_rate(capacity_zb: f64, month_days: f64) -> Result<f64> {
    let capacity = require_positive("capacity_zb", capacity_zb)?;
    let days = require_positive("month_days", month_days)?;
    Ok(capacity * BYTES_PER_ZB * 8.0 / (days * SECONDS_PER_DAY) / 1e12)
}

fn check_utilization(utilization: f64) -> Result<f64> {
    if utilization.is_finite() && utilization > 0.0 && utilization <= 1.0 {
        Ok(utilization)
    } else {
        Err(Error::domain("utilization", utilization, "must lie in (0, 1]"))
    }
}

/// `ceil(x)`, except that values within floating-point noise of an integer
/// round to it.
fn ceil_count(x: f64) -> u64 {
    let nearest = x.round();
    if (x - nearest).abs() <= COUNT_SNAP * nearest.max(1.0) {
        nearest as u64
    } else {
        x.ceil() as u64
    }
}

pub fn satellites_needed(capacity_zb: f64, per_satellite_tbps: f64, utilization: f64, month_days: f64) -> Result<u64> {
    Ok(plan(capacity_zb, per_satellite_tbps, utilization, month_days)?.satellites)
}

pub fn plan(capacity_zb: f64, per_satellite_tbps: f64, utilization: f64, month_days: f64) -> Result<ConstellationPlan> {
    let sustained = sustained_rate(capacity_zb, month_days)?;
    let per_sat = require_positive("per_satellite_tbps", per_satellite_tbps)?;
    let utilization = check_utilization(utilization)?;
    Ok(ConstellationPlan {
        capacity_zb_per_month: capacity_zb,
        per_satellite_rate_tbps: per_sat,
        utilization,
        month_days,
        sustained_rate_tbps: sustained,
        satellites: ceil_count(sustained / (per_sat * utilization)),
    })
}

/// Monthly volume per user in GB.
pub fn per_user_volume(capacity_zb: f64, users: u64) -> Result<f64> {
    let capacity = require_non_negative("capacity_zb", capacity_zb)?;
    if users == 0 {
        return Err(Error::domain("users", 0.0, "must be at least 1"));
    }
    Ok(capacity * BYTES_PER_ZB / users as f64 / BYTES_PER_GB)
}

/// Traffic growing by `growth` every five years from a base year. The
/// volume unit is whatever `base_volume` is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrafficProjection {
    pub base_year: i32,
    pub base_volume: f64,
    #[serde(default = "default_growth")]
    pub growth: f64,
}

fn default_growth() -> f64 {
    DEFAULT_GROWTH_PER_5Y
}

impl TrafficProjection {
    pub fn omnify(base_year: i32, base_volume: f64) -> Self {
        Self {
            base_year,
            base_volume,
            growth: DEFAULT_GROWTH_PER_5Y,
        }
    }
}

pub fn project_traffic(p: &TrafficProjection, target_year: i32) -> Result<f64> {
    let base = require_positive("base_volume", p.base_volume)?;
    let growth = require_positive("growth", p.growth)?;
    let periods = f64::from(target_year - p.base_year) / 5.0;
    Ok(base * growth.powf(periods))
}
