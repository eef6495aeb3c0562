//! Link budget for a single comm-core and its multi-comm-core aggregate.
//!
//! Everything stays in the dB domain until spectral efficiency, which is
//! Shannon capacity evaluated at the SNR left after the implementation loss.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::geometry::PhysicalModel;

/// Thermal noise density at 290 K (dBm/Hz).
pub const THERMAL_NOISE_PSD_DBM_HZ: f64 = -174.0;
/// Power-amplifier output per comm-core (W).
pub const DEFAULT_PA_POWER_W: f64 = 2.0;

fn default_noise_psd() -> f64 {
    THERMAL_NOISE_PSD_DBM_HZ
}

/// Inputs of a single-core link budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkBudgetSpec {
    pub tx_power_dbm: f64,
    pub tx_antenna_gain_dbi: f64,
    pub rx_antenna_gain_dbi: f64,
    pub carrier_frequency_ghz: f64,
    pub distance_km: f64,
    pub tx_frontend_loss_db: f64,
    #[serde(default)]
    pub atmospheric_loss_db: f64,
    #[serde(default)]
    pub other_path_loss_db: f64,
    pub core_bandwidth_ghz: f64,
    #[serde(default = "default_noise_psd")]
    pub noise_psd_dbm_hz: f64,
    pub noise_figure_db: f64,
    pub implementation_loss_db: f64,
    /// Ceiling on spectral efficiency (b/s/Hz), e.g. the highest modulation
    /// order available. Uncapped when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_se: Option<f64>,
}

impl LinkBudgetSpec {
    /// The 100 GHz, 1500 km, 1 GHz-per-core reference system.
    pub fn reference() -> Self {
        Self {
            tx_power_dbm: 33.0,
            tx_antenna_gain_dbi: 53.0,
            rx_antenna_gain_dbi: 53.0,
            carrier_frequency_ghz: 100.0,
            distance_km: 1500.0,
            tx_frontend_loss_db: 3.0,
            atmospheric_loss_db: 0.0,
            other_path_loss_db: 0.0,
            core_bandwidth_ghz: 1.0,
            noise_psd_dbm_hz: THERMAL_NOISE_PSD_DBM_HZ,
            noise_figure_db: 5.0,
            implementation_loss_db: 5.0,
            max_se: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_antenna_gain_dbi", self.tx_antenna_gain_dbi),
            ("rx_antenna_gain_dbi", self.rx_antenna_gain_dbi),
            ("noise_psd_dbm_hz", self.noise_psd_dbm_hz),
        ] {
            if !value.is_finite() {
                return Err(Error::domain(name, value, "must be finite"));
            }
        }
        require_positive("carrier_frequency_ghz", self.carrier_frequency_ghz)?;
        require_positive("distance_km", self.distance_km)?;
        require_positive("core_bandwidth_ghz", self.core_bandwidth_ghz)?;
        require_non_negative("tx_frontend_loss_db", self.tx_frontend_loss_db)?;
        require_non_negative("atmospheric_loss_db", self.atmospheric_loss_db)?;
        require_non_negative("other_path_loss_db", self.other_path_loss_db)?;
        require_non_negative("noise_figure_db", self.noise_figure_db)?;
        require_non_negative("implementation_loss_db", self.implementation_loss_db)?;
        if let Some(cap) = self.max_se {
            require_positive("max_se", cap)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudgetResult {
    pub fspl_db: f64,
    pub received_power_dbm: f64,
    pub noise_power_dbm: f64,
    pub snr_db: f64,
    pub spectral_efficiency: f64,
    pub core_bandwidth_ghz: f64,
    pub rate_per_core_gbps: f64,
}

/// Bandwidth cores stacked in frequency, replicated across spatial cores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MccConfig {
    pub bw_cores: u32,
    pub spatial_cores: u32,
    #[serde(default = "default_pa_power")]
    pub per_core_pa_power_w: f64,
}

fn default_pa_power() -> f64 {
    DEFAULT_PA_POWER_W
}

impl MccConfig {
    pub fn new(bw_cores: u32, spatial_cores: u32) -> Self {
        Self {
            bw_cores,
            spatial_cores,
            per_core_pa_power_w: DEFAULT_PA_POWER_W,
        }
    }

    /// 32 bandwidth cores by 8 spatial cores.
    pub fn reference() -> Self {
        Self::new(32, 8)
    }

    pub fn total_cores(&self) -> u64 {
        u64::from(self.bw_cores) * u64::from(self.spatial_cores)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bw_cores == 0 {
            return Err(Error::domain("bw_cores", 0.0, "must be at least 1"));
        }
        if self.spatial_cores == 0 {
            return Err(Error::domain("spatial_cores", 0.0, "must be at least 1"));
        }
        require_non_negative("per_core_pa_power_w", self.per_core_pa_power_w)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MccAggregate {
    pub total_cores: u64,
    pub total_rate_tbps: f64,
    pub total_bandwidth_ghz: f64,
    pub total_pa_power_w: f64,
}

fn wavelength_m(frequency_ghz: f64, m: &PhysicalModel) -> f64 {
    m.c_km_s * 1e3 / (frequency_ghz * 1e9)
}

/// Free-space path loss `20·log10(4πdf/c)` in dB.
pub fn fspl(frequency_ghz: f64, distance_km: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let f = require_positive("frequency_ghz", frequency_ghz)?;
    let d = require_positive("distance_km", distance_km)?;
    Ok(20.0 * (4.0 * PI * d * 1e3 / wavelength_m(f, m)).log10())
}

/// Receiver noise power in dBm over `bandwidth_ghz`.
pub fn noise_power(bandwidth_ghz: f64, noise_psd_dbm_hz: f64, noise_figure_db: f64) -> Result<f64> {
    let b = require_positive("bandwidth_ghz", bandwidth_ghz)?;
    Ok(noise_psd_dbm_hz + 10.0 * (b * 1e9).log10() + noise_figure_db)
}

/// Shannon efficiency after subtracting `implementation_loss_db` from the SNR.
pub fn spectral_efficiency(snr_db: f64, implementation_loss_db: f64) -> f64 {
    let effective = 10f64.powf((snr_db - implementation_loss_db) / 10.0);
    effective.ln_1p() / std::f64::consts::LN_2
}

/// SNR (dB) at which `spectral_efficiency` returns `se`.
pub fn required_snr(se: f64, implementation_loss_db: f64) -> Result<f64> {
    let se = require_positive("target_se", se)?;
    // 2^se - 1 without cancellation for small se
    let linear = (se * std::f64::consts::LN_2).exp_m1();
    Ok(10.0 * linear.log10() + implementation_loss_db)
}

pub fn evaluate(spec: &LinkBudgetSpec, m: &PhysicalModel) -> Result<LinkBudgetResult> {
    spec.validate()?;
    let fspl_db = fspl(spec.carrier_frequency_ghz, spec.distance_km, m)?;
    let received_power_dbm = spec.tx_power_dbm + spec.tx_antenna_gain_dbi + spec.rx_antenna_gain_dbi
        - fspl_db
        - spec.tx_frontend_loss_db
        - spec.atmospheric_loss_db
        - spec.other_path_loss_db;
    let noise_power_dbm = noise_power(spec.core_bandwidth_ghz, spec.noise_psd_dbm_hz, spec.noise_figure_db)?;
    let snr_db = received_power_dbm - noise_power_dbm;
    let mut se = spectral_efficiency(snr_db, spec.implementation_loss_db);
    if let Some(cap) = spec.max_se {
        se = se.min(cap);
    }
    Ok(LinkBudgetResult {
        fspl_db,
        received_power_dbm,
        noise_power_dbm,
        snr_db,
        spectral_efficiency: se,
        core_bandwidth_ghz: spec.core_bandwidth_ghz,
        rate_per_core_gbps: se * spec.core_bandwidth_ghz,
    })
}

pub fn aggregate(result: &LinkBudgetResult, cfg: &MccConfig) -> Result<MccAggregate> {
    cfg.validate()?;
    let total_cores = cfg.total_cores();
    Ok(MccAggregate {
        total_cores,
        total_rate_tbps: result.rate_per_core_gbps * total_cores as f64 / 1e3,
        total_bandwidth_ghz: result.core_bandwidth_ghz * f64::from(cfg.bw_cores),
        total_pa_power_w: cfg.per_core_pa_power_w * total_cores as f64,
    })
}

/// Effective aperture (m²) of an antenna with `gain_dbi`: `D·λ²/4π`.
pub fn antenna_aperture(gain_dbi: f64, frequency_ghz: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let f = require_positive("frequency_ghz", frequency_ghz)?;
    if !gain_dbi.is_finite() {
        return Err(Error::domain("gain_dbi", gain_dbi, "must be finite"));
    }
    let lambda = wavelength_m(f, m);
    Ok(10f64.powf(gain_dbi / 10.0) * lambda * lambda / (4.0 * PI))
}

/// Gain (dBi) of an aperture of `aperture_m2`; inverse of [`antenna_aperture`].
pub fn antenna_gain(aperture_m2: f64, frequency_ghz: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let a = require_positive("aperture_m2", aperture_m2)?;
    let f = require_positive("frequency_ghz", frequency_ghz)?;
    let lambda = wavelength_m(f, m);
    Ok(10.0 * (4.0 * PI * a / (lambda * lambda)).log10())
}

/// Receive antenna gain that makes `spec` reach `target_se`. The spec's own
/// `rx_antenna_gain_dbi` is ignored.
pub fn solve_required_gain(spec: &LinkBudgetSpec, target_se: f64, m: &PhysicalModel) -> Result<f64> {
    let needed_snr = required_snr(target_se, spec.implementation_loss_db)?;
    if let Some(cap) = spec.max_se {
        if target_se > cap {
            return Err(Error::domain("target_se", target_se, "exceeds max_se"));
        }
    }
    let bare = LinkBudgetSpec {
        rx_antenna_gain_dbi: 0.0,
        max_se: None,
        ..*spec
    };
    let snr_without_rx_gain = evaluate(&bare, m)?.snr_db;
    Ok(needed_snr - snr_without_rx_gain)
}
