//! Fiber versus space-path delay.
//!
//! A ground path of fraction `q` of the Earth's circumference runs in fiber
//! along the arc `2πqr`. The space path climbs to altitude `h`, follows the
//! arc at radius `r + h` and comes back down: `2h + 2πq(r + h)`. The
//! break-even altitude is where both one-way delays agree.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::geometry::PhysicalModel;

/// Fraction of circumference beyond which the path is longer than the
/// antipodal great circle.
pub const ANTIPODAL_FRACTION: f64 = 0.5;

/// A one-way path: its length and the light time along it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathDelay {
    pub distance_km: f64,
    pub delay_ms: f64,
}

/// Side-by-side comparison of the fiber and space paths for one `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayBreakdown {
    pub q: f64,
    pub altitude_km: f64,
    pub fiber_delay_ms: f64,
    pub space_delay_ms: f64,
    pub fiber_distance_km: f64,
    pub space_distance_km: f64,
    pub breakeven_altitude_km: f64,
    /// `q` exceeds the antipodal limit. Still computed; cable routes can be
    /// longer than a great circle.
    pub beyond_antipodal: bool,
}

fn check_q(q: f64) -> Result<f64> {
    require_positive("q", q)
}

/// Altitude at which the space path and the fiber path have equal one-way
/// delay: `(n − 1)·r / (1 + 1/(πq))`.
pub fn breakeven_altitude(q: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let q = check_q(q)?;
    if m.fiber_index <= 1.0 {
        return Err(Error::domain(
            "fiber_index",
            m.fiber_index,
            "must exceed 1 for a finite break-even altitude",
        ));
    }
    Ok((m.fiber_index - 1.0) * m.earth_radius_km / (1.0 + 1.0 / (PI * q)))
}

/// One-way delay through fiber along the arc `2πqr`.
pub fn fiber_delay(q: f64, m: &PhysicalModel) -> Result<PathDelay> {
    m.validate()?;
    let q = check_q(q)?;
    let distance_km = 2.0 * PI * q * m.earth_radius_km;
    Ok(PathDelay {
        distance_km,
        delay_ms: m.fiber_index * distance_km / m.c_km_s * 1e3,
    })
}

/// One-way delay up to altitude `h`, across, and back down.
pub fn space_delay(q: f64, altitude_km: f64, m: &PhysicalModel) -> Result<PathDelay> {
    m.validate()?;
    let q = check_q(q)?;
    let h = require_positive("altitude_km", altitude_km)?;
    let distance_km = 2.0 * h + 2.0 * PI * q * (m.earth_radius_km + h);
    Ok(PathDelay {
        distance_km,
        delay_ms: distance_km / m.c_km_s * 1e3,
    })
}

/// Full comparison for `q` at `altitude_km`. Without an altitude the space
/// path is evaluated at the break-even altitude.
pub fn breakdown(q: f64, altitude_km: Option<f64>, m: &PhysicalModel) -> Result<DelayBreakdown> {
    let breakeven = breakeven_altitude(q, m)?;
    let altitude = altitude_km.unwrap_or(breakeven);
    let fiber = fiber_delay(q, m)?;
    let space = space_delay(q, altitude, m)?;
    Ok(DelayBreakdown {
        q,
        altitude_km: altitude,
        fiber_delay_ms: fiber.delay_ms,
        space_delay_ms: space.delay_ms,
        fiber_distance_km: fiber.distance_km,
        space_distance_km: space.distance_km,
        breakeven_altitude_km: breakeven,
        beyond_antipodal: q > ANTIPODAL_FRACTION,
    })
}

/// Break-even altitude sampled at `steps` uniformly spaced values of `q`.
///
/// `q_min == q_max` yields the single point regardless of `steps`.
pub fn delay_curve(q_min: f64, q_max: f64, steps: usize, m: &PhysicalModel) -> Result<Vec<(f64, f64)>> {
    let q_min = check_q(q_min)?;
    let q_max = check_q(q_max)?;
    if q_min > q_max {
        return Err(Error::domain("q_max", q_max, "must not be below q_min"));
    }
    if q_min == q_max {
        return Ok(vec![(q_min, breakeven_altitude(q_min, m)?)]);
    }
    if steps < 2 {
        return Err(Error::domain("steps", steps as f64, "must be at least 2"));
    }
    let span = q_max - q_min;
    (0..steps)
        .map(|i| {
            let q = if i + 1 == steps {
                q_max
            } else {
                q_min + span * i as f64 / (steps - 1) as f64
            };
            breakeven_altitude(q, m).map(|h| (q, h))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Medium {
    Space,
    Fiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub length_km: f64,
    pub medium: Medium,
}

impl Segment {
    pub fn space(length_km: f64) -> Self {
        Self {
            length_km,
            medium: Medium::Space,
        }
    }

    pub fn fiber(length_km: f64) -> Self {
        Self {
            length_km,
            medium: Medium::Fiber,
        }
    }
}

/// Total delay (ms) of a multi-hop path. Each segment is charged
/// `per_hop_processing_ms` once. An empty path has zero delay.
pub fn path_delay(segments: &[Segment], per_hop_processing_ms: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let processing = require_non_negative("per_hop_processing_ms", per_hop_processing_ms)?;
    segments.iter().try_fold(0.0, |total, seg| {
        let length = require_non_negative("length_km", seg.length_km)?;
        let speed = match seg.medium {
            Medium::Space => m.c_km_s,
            Medium::Fiber => m.fiber_speed_km_s(),
        };
        Ok(total + length / speed * 1e3 + processing)
    })
}
