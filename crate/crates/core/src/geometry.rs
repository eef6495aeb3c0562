//! Spherical-Earth and two-body orbital geometry.
//!
//! Lengths are kilometres, angles are degrees at every public boundary and
//! durations are reported in minutes (periods) or milliseconds (delays).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Mean Earth radius (km).
pub const EARTH_RADIUS_KM: f64 = 6371.0;
/// Equatorial circumference (km).
pub const EARTH_CIRCUMFERENCE_KM: f64 = 40075.0;
/// Earth gravitational parameter, WGS-84 (km³/s²).
pub const MU_EARTH_KM3_S2: f64 = 398_600.441_8;
/// Speed of light in vacuum (km/s).
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;
/// Refractive index of optical fiber.
pub const FIBER_INDEX: f64 = 1.4;
/// Geostationary altitude (km).
pub const GEO_ALTITUDE_KM: f64 = 35_786.0;

/// Physical constants shared by every model.
///
/// The radius and circumference are independent: the default radius is the
/// mean radius while the circumference is equatorial, so `2πr` differs from
/// `earth_circumference_km` by about 0.1%.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalModel {
    pub earth_radius_km: f64,
    pub earth_circumference_km: f64,
    pub mu_km3_s2: f64,
    pub c_km_s: f64,
    pub fiber_index: f64,
}

impl Default for PhysicalModel {
    fn default() -> Self {
        Self {
            earth_radius_km: EARTH_RADIUS_KM,
            earth_circumference_km: EARTH_CIRCUMFERENCE_KM,
            mu_km3_s2: MU_EARTH_KM3_S2,
            c_km_s: SPEED_OF_LIGHT_KM_S,
            fiber_index: FIBER_INDEX,
        }
    }
}

impl PhysicalModel {
    pub fn validate(&self) -> Result<()> {
        require_positive("earth_radius_km", self.earth_radius_km)?;
        require_positive("earth_circumference_km", self.earth_circumference_km)?;
        require_positive("mu_km3_s2", self.mu_km3_s2)?;
        require_positive("c_km_s", self.c_km_s)?;
        if !(self.fiber_index.is_finite() && self.fiber_index >= 1.0) {
            return Err(Error::domain(
                "fiber_index",
                self.fiber_index,
                "must be finite and >= 1",
            ));
        }
        Ok(())
    }

    /// Signal speed in fiber (km/s).
    pub fn fiber_speed_km_s(&self) -> f64 {
        self.c_km_s / self.fiber_index
    }
}

/// A satellite altitude with the ground station's elevation mask.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitQuery {
    pub altitude_km: f64,
    #[serde(default)]
    pub elevation_mask_deg: f64,
}

impl OrbitQuery {
    pub fn new(altitude_km: f64) -> Self {
        Self {
            altitude_km,
            elevation_mask_deg: 0.0,
        }
    }

    pub fn with_mask(mut self, elevation_mask_deg: f64) -> Self {
        self.elevation_mask_deg = elevation_mask_deg;
        self
    }

    fn altitude(&self) -> Result<f64> {
        require_positive("altitude_km", self.altitude_km)
    }

    fn mask_rad(&self) -> Result<f64> {
        let mask = self.elevation_mask_deg;
        if mask.is_finite() && (0.0..90.0).contains(&mask) {
            Ok(mask.to_radians())
        } else {
            Err(Error::domain(
                "elevation_mask_deg",
                mask,
                "must lie in [0, 90) degrees",
            ))
        }
    }
}

/// Circular orbit period in minutes, `2π·√(a³/μ)` with `a = r + h`.
pub fn orbital_period(q: &OrbitQuery, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let a = m.earth_radius_km + q.altitude()?;
    Ok(2.0 * PI * (a.powi(3) / m.mu_km3_s2).sqrt() / 60.0)
}

/// Earth-central half-angle (radians) of the region that sees the satellite
/// at or above the elevation mask.
pub fn coverage_half_angle(q: &OrbitQuery, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let h = q.altitude()?;
    let eps = q.mask_rad()?;
    let r = m.earth_radius_km;
    Ok((r / (r + h) * eps.cos()).acos() - eps)
}

/// Fraction of the Earth's surface area inside the coverage cap.
///
/// Always in (0, 0.5): a spherical cap seen from finite altitude is smaller
/// than a hemisphere.
pub fn coverage_fraction(q: &OrbitQuery, m: &PhysicalModel) -> Result<f64> {
    let theta = coverage_half_angle(q, m)?;
    // (1 - cos θ)/2 written as sin²(θ/2) to keep precision at small angles.
    Ok((theta / 2.0).sin().powi(2))
}

/// Distance from a ground station to the satellite seen at `elevation_deg`.
pub fn slant_range(q: &OrbitQuery, elevation_deg: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let h = q.altitude()?;
    if !(elevation_deg.is_finite() && (0.0..=90.0).contains(&elevation_deg)) {
        return Err(Error::domain(
            "elevation_deg",
            elevation_deg,
            "must lie in [0, 90] degrees",
        ));
    }
    if elevation_deg == 90.0 {
        return Ok(h);
    }
    let r = m.earth_radius_km;
    let rs = r * elevation_deg.to_radians().sin();
    Ok(-rs + (rs * rs + 2.0 * r * h + h * h).sqrt())
}

/// Round-trip light time (ms) over a one-way distance.
pub fn round_trip_delay(distance_km: f64, m: &PhysicalModel) -> Result<f64> {
    m.validate()?;
    let d = require_positive("distance_km", distance_km)?;
    Ok(2.0 * d / m.c_km_s * 1e3)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn model() -> PhysicalModel {
        PhysicalModel::default()
    }

    #[test]
    fn periods_match_reference_altitudes() {
        let m = model();
        let p160 = orbital_period(&OrbitQuery::new(160.0), &m).unwrap();
        let p2000 = orbital_period(&OrbitQuery::new(2000.0), &m).unwrap();
        assert!((p160 - 87.6).abs() < 0.1, "{p160}");
        assert!((p2000 - 127.0).abs() < 0.1, "{p2000}");
    }

    #[test]
    fn geostationary_period_is_a_sidereal_day() {
        // Sidereal day: 86164.0905 s.
        let p = orbital_period(&OrbitQuery::new(GEO_ALTITUDE_KM), &model()).unwrap();
        assert!((p - 86_164.090_5 / 60.0).abs() < 1.0, "{p}");
    }

    #[test]
    fn coverage_examples() {
        let m = model();
        let geo = coverage_fraction(&OrbitQuery::new(GEO_ALTITUDE_KM), &m).unwrap();
        assert_relative_eq!(geo, 0.424_437_222_762_530_5, max_relative = 1e-9);
        let leo = coverage_fraction(&OrbitQuery::new(1500.0), &m).unwrap();
        assert_relative_eq!(leo, 0.095_286_494_720_630_48, max_relative = 1e-9);
        let far = coverage_fraction(&OrbitQuery::new(1e9), &m).unwrap();
        assert!(far < 0.5 && far > 0.499_99);
    }

    #[test]
    fn mask_out_of_range_is_rejected() {
        let m = model();
        for mask in [-1.0, 90.0, 120.0, f64::NAN] {
            let q = OrbitQuery::new(500.0).with_mask(mask);
            assert!(matches!(
                coverage_fraction(&q, &m),
                Err(Error::Domain { name: "elevation_mask_deg", .. })
            ));
        }
    }

    #[test]
    fn non_positive_altitude_is_rejected() {
        let m = model();
        assert!(orbital_period(&OrbitQuery::new(0.0), &m).is_err());
        assert!(orbital_period(&OrbitQuery::new(-10.0), &m).is_err());
        assert!(slant_range(&OrbitQuery::new(-1.0), 10.0, &m).is_err());
    }

    #[test]
    fn slant_range_examples() {
        let m = model();
        let q = OrbitQuery::new(1500.0);
        assert_eq!(slant_range(&q, 90.0, &m).unwrap(), 1500.0);
        assert_eq!(
            slant_range(&OrbitQuery::new(GEO_ALTITUDE_KM), 90.0, &m).unwrap(),
            GEO_ALTITUDE_KM
        );
        let horizon = slant_range(&q, 0.0, &m).unwrap();
        assert_relative_eq!(horizon, 4_622.012_548_663_19, max_relative = 1e-9);
        assert!(slant_range(&q, 90.5, &m).is_err());
    }

    #[test]
    fn round_trip_examples() {
        let m = model();
        assert_relative_eq!(
            round_trip_delay(GEO_ALTITUDE_KM, &m).unwrap(),
            238.738_494_215_221_4,
            max_relative = 1e-12
        );
        assert_eq!(round_trip_delay(SPEED_OF_LIGHT_KM_S, &m).unwrap(), 2000.0);
        assert_relative_eq!(
            round_trip_delay(1500.0, &m).unwrap(),
            10.006_922_855_944_56,
            max_relative = 1e-12
        );
        assert!(round_trip_delay(0.0, &m).is_err());
    }

    #[test]
    fn invalid_model_is_rejected() {
        let m = PhysicalModel {
            fiber_index: 0.9,
            ..PhysicalModel::default()
        };
        assert!(orbital_period(&OrbitQuery::new(500.0), &m).is_err());
    }
}
