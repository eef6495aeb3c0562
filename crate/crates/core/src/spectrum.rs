//! Satellite spectrum bands between 10 and 275 GHz and comm-core placement.
//!
//! Band edges are stored in integer MHz, so band widths and per-link totals
//! are exact. Allocation works in integer kHz: core widths are resolved to
//! the nearest kHz.

use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Atmospheric absorption cutoff for links crossing the atmosphere (GHz).
pub const ATMOSPHERIC_CUTOFF_GHZ: f64 = 164.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkType {
    Uplink,
    Downlink,
    InterSatellite,
}

impl LinkType {
    pub const ALL: [LinkType; 3] = [LinkType::Uplink, LinkType::Downlink, LinkType::InterSatellite];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkType::Uplink => "uplink",
            LinkType::Downlink => "downlink",
            LinkType::InterSatellite => "inter_satellite",
        }
    }

    /// Uplink and downlink cross the atmosphere; inter-satellite links do not.
    pub fn default_max_frequency_ghz(self) -> Option<f64> {
        match self {
            LinkType::Uplink | LinkType::Downlink => Some(ATMOSPHERIC_CUTOFF_GHZ),
            LinkType::InterSatellite => None,
        }
    }
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLinkTypeError(pub String);

impl fmt::Display for ParseLinkTypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown link type {:?} (expected uplink, downlink or inter_satellite)",
            self.0
        )
    }
}

impl std::error::Error for ParseLinkTypeError {}

impl FromStr for LinkType {
    type Err = ParseLinkTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "uplink" | "up" => Ok(LinkType::Uplink),
            "downlink" | "down" => Ok(LinkType::Downlink),
            "inter_satellite" | "inter-satellite" | "isl" => Ok(LinkType::InterSatellite),
            _ => Err(ParseLinkTypeError(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpectrumBand {
    pub link_type: LinkType,
    pub f_low_mhz: u32,
    pub f_high_mhz: u32,
    /// Width as listed in the allocation table. Equals the edge span except
    /// where the source table rounds it.
    pub listed_bw_mhz: u32,
    pub note: &'static str,
    /// Allocated to the satellite service on a secondary basis only.
    pub secondary: bool,
}

impl SpectrumBand {
    const fn new(link_type: LinkType, f_low_mhz: u32, f_high_mhz: u32) -> Self {
        Self {
            link_type,
            f_low_mhz,
            f_high_mhz,
            listed_bw_mhz: f_high_mhz - f_low_mhz,
            note: "",
            secondary: false,
        }
    }

    const fn listed_bw(mut self, mhz: u32) -> Self {
        self.listed_bw_mhz = mhz;
        self
    }

    const fn note(mut self, note: &'static str) -> Self {
        self.note = note;
        self
    }

    const fn secondary(mut self) -> Self {
        self.secondary = true;
        self
    }

    pub fn f_low_ghz(&self) -> f64 {
        f64::from(self.f_low_mhz) / 1e3
    }

    pub fn f_high_ghz(&self) -> f64 {
        f64::from(self.f_high_mhz) / 1e3
    }

    /// Listed band width.
    pub fn bandwidth_mhz(&self) -> u32 {
        self.listed_bw_mhz
    }

    pub fn bandwidth_ghz(&self) -> f64 {
        f64::from(self.bandwidth_mhz()) / 1e3
    }

    /// `f_high - f_low`; the width available for placing cores.
    pub fn span_mhz(&self) -> u32 {
        self.f_high_mhz - self.f_low_mhz
    }
}

use LinkType::{Downlink, InterSatellite, Uplink};

static BANDS: [SpectrumBand; 26] = [
    SpectrumBand::new(Uplink, 12_500, 13_250),
    // Listed as 1.0 GHz wide although the edges span 1.05 GHz.
    SpectrumBand::new(Uplink, 13_750, 14_800).listed_bw(1_000),
    SpectrumBand::new(Uplink, 27_500, 31_000)
        .note("secondary to LMDS")
        .secondary(),
    SpectrumBand::new(Uplink, 42_500, 47_000),
    SpectrumBand::new(Uplink, 48_200, 50_200),
    SpectrumBand::new(Uplink, 50_400, 51_400),
    SpectrumBand::new(Uplink, 81_000, 86_000),
    SpectrumBand::new(Uplink, 209_000, 226_000),
    SpectrumBand::new(Uplink, 252_000, 275_000),
    SpectrumBand::new(Downlink, 10_700, 11_700),
    SpectrumBand::new(Downlink, 17_700, 21_200),
    SpectrumBand::new(Downlink, 37_000, 42_500),
    SpectrumBand::new(Downlink, 66_000, 76_000).note("66-71 GHz shared with inter-satellite"),
    SpectrumBand::new(Downlink, 123_000, 130_000),
    SpectrumBand::new(Downlink, 158_500, 164_000),
    SpectrumBand::new(Downlink, 167_000, 174_500),
    SpectrumBand::new(Downlink, 191_800, 200_000),
    SpectrumBand::new(Downlink, 232_000, 240_000),
    SpectrumBand::new(InterSatellite, 22_550, 23_550),
    SpectrumBand::new(InterSatellite, 25_250, 27_500),
    SpectrumBand::new(InterSatellite, 59_000, 66_000).note("oxygen absorption band; unlicensed"),
    SpectrumBand::new(InterSatellite, 66_000, 71_000).note("shared with downlink"),
    SpectrumBand::new(InterSatellite, 116_000, 123_000),
    SpectrumBand::new(InterSatellite, 130_000, 134_000),
    SpectrumBand::new(InterSatellite, 174_500, 182_000),
    SpectrumBand::new(InterSatellite, 185_000, 190_000),
];

/// The built-in band table, grouped by link type in ascending frequency.
pub fn builtin_table() -> &'static [SpectrumBand] {
    &BANDS
}

pub fn bands(link_type: LinkType) -> impl Iterator<Item = &'static SpectrumBand> {
    BANDS.iter().filter(move |b| b.link_type == link_type)
}

/// Sum of listed band widths for one link type.
pub fn total_bandwidth(link_type: LinkType) -> f64 {
    let mhz: u32 = bands(link_type).map(SpectrumBand::bandwidth_mhz).sum();
    f64::from(mhz) / 1e3
}

/// Writes the band table as CSV: `link_type,f_low_ghz,f_high_ghz,bw_ghz,note`.
pub fn write_table_csv<W: io::Write>(out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["link_type", "f_low_ghz", "f_high_ghz", "bw_ghz", "note"])?;
    for band in builtin_table() {
        w.write_record([
            band.link_type.as_str().to_string(),
            band.f_low_ghz().to_string(),
            band.f_high_ghz().to_string(),
            band.bandwidth_ghz().to_string(),
            band.note.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Which bands an allocation may use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllocationOptions {
    /// Bands are truncated at this frequency; bands starting at or above it
    /// are skipped. `None` disables the cutoff.
    pub max_frequency_ghz: Option<f64>,
    pub include_secondary: bool,
}

impl AllocationOptions {
    pub fn default_for(link_type: LinkType) -> Self {
        Self {
            max_frequency_ghz: link_type.default_max_frequency_ghz(),
            include_secondary: true,
        }
    }

    pub fn uncapped() -> Self {
        Self {
            max_frequency_ghz: None,
            include_secondary: true,
        }
    }

    pub fn with_max_frequency(mut self, max_frequency_ghz: Option<f64>) -> Self {
        self.max_frequency_ghz = max_frequency_ghz;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Placement {
    pub band: SpectrumBand,
    pub core_index: usize,
    pub f_start_ghz: f64,
    pub f_end_ghz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreAllocation {
    pub link_type: LinkType,
    pub core_bandwidth_ghz: f64,
    pub requested: usize,
    pub granted: usize,
    pub placements: Vec<Placement>,
}

impl CoreAllocation {
    pub fn is_complete(&self) -> bool {
        self.granted == self.requested
    }
}

const KHZ_PER_GHZ: f64 = 1e6;
const KHZ_PER_MHZ: u64 = 1_000;

struct Segment {
    band: SpectrumBand,
    lo_khz: u64,
    hi_khz: u64,
}

impl Segment {
    fn width_khz(&self) -> u64 {
        self.hi_khz - self.lo_khz
    }
}

fn width_khz(core_bandwidth_ghz: f64) -> Result<u64> {
    let w = require_positive("core_bandwidth_ghz", core_bandwidth_ghz)?;
    let khz = (w * KHZ_PER_GHZ).round();
    if khz < 1.0 {
        return Err(Error::domain("core_bandwidth_ghz", w, "must be at least 1 kHz"));
    }
    Ok(khz as u64)
}

fn eligible_segments(link_type: LinkType, opts: &AllocationOptions) -> Result<Vec<Segment>> {
    let cutoff_khz = match opts.max_frequency_ghz {
        Some(f) => Some((require_positive("max_frequency_ghz", f)? * KHZ_PER_GHZ).round() as u64),
        None => None,
    };
    let mut segments: Vec<Segment> = bands(link_type)
        .filter(|b| opts.include_secondary || !b.secondary)
        .filter_map(|b| {
            let lo = u64::from(b.f_low_mhz) * KHZ_PER_MHZ;
            let hi = u64::from(b.f_high_mhz) * KHZ_PER_MHZ;
            let hi = match cutoff_khz {
                Some(cut) if cut <= lo => return None,
                Some(cut) => hi.min(cut),
                None => hi,
            };
            Some(Segment { band: *b, lo_khz: lo, hi_khz: hi })
        })
        .collect();
    segments.sort_by_key(|s| (s.lo_khz, s.hi_khz));
    Ok(segments)
}

/// Number of whole cores of `core_bandwidth_ghz` that fit in the eligible
/// bands without straddling a band edge.
pub fn max_cores(link_type: LinkType, core_bandwidth_ghz: f64, opts: &AllocationOptions) -> Result<usize> {
    let w = width_khz(core_bandwidth_ghz)?;
    Ok(eligible_segments(link_type, opts)?
        .iter()
        .map(|s| (s.width_khz() / w) as usize)
        .sum())
}

/// Places up to `count` cores lowest frequency first. A partial grant is
/// not an error; it is reported through `granted < requested`.
pub fn allocate_cores(
    link_type: LinkType,
    core_bandwidth_ghz: f64,
    count: usize,
    opts: &AllocationOptions,
) -> Result<CoreAllocation> {
    let w = width_khz(core_bandwidth_ghz)?;
    if count == 0 {
        return Err(Error::domain("count", 0.0, "must be at least 1"));
    }
    let segments = eligible_segments(link_type, opts)?;
    let widest = segments.iter().map(Segment::width_khz).max().unwrap_or(0);
    if widest < w {
        return Err(Error::NoBandFits {
            core_width_ghz: core_bandwidth_ghz,
            widest_band_ghz: widest as f64 / KHZ_PER_GHZ,
        });
    }

    let mut placements = Vec::with_capacity(count);
    'outer: for seg in &segments {
        let mut start = seg.lo_khz;
        while start + w <= seg.hi_khz {
            if placements.len() == count {
                break 'outer;
            }
            placements.push(Placement {
                band: seg.band,
                core_index: placements.len(),
                f_start_ghz: start as f64 / KHZ_PER_GHZ,
                f_end_ghz: (start + w) as f64 / KHZ_PER_GHZ,
            });
            start += w;
        }
    }

    Ok(CoreAllocation {
        link_type,
        core_bandwidth_ghz,
        requested: count,
        granted: placements.len(),
        placements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        assert_eq!(bands(Uplink).count(), 9);
        assert_eq!(bands(Downlink).count(), 9);
        assert_eq!(bands(InterSatellite).count(), 8);
        for b in builtin_table() {
            assert!(b.f_low_mhz < b.f_high_mhz, "{b:?}");
        }
    }

    #[test]
    fn listed_widths_match_edges() {
        let mismatched: Vec<_> = builtin_table()
            .iter()
            .filter(|b| b.span_mhz().abs_diff(b.listed_bw_mhz) > 10)
            .map(|b| (b.f_low_mhz, b.f_high_mhz, b.listed_bw_mhz))
            .collect();
        // The 13.75-14.8 GHz uplink row is listed as 1.0 GHz wide.
        assert_eq!(mismatched, vec![(13_750, 14_800, 1_000)]);
    }

    #[test]
    fn totals_are_exact() {
        assert_eq!(total_bandwidth(Uplink), 57.75);
        assert_eq!(total_bandwidth(Downlink), 56.2);
        assert_eq!(total_bandwidth(InterSatellite), 38.75);
    }

    #[test]
    fn shared_band_is_covered_by_both_links() {
        let covers = |link| bands(link).any(|b| b.f_low_mhz <= 66_000 && b.f_high_mhz >= 71_000);
        assert!(covers(Downlink));
        assert!(covers(InterSatellite));
        assert!(!covers(Uplink));
    }

    #[test]
    fn hand_counted_capacities() {
        let up = AllocationOptions::default_for(Uplink);
        let down = AllocationOptions::default_for(Downlink);
        let isl = AllocationOptions::default_for(InterSatellite);
        assert_eq!(max_cores(Uplink, 1.0, &up).unwrap(), 16);
        assert_eq!(max_cores(Uplink, 2.0, &up).unwrap(), 6);
        assert_eq!(max_cores(Downlink, 1.0, &down).unwrap(), 31);
        assert_eq!(max_cores(InterSatellite, 1.0, &isl).unwrap(), 38);
        assert_eq!(max_cores(Uplink, 50.0, &up).unwrap(), 0);
    }

    #[test]
    fn uplink_request_is_partially_granted() {
        let a = allocate_cores(Uplink, 1.0, 32, &AllocationOptions::default_for(Uplink)).unwrap();
        assert_eq!(a.requested, 32);
        assert_eq!(a.granted, 16);
        assert!(!a.is_complete());
        let per_band: Vec<(u32, usize)> = [13_750, 27_500, 42_500, 48_200, 50_400, 81_000]
            .iter()
            .map(|&lo| (lo, a.placements.iter().filter(|p| p.band.f_low_mhz == lo).count()))
            .collect();
        assert_eq!(per_band, vec![(13_750, 1), (27_500, 3), (42_500, 4), (48_200, 2), (50_400, 1), (81_000, 5)]);
        assert_eq!(a.placements[0].f_start_ghz, 13.75);
        assert_eq!(a.placements[0].f_end_ghz, 14.75);
    }

    #[test]
    fn isl_request_is_fully_granted() {
        let a = allocate_cores(InterSatellite, 1.0, 38, &AllocationOptions::default_for(InterSatellite)).unwrap();
        assert_eq!(a.granted, 38);
        assert!(a.is_complete());
    }

    #[test]
    fn cutoff_truncates_straddling_band() {
        let opts = AllocationOptions::uncapped().with_max_frequency(Some(161.0));
        let a = allocate_cores(Downlink, 1.0, 100, &opts).unwrap();
        let top = a.placements.last().unwrap();
        assert_eq!(top.band.f_low_mhz, 158_500);
        assert_eq!(top.f_end_ghz, 160.5);
        assert_eq!(a.granted, max_cores(Downlink, 1.0, &opts).unwrap());
    }

    #[test]
    fn secondary_bands_can_be_excluded() {
        let mut opts = AllocationOptions::default_for(Uplink);
        opts.include_secondary = false;
        assert_eq!(max_cores(Uplink, 1.0, &opts).unwrap(), 13);
    }

    #[test]
    fn degenerate_requests() {
        let opts = AllocationOptions::default_for(Uplink);
        assert!(matches!(allocate_cores(Uplink, 0.0, 4, &opts), Err(Error::Domain { .. })));
        assert!(matches!(allocate_cores(Uplink, 1.0, 0, &opts), Err(Error::Domain { .. })));
        match allocate_cores(Uplink, 6.0, 1, &opts) {
            Err(Error::NoBandFits { widest_band_ghz, .. }) => assert_eq!(widest_band_ghz, 5.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn link_type_parsing() {
        assert_eq!("inter-satellite".parse::<LinkType>().unwrap(), InterSatellite);
        assert_eq!("Downlink".parse::<LinkType>().unwrap(), Downlink);
        assert!("sideways".parse::<LinkType>().is_err());
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        write_table_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "link_type,f_low_ghz,f_high_ghz,bw_ghz,note");
        assert_eq!(lines.len(), 27);
        assert_eq!(lines[1], "uplink,12.5,13.25,0.75,");
        assert!(!text.contains('\r'));
    }
}
