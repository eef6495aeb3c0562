use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leoplan_core::LinkType;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Parser)]
#[command(name = "leoplan", version, about = "LEO satellite internet planning toolkit")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output format (defaults to the config's output_format, then table).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-core link budget and multi-comm-core aggregate.
    Linkbudget(LinkbudgetArgs),
    /// Fiber versus space-path delay and the break-even altitude.
    Latency(LatencyArgs),
    /// Satellite spectrum table, totals and core allocation.
    Spectrum(SpectrumArgs),
    /// Satellites needed to carry a monthly volume.
    Plan(PlanArgs),
    /// Traffic growth projection.
    Project(ProjectArgs),
    /// Orbital period, coverage and slant range.
    Orbit(OrbitArgs),
    /// Antenna gain and aperture conversion.
    Aperture(ApertureArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct LinkbudgetArgs {
    /// Use the built-in 100 GHz / 1500 km reference link with 32x8 cores
    /// when the config does not supply a link budget.
    #[arg(long)]
    pub reference: bool,

    /// Sweep a config parameter: PATH=START:STOP:STEPS, e.g.
    /// link_budget.distance_km=500:2000:4.
    #[arg(long, value_name = "PATH=START:STOP:STEPS")]
    pub sweep: Option<String>,

    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,

    /// Also report the receive gain needed for this spectral efficiency.
    #[arg(long, value_name = "B/S/HZ")]
    pub target_se: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct LatencyArgs {
    /// Fraction of the Earth's circumference between the endpoints.
    #[arg(long)]
    pub q: Option<f64>,

    /// Satellite altitude in km (defaults to the break-even altitude).
    #[arg(long)]
    pub altitude: Option<f64>,

    /// Break-even curve over Q_MIN:Q_MAX:STEPS.
    #[arg(long, value_name = "Q_MIN:Q_MAX:STEPS")]
    pub curve: Option<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(subcommand)]
    pub action: SpectrumAction,
}

#[derive(Debug, Subcommand)]
pub enum SpectrumAction {
    /// Every band in the table.
    List,
    /// Total bandwidth per link type.
    Totals,
    /// Place fixed-width comm-cores, lowest frequency first.
    Allocate(AllocateArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct AllocateArgs {
    #[arg(long, value_parser = parse_link_type)]
    pub link: LinkType,

    /// Core width in GHz.
    #[arg(long, value_name = "GHZ")]
    pub core_bw: f64,

    #[arg(long)]
    pub count: usize,

    /// Upper frequency limit in GHz (default: 164 for uplink/downlink, none
    /// for inter-satellite).
    #[arg(long, value_name = "GHZ", conflicts_with = "no_cutoff")]
    pub max_freq: Option<f64>,

    /// Ignore the frequency limit.
    #[arg(long)]
    pub no_cutoff: bool,

    /// Skip bands allocated on a secondary basis.
    #[arg(long)]
    pub exclude_secondary: bool,
}

fn parse_link_type(s: &str) -> Result<LinkType, String> {
    s.parse().map_err(|e: leoplan_core::spectrum::ParseLinkTypeError| e.to_string())
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PlanArgs {
    /// Monthly volume in ZB.
    #[arg(long, value_name = "ZB")]
    pub capacity_zb: f64,

    #[arg(long, value_name = "TBPS", default_value_t = 1.0)]
    pub per_sat_tbps: f64,

    #[arg(long, default_value_t = 2.0 / 3.0)]
    pub utilization: f64,

    #[arg(long, default_value_t = leoplan_core::planner::DEFAULT_MONTH_DAYS)]
    pub month_days: f64,

    /// Number of users to share the capacity (accepts e.g. 5e9).
    #[arg(long)]
    pub users: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProjectArgs {
    /// Monthly volume in the base year, in EB.
    #[arg(long, value_name = "EB")]
    pub base_eb: f64,

    #[arg(long)]
    pub base_year: i32,

    #[arg(long)]
    pub year: i32,

    /// Growth factor per five years.
    #[arg(long, default_value_t = leoplan_core::planner::DEFAULT_GROWTH_PER_5Y)]
    pub growth: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OrbitArgs {
    /// Altitude in km.
    #[arg(long)]
    pub altitude: f64,

    /// Elevation mask in degrees.
    #[arg(long, default_value_t = 0.0)]
    pub mask: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ApertureArgs {
    /// Frequency in GHz.
    #[arg(long, value_name = "GHZ")]
    pub freq: Option<f64>,

    /// Antenna gain in dBi; repeat for several curves.
    #[arg(long, value_name = "DBI", conflicts_with = "area")]
    pub gain: Vec<f64>,

    /// Aperture area in m².
    #[arg(long, value_name = "M2")]
    pub area: Option<f64>,

    /// Aperture versus frequency over F_MIN:F_MAX:STEPS (GHz), one series
    /// per --gain.
    #[arg(long, value_name = "F_MIN:F_MAX:STEPS")]
    pub curve: Option<String>,
}
