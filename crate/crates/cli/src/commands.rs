use leoplan_core::geometry::{self, OrbitQuery};
use leoplan_core::latency;
use leoplan_core::linkbudget::{self, LinkBudgetResult, MccAggregate};
use leoplan_core::planner::{self, TrafficProjection, BYTES_PER_EB, BYTES_PER_ZB};
use leoplan_core::spectrum::{self, AllocationOptions, LinkType};
use leoplan_core::{LinkBudgetSpec, MccConfig, PhysicalModel};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{
    AllocateArgs, ApertureArgs, Command, LatencyArgs, LinkbudgetArgs, OrbitArgs, PlanArgs, ProjectArgs, Scale,
    SpectrumAction,
};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::report::{Cell, Report};
use crate::svg::{Plot, Series};
use crate::sweep::{parse_range, spaced, SweepSpec};

/// Apertures plotted when `aperture --curve` gets no `--gain`.
const DEFAULT_CURVE_GAINS_DBI: [f64; 4] = [40.0, 50.0, 60.0, 70.0];

pub fn run(command: &Command, config: &RunConfig) -> Result<Report> {
    let model = config.physical_model();
    model.validate()?;
    match command {
        Command::Linkbudget(args) => linkbudget_cmd(args, config),
        Command::Latency(args) => latency_cmd(args, &model),
        Command::Spectrum(args) => match &args.action {
            SpectrumAction::List => Ok(spectrum_list()),
            SpectrumAction::Totals => Ok(spectrum_totals()),
            SpectrumAction::Allocate(a) => spectrum_allocate(a),
        },
        Command::Plan(args) => plan_cmd(args),
        Command::Project(args) => project_cmd(args),
        Command::Orbit(args) => orbit_cmd(args, &model),
        Command::Aperture(args) => aperture_cmd(args, &model),
    }
}

struct BudgetPoint {
    result: LinkBudgetResult,
    aggregate: Option<MccAggregate>,
}

fn evaluate_config(cfg: &RunConfig) -> Result<BudgetPoint> {
    let spec = cfg
        .link_budget
        .as_ref()
        .ok_or_else(|| CliError::input("config has no link_budget section (pass --config or --reference)"))?;
    let result = linkbudget::evaluate(spec, &cfg.physical_model())?;
    let aggregate = cfg.mcc.as_ref().map(|mcc| linkbudget::aggregate(&result, mcc)).transpose()?;
    Ok(BudgetPoint { result, aggregate })
}

/// The config echoed into JSON reports. Feeding it back through `--config`
/// reproduces the same numbers.
fn resolved_config(cfg: &RunConfig) -> RunConfig {
    RunConfig {
        physical_model: Some(cfg.physical_model()),
        link_budget: cfg.link_budget,
        mcc: cfg.mcc,
        output_format: None,
        output_path: None,
    }
}

fn linkbudget_cmd(args: &LinkbudgetArgs, config: &RunConfig) -> Result<Report> {
    let mut cfg = resolved_config(config);
    if cfg.link_budget.is_none() {
        if !args.reference {
            return Err(CliError::input(
                "config has no link_budget section (pass --config <path> or --reference)",
            ));
        }
        cfg.link_budget = Some(LinkBudgetSpec::reference());
        cfg.mcc.get_or_insert_with(MccConfig::reference);
    }
    match &args.sweep {
        Some(text) => linkbudget_sweep(&SweepSpec::parse(text, args.scale)?, &cfg),
        None => linkbudget_single(args, &cfg),
    }
}

fn linkbudget_single(args: &LinkbudgetArgs, cfg: &RunConfig) -> Result<Report> {
    let spec = cfg.link_budget.expect("link budget resolved");
    let model = cfg.physical_model();
    let BudgetPoint { result: r, aggregate } = evaluate_config(cfg)?;
    let required_gain = args
        .target_se
        .map(|se| linkbudget::solve_required_gain(&spec, se, &model))
        .transpose()?;

    let mut rep = Report::key_value("Link budget");
    rep.kv("Transmit power", Cell::db(spec.tx_power_dbm), "dBm");
    rep.kv("Transmit antenna gain", Cell::db(spec.tx_antenna_gain_dbi), "dBi");
    rep.kv("Carrier frequency", Cell::plain(spec.carrier_frequency_ghz), "GHz");
    rep.kv("Distance", Cell::plain(spec.distance_km), "km");
    rep.kv("Propagation loss", Cell::db(r.fspl_db), "dB");
    rep.kv("Atmospheric loss", Cell::db(spec.atmospheric_loss_db), "dB");
    rep.kv("Other path losses", Cell::db(spec.other_path_loss_db), "dB");
    rep.kv("Tx front end loss", Cell::db(spec.tx_frontend_loss_db), "dB");
    rep.kv("Receive antenna gain", Cell::db(spec.rx_antenna_gain_dbi), "dBi");
    rep.kv("Received power", Cell::db(r.received_power_dbm), "dBm");
    rep.kv("Bandwidth", Cell::plain(spec.core_bandwidth_ghz), "GHz");
    rep.kv("Thermal noise PSD", Cell::db(spec.noise_psd_dbm_hz), "dBm/Hz");
    rep.kv("Receiver noise figure", Cell::db(spec.noise_figure_db), "dB");
    rep.kv("Thermal noise", Cell::db(r.noise_power_dbm), "dBm");
    rep.kv("SNR", Cell::db(r.snr_db), "dB");
    rep.kv("Implementation loss", Cell::db(spec.implementation_loss_db), "dB");
    rep.kv("Spectral efficiency", Cell::rate(r.spectral_efficiency), "b/s/Hz");
    rep.kv("Data rate / comm-core", Cell::rate(r.rate_per_core_gbps), "Gb/s");
    if let (Some(agg), Some(mcc)) = (&aggregate, &cfg.mcc) {
        rep.kv("BW cores", Cell::from(u64::from(mcc.bw_cores)), "");
        rep.kv("Spatial cores", Cell::from(u64::from(mcc.spatial_cores)), "");
        rep.kv("Number of comm-cores", Cell::from(agg.total_cores), "");
        rep.kv("Aggregate data rate", Cell::rate(agg.total_rate_tbps), "Tb/s");
        rep.kv("Aggregate bandwidth", Cell::plain(agg.total_bandwidth_ghz), "GHz");
        rep.kv("Total PA power", Cell::plain(agg.total_pa_power_w), "W");
    }
    if let (Some(gain), Some(se)) = (required_gain, args.target_se) {
        rep.kv(&format!("Rx gain for SE {se}"), Cell::db(gain), "dBi");
    }
    if let Some(cap) = spec.max_se {
        if r.spectral_efficiency >= cap {
            rep.note(format!("spectral efficiency capped at max_se = {cap} b/s/Hz"));
        }
    }
    rep.json = json!({
        "command": "linkbudget",
        "config": resolved_config(cfg),
        "result": r,
        "aggregate": aggregate,
        "required_rx_gain_dbi": required_gain,
        "target_se": args.target_se,
    });
    Ok(rep)
}

fn linkbudget_sweep(sweep: &SweepSpec, cfg: &RunConfig) -> Result<Report> {
    let values = sweep.values();
    let points: Vec<(f64, BudgetPoint)> = values
        .par_iter()
        .map(|&v| {
            let point_cfg = cfg.with_parameter(&sweep.parameter, v)?;
            Ok((v, evaluate_config(&point_cfg)?))
        })
        .collect::<Result<_>>()?;

    let with_mcc = cfg.mcc.is_some();
    let mut columns = vec![
        sweep.parameter.as_str(),
        "fspl_db",
        "received_power_dbm",
        "noise_power_dbm",
        "snr_db",
        "spectral_efficiency",
        "rate_per_core_gbps",
    ];
    if with_mcc {
        columns.push("total_rate_tbps");
    }
    let mut rep = Report::new(format!("Link budget sweep over {}", sweep.parameter), &columns);
    let mut json_points = Vec::with_capacity(points.len());
    for (v, p) in &points {
        let r = &p.result;
        let mut row = vec![
            Cell::plain(*v),
            Cell::db(r.fspl_db),
            Cell::db(r.received_power_dbm),
            Cell::db(r.noise_power_dbm),
            Cell::db(r.snr_db),
            Cell::rate(r.spectral_efficiency),
            Cell::rate(r.rate_per_core_gbps),
        ];
        if let Some(agg) = &p.aggregate {
            row.push(Cell::rate(agg.total_rate_tbps));
        }
        rep.push(row);
        json_points.push(json!({ "value": v, "result": r, "aggregate": p.aggregate }));
    }
    rep.plot = Some(Plot {
        title: format!("SNR versus {}", sweep.parameter),
        x_label: sweep.parameter.clone(),
        y_label: "SNR (dB)".into(),
        x_log: sweep.scale == Scale::Log,
        y_log: false,
        series: vec![Series {
            name: "SNR".into(),
            points: points.iter().map(|(v, p)| (*v, p.result.snr_db)).collect(),
        }],
    });
    rep.json = json!({
        "command": "linkbudget",
        "config": cfg,
        "sweep": sweep,
        "points": json_points,
    });
    Ok(rep)
}

fn latency_cmd(args: &LatencyArgs, model: &PhysicalModel) -> Result<Report> {
    if let Some(curve) = &args.curve {
        let (q_min, q_max, steps) = parse_range(curve)?;
        let points = latency::delay_curve(q_min, q_max, steps, model)?;
        let mut rep = Report::new("Break-even altitude versus path length", &["q", "breakeven_altitude_km"]);
        for &(q, h) in &points {
            rep.push(vec![Cell::plain(q), Cell::fixed(h, 1)]);
        }
        rep.plot = Some(Plot {
            title: "Satellite altitude for equal fiber and space delay".into(),
            x_label: "fraction of Earth circumference q".into(),
            y_label: "break-even altitude (km)".into(),
            x_log: false,
            y_log: false,
            series: vec![Series {
                name: format!("n = {}", model.fiber_index),
                points: points.clone(),
            }],
        });
        rep.json = json!({
            "command": "latency",
            "physical_model": model,
            "curve": points.iter().map(|(q, h)| json!({ "q": q, "breakeven_altitude_km": h })).collect::<Vec<_>>(),
        });
        return Ok(rep);
    }

    let q = args
        .q
        .ok_or_else(|| CliError::input("latency needs --q <fraction> or --curve Q_MIN:Q_MAX:STEPS"))?;
    let b = latency::breakdown(q, args.altitude, model)?;
    let mut rep = Report::key_value("Fiber versus space delay");
    rep.kv("q", Cell::plain(b.q), "");
    rep.kv("Satellite altitude", Cell::fixed(b.altitude_km, 1), "km");
    rep.kv("Break-even altitude", Cell::fixed(b.breakeven_altitude_km, 1), "km");
    rep.kv("Fiber distance", Cell::fixed(b.fiber_distance_km, 1), "km");
    rep.kv("Fiber one-way delay", Cell::fixed(b.fiber_delay_ms, 2), "ms");
    rep.kv("Space distance", Cell::fixed(b.space_distance_km, 1), "km");
    rep.kv("Space one-way delay", Cell::fixed(b.space_delay_ms, 2), "ms");
    rep.kv("Space minus fiber", Cell::fixed(b.space_delay_ms - b.fiber_delay_ms, 2), "ms");
    if b.beyond_antipodal {
        rep.note(format!(
            "q = {q} exceeds the antipodal limit {}; computed along the longer route",
            latency::ANTIPODAL_FRACTION
        ));
    }
    rep.json = json!({ "command": "latency", "physical_model": model, "breakdown": b });
    Ok(rep)
}

fn spectrum_list() -> Report {
    let mut rep = Report::new(
        "Satellite spectrum bands",
        &["link_type", "f_low_ghz", "f_high_ghz", "bw_ghz", "note"],
    );
    let mut rows = Vec::new();
    for b in spectrum::builtin_table() {
        rep.push(vec![
            Cell::text(b.link_type.as_str()),
            Cell::plain(b.f_low_ghz()),
            Cell::plain(b.f_high_ghz()),
            Cell::plain(b.bandwidth_ghz()),
            Cell::text(b.note),
        ]);
        rows.push(json!({
            "link_type": b.link_type,
            "f_low_ghz": b.f_low_ghz(),
            "f_high_ghz": b.f_high_ghz(),
            "bw_ghz": b.bandwidth_ghz(),
            "note": b.note,
            "secondary": b.secondary,
        }));
    }
    rep.json = json!({ "command": "spectrum list", "count": rows.len(), "bands": rows });
    rep
}

fn spectrum_totals() -> Report {
    let mut rep = Report::new("Total satellite spectrum", &["link_type", "total_bw_ghz"]);
    let mut totals = serde_json::Map::new();
    for link in LinkType::ALL {
        let total = spectrum::total_bandwidth(link);
        rep.push(vec![Cell::text(link.as_str()), Cell::plain(total)]);
        totals.insert(link.as_str().into(), json!(total));
    }
    rep.json = json!({ "command": "spectrum totals", "totals": totals });
    rep
}

fn spectrum_allocate(a: &AllocateArgs) -> Result<Report> {
    let mut opts = AllocationOptions::default_for(a.link);
    if a.no_cutoff {
        opts.max_frequency_ghz = None;
    } else if a.max_freq.is_some() {
        opts.max_frequency_ghz = a.max_freq;
    }
    opts.include_secondary = !a.exclude_secondary;
    let alloc = spectrum::allocate_cores(a.link, a.core_bw, a.count, &opts)?;
    let ceiling = spectrum::max_cores(a.link, a.core_bw, &opts)?;

    let mut rep = Report::new(
        format!(
            "{} allocation: {} of {} cores of {} GHz",
            a.link, alloc.granted, alloc.requested, a.core_bw
        ),
        &["core_index", "band_f_low_ghz", "band_f_high_ghz", "f_start_ghz", "f_end_ghz"],
    );
    for p in &alloc.placements {
        rep.push(vec![
            Cell::from(p.core_index as u64),
            Cell::plain(p.band.f_low_ghz()),
            Cell::plain(p.band.f_high_ghz()),
            Cell::plain(p.f_start_ghz),
            Cell::plain(p.f_end_ghz),
        ]);
    }
    if !alloc.is_complete() {
        let cutoff = match opts.max_frequency_ghz {
            Some(f) => format!("below {f} GHz"),
            None => "with no frequency cutoff".into(),
        };
        rep.note(format!(
            "only {} of {} requested cores fit in {} bands {cutoff}",
            alloc.granted, alloc.requested, a.link
        ));
    }
    let placements: Vec<Value> = alloc
        .placements
        .iter()
        .map(|p| {
            json!({
                "core_index": p.core_index,
                "band_f_low_ghz": p.band.f_low_ghz(),
                "band_f_high_ghz": p.band.f_high_ghz(),
                "f_start_ghz": p.f_start_ghz,
                "f_end_ghz": p.f_end_ghz,
            })
        })
        .collect();
    rep.json = json!({
        "command": "spectrum allocate",
        "link_type": alloc.link_type,
        "core_bandwidth_ghz": alloc.core_bandwidth_ghz,
        "max_frequency_ghz": opts.max_frequency_ghz,
        "include_secondary": opts.include_secondary,
        "requested": alloc.requested,
        "granted": alloc.granted,
        "max_cores": ceiling,
        "placements": placements,
    });
    Ok(rep)
}

fn parse_users(users: f64) -> Result<u64> {
    if users.is_finite() && users >= 1.0 && users.fract() == 0.0 && users <= u64::MAX as f64 {
        Ok(users as u64)
    } else {
        Err(CliError::input(format!("--users must be a positive whole number (got {users})")))
    }
}

fn plan_cmd(args: &PlanArgs) -> Result<Report> {
    let plan = planner::plan(args.capacity_zb, args.per_sat_tbps, args.utilization, args.month_days)?;
    let per_user = args
        .users
        .map(|u| -> Result<(u64, f64)> {
            let users = parse_users(u)?;
            Ok((users, planner::per_user_volume(args.capacity_zb, users)?))
        })
        .transpose()?;

    let mut rep = Report::key_value("Constellation sizing");
    rep.kv("Capacity", Cell::plain(plan.capacity_zb_per_month), "ZB/month");
    rep.kv("Month length", Cell::plain(plan.month_days), "days");
    rep.kv("Sustained rate", Cell::rate(plan.sustained_rate_tbps), "Tb/s");
    rep.kv("Per-satellite rate", Cell::plain(plan.per_satellite_rate_tbps), "Tb/s");
    rep.kv("Utilization", Cell::fixed(plan.utilization, 4), "");
    rep.kv("Satellites", Cell::from(plan.satellites), "");
    if let Some((users, gb)) = per_user {
        rep.kv("Users", Cell::from(users), "");
        rep.kv("Volume per user", Cell::rate(gb), "GB/month");
    }
    rep.json = json!({
        "command": "plan",
        "plan": plan,
        "users": per_user.map(|p| p.0),
        "per_user_volume_gb": per_user.map(|p| p.1),
    });
    Ok(rep)
}

fn project_cmd(args: &ProjectArgs) -> Result<Report> {
    let projection = TrafficProjection {
        base_year: args.base_year,
        base_volume: args.base_eb,
        growth: args.growth,
    };
    let eb = planner::project_traffic(&projection, args.year)?;
    let zb = eb * BYTES_PER_EB / BYTES_PER_ZB;
    let mut rep = Report::key_value("Traffic projection");
    rep.kv("Base year", Cell::Int(i64::from(args.base_year)), "");
    rep.kv("Base volume", Cell::plain(args.base_eb), "EB/month");
    rep.kv("Growth per 5 years", Cell::plain(args.growth), "x");
    rep.kv("Target year", Cell::Int(i64::from(args.year)), "");
    rep.kv("Projected volume", Cell::rate(eb), "EB/month");
    rep.kv("Projected volume", Cell::rate(zb), "ZB/month");
    rep.json = json!({
        "command": "project",
        "projection": projection,
        "target_year": args.year,
        "projected_eb_per_month": eb,
        "projected_zb_per_month": zb,
    });
    Ok(rep)
}

fn orbit_cmd(args: &OrbitArgs, model: &PhysicalModel) -> Result<Report> {
    let q = OrbitQuery::new(args.altitude).with_mask(args.mask);
    let period = geometry::orbital_period(&q, model)?;
    let coverage = geometry::coverage_fraction(&q, model)?;
    let half_angle = geometry::coverage_half_angle(&q, model)?.to_degrees();
    let nadir = geometry::slant_range(&q, 90.0, model)?;
    let edge = geometry::slant_range(&q, args.mask, model)?;
    let rtt_nadir = geometry::round_trip_delay(nadir, model)?;
    let rtt_edge = geometry::round_trip_delay(edge, model)?;

    let mut rep = Report::key_value("Orbit geometry");
    rep.kv("Altitude", Cell::plain(args.altitude), "km");
    rep.kv("Elevation mask", Cell::plain(args.mask), "deg");
    rep.kv("Orbital period", Cell::fixed(period, 2), "min");
    rep.kv("Coverage fraction", Cell::fixed(coverage, 4), "");
    rep.kv("Coverage half-angle", Cell::fixed(half_angle, 2), "deg");
    rep.kv("Slant range at nadir", Cell::fixed(nadir, 1), "km");
    rep.kv("Slant range at mask", Cell::fixed(edge, 1), "km");
    rep.kv("Round trip at nadir", Cell::fixed(rtt_nadir, 2), "ms");
    rep.kv("Round trip at mask", Cell::fixed(rtt_edge, 2), "ms");
    rep.json = json!({
        "command": "orbit",
        "physical_model": model,
        "query": q,
        "period_min": period,
        "coverage_fraction": coverage,
        "coverage_half_angle_deg": half_angle,
        "slant_range_nadir_km": nadir,
        "slant_range_mask_km": edge,
        "round_trip_nadir_ms": rtt_nadir,
        "round_trip_mask_ms": rtt_edge,
    });
    Ok(rep)
}

fn aperture_cmd(args: &ApertureArgs, model: &PhysicalModel) -> Result<Report> {
    if let Some(curve) = &args.curve {
        let (f_min, f_max, steps) = parse_range(curve)?;
        if !(f_min > 0.0 && f_min < f_max && steps >= 2) {
            return Err(CliError::input(format!(
                "aperture curve needs 0 < F_MIN < F_MAX and STEPS >= 2 (got {curve})"
            )));
        }
        let gains: Vec<f64> = if args.gain.is_empty() {
            DEFAULT_CURVE_GAINS_DBI.to_vec()
        } else {
            args.gain.clone()
        };
        let freqs = spaced(f_min, f_max, steps, Scale::Linear);
        let series: Vec<Series> = gains
            .iter()
            .map(|&g| {
                let points = freqs
                    .iter()
                    .map(|&f| Ok((f, linkbudget::antenna_aperture(g, f, model)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Series {
                    name: format!("{g} dBi"),
                    points,
                })
            })
            .collect::<Result<_>>()?;

        let names: Vec<String> = gains.iter().map(|g| format!("aperture_m2_{g}dbi")).collect();
        let mut columns = vec!["frequency_ghz"];
        columns.extend(names.iter().map(String::as_str));
        let mut rep = Report::new("Antenna aperture versus frequency", &columns);
        for (i, &f) in freqs.iter().enumerate() {
            let mut row = vec![Cell::plain(f)];
            row.extend(series.iter().map(|s| Cell::rate(s.points[i].1)));
            rep.push(row);
        }
        rep.json = json!({
            "command": "aperture",
            "physical_model": model,
            "curves": series.iter().zip(&gains).map(|(s, g)| json!({
                "gain_dbi": g,
                "points": s.points.iter().map(|(f, a)| json!({ "frequency_ghz": f, "aperture_m2": a })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        rep.plot = Some(Plot {
            title: "Antenna aperture size versus frequency".into(),
            x_label: "frequency (GHz)".into(),
            y_label: "aperture (m²)".into(),
            x_log: false,
            y_log: true,
            series,
        });
        return Ok(rep);
    }

    let f = args
        .freq
        .ok_or_else(|| CliError::input("aperture needs --freq <GHz> (or --curve F_MIN:F_MAX:STEPS)"))?;
    let mut rep = Report::new("Antenna gain and aperture", &["gain_dbi", "frequency_ghz", "aperture_m2"]);
    let mut rows = Vec::new();
    if let Some(area) = args.area {
        let g = linkbudget::antenna_gain(area, f, model)?;
        rows.push((g, area));
    } else if !args.gain.is_empty() {
        for &g in &args.gain {
            rows.push((g, linkbudget::antenna_aperture(g, f, model)?));
        }
    } else {
        return Err(CliError::input("aperture needs --gain <dBi> or --area <m²>"));
    }
    for &(g, a) in &rows {
        rep.push(vec![Cell::db(g), Cell::plain(f), Cell::rate(a)]);
    }
    rep.json = json!({
        "command": "aperture",
        "physical_model": model,
        "frequency_ghz": f,
        "antennas": rows.iter().map(|(g, a)| json!({ "gain_dbi": g, "aperture_m2": a })).collect::<Vec<_>>(),
    });
    Ok(rep)
}
