#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn leoplan<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_leoplan"))
        .args(args)
        .output()
        .expect("spawn leoplan");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn json(args: &[&str]) -> serde_json::Value {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--format", "json"]);
    let run = leoplan(&full);
    assert_eq!(run.code, 0, "{full:?}: {}", run.stderr);
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{full:?}: invalid json: {e}\n{}", run.stdout))
}

/// Parses CSV output; checks the header and that every record has as many
/// fields as the header.
pub fn csv_rows(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--format", "csv"]);
    let run = leoplan(&full);
    assert_eq!(run.code, 0, "{full:?}: {}", run.stderr);
    assert!(!run.stdout.contains('\r'), "CRLF in csv output");
    let mut reader = csv::ReaderBuilder::new().from_reader(run.stdout.as_bytes());
    let header: Vec<String> = reader.headers().expect("csv header").iter().map(String::from).collect();
    assert!(!header.is_empty());
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.expect("csv record").iter().map(String::from).collect())
        .collect();
    assert!(rows.iter().all(|r| r.len() == header.len()));
    (header, rows)
}

/// Every subcommand shape that produces a report without a config file.
pub const EVERY_SUBCOMMAND: &[&[&str]] = &[
    &["linkbudget", "--reference"],
    &["linkbudget", "--reference", "--sweep", "link_budget.distance_km=500:2000:4"],
    &["latency", "--q", "0.5"],
    &["latency", "--curve", "0.05:0.5:10"],
    &["spectrum", "list"],
    &["spectrum", "totals"],
    &["spectrum", "allocate", "--link", "uplink", "--core-bw", "1", "--count", "32"],
    &["plan", "--capacity-zb", "1", "--per-sat-tbps", "1", "--utilization", "0.6667"],
    &["project", "--base-eb", "1", "--base-year", "2013", "--year", "2028"],
    &["orbit", "--altitude", "160"],
    &["aperture", "--gain", "51", "--freq", "30"],
    &["aperture", "--curve", "30:150:13", "--gain", "50"],
];

/// Checks the SVG is well-formed XML with one polyline per series and
/// labeled axes; returns the polyline count.
pub fn check_svg(text: &str) -> usize {
    let doc = roxmltree::Document::parse(text).expect("well-formed svg");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let labels = |class: &str| {
        root.descendants()
            .filter(|n| n.attribute("class") == Some(class))
            .filter_map(|n| n.text())
            .any(|t| !t.trim().is_empty())
    };
    assert!(labels("x-label") && labels("y-label"), "missing axis labels");
    root.descendants().filter(|n| n.has_tag_name("polyline")).count()
}

pub fn write_temp(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}
