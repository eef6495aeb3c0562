use serde::Serialize;

use crate::args::Scale;
use crate::error::{CliError, Result};

/// `START:STOP:STEPS` with an optional parameter path in front.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl SweepSpec {
    /// Parses `PATH=START:STOP:STEPS`. A path without a dot is taken to be a
    /// link-budget field.
    pub fn parse(text: &str, scale: Scale) -> Result<Self> {
        let (path, range) = text
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("sweep {text:?} must look like PATH=START:STOP:STEPS")))?;
        let path = path.trim();
        if path.is_empty() {
            return Err(CliError::input("sweep parameter path is empty"));
        }
        let parameter = if path.contains('.') {
            path.to_string()
        } else {
            format!("link_budget.{path}")
        };
        let (start, stop, steps) = parse_range(range)?;
        Self::new(parameter, start, stop, steps, scale)
    }

    pub fn new(parameter: String, start: f64, stop: f64, steps: usize, scale: Scale) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || start >= stop {
            return Err(CliError::input(format!("sweep range needs start < stop (got {start}:{stop})")));
        }
        if steps < 2 {
            return Err(CliError::input(format!("sweep needs at least 2 steps (got {steps})")));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(CliError::input("log sweep needs positive endpoints"));
        }
        Ok(Self {
            parameter,
            start,
            stop,
            steps,
            scale,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        spaced(self.start, self.stop, self.steps, self.scale)
    }
}

/// Splits `A:B:N`.
pub fn parse_range(text: &str) -> Result<(f64, f64, usize)> {
    let bad = || CliError::input(format!("range {text:?} must look like START:STOP:STEPS"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok((a, b, n))
}

/// `steps` points from `start` to `stop` inclusive. Endpoints are exact.
pub fn spaced(start: f64, stop: f64, steps: usize, scale: Scale) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == 0 {
                return start;
            }
            if i == last {
                return stop;
            }
            let t = i as f64 / last as f64;
            match scale {
                Scale::Linear => start + (stop - start) * t,
                Scale::Log => (start.ln() + (stop.ln() - start.ln()) * t).exp(),
            }
        })
        .collect()
}
