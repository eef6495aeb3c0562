//! Planning models for a LEO satellite internet.
//!
//! - [`geometry`]: orbital period, coverage, slant range and light time.
//! - [`latency`]: fiber versus space-path delay and the break-even altitude.
//! - [`linkbudget`]: per-core link budget, multi-comm-core aggregation and
//!   the antenna aperture law.
//! - [`spectrum`]: satellite bands from 10 to 275 GHz and core placement.
//! - [`planner`]: capacity, satellite count and traffic growth arithmetic.
//!
//! Every function is pure; the only shared state is the immutable band table.

pub mod error;
pub mod geometry;
pub mod latency;
pub mod linkbudget;
pub mod planner;
pub mod spectrum;

pub use error::{Error, Result};
pub use geometry::{OrbitQuery, PhysicalModel};
pub use linkbudget::{LinkBudgetResult, LinkBudgetSpec, MccAggregate, MccConfig};
pub use spectrum::{CoreAllocation, LinkType, SpectrumBand};
